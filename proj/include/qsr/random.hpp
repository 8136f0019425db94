#ifndef QSR_RANDOM_HPP
#define QSR_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qsr/state.hpp"

namespace qsr {

/// SplitMix64 step; also the documented per-trial seed derivation rule:
/// trial_seed = splitmix64(master_seed ^ (0x9e3779b97f4a7c15 * (trial + 1))).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t raw() { return engine_(); }

  /// Independent generator for a derived stream.
  Rng spawn(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Complex Ginibre matrix (i.i.d. standard complex Gaussian entries).
MatrixXcd ginibre(long rows, long cols, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with the R diagonal
/// phase correction.
MatrixXcd haar_unitary(long dim, Rng& rng);

/// Haar-random pure state on the given layout.
PureStateVector haar_pure(const SystemLayout& layout, Rng& rng);

/// Random full-rank density operator (normalized Wishart).
DensityOperator random_density(const SystemLayout& layout, Rng& rng);

}  // namespace qsr

#endif
