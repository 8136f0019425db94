#ifndef QSR_PROTOCOL_HPP
#define QSR_PROTOCOL_HPP

#include <cstdint>

#include "qsr/random.hpp"
#include "qsr/state.hpp"

namespace qsr {

struct MergeTrialResult {
  int qubits_sent = 0;
  double decoupling_error = 0.0;  // half trace norm of sigma_A1R - pi (x) psi_R
  double achieved_fidelity = 0.0;  // F(sigma_A1R, pi (x) psi_R)
  std::uint64_t seed = 0;
};

struct MergeStats {
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  double max_fidelity = 0.0;
  double success_fraction = 0.0;  // fidelity >= 1 - eps
  std::vector<MergeTrialResult> trials;
};

struct RedistributionOutcome {
  int qubits_physically_sent = 0;
  int ebits_consumed = 0;  // pre-shared pairs made available (log k)
  int ebits_returned = 0;  // pairs left untouched at the end
  double final_fidelity = 0.0;
  std::vector<std::string> per_stage;
};

/// One decoupling trial: Haar unitary on A, keep A1 (dim d_A / 2^q), send A2.
/// Requires labels A and R with d_A a power of two and q in [0, log2 d_A].
MergeTrialResult merge_trial(const PureStateVector& psi, int q, std::uint64_t seed);

/// Optimal Uhlmann decoder: isometry on the `bob_labels` systems of `before`
/// mapping them to the non-shared systems of `target`, maximizing the overlap
/// with `target`. The attained overlap equals the fidelity of the non-Bob
/// marginals. Throws if the target side is smaller than the source side.
MatrixXcd construct_uhlmann_decoder(const PureStateVector& before,
                                    const PureStateVector& target,
                                    const std::vector<std::string>& bob_labels);

/// Repeated merge trials with per-trial seeds derived from the master seed
/// (splitmix64 stream split); bit-reproducible for a fixed master seed.
MergeStats merge_stats(const PureStateVector& psi, int q, int trials, double eps,
                       std::uint64_t master_seed);

/// CSV log of merge trials: header seed,q,decoupling_error,fidelity.
std::string merge_trials_csv(const std::vector<MergeTrialResult>& trials);

/// Staged one-shot state redistribution on labels A, B, C, R (power-of-two
/// dims on A, B, C): merge A to the C side, repackage log2(d_A) - q_budget
/// ebits against the pre-shared pairs, physically send q_budget qubits, decode
/// at Bob. When rho_A is pure the protocol degenerates to local synthesis at
/// Bob and nothing is sent. Throws if initial_ebits cannot cover the
/// repackaging.
RedistributionOutcome redistribute(const PureStateVector& psi, int q_budget,
                                   int initial_ebits, double eps,
                                   std::uint64_t seed);

}  // namespace qsr

#endif
