#ifndef QSR_IO_HPP
#define QSR_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "qsr/state.hpp"

namespace qsr {

/// A state as loaded from a file or generator: always a density operator, plus
/// the underlying vector when the state is pure (rank 1).
struct LoadedState {
  DensityOperator rho;
  std::optional<PureStateVector> pure;
};

/// Parse the state file format
///   {"layout": [["A",2],["B",2]], "matrix_re": [[...]], "matrix_im": [[...]]}
/// or the generator shorthand {"generator": ..., "params": {...}, "seed": u64}.
/// Throws std::invalid_argument naming the failing invariant (hermiticity,
/// positivity, trace, layout).
LoadedState load_state_json(const nlohmann::json& j);
LoadedState load_state_file(const std::string& path);

/// CLI generator spec: ghz(parties,dim) | werner(p) | haar_pure(A2xB2xR4,seed)
/// | maximally_entangled(d).
LoadedState make_generator(const std::string& spec);

/// Serialize back to the state file format (exact round-trip of the matrix).
nlohmann::json state_to_json(const DensityOperator& rho);

}  // namespace qsr

#endif
