#ifndef QSR_STATE_HPP
#define QSR_STATE_HPP

#include "qsr/layout.hpp"
#include "qsr/linalg.hpp"

namespace qsr {

enum class TraceClass { normalized, subnormalized };

/// Positive semidefinite operator attached to a SystemLayout. Immutable after
/// construction; invariants (hermiticity, eigenvalue floor, trace) are checked
/// on construction.
class DensityOperator {
public:
  DensityOperator(SystemLayout layout, MatrixXcd matrix,
                  TraceClass trace_class = TraceClass::normalized);

  /// Skips the eigenvalue check (used internally where PSD-ness is structural).
  static DensityOperator unchecked(SystemLayout layout, MatrixXcd matrix,
                                   TraceClass trace_class);

  const SystemLayout& layout() const { return layout_; }
  const MatrixXcd& matrix() const { return matrix_; }
  TraceClass trace_class() const { return trace_class_; }
  long dim() const { return layout_.total_dim(); }
  double trace() const { return matrix_.trace().real(); }
  bool is_normalized() const { return trace_class_ == TraceClass::normalized; }

private:
  DensityOperator() = default;
  SystemLayout layout_;
  MatrixXcd matrix_;
  TraceClass trace_class_ = TraceClass::normalized;
};

/// Unit-norm complex vector attached to a SystemLayout.
class PureStateVector {
public:
  PureStateVector(SystemLayout layout, VectorXcd amplitudes);

  const SystemLayout& layout() const { return layout_; }
  const VectorXcd& amplitudes() const { return amplitudes_; }
  long dim() const { return layout_.total_dim(); }

  /// Projector |psi><psi| as a DensityOperator on the same layout.
  DensityOperator projector() const;

  /// Marginal on the kept labels.
  DensityOperator marginal(const std::vector<std::string>& keep) const;

private:
  SystemLayout layout_;
  VectorXcd amplitudes_;
};

/// Kronecker product; layouts concatenate, labels must be disjoint.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureStateVector tensor(const PureStateVector& a, const PureStateVector& b);

/// Partial trace onto `keep` (original relative order preserved).
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);
MatrixXcd partial_trace(const MatrixXcd& m, const SystemLayout& layout,
                        const std::vector<std::string>& keep);

/// Minimal purification; reference subsystem `ref_label` has dim = rank(rho).
PureStateVector purify(const DensityOperator& rho, const std::string& ref_label);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)); valid for
/// subnormalized arguments with the same expression.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const MatrixXcd& rho, const MatrixXcd& sigma);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Reorder subsystems to the given label order.
PureStateVector permute(const PureStateVector& psi,
                        const std::vector<std::string>& new_order);
DensityOperator permute(const DensityOperator& rho,
                        const std::vector<std::string>& new_order);

/// Apply an operator `op` acting on the given subsystems (in the listed order)
/// to a pure state; `op` maps their joint space to the space of `out_layout`
/// (an isometry, unitary, or adjoint thereof). The result's subsystems are the
/// out_layout labels followed by the untouched labels; the returned vector is
/// NOT renormalized (norm may drop if op is a partial isometry).
std::pair<SystemLayout, VectorXcd> apply_on(const PureStateVector& psi,
                                            const std::vector<std::string>& targets,
                                            const MatrixXcd& op,
                                            const SystemLayout& out_layout);

/// Split one subsystem into two: label -> (label_hi, label_lo) with
/// dim = dim_hi * dim_lo, label_hi the more significant factor.
PureStateVector split_subsystem(const PureStateVector& psi, const std::string& label,
                                const std::string& label_hi, long dim_hi,
                                const std::string& label_lo, long dim_lo);

/// Rename a subsystem in place.
PureStateVector rename_subsystem(const PureStateVector& psi, const std::string& from,
                                 const std::string& to);

/// Maximally entangled vector sum_i |ii>/sqrt(d) on two labels of dim d.
PureStateVector max_entangled(const std::string& label_a, const std::string& label_b,
                              long d);

/// Computational basis vector on the given layout.
PureStateVector basis_state(const SystemLayout& layout, long index);

}  // namespace qsr

#endif
