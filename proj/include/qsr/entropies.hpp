#ifndef QSR_ENTROPIES_HPP
#define QSR_ENTROPIES_HPP

#include <optional>

#include "qsr/sdp.hpp"
#include "qsr/state.hpp"

namespace qsr {

/// All entropic quantities are in bits (logarithms base 2).

/// Fidelity ball around a normalized state: the set of subnormalized rho_bar
/// with F^2(rho_bar, center) >= 1 - epsilon^2.
struct SmoothingBall {
  DensityOperator center;
  double epsilon;
  bool contains(const DensityOperator& rho_bar, double slack = 1e-9) const;
};

struct SolverSummary {
  sdp::SdpSolution::Status status;
  int iterations;
  double primal_value;
  double dual_value;
};

struct EntropyResult {
  double value = 0.0;  // bits; +infinity sentinel when finite == false
  bool finite = true;
  double epsilon_used = 0.0;
  std::optional<SolverSummary> solver;
};

double von_neumann(const DensityOperator& rho);

/// H(A|B) = H(AB) - H(B) with B the `cond` labels.
double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& cond);

/// I(A;B|C) = H(B|C) - H(B|AC) over three disjoint label groups.
double cmi(const DensityOperator& rho, const std::vector<std::string>& a,
           const std::vector<std::string>& b, const std::vector<std::string>& c);

/// Quantum relative entropy D(rho||sigma); sigma may be any PSD operator with
/// supp rho within supp sigma. Throws on support violation.
double rel_entropy(const MatrixXcd& rho, const MatrixXcd& sigma);

/// Information variance V(rho||sigma) = Tr[rho (log rho - log sigma)^2] - D^2.
double rel_entropy_variance(const MatrixXcd& rho, const MatrixXcd& sigma);

/// sqrt(max(V, 0)).
double frak_s(const MatrixXcd& rho, const MatrixXcd& sigma);

/// Max-relative entropy log lambda_max(omega^{-1/2} rho omega^{-1/2}); support
/// violations yield an infinite sentinel (finite == false), never a large float.
EntropyResult dmax(const MatrixXcd& rho, const MatrixXcd& omega);

/// Conditional min-entropy via the SDP min Tr Y_B s.t. I_A x Y_B >= rho_AB.
EntropyResult hmin(const DensityOperator& rho, const std::vector<std::string>& cond);

/// Smooth conditional min-entropy: one SDP optimizing jointly over the
/// subnormalized rho_bar in the epsilon-ball (Uhlmann-block fidelity encoding;
/// rank-one centers use the equivalent linear overlap constraint).
EntropyResult hmin_smooth(const DensityOperator& rho,
                          const std::vector<std::string>& cond, double eps);

/// Smooth max-relative entropy min over the ball of D_max(rho_bar || omega).
EntropyResult dmax_smooth(const DensityOperator& rho, const MatrixXcd& omega,
                          double eps);

/// Smooth conditional max-entropy of target given cond, computed through the
/// duality with the min-entropy conditioned on the purifying complement:
/// H_max(A|C) = -H_min(A|B) for a pure state on A,B,C.
EntropyResult hmax_smooth(const PureStateVector& psi,
                          const std::vector<std::string>& target,
                          const std::vector<std::string>& cond,
                          const std::vector<std::string>& complement, double eps);

/// Renyi entropy of order zero of the marginal on `target`: log2 rank.
double h0(const DensityOperator& rho, const std::vector<std::string>& target);

/// Smoothed by spectrum truncation of the marginal: log2 of the smallest r
/// whose top-r eigenvalue mass reaches sqrt(1 - eps^2).
double h0_smooth(const DensityOperator& rho, const std::vector<std::string>& target,
                 double eps);

}  // namespace qsr

#endif
