#ifndef QSR_ASYMPTOTICS_HPP
#define QSR_ASYMPTOTICS_HPP

#include "qsr/entropies.hpp"

namespace qsr {

/// Cost accounting for one-shot redistribution, all quantities in bits.
struct CostReport {
  double delta_q = 0.0;            // qubits moved by the naive merge
  double delta_e = 0.0;            // ebits generated along the way
  double one_shot_cost = 0.0;      // qubits physically sent, delta_q - delta_e
  double entanglement_cost = 0.0;  // log k - log m, equals -delta_e here
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
};

struct ExpansionCoefficients {
  double a = 0.0;  // bits per copy
  double b = 0.0;  // bits per sqrt(copy)
  std::string remainder_note = "O(log n), constant not specified";
};

struct DyRegionPoint {
  double Q = 0.0;
  double E = 0.0;
  bool feasible = false;
};

/// eps^2 / (sqrt(5) + 1)^2.
double epsilon_prime(double eps);

/// One-shot redistribution cost
///   1/2 (H_max^{e'}(A|B) - H_min^{e'}(A|RB)) - 2 log e'
/// for a pure state on labels A, B, C, R. Also evaluates the equivalent form
///   1/2 (-H_min^{e'}(A|CR) - H_min^{e'}(A|BR)) - 2 log e'
/// and checks agreement within 2e-4.
CostReport thm1_cost(const PureStateVector& psi, double eps);

/// Coherent merging (FQSW) entanglement gain and qubit cost for a pure state
/// on labels A, B, R:
///   gain = 1/2 [H_0^{e'}(A) + H_min^{e'}(A|R)] + log e'
///   cost = 1/2 [H_0^{e'}(A) - H_min^{e'}(A|R)] - log e'.
std::pair<double, double> fqsw_costs(const PureStateVector& psi, double eps);

/// Naive-merge decomposition for a pure state on labels A, B, C, R:
///   delta_q = 1/2 [H_0^{e'}(A) - H_min^{e'}(A|CR)] - log e'
///   delta_e = 1/2 [H_0^{e'}(A) + H_min^{e'}(A|BR)] + log e'
/// with one_shot_cost = delta_q - delta_e.
CostReport decompose_delta(const PureStateVector& psi, double eps);

/// Inverse standard normal CDF (rational approximation plus one Newton step).
double inv_norm_cdf(double p);

/// Second-order expansion coefficients of the redistribution cost,
/// a n + b sqrt(n) + O(log n), for eps in (0, 1/2):
///   a = 1/2 I(A;R|B),  b = -Phi^{-1}(e'^2) * 1/2 [s(ACR) + s(ABR)].
ExpansionCoefficients thm2_expansion(const PureStateVector& psi, double eps);

/// Exact smooth max-relative entropy D_max^eps(p^(x)n || q^(x)n) for classical
/// (diagonal, commuting) distributions, by bisection on mu with the optimal
/// ball member p_bar_i = min(t p_i, mu q_i). Requires n <= 14 and
/// supp p within supp q.
double dmax_iid_exact_classical(const std::vector<double>& p,
                                const std::vector<double>& q, int n, double eps);

/// Devetak-Yard achievability test: Q >= 1/2 I(A;R|B) and Q + E >= H(A|B).
DyRegionPoint dy_region(const PureStateVector& psi, double Q, double E);

}  // namespace qsr

#endif
