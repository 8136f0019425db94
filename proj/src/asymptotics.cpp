#include "qsr/asymptotics.hpp"

#include <cmath>

namespace qsr {

namespace {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

void require_labels(const PureStateVector& psi, const std::vector<std::string>& want,
                    const char* who) {
  for (const auto& l : want)
    if (!psi.layout().has_label(l))
      throw std::invalid_argument(std::string(who) + ": missing label " + l);
  if (psi.layout().size() != want.size())
    throw std::invalid_argument(std::string(who) + ": unexpected extra labels");
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

double epsilon_prime(double eps) {
  if (eps <= 0 || eps > 1)
    throw std::invalid_argument("epsilon_prime: eps must lie in (0, 1]");
  double s = std::sqrt(5.0) + 1.0;
  return eps * eps / (s * s);
}

CostReport thm1_cost(const PureStateVector& psi, double eps) {
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("thm1_cost: eps must lie in (0, 1)");
  require_labels(psi, {"A", "B", "C", "R"}, "thm1_cost");
  double ep = epsilon_prime(eps);

  double hmax_ab = hmax_smooth(psi, {"A"}, {"B"}, {"C", "R"}, ep).value;
  double hmin_arb = hmin_smooth(psi.marginal({"A", "B", "R"}), {"B", "R"}, ep).value;
  double form1 = 0.5 * (hmax_ab - hmin_arb) - 2.0 * std::log2(ep);

  double hmin_acr = hmin_smooth(psi.marginal({"A", "C", "R"}), {"C", "R"}, ep).value;
  double form2 = 0.5 * (-hmin_acr - hmin_arb) - 2.0 * std::log2(ep);
  if (std::abs(form1 - form2) > 2e-4)
    throw std::runtime_error("thm1_cost: duality forms disagree beyond 2e-4");

  CostReport out = decompose_delta(psi, eps);
  out.one_shot_cost = form1;
  return out;
}

std::pair<double, double> fqsw_costs(const PureStateVector& psi, double eps) {
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("fqsw_costs: eps must lie in (0, 1)");
  require_labels(psi, {"A", "B", "R"}, "fqsw_costs");
  double ep = epsilon_prime(eps);
  double h0a = h0_smooth(psi.projector(), {"A"}, ep);
  double hmin_ar = psi.layout().dim_of("A") == 1
                       ? 0.0
                       : hmin_smooth(psi.marginal({"A", "R"}), {"R"}, ep).value;
  double gain = 0.5 * (h0a + hmin_ar) + std::log2(ep);
  double cost = 0.5 * (h0a - hmin_ar) - std::log2(ep);
  return {gain, cost};
}

CostReport decompose_delta(const PureStateVector& psi, double eps) {
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("decompose_delta: eps must lie in (0, 1)");
  require_labels(psi, {"A", "B", "C", "R"}, "decompose_delta");
  double ep = epsilon_prime(eps);
  double h0a = h0_smooth(psi.projector(), {"A"}, ep);
  double hmin_acr = hmin_smooth(psi.marginal({"A", "C", "R"}), {"C", "R"}, ep).value;
  double hmin_abr = hmin_smooth(psi.marginal({"A", "B", "R"}), {"B", "R"}, ep).value;

  CostReport out;
  out.epsilon = eps;
  out.epsilon_prime = ep;
  out.delta_q = 0.5 * (h0a - hmin_acr) - std::log2(ep);
  out.delta_e = 0.5 * (h0a + hmin_abr) + std::log2(ep);
  out.one_shot_cost = out.delta_q - out.delta_e;
  out.entanglement_cost = -out.delta_e;
  return out;
}

double inv_norm_cdf(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("inv_norm_cdf: p must lie in (0, 1)");
  // Acklam's rational approximation, then one Newton refinement against the
  // erfc-based CDF.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  for (int it = 0; it < 2; ++it) {
    double pdf = std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
    if (pdf > 0) x -= (norm_cdf(x) - p) / pdf;
  }
  return x;
}

ExpansionCoefficients thm2_expansion(const PureStateVector& psi, double eps) {
  if (eps <= 0 || eps >= 0.5)
    throw std::invalid_argument("thm2_expansion: eps must lie in (0, 1/2)");
  require_labels(psi, {"A", "B", "C", "R"}, "thm2_expansion");
  double ep = epsilon_prime(eps);
  long da = psi.layout().dim_of("A");
  MatrixXcd id_a = MatrixXcd::Identity(da, da);

  MatrixXcd acr = permute(psi.marginal({"A", "C", "R"}), {"A", "C", "R"}).matrix();
  MatrixXcd abr = permute(psi.marginal({"A", "B", "R"}), {"A", "B", "R"}).matrix();
  MatrixXcd cr = permute(psi.marginal({"C", "R"}), {"C", "R"}).matrix();
  MatrixXcd br = permute(psi.marginal({"B", "R"}), {"B", "R"}).matrix();

  ExpansionCoefficients out;
  out.a = 0.5 * cmi(psi.marginal({"A", "B", "R"}), {"A"}, {"R"}, {"B"});
  out.b = -inv_norm_cdf(ep * ep) * 0.5 *
          (frak_s(acr, kron(id_a, cr)) + frak_s(abr, kron(id_a, br)));
  return out;
}

double dmax_iid_exact_classical(const std::vector<double>& p,
                                const std::vector<double>& q, int n, double eps) {
  if (p.size() != q.size() || p.empty())
    throw std::invalid_argument("dmax_iid_exact_classical: size mismatch");
  if (n < 1 || n > 14)
    throw std::invalid_argument("dmax_iid_exact_classical: n must lie in [1, 14]");
  if (eps < 0 || eps >= 1)
    throw std::invalid_argument("dmax_iid_exact_classical: eps must lie in [0, 1)");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 1e-15 && q[i] <= 1e-15)
      throw std::invalid_argument("dmax_iid_exact_classical: support violation");

  // Enumerate the product distributions outcome by outcome.
  long d = (long)p.size();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > (1L << 22))
      throw std::invalid_argument("dmax_iid_exact_classical: outcome space too large");
  }
  std::vector<double> pn(total), qn(total);
  for (long idx = 0; idx < total; ++idx) {
    double pp = 1, qq = 1;
    long rest = idx;
    for (int i = 0; i < n; ++i) {
      pp *= p[rest % d];
      qq *= q[rest % d];
      rest /= d;
    }
    pn[idx] = pp;
    qn[idx] = qq;
  }

  double target = std::sqrt(1 - eps * eps);
  // Best fidelity against p^n achievable under caps p_bar <= mu q^n with unit
  // total mass: water-filled p_bar_i = min(mu q_i, t p_i).
  auto fmax = [&](double mu) {
    // Mass is spent only where it buys fidelity (pn > 0).
    double cap_mass = 0;
    for (long i = 0; i < total; ++i)
      if (pn[i] > 0) cap_mass += mu * qn[i];
    double f = 0;
    if (cap_mass <= 1.0) {
      // Sum constraint slack: saturate every cap.
      for (long i = 0; i < total; ++i)
        if (pn[i] > 0) f += std::sqrt(pn[i] * mu * qn[i]);
      return f;
    }
    auto mass = [&](double t) {
      double s = 0;
      for (long i = 0; i < total; ++i)
        if (pn[i] > 0) s += std::min(mu * qn[i], t * pn[i]);
      return s;
    };
    double lo = 0, hi = 2.0;
    while (mass(hi) < 1.0) hi *= 2;
    double t = hi;
    for (int it = 0; it < 80; ++it) {
      t = 0.5 * (lo + hi);
      (mass(t) > 1.0 ? hi : lo) = t;
    }
    for (long i = 0; i < total; ++i)
      if (pn[i] > 0) f += std::sqrt(pn[i] * std::min(mu * qn[i], t * pn[i]));
    return f;
  };

  // Feasibility is monotone in mu; the non-smooth value is always feasible.
  double hi = 0;
  for (long i = 0; i < total; ++i)
    if (pn[i] > 0) hi = std::max(hi, pn[i] / qn[i]);
  double lo = 0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (fmax(mid) >= target ? hi : lo) = mid;
  }
  return std::log2(hi);
}

DyRegionPoint dy_region(const PureStateVector& psi, double Q, double E) {
  require_labels(psi, {"A", "B", "C", "R"}, "dy_region");
  double i_arb = cmi(psi.marginal({"A", "B", "R"}), {"A"}, {"R"}, {"B"});
  double h_ab = conditional_entropy(psi.marginal({"A", "B"}), {"B"});
  DyRegionPoint out;
  out.Q = Q;
  out.E = E;
  out.feasible = Q >= 0.5 * i_arb - 1e-9 && Q + E >= h_ab - 1e-9;
  return out;
}

}  // namespace qsr
