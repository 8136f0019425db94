#include "qsr/selftest.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qsr/asymptotics.hpp"
#include "qsr/entropies.hpp"
#include "qsr/protocol.hpp"
#include "qsr/random.hpp"

namespace qsr {

namespace {

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << what;
    }
  }
};

void report(std::ostream& out, int idx, const char* name, const Criterion& c) {
  out << (c.ok ? "PASS" : "FAIL") << " criterion " << idx << " (" << name << ")";
  if (!c.ok) out << ": " << c.detail.str();
  out << "\n";
}

// --- criterion 1: epsilon_prime formula -----------------------------------

Criterion criterion1() {
  Criterion c;
  const double denom = 6.0 + 2.0 * std::sqrt(5.0);  // (sqrt(5)+1)^2
  for (int i = 1; i <= 100; ++i) {
    double eps = i / 100.0;
    double expect = eps * eps / denom;
    c.require(std::abs(epsilon_prime(eps) - expect) <= 1e-12,
              "epsilon_prime off at eps=" + std::to_string(eps));
  }
  return c;
}

// --- criterion 2: closed-form H_min ---------------------------------------

Criterion criterion2() {
  Criterion c;
  for (long d : {2L, 3L, 4L}) {
    auto phi = max_entangled("A", "B", d);
    double got = hmin(phi.projector(), {"B"}).value;
    c.require(std::abs(got + std::log2((double)d)) <= 1e-5,
              "H_min(Phi_" + std::to_string(d) + ") = " + std::to_string(got));
  }
  Rng rng(1201);
  for (long da : {2L, 3L}) {
    MatrixXcd mm = MatrixXcd::Identity(da, da) / (double)da;
    auto pi = DensityOperator(SystemLayout::single("A", da), mm);
    auto sig = random_density(SystemLayout::single("B", 3), rng);
    double got = hmin(tensor(pi, sig), {"B"}).value;
    c.require(std::abs(got - std::log2((double)da)) <= 1e-5,
              "H_min(pi_" + std::to_string(da) + " x sigma) = " + std::to_string(got));
  }
  return c;
}

// --- criterion 3: duality and the classical-embedding oracle --------------

// Exact classical smooth min-entropy of the correlated pair diag(p0, p1) on
// (A, C): grid over the diagonal operator caps (c0, c1) with water-filled ball
// members, refined around the coarse optimum.
double classical_hmin_corr(double p0, double eps) {
  double p1 = 1.0 - p0;
  // Tiny slack keeps the eps = 0 boundary (fidelity exactly 1) reachable
  // despite bisection round-off.
  double target = std::sqrt(1.0 - eps * eps) - 1e-9;
  auto fmax = [&](double c0, double c1) {
    auto fill = [&](double t) { return std::min(c0, t * p0) + std::min(c1, t * p1); };
    double t = 1e9;
    if (fill(t) > 1.0) {
      double lo = 0, hi = t;
      for (int it = 0; it < 80; ++it) {
        t = 0.5 * (lo + hi);
        (fill(t) > 1.0 ? hi : lo) = t;
      }
    }
    return std::sqrt(p0 * std::min(c0, t * p0)) + std::sqrt(p1 * std::min(c1, t * p1));
  };
  // Feasibility is monotone in c1 at fixed c0, so the boundary c1_min(c0) is
  // exact by bisection; minimizing c0 + c1_min(c0) is then a 1-d scan.
  auto c1_min = [&](double c0) {
    if (fmax(c0, 1.0) < target) return 2.0;  // infeasible even at full cap
    double lo = 0, hi = 1;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (fmax(c0, mid) >= target ? hi : lo) = mid;
    }
    return hi;
  };
  double best = 2.0, b0 = 0;
  auto scan = [&](double lo, double hi, double step) {
    for (double c0 = std::max(0.0, lo); c0 <= std::min(1.0, hi) + 1e-15; c0 += step) {
      double s = c0 + c1_min(c0);
      if (s < best) {
        best = s;
        b0 = c0;
      }
    }
  };
  scan(0, 1, 1e-3);
  scan(b0 - 2e-3, b0 + 2e-3, 1e-6);
  return -std::log2(best);
}

Criterion criterion3() {
  Criterion c;
  Rng rng(1301);
  SystemLayout abc({{"A", 2}, {"B", 2}, {"C", 2}});
  for (int k = 0; k < 50; ++k) {
    auto psi = haar_pure(abc, rng);
    double smooth = hmax_smooth(psi, {"A"}, {"B"}, {"C"}, 0.0).value;
    double plain = -hmin(psi.marginal({"A", "C"}), {"C"}).value;
    c.require(std::abs(smooth - plain) <= 1e-5,
              "eps=0 smooth vs non-smooth gap " + std::to_string(smooth - plain));
  }
  // Classical subfamily: sqrt(p0)|000> + sqrt(p1)|111>, where
  // H_max^eps(A|B) = -H_min^eps(A|C) has an exact classical computation.
  for (int k = 0; k < 10; ++k) {
    double p0 = 0.1 + 0.08 * k;
    VectorXcd amps = VectorXcd::Zero(8);
    amps(0) = std::sqrt(p0);
    amps(7) = std::sqrt(1.0 - p0);
    PureStateVector psi(abc, amps);
    for (double eps : {0.0, 0.2}) {
      double internal = hmax_smooth(psi, {"A"}, {"B"}, {"C"}, eps).value;
      double oracle = -classical_hmin_corr(p0, eps);
      c.require(std::abs(internal - oracle) <= 1e-3,
                "classical oracle gap " + std::to_string(internal - oracle) +
                    " at p0=" + std::to_string(p0) + " eps=" + std::to_string(eps));
    }
  }
  return c;
}

// --- criterion 4: the section-6 entropy facts -----------------------------

Criterion criterion4() {
  Criterion c;
  Rng rng(1401);
  SystemLayout ly({{"A", 2}, {"B", 2}, {"C", 2}, {"R", 8}});
  for (int k = 0; k < 100; ++k) {
    auto psi = haar_pure(ly, rng);
    double h_acr = conditional_entropy(psi.marginal({"A", "C", "R"}), {"C", "R"});
    double h_ab = conditional_entropy(psi.marginal({"A", "B"}), {"B"});
    c.require(std::abs(h_acr + h_ab) <= 1e-9, "H(A|CR) + H(A|B) nonzero");
    double i_arb = cmi(psi.marginal({"A", "B", "R"}), {"A"}, {"R"}, {"B"});
    double h_abr = conditional_entropy(psi.marginal({"A", "B", "R"}), {"B", "R"});
    c.require(std::abs(i_arb - h_ab + h_abr) <= 1e-9, "I(A;R|B) identity violated");
  }
  auto psi = haar_pure(ly, rng);
  MatrixXcd rho_ab = permute(psi.marginal({"A", "B"}), {"A", "B"}).matrix();
  MatrixXcd rho_b = partial_trace(rho_ab, SystemLayout({{"A", 2}, {"B", 2}}), {"B"});
  MatrixXcd id2 = MatrixXcd::Identity(2, 2);
  auto kron2 = [&](const MatrixXcd& b) {
    MatrixXcd out(4, 4);
    out.topLeftCorner(2, 2) = b;
    out.topRightCorner(2, 2).setZero();
    out.bottomLeftCorner(2, 2).setZero();
    out.bottomRightCorner(2, 2) = b;
    return out;
  };
  double base = rel_entropy(rho_ab, kron2(rho_b));
  for (int k = 0; k < 100; ++k) {
    auto sig = random_density(SystemLayout::single("B", 2), rng);
    double d = rel_entropy(rho_ab, kron2(sig.matrix()));
    c.require(d >= base - 1e-9, "sigma_B beat rho_B by " + std::to_string(base - d));
  }
  return c;
}

// --- criterion 5: Theorem 1 consistency -----------------------------------

Criterion criterion5() {
  Criterion c;
  Rng rng(1501);
  SystemLayout ly({{"A", 2}, {"B", 2}, {"C", 2}, {"R", 8}});
  for (int k = 0; k < 20; ++k) {
    auto psi = haar_pure(ly, rng);
    try {
      auto thm1 = thm1_cost(psi, 0.25);
      double dd = thm1.delta_q - thm1.delta_e;
      c.require(std::abs(thm1.one_shot_cost - dd) <= 2e-4,
                "cost vs delta decomposition gap " + std::to_string(thm1.one_shot_cost - dd));
    } catch (const std::exception& e) {
      c.require(false, std::string("thm1_cost threw: ") + e.what());
    }
  }
  return c;
}

// --- criterion 6: second-order trend --------------------------------------

Criterion criterion6() {
  Criterion c;
  std::vector<double> p = {0.3, 0.7}, q = {0.5, 0.5};
  double eps = 0.3;

  // SDP validation at n = 1, 2 on the diagonal embedding.
  for (int n : {1, 2}) {
    long d = n == 1 ? 2 : 4;
    MatrixXcd pm = MatrixXcd::Zero(d, d), qm = MatrixXcd::Zero(d, d);
    for (long i = 0; i < d; ++i) {
      double pp = 1, qq = 1;
      long rest = i;
      for (int t = 0; t < n; ++t) {
        pp *= p[rest % 2];
        qq *= q[rest % 2];
        rest /= 2;
      }
      pm(i, i) = pp;
      qm(i, i) = qq;
    }
    double via_sdp =
        dmax_smooth(DensityOperator(SystemLayout::single("X", d), pm), qm, eps).value;
    double exact = dmax_iid_exact_classical(p, q, n, eps);
    c.require(std::abs(via_sdp - exact) <= 1e-4,
              "SDP vs exact at n=" + std::to_string(n) + ": " +
                  std::to_string(via_sdp - exact));
  }

  MatrixXcd pm = MatrixXcd::Zero(2, 2), qm = MatrixXcd::Zero(2, 2);
  pm(0, 0) = p[0];
  pm(1, 1) = p[1];
  qm(0, 0) = q[0];
  qm(1, 1) = q[1];
  double rate = rel_entropy(pm, qm);
  double s = frak_s(pm, qm);
  double predicted = -s * inv_norm_cdf(eps * eps);

  // The O(log n) remainder of Eq. secondmax is not negligible at n = 12, so
  // the sqrt(n) coefficient is estimated by regressing value - n D on
  // {sqrt(n), log n, 1} instead of reading off the raw ratio.
  std::vector<double> ns, ys;
  double v12 = 0;
  for (int n = 2; n <= 12; ++n) {
    double v = dmax_iid_exact_classical(p, q, n, eps);
    if (n == 12) v12 = v;
    ns.push_back((double)n);
    ys.push_back(v - n * rate);
  }
  Eigen::MatrixXd x((long)ns.size(), 3);
  Eigen::VectorXd y((long)ns.size());
  for (long i = 0; i < (long)ns.size(); ++i) {
    x(i, 0) = std::sqrt(ns[(std::size_t)i]);
    x(i, 1) = std::log(ns[(std::size_t)i]);
    x(i, 2) = 1.0;
    y(i) = ys[(std::size_t)i];
  }
  double b_hat = x.colPivHouseholderQr().solve(y)(0);
  c.require(std::abs(b_hat - predicted) <= 0.25 * std::abs(predicted),
            "sqrt(n) coefficient " + std::to_string(b_hat) + " vs predicted " +
                std::to_string(predicted));
  c.require(std::abs(v12 / 12.0 - rate) <= 0.05,
            "rate at n=12 off by " + std::to_string(v12 / 12.0 - rate));
  return c;
}

// --- criterion 7: simulator soundness -------------------------------------

double parse_norm_drift(const std::string& line) {
  auto pos = line.find("norm drift ");
  if (pos == std::string::npos) return 0.0;
  return std::atof(line.c_str() + pos + 11);
}

Criterion criterion7() {
  Criterion c;
  Rng rng(1701);
  std::vector<SystemLayout> layouts = {
      SystemLayout({{"A", 2}, {"B", 2}, {"R", 4}}),
      SystemLayout({{"A", 4}, {"B", 2}, {"R", 4}}),
      SystemLayout({{"A", 8}, {"B", 2}, {"R", 8}}),
  };
  for (const auto& ly : layouts) {
    auto psi = haar_pure(ly, rng);
    int n_a = (int)std::llround(std::log2((double)ly.dim_of("A")));
    auto full = merge_trial(psi, n_a, 42);
    c.require(full.achieved_fidelity >= 1.0 - 1e-9, "full transfer fidelity below 1");
    for (int q = 0; q <= n_a; ++q) {
      auto r = merge_trial(psi, q, derive_seed(7000, (std::uint64_t)q));
      c.require(r.achieved_fidelity >= 1.0 - r.decoupling_error - 1e-9,
                "Fuchs-van de Graaf violated");
    }
  }
  auto psi4 = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  auto out = redistribute(psi4, 1, 1, 0.25, 77);
  for (const auto& line : out.per_stage)
    c.require(parse_norm_drift(line) <= 1e-9, "stage norm drift too large: " + line);
  c.require(out.final_fidelity >= 0.0 && out.final_fidelity <= 1.0 + 1e-9,
            "final fidelity out of range");
  return c;
}

// --- criterion 8: simulator monotonicity and reproducibility --------------

Criterion criterion8() {
  Criterion c;
  Rng rng(1801);
  auto psi = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"R", 4}}), rng);
  std::vector<double> means;
  for (int q = 0; q <= 2; ++q) {
    auto s1 = merge_stats(psi, q, 100, 0.2, 2024);
    auto s2 = merge_stats(psi, q, 100, 0.2, 2024);
    c.require(s1.mean_fidelity == s2.mean_fidelity, "rerun not bit-identical");
    for (std::size_t i = 0; i < s1.trials.size(); ++i)
      c.require(s1.trials[i].achieved_fidelity == s2.trials[i].achieved_fidelity,
                "trial not bit-identical");
    means.push_back(s1.mean_fidelity);
  }
  for (std::size_t i = 1; i < means.size(); ++i)
    c.require(means[i] >= means[i - 1] - 1e-12,
              "mean fidelity dropped from q=" + std::to_string(i - 1));
  return c;
}

// --- criterion 9: Theorem 2 coefficients ----------------------------------

Criterion criterion9() {
  Criterion c;
  Rng rng(1901);
  SystemLayout ly({{"A", 2}, {"B", 2}, {"C", 2}, {"R", 8}});
  for (int k = 0; k < 20; ++k) {
    auto psi = haar_pure(ly, rng);
    auto coeff = thm2_expansion(psi, 0.2);
    // Independent route to 1/2 I(A;R|B) through conditional entropies.
    double h_ab = conditional_entropy(psi.marginal({"A", "B"}), {"B"});
    double h_abr = conditional_entropy(psi.marginal({"A", "B", "R"}), {"B", "R"});
    double half_cmi = 0.5 * (h_ab - h_abr);
    c.require(std::abs(coeff.a - half_cmi) <= 1e-9,
              "a vs half cmi gap " + std::to_string(coeff.a - half_cmi));
    for (double eps : {0.05, 0.2, 0.35, 0.49})
      c.require(thm2_expansion(psi, eps).b >= 0.0, "b negative at eps");
    // Devetak-Yard corollary: a is the minimal feasible Q.
    c.require(dy_region(psi, coeff.a, 10.0).feasible, "a infeasible in DY region");
    c.require(!dy_region(psi, coeff.a - 5e-9, 10.0).feasible,
              "Q below a still feasible");
  }
  return c;
}

// --- criterion 10: SDP engine ---------------------------------------------

sdp::SdpProblem lambda_max_problem(const MatrixXcd& a) {
  sdp::SdpProblem p(sdp::Sense::minimize);
  long d = a.rows();
  bool cplx = a.imag().cwiseAbs().maxCoeff() > 0;
  auto tp = p.add_block("t_plus", 1, false);
  auto tm = p.add_block("t_minus", 1, false);
  auto sb = p.add_block("slack", d, cplx);
  MatrixXcd one = MatrixXcd::Identity(1, 1);
  p.add_objective(tp, one);
  p.add_objective(tm, -one);
  add_hermitian_equality(p,
                         {sdp::term_scalar_times(tp, MatrixXcd::Identity(d, d)),
                          sdp::term_scalar_times(tm, -MatrixXcd::Identity(d, d)),
                          sdp::term_identity(sb, d, -1.0)},
                         a);
  return p;
}

sdp::SdpProblem fidelity_problem(const MatrixXcd& rho, const MatrixXcd& sigma) {
  long d = rho.rows();
  sdp::SdpProblem p(sdp::Sense::maximize);
  auto ub = p.add_block("uhlmann", 2 * d, true);
  MatrixXcd cm = MatrixXcd::Zero(2 * d, 2 * d);
  cm.topRightCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  cm.bottomLeftCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  p.add_objective(ub, cm);
  add_hermitian_equality(p, {sdp::term_subblock(ub, 2 * d, 0, d)}, rho);
  add_hermitian_equality(p, {sdp::term_subblock(ub, 2 * d, d, d)}, sigma);
  return p;
}

Criterion criterion10() {
  Criterion c;
  Rng rng(2001);
  for (int k = 0; k < 25; ++k) {
    long d = 2 + (long)(rng.uniform() * 4);
    MatrixXcd g = ginibre(d, d, rng);
    MatrixXcd a = (g + g.adjoint()) * 0.5;
    auto sol = sdp::solve(lambda_max_problem(a));
    double lmax = hermitian_eig(a).first.maxCoeff();
    c.require(sol.ok(), "lambda_max solve failed");
    c.require(std::abs(sol.primal_value - lmax) <= 1e-6,
              "lambda_max value error " + std::to_string(sol.primal_value - lmax));
    c.require(std::abs(sol.primal_value - sol.dual_value) <=
                  1e-7 * (1 + std::abs(sol.primal_value)),
              "lambda_max gap too large");
  }
  for (int k = 0; k < 25; ++k) {
    long d = 2 + (long)(rng.uniform() * 3);
    auto rho = random_density(SystemLayout::single("A", d), rng);
    auto sig = random_density(SystemLayout::single("A", d), rng);
    auto sol = sdp::solve(fidelity_problem(rho.matrix(), sig.matrix()));
    double f = fidelity(rho, sig);
    c.require(sol.ok(), "fidelity solve failed");
    c.require(std::abs(sol.primal_value - f) <= 1e-6,
              "fidelity value error " + std::to_string(sol.primal_value - f));
    c.require(std::abs(sol.primal_value - sol.dual_value) <=
                  1e-7 * (1 + std::abs(sol.primal_value)),
              "fidelity gap too large");
  }
  return c;
}

}  // namespace

int run_acceptance(std::ostream& out) {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"epsilon_prime formula", criterion1},
      {"closed-form H_min", criterion2},
      {"H_max duality vs classical oracle", criterion3},
      {"section-6 entropy facts", criterion4},
      {"Theorem 1 consistency", criterion5},
      {"second-order trend", criterion6},
      {"simulator soundness", criterion7},
      {"simulator monotonicity", criterion8},
      {"Theorem 2 coefficients", criterion9},
      {"SDP engine", criterion10},
  };
  int failures = 0;
  int idx = 1;
  for (const auto& e : entries) {
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail << "exception: " << ex.what();
    }
    report(out, idx, e.name, c);
    if (!c.ok) ++failures;
    ++idx;
  }
  return failures;
}

}  // namespace qsr
