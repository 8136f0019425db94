#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsr/entropies.hpp"
#include "qsr/random.hpp"

using namespace qsr;

namespace {

double hbin(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

DensityOperator classical_qubit(double p) {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1 - p;
  return DensityOperator(SystemLayout::single("A", 2), m);
}

DensityOperator classical_pair(const std::vector<double>& joint) {
  SystemLayout ly({{"A", 2}, {"B", 2}});
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = joint[i];
  return DensityOperator(ly, m);
}

// Exact smooth min-entropy of a classical state p(a, b) given B, by a grid
// search over the per-column caps of the smoothed distribution. For diagonal
// rho the optimum is diagonal (pinching), Y is diagonal with entries c_b, and
// the best ball member under caps q(a, b) <= c_b with sum <= 1 is the
// water-filled q(a, b) = min(c_b, t p(a, b)).
double classical_hmin_smooth_grid(const std::vector<double>& joint, double eps,
                                  double step = 1e-3) {
  double target = std::sqrt(1 - eps * eps);
  // Max fidelity achievable with column caps (c0 for b=0 entries 0,2; c1 for
  // b=1 entries 1,3).
  auto fmax = [&](double c0, double c1) {
    auto fill = [&](double t) {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += std::min(i % 2 == 0 ? c0 : c1, t * joint[i]);
      return s;
    };
    double t = 1e9;
    if (fill(t) > 1.0) {
      double lo = 0, hi = t;
      for (int it = 0; it < 80; ++it) {
        t = 0.5 * (lo + hi);
        (fill(t) > 1.0 ? hi : lo) = t;
      }
    }
    double f = 0;
    for (int i = 0; i < 4; ++i)
      f += std::sqrt(joint[i] * std::min(i % 2 == 0 ? c0 : c1, t * joint[i]));
    return f;
  };
  double best = std::max(joint[0], joint[2]) + std::max(joint[1], joint[3]);
  for (double c0 = 0; c0 <= 1 + 1e-12; c0 += step)
    for (double c1 = 0; c0 + c1 < best; c1 += step)
      if (fmax(c0, c1) >= target) best = c0 + c1;
  return -std::log2(best);
}

// Exact smooth D_max for 2-outcome classical (p || q): minimize mu such that
// some p_bar <= mu q in the ball. Grid over per-outcome values of p_bar.
double classical_dmax_smooth_grid(double p0, double q0, double eps,
                                  double step = 1e-3) {
  double p1 = 1 - p0, q1 = 1 - q0;
  double target = std::sqrt(1 - eps * eps);
  double best = std::log2(std::max(p0 / q0, p1 / q1));
  for (double a = 0; a <= 1 + 1e-12; a += step) {
    for (double b = 0; a + b <= 1 + 1e-12; b += step) {
      double f = std::sqrt(p0 * a) + std::sqrt(p1 * b);
      if (f < target) continue;
      double mu = std::max(a / q0, b / q1);
      if (mu > 0) best = std::min(best, std::log2(mu));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("von Neumann entropy: pure, maximally mixed, binary") {
  auto psi = max_entangled("A", "B", 2);
  CHECK(von_neumann(psi.projector()) == doctest::Approx(0.0).epsilon(1e-9));
  MatrixXcd mm = MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(von_neumann(DensityOperator(SystemLayout({{"A", 2}, {"B", 2}}), mm)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(von_neumann(classical_qubit(0.3)) == doctest::Approx(hbin(0.3)).epsilon(1e-12));
}

TEST_CASE("conditional entropy of the maximally entangled state is -1") {
  auto psi = max_entangled("A", "B", 2);
  CHECK(conditional_entropy(psi.projector(), {"B"}) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(conditional_entropy(psi.marginal({"A", "B"}), {"B"}) ==
        doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("conditional entropy of a product state is the marginal entropy") {
  Rng rng(31);
  auto a = random_density(SystemLayout::single("A", 3), rng);
  auto b = random_density(SystemLayout::single("B", 2), rng);
  auto ab = tensor(a, b);
  CHECK(conditional_entropy(ab, {"B"}) == doctest::Approx(von_neumann(a)).epsilon(1e-9));
}

TEST_CASE("cmi: zero for Markov products, 2 log d for GHZ-like correlations") {
  Rng rng(32);
  auto a = random_density(SystemLayout::single("A", 2), rng);
  auto b = random_density(SystemLayout::single("B", 2), rng);
  auto c = random_density(SystemLayout::single("C", 2), rng);
  auto abc = tensor(tensor(a, b), c);
  CHECK(cmi(abc, {"A"}, {"B"}, {"C"}) == doctest::Approx(0.0).epsilon(1e-9));

  // Pure state on ABC: I(A;B|C) = I(A;B) + something; use phi_AB x c.
  auto phi = max_entangled("A", "B", 2);
  auto pure3 = tensor(phi.projector(), c);
  CHECK(cmi(pure3, {"A"}, {"B"}, {"C"}) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("cmi is nonnegative on random tripartite states") {
  Rng rng(33);
  for (int k = 0; k < 5; ++k) {
    auto rho = random_density(SystemLayout({{"A", 2}, {"B", 2}, {"C", 2}}), rng);
    CHECK(cmi(rho, {"A"}, {"B"}, {"C"}) >= -1e-9);
  }
}

TEST_CASE("relative entropy: classical closed form and support violation") {
  auto p = classical_qubit(0.3);
  auto q = classical_qubit(0.6);
  double expect = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
  CHECK(rel_entropy(p.matrix(), q.matrix()) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(rel_entropy(p.matrix(), p.matrix()) == doctest::Approx(0.0).epsilon(1e-12));

  MatrixXcd sing = MatrixXcd::Zero(2, 2);
  sing(0, 0) = 1;
  CHECK_THROWS(rel_entropy(p.matrix(), sing));
}

TEST_CASE("relative entropy variance: classical closed form") {
  double p0 = 0.3, q0 = 0.6;
  auto p = classical_qubit(p0);
  auto q = classical_qubit(q0);
  double l0 = std::log2(p0 / q0), l1 = std::log2((1 - p0) / (1 - q0));
  double d = p0 * l0 + (1 - p0) * l1;
  double v = p0 * l0 * l0 + (1 - p0) * l1 * l1 - d * d;
  CHECK(rel_entropy_variance(p.matrix(), q.matrix()) == doctest::Approx(v).epsilon(1e-10));
  CHECK(frak_s(p.matrix(), q.matrix()) == doctest::Approx(std::sqrt(v)).epsilon(1e-10));
  CHECK(rel_entropy_variance(p.matrix(), p.matrix()) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("variance vanishes for flat states vs identity") {
  MatrixXcd mm = MatrixXcd::Identity(3, 3) / 3.0;
  MatrixXcd id = MatrixXcd::Identity(3, 3);
  CHECK(rel_entropy_variance(mm, id) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rel_entropy(mm, id) == doctest::Approx(-std::log2(3.0)).epsilon(1e-10));
}

TEST_CASE("dmax: closed form, infinite sentinel, SDP cross-check") {
  auto p = classical_qubit(0.3);
  auto q = classical_qubit(0.6);
  double expect = std::log2(std::max(0.3 / 0.6, 0.7 / 0.4));
  auto r = dmax(p.matrix(), q.matrix());
  CHECK(r.finite);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-9));

  MatrixXcd sing = MatrixXcd::Zero(2, 2);
  sing(1, 1) = 1;
  auto inf = dmax(p.matrix(), sing);
  CHECK(!inf.finite);
  CHECK(std::isinf(inf.value));

  // SDP oracle: min mu s.t. mu omega >= rho.
  Rng rng(34);
  for (int k = 0; k < 3; ++k) {
    auto rho = random_density(SystemLayout::single("A", 3), rng);
    auto omg = random_density(SystemLayout::single("A", 3), rng);
    sdp::SdpProblem prob(sdp::Sense::minimize);
    auto mb = prob.add_block("mu", 1, false);
    auto sb = prob.add_block("S", 3);
    prob.add_objective(mb, MatrixXcd::Identity(1, 1));
    add_hermitian_equality(prob,
                           {sdp::term_scalar_times(mb, omg.matrix()),
                            sdp::term_identity(sb, 3, -1.0)},
                           rho.matrix());
    auto sol = sdp::solve(prob);
    REQUIRE(sol.ok());
    CHECK(dmax(rho.matrix(), omg.matrix()).value ==
          doctest::Approx(std::log2(sol.primal_value)).epsilon(1e-6));
  }
}

TEST_CASE("dmax(rho || rho) = 0 and monotonicity in the reference") {
  Rng rng(35);
  auto rho = random_density(SystemLayout::single("A", 3), rng);
  CHECK(dmax(rho.matrix(), rho.matrix()).value == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(dmax(rho.matrix(), (2.0 * rho.matrix()).eval()).value ==
        doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("hmin: known values") {
  // Maximally entangled: H_min(A|B) = -log d.
  auto phi = max_entangled("A", "B", 2);
  CHECK(hmin(phi.projector(), {"B"}).value == doctest::Approx(-1.0).epsilon(1e-6));
  // Maximally mixed on A, product with anything: H_min(A|B) = log d_A.
  MatrixXcd mm = MatrixXcd::Identity(2, 2) / 2.0;
  auto rho = tensor(DensityOperator(SystemLayout::single("A", 2), mm),
                    DensityOperator(SystemLayout::single("B", 2), mm));
  CHECK(hmin(rho, {"B"}).value == doctest::Approx(1.0).epsilon(1e-6));
  // Classical: -log2 sum_b max_a p(a, b).
  auto cl = classical_pair({0.4, 0.1, 0.2, 0.3});
  double expect = -std::log2(0.4 + 0.3);
  CHECK(hmin(cl, {"B"}).value == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("hmin <= H(A|B) style bounds and label-order independence") {
  Rng rng(36);
  auto rho = random_density(SystemLayout({{"A", 2}, {"B", 3}}), rng);
  auto r1 = hmin(rho, {"B"});
  CHECK(r1.value <= conditional_entropy(rho, {"B"}) + 1e-6);
  auto swapped = permute(rho, {"B", "A"});
  CHECK(hmin(swapped, {"B"}).value == doctest::Approx(r1.value).epsilon(1e-6));
}

TEST_CASE("hmin_smooth at eps=0 matches hmin") {
  Rng rng(37);
  auto rho = random_density(SystemLayout({{"A", 2}, {"B", 2}}), rng);
  auto plain = hmin(rho, {"B"});
  auto smooth = hmin_smooth(rho, {"B"}, 0.0);
  CHECK(smooth.value == doctest::Approx(plain.value).epsilon(5e-5));
}

TEST_CASE("hmin_smooth against the classical grid oracle") {
  std::vector<double> joint = {0.4, 0.1, 0.2, 0.3};
  auto cl = classical_pair(joint);
  for (double eps : {0.1, 0.3}) {
    double oracle = classical_hmin_smooth_grid(joint, eps);
    auto got = hmin_smooth(cl, {"B"}, eps);
    CHECK(got.value == doctest::Approx(oracle).epsilon(5e-3));
    CHECK(got.value >= hmin(cl, {"B"}).value - 1e-6);  // smoothing only helps
  }
}

TEST_CASE("hmin_smooth is monotone in eps") {
  Rng rng(38);
  auto rho = random_density(SystemLayout({{"A", 2}, {"B", 2}}), rng);
  double prev = hmin_smooth(rho, {"B"}, 0.05).value;
  for (double eps : {0.1, 0.2, 0.4}) {
    double cur = hmin_smooth(rho, {"B"}, eps).value;
    CHECK(cur >= prev - 1e-6);
    prev = cur;
  }
}

TEST_CASE("hmin_smooth rank-one fast path agrees with the Uhlmann encoding") {
  // A rank-one state perturbed to full rank forces the general path; values
  // must converge as the perturbation vanishes.
  Rng rng(39);
  auto psi = haar_pure(SystemLayout({{"A", 2}, {"B", 2}}), rng);
  auto pure = psi.projector();
  double eps = 0.2;
  auto fast = hmin_smooth(pure, {"B"}, eps);
  MatrixXcd mixed = 0.999999 * pure.matrix() + 1e-6 * MatrixXcd::Identity(4, 4) / 4.0;
  auto slow = hmin_smooth(DensityOperator(pure.layout(), mixed), {"B"}, eps);
  CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-3));
}

TEST_CASE("dmax_smooth against the classical grid oracle") {
  double p0 = 0.3, q0 = 0.6;
  auto p = classical_qubit(p0);
  auto q = classical_qubit(q0);
  for (double eps : {0.1, 0.3}) {
    double oracle = classical_dmax_smooth_grid(p0, q0, eps);
    auto got = dmax_smooth(p, q.matrix(), eps);
    CHECK(got.value == doctest::Approx(oracle).epsilon(5e-3));
    CHECK(got.value <= dmax(p.matrix(), q.matrix()).value + 1e-6);
  }
}

TEST_CASE("dmax_smooth at eps=0 matches dmax") {
  Rng rng(40);
  auto rho = random_density(SystemLayout::single("A", 2), rng);
  auto omg = random_density(SystemLayout::single("A", 2), rng);
  CHECK(dmax_smooth(rho, omg.matrix(), 0.0).value ==
        doctest::Approx(dmax(rho.matrix(), omg.matrix()).value).epsilon(5e-5));
}

TEST_CASE("hmax_smooth duality: pure bipartite state symmetry") {
  // For pure psi_AB with trivial C, H_max(A|C)= H_max(A) = log rank-ish; use
  // the tripartite identity instead: H_max(A|C) = -H_min(A|B) on pure ABC.
  Rng rng(41);
  auto psi = haar_pure(SystemLayout({{"A", 2}, {"B", 2}, {"C", 2}}), rng);
  double eps = 0.15;
  auto hmax = hmax_smooth(psi, {"A"}, {"C"}, {"B"}, eps);
  auto hmn = hmin_smooth(psi.marginal({"A", "B"}), {"B"}, eps);
  CHECK(hmax.value == doctest::Approx(-hmn.value).epsilon(1e-9));
}

TEST_CASE("hmax_smooth classical oracle: max over sigma of 2 log F") {
  // Diagonal rho_AC; H_max(A|C) = max_sigma_C 2 log2 F(rho_AC, I_A x sigma_C).
  // For diagonal states F(rho, I x sigma) = sum_{a,c} sqrt(p(a,c) s(c)), and a
  // grid over s suffices in dim 2.
  std::vector<double> joint = {0.4, 0.1, 0.2, 0.3};  // (a,c) pairs
  SystemLayout ly({{"A", 2}, {"C", 2}});
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = joint[i];
  DensityOperator rho(ly, m);
  auto psi = purify(rho, "R");

  double best = -1e9;
  for (double s0 = 0; s0 <= 1 + 1e-12; s0 += 1e-4) {
    double f = std::sqrt(joint[0] * s0) + std::sqrt(joint[1] * (1 - s0)) +
               std::sqrt(joint[2] * s0) + std::sqrt(joint[3] * (1 - s0));
    best = std::max(best, 2 * std::log2(f));
  }
  auto got = hmax_smooth(psi, {"A"}, {"C"}, {"R"}, 0.0);
  CHECK(got.value == doctest::Approx(best).epsilon(1e-3));
}

TEST_CASE("h0 and h0_smooth") {
  // rank-2 marginal.
  auto phi = max_entangled("A", "B", 2);
  auto rho = tensor(phi.projector(),
                    DensityOperator(SystemLayout::single("C", 2),
                                    MatrixXcd::Identity(2, 2) / 2.0));
  CHECK(h0(rho, {"A"}) == doctest::Approx(1.0));
  CHECK(h0(rho, {"A", "C"}) == doctest::Approx(2.0));
  CHECK(h0_smooth(rho, {"A"}, 0.0) == doctest::Approx(1.0));

  // Spectrum (0.9, 0.06, 0.04): eps large enough to drop the tail reduces rank.
  MatrixXcd d3 = MatrixXcd::Zero(3, 3);
  d3(0, 0) = 0.9;
  d3(1, 1) = 0.06;
  d3(2, 2) = 0.04;
  DensityOperator r3(SystemLayout::single("A", 3), d3);
  CHECK(h0_smooth(r3, {"A"}, 0.0) == doctest::Approx(std::log2(3.0)));
  // sqrt(1 - 0.4^2) ~ 0.9165 <= 0.96: two eigenvalues suffice.
  CHECK(h0_smooth(r3, {"A"}, 0.4) == doctest::Approx(1.0));
  // sqrt(1 - 0.6^2) = 0.8 <= 0.9: one eigenvalue suffices.
  CHECK(h0_smooth(r3, {"A"}, 0.6) == doctest::Approx(0.0));
}

TEST_CASE("SmoothingBall membership") {
  auto rho = classical_qubit(0.5);
  SmoothingBall ball{rho, 0.3};
  CHECK(ball.contains(rho));
  CHECK(ball.contains(DensityOperator(rho.layout(), (0.95 * rho.matrix()).eval(),
                                      TraceClass::subnormalized)));
  CHECK(!ball.contains(classical_qubit(0.999)));
}

TEST_CASE("input validation") {
  auto rho = classical_qubit(0.5);
  CHECK_THROWS(hmin_smooth(tensor(rho, classical_qubit(0.3)), {"B"}, 1.5));
  CHECK_THROWS(conditional_entropy(rho, {"A"}));
  auto sub = DensityOperator(rho.layout(), (0.5 * rho.matrix()).eval(),
                             TraceClass::subnormalized);
  CHECK_THROWS(von_neumann(sub));
}
