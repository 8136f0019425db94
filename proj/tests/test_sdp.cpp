#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsr/random.hpp"
#include "qsr/sdp.hpp"
#include "qsr/state.hpp"

using namespace qsr;
using namespace qsr::sdp;

namespace {

// min t s.t. t I - A >= 0, i.e. t = lambda_max(A). The free scalar t is the
// difference of two PSD scalars so negative optima are reachable.
SdpProblem lambda_max_problem(const MatrixXcd& a) {
  SdpProblem p(Sense::minimize);
  long d = a.rows();
  bool cplx = a.imag().cwiseAbs().maxCoeff() > 0;
  auto tp = p.add_block("t_plus", 1, /*is_complex=*/false);
  auto tm = p.add_block("t_minus", 1, /*is_complex=*/false);
  auto sb = p.add_block("slack", d, cplx);
  MatrixXcd one = MatrixXcd::Identity(1, 1);
  p.add_objective(tp, one);
  p.add_objective(tm, -one);
  add_hermitian_equality(p,
                         {term_scalar_times(tp, MatrixXcd::Identity(d, d)),
                          term_scalar_times(tm, -MatrixXcd::Identity(d, d)),
                          term_identity(sb, d, -1.0)},
                         a);
  return p;
}

// max Re Tr X s.t. [[rho, X], [X^dag, sigma]] >= 0; optimum is F(rho, sigma).
SdpProblem fidelity_problem(const MatrixXcd& rho, const MatrixXcd& sigma) {
  long d = rho.rows();
  SdpProblem p(Sense::maximize);
  auto ub = p.add_block("uhlmann", 2 * d, /*is_complex=*/true);
  MatrixXcd c = MatrixXcd::Zero(2 * d, 2 * d);
  c.topRightCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  c.bottomLeftCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  p.add_objective(ub, c);
  add_hermitian_equality(p, {term_subblock(ub, 2 * d, 0, d)}, rho);
  add_hermitian_equality(p, {term_subblock(ub, 2 * d, d, d)}, sigma);
  return p;
}

}  // namespace

TEST_CASE("lambda_max of a diagonal matrix") {
  MatrixXcd a = MatrixXcd::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 4;
  a(2, 2) = 2;
  auto sol = solve(lambda_max_problem(a));
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(std::abs(sol.primal_value - sol.dual_value) <=
        1e-7 * (1 + std::abs(sol.primal_value)));
}

TEST_CASE("domination: min Tr Y with Y >= rho has value Tr rho") {
  Rng rng(21);
  auto rho = random_density(SystemLayout::single("A", 3), rng);
  SdpProblem p(Sense::minimize);
  auto yb = p.add_block("Y", 3);
  auto sb = p.add_block("S", 3);
  p.add_objective(yb, MatrixXcd::Identity(3, 3));
  // Y - S = rho.
  add_hermitian_equality(p, {term_identity(yb, 3), term_identity(sb, 3, -1.0)},
                         rho.matrix());
  auto sol = solve(p);
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fidelity SDP matches the closed form on random pairs") {
  Rng rng(22);
  for (int k = 0; k < 10; ++k) {
    auto rho = random_density(SystemLayout::single("A", 2), rng);
    auto sig = random_density(SystemLayout::single("A", 2), rng);
    auto sol = solve(fidelity_problem(rho.matrix(), sig.matrix()));
    REQUIRE(sol.ok());
    CHECK(std::abs(sol.primal_value - fidelity(rho, sig)) < 1e-6);
  }
}

TEST_CASE("embed_complex: real problems pass through") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 1;
  auto p = lambda_max_problem(a);
  auto e = embed_complex(p);
  CHECK(e.blocks().size() == p.blocks().size());
  for (std::size_t j = 0; j < e.blocks().size(); ++j)
    CHECK(e.blocks()[j].size == p.blocks()[j].size);
  CHECK(solve(e).primal_value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("embed_complex matches direct eigenvalue for complex data") {
  MatrixXcd a(2, 2);
  a << 1.0, Complex(0, 1), Complex(0, -1), 1.0;
  auto p = lambda_max_problem(a);
  auto e = embed_complex(p);
  CHECK(e.blocks()[2].size == 4);  // complex slack block doubled
  CHECK(e.blocks()[2].is_complex == false);
  auto sol_direct = solve(p);
  auto sol_embedded = solve(e);
  REQUIRE(sol_direct.ok());
  REQUIRE(sol_embedded.ok());
  double lmax = hermitian_eig(a).first.maxCoeff();
  CHECK(sol_direct.primal_value == doctest::Approx(lmax).epsilon(1e-6));
  CHECK(sol_embedded.primal_value == doctest::Approx(lmax).epsilon(1e-6));
}

TEST_CASE("returned complex blocks are Hermitian and PSD") {
  Rng rng(23);
  auto rho = random_density(SystemLayout::single("A", 2), rng);
  auto sig = random_density(SystemLayout::single("A", 2), rng);
  auto sol = solve(fidelity_problem(rho.matrix(), sig.matrix()));
  REQUIRE(sol.ok());
  for (const auto& x : sol.block_values) {
    CHECK(hermiticity_defect(x) < 1e-9);
    auto [vals, vecs] = hermitian_eig(x);
    CHECK(vals.minCoeff() > -1e-8);
  }
}

TEST_CASE("solution value invariant under unitary conjugation of the data") {
  Rng rng(24);
  MatrixXcd g = ginibre(3, 3, rng);
  MatrixXcd a = (g + g.adjoint()) * 0.5;
  MatrixXcd u = haar_unitary(3, rng);
  auto sol = solve(lambda_max_problem(a));
  auto sol_u = solve(lambda_max_problem(u * a * u.adjoint()));
  REQUIRE(sol.ok());
  REQUIRE(sol_u.ok());
  CHECK(std::abs(sol.primal_value - sol_u.primal_value) < 1e-6);
}

TEST_CASE("objective rescaling rescales the value") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 0.7;
  a(1, 1) = 0.2;
  const double c = 17.0;
  auto build = [&](double scale) {
    SdpProblem p(Sense::minimize);
    auto tb = p.add_block("t", 1, false);
    auto sb = p.add_block("slack", 2, false);
    p.add_objective(tb, scale * MatrixXcd::Identity(1, 1));
    add_hermitian_equality(
        p, {term_scalar_times(tb, MatrixXcd::Identity(2, 2)), term_identity(sb, 2, -1.0)},
        a);
    return p;
  };
  auto s1 = solve(build(1.0));
  auto s3 = solve(build(c));
  REQUIRE(s1.ok());
  REQUIRE(s3.ok());
  CHECK(std::abs(s3.primal_value - c * s1.primal_value) <=
        1e-9 * std::abs(c * s1.primal_value));
}

TEST_CASE("weak duality at the solution") {
  Rng rng(25);
  for (int k = 0; k < 5; ++k) {
    MatrixXcd g = ginibre(3, 3, rng);
    MatrixXcd a = (g + g.adjoint()) * 0.5;
    auto sol = solve(lambda_max_problem(a));
    REQUIRE(sol.ok());
    // Minimization: primal >= dual up to converged tolerance.
    CHECK(sol.primal_value - sol.dual_value >= -1e-7 * (1 + std::abs(sol.primal_value)));
  }
}

TEST_CASE("size cap enforced at build time") {
  SdpProblem p(Sense::minimize);
  CHECK_THROWS(p.add_block("big", 129));
  SdpProblem q(Sense::minimize, 256);
  CHECK_NOTHROW(q.add_block("big", 200));
}

TEST_CASE("infeasible problem yields a certificate status") {
  // Tr X = -1 with X >= 0 is infeasible.
  SdpProblem p(Sense::minimize);
  auto xb = p.add_block("X", 2, false);
  p.add_objective(xb, MatrixXcd::Identity(2, 2));
  p.add_constraint(xb, MatrixXcd::Identity(2, 2), Relation::eq, -1.0);
  auto sol = solve(p);
  CHECK(sol.status == SdpSolution::Status::infeasible);
  CHECK(!sol.diagnostics.empty());
}

TEST_CASE("inequality constraints via slacks") {
  // max Tr(diag(1,2) X) s.t. Tr X <= 1, X >= 0  ->  2.
  SdpProblem p(Sense::maximize);
  auto xb = p.add_block("X", 2, false);
  MatrixXcd c = MatrixXcd::Zero(2, 2);
  c(0, 0) = 1;
  c(1, 1) = 2;
  p.add_objective(xb, c);
  p.add_constraint(xb, MatrixXcd::Identity(2, 2), Relation::le, 1.0);
  auto sol = solve(p);
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("dump contains the problem structure") {
  MatrixXcd a = MatrixXcd::Identity(2, 2);
  auto p = lambda_max_problem(a);
  std::string d = p.dump();
  CHECK(d.find("sense minimize") != std::string::npos);
  CHECK(d.find("block 0 t_plus 1 real") != std::string::npos);
  CHECK(d.find("constraint 0") != std::string::npos);
}

TEST_CASE("random lambda_max problems against the eig oracle") {
  Rng rng(26);
  for (int k = 0; k < 10; ++k) {
    long d = 2 + (long)(rng.uniform() * 3);
    MatrixXcd g = ginibre(d, d, rng);
    MatrixXcd a = (g + g.adjoint()) * 0.5;
    auto sol = solve(lambda_max_problem(a));
    REQUIRE(sol.ok());
    double lmax = hermitian_eig(a).first.maxCoeff();
    CHECK(std::abs(sol.primal_value - lmax) < 1e-6);
    CHECK(std::abs(sol.primal_value - sol.dual_value) <=
          1e-7 * (1 + std::abs(sol.primal_value)));
  }
}
