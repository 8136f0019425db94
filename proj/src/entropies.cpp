#include "qsr/entropies.hpp"

#include <cmath>
#include <limits>

namespace qsr {

namespace {

double entropy_of_spectrum(const VectorXd& vals) {
  double h = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) > kEigClip) h -= vals(i) * std::log2(vals(i));
  return h;
}

/// log2 of a PSD matrix on its support (zero eigenvalues mapped to zero).
MatrixXcd projected_log2(const MatrixXcd& m, double rel_threshold = kRankTol) {
  auto [vals, vecs] = hermitian_eig(m);
  double lmax = std::max(vals.maxCoeff(), 0.0);
  VectorXd lv(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    lv(i) = (lmax > 0 && vals(i) > rel_threshold * lmax) ? std::log2(vals(i)) : 0.0;
  return vecs * lv.asDiagonal() * vecs.adjoint();
}

void check_support(const MatrixXcd& rho, const MatrixXcd& sigma, const char* who) {
  MatrixXcd proj = support_projector(sigma);
  double leak = (rho - proj * rho * proj).cwiseAbs().maxCoeff();
  if (leak > 1e-9)
    throw std::invalid_argument(std::string(who) +
                                ": support of rho not contained in support of sigma "
                                "(leakage " +
                                std::to_string(leak) + ")");
}

SolverSummary summarize(const sdp::SdpSolution& sol) {
  return {sol.status, sol.iterations, sol.primal_value, sol.dual_value};
}

void require_optimal(const sdp::SdpSolution& sol, const char* who) {
  if (!sol.ok())
    throw std::runtime_error(std::string(who) + ": SDP solver failed (" +
                             (sol.status == sdp::SdpSolution::Status::infeasible
                                  ? "infeasible"
                                  : "max_iter") +
                             "; " + sol.diagnostics + ")");
}

// Coefficient matrix C with <C, U> = Re Tr U_12 for a 2d-dimensional block.
MatrixXcd off_diag_trace_coeff(long d) {
  MatrixXcd c = MatrixXcd::Zero(2 * d, 2 * d);
  c.topRightCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  c.bottomLeftCorner(d, d) = 0.5 * MatrixXcd::Identity(d, d);
  return c;
}

MatrixXcd bottom_right_identity(long d) {
  MatrixXcd c = MatrixXcd::Zero(2 * d, 2 * d);
  c.bottomRightCorner(d, d) = MatrixXcd::Identity(d, d);
  return c;
}

// Restrict rho (arranged as front x cond) to I_front (x) supp(rho_cond).
// Exact for both plain and smooth min-entropy: rho lives in that subspace, so
// projecting a ball member onto it cannot lower fidelity, and restricting Y to
// the support cannot raise Tr Y. Returns the compressed matrix and the new
// conditioning dimension.
std::pair<MatrixXcd, long> compress_conditioning(const DensityOperator& arranged,
                                                 long da, long db,
                                                 const std::vector<std::string>& cond) {
  MatrixXcd rho_cond = partial_trace(arranged, cond).matrix();
  auto [vals, vecs] = hermitian_eig(rho_cond);
  long r = numerical_rank(vals);
  if (r >= db) return {arranged.matrix(), db};
  MatrixXcd v = vecs.rightCols(r);
  MatrixXcd iso = MatrixXcd::Zero(da * db, da * r);
  for (long a = 0; a < da; ++a) iso.block(a * db, a * r, db, r) = v;
  return {iso.adjoint() * arranged.matrix() * iso, r};
}

bool is_rank_one(const MatrixXcd& rho, VectorXcd* vec) {
  auto [vals, vecs] = hermitian_eig(rho);
  if (numerical_rank(vals) != 1) return false;
  if (vec) *vec = vecs.col(vals.size() - 1);
  return true;
}

}  // namespace

bool SmoothingBall::contains(const DensityOperator& rho_bar, double slack) const {
  double f = fidelity(rho_bar.matrix(), center.matrix());
  return f * f >= 1.0 - epsilon * epsilon - slack;
}

double von_neumann(const DensityOperator& rho) {
  if (!rho.is_normalized())
    throw std::invalid_argument("von_neumann: input must be normalized");
  auto [vals, vecs] = hermitian_eig(rho.matrix());
  return entropy_of_spectrum(vals);
}

double conditional_entropy(const DensityOperator& rho,
                           const std::vector<std::string>& cond) {
  if (cond.size() >= rho.layout().size())
    throw std::invalid_argument("conditional_entropy: cond must be a strict subset");
  return von_neumann(rho) - von_neumann(partial_trace(rho, cond));
}

double cmi(const DensityOperator& rho, const std::vector<std::string>& a,
           const std::vector<std::string>& b, const std::vector<std::string>& c) {
  std::vector<std::string> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  SystemLayout check = rho.layout().restricted(all);  // throws on unknown label
  if ((std::size_t)check.size() != all.size() || all.size() != rho.layout().size())
    throw std::invalid_argument("cmi: partition must cover all labels disjointly");

  std::vector<std::string> bc = b, ac = a, abc = all;
  bc.insert(bc.end(), c.begin(), c.end());
  ac.insert(ac.end(), c.begin(), c.end());
  // I(A;B|C) = H(BC) - H(C) - H(ABC) + H(AC)
  double h_bc = von_neumann(partial_trace(rho, bc));
  double h_c = c.empty() ? 0.0 : von_neumann(partial_trace(rho, c));
  double h_abc = von_neumann(rho);
  double h_ac = von_neumann(partial_trace(rho, ac));
  return h_bc - h_c - h_abc + h_ac;
}

double rel_entropy(const MatrixXcd& rho, const MatrixXcd& sigma) {
  check_support(rho, sigma, "rel_entropy");
  MatrixXcd lr = projected_log2(rho);
  MatrixXcd ls = projected_log2(sigma);
  return ((rho * (lr - ls)).trace()).real();
}

double rel_entropy_variance(const MatrixXcd& rho, const MatrixXcd& sigma) {
  check_support(rho, sigma, "rel_entropy_variance");
  MatrixXcd l = projected_log2(rho) - projected_log2(sigma);
  double d = (rho * l).trace().real();
  double second = (rho * l * l).trace().real();
  return second - d * d;
}

double frak_s(const MatrixXcd& rho, const MatrixXcd& sigma) {
  return std::sqrt(std::max(rel_entropy_variance(rho, sigma), 0.0));
}

EntropyResult dmax(const MatrixXcd& rho, const MatrixXcd& omega) {
  MatrixXcd proj = support_projector(omega);
  double leak = (rho - proj * rho * proj).cwiseAbs().maxCoeff();
  EntropyResult out;
  if (leak > 1e-9) {
    out.value = std::numeric_limits<double>::infinity();
    out.finite = false;
    return out;
  }
  MatrixXcd w = psd_inv_sqrt(omega);
  auto [vals, vecs] = hermitian_eig(w * rho * w);
  out.value = std::log2(std::max(vals.maxCoeff(), kEigClip));
  return out;
}

EntropyResult hmin(const DensityOperator& rho, const std::vector<std::string>& cond) {
  if (!rho.is_normalized())
    throw std::invalid_argument("hmin: input must be normalized");
  auto front = rho.layout().complement(cond);
  if (front.empty() || cond.empty())
    throw std::invalid_argument("hmin: need a nontrivial bipartition");
  std::vector<std::string> order = front;
  order.insert(order.end(), cond.begin(), cond.end());
  DensityOperator arranged = permute(rho, order);
  long da = arranged.dim() / arranged.layout().dim_of(cond);
  auto [mat, db] = compress_conditioning(arranged, da,
                                         arranged.layout().dim_of(cond), cond);
  long d = da * db;

  sdp::SdpProblem p(sdp::Sense::minimize);
  auto yb = p.add_block("Y", db);
  auto sb = p.add_block("S", d);
  p.add_objective(yb, MatrixXcd::Identity(db, db));
  // I_A (x) Y - S = rho
  add_hermitian_equality(
      p, {sdp::term_id_tensor(yb, da, db), sdp::term_identity(sb, d, -1.0)}, mat);
  auto sol = sdp::solve(p);
  require_optimal(sol, "hmin");

  EntropyResult out;
  out.value = -std::log2(sol.primal_value);
  out.solver = summarize(sol);
  return out;
}

EntropyResult hmin_smooth(const DensityOperator& rho,
                          const std::vector<std::string>& cond, double eps) {
  if (eps < 0 || eps >= 1)
    throw std::invalid_argument("hmin_smooth: eps must lie in [0, 1)");
  if (eps < 1e-8) {
    // The ball degenerates to a point and the SDP loses strict feasibility
    // (no interior), so the path-following solver breaks down. The exact
    // eps = 0 value is the plain min-entropy.
    EntropyResult out = hmin(rho, cond);
    out.epsilon_used = eps;
    return out;
  }
  if (!rho.is_normalized())
    throw std::invalid_argument("hmin_smooth: input must be normalized");
  auto front = rho.layout().complement(cond);
  if (front.empty() || cond.empty())
    throw std::invalid_argument("hmin_smooth: need a nontrivial bipartition");
  std::vector<std::string> order = front;
  order.insert(order.end(), cond.begin(), cond.end());
  DensityOperator arranged = permute(rho, order);
  long da = arranged.dim() / arranged.layout().dim_of(cond);
  auto [mat, db] = compress_conditioning(arranged, da,
                                         arranged.layout().dim_of(cond), cond);
  long d = da * db;
  double overlap_needed = std::sqrt(std::max(1.0 - eps * eps, 0.0));

  sdp::SdpProblem p(sdp::Sense::minimize);
  auto yb = p.add_block("Y", db);
  auto sb = p.add_block("S", d);
  p.add_objective(yb, MatrixXcd::Identity(db, db));

  VectorXcd psi;
  if (is_rank_one(mat, &psi)) {
    // Rank-one center: F^2(rho_bar, psi) = <psi|rho_bar|psi>, so the ball
    // constraint is linear and the Uhlmann block is unnecessary.
    auto rb = p.add_block("rho_bar", d);
    add_hermitian_equality(p,
                           {sdp::term_id_tensor(yb, da, db),
                            sdp::term_identity(rb, d, -1.0),
                            sdp::term_identity(sb, d, -1.0)},
                           MatrixXcd::Zero(d, d));
    p.add_constraint(rb, MatrixXcd::Identity(d, d), sdp::Relation::le, 1.0);
    p.add_constraint(rb, (psi * psi.adjoint()).eval(), sdp::Relation::ge,
                     overlap_needed * overlap_needed);
  } else {
    // Uhlmann block [[rho, X], [X^dag, rho_bar]] >= 0 with Re Tr X as the
    // fidelity surrogate.
    auto ub = p.add_block("uhlmann", 2 * d);
    add_hermitian_equality(p, {sdp::term_subblock(ub, 2 * d, 0, d)}, mat);
    add_hermitian_equality(p,
                           {sdp::term_id_tensor(yb, da, db),
                            sdp::term_subblock(ub, 2 * d, d, d, -1.0),
                            sdp::term_identity(sb, d, -1.0)},
                           MatrixXcd::Zero(d, d));
    p.add_constraint(ub, bottom_right_identity(d), sdp::Relation::le, 1.0);
    p.add_constraint(ub, off_diag_trace_coeff(d), sdp::Relation::ge, overlap_needed);
  }

  auto sol = sdp::solve(p);
  require_optimal(sol, "hmin_smooth");
  EntropyResult out;
  out.value = -std::log2(sol.primal_value);
  out.epsilon_used = eps;
  out.solver = summarize(sol);
  return out;
}

EntropyResult dmax_smooth(const DensityOperator& rho, const MatrixXcd& omega,
                          double eps) {
  if (eps < 0 || eps >= 1)
    throw std::invalid_argument("dmax_smooth: eps must lie in [0, 1)");
  if (eps < 1e-8) {
    EntropyResult out = dmax(rho.matrix(), omega);
    out.epsilon_used = eps;
    return out;
  }
  long d = rho.dim();
  if (omega.rows() != d) throw std::invalid_argument("dmax_smooth: dimension mismatch");
  check_support(rho.matrix(), omega, "dmax_smooth");
  double overlap_needed = std::sqrt(std::max(1.0 - eps * eps, 0.0));

  sdp::SdpProblem p(sdp::Sense::minimize);
  auto mb = p.add_block("mu", 1, /*is_complex=*/false);
  auto sb = p.add_block("S", d);
  p.add_objective(mb, MatrixXcd::Identity(1, 1));

  VectorXcd psi;
  if (is_rank_one(rho.matrix(), &psi)) {
    auto rb = p.add_block("rho_bar", d);
    // mu * omega - rho_bar - S = 0
    add_hermitian_equality(p,
                           {sdp::term_scalar_times(mb, omega),
                            sdp::term_identity(rb, d, -1.0),
                            sdp::term_identity(sb, d, -1.0)},
                           MatrixXcd::Zero(d, d));
    p.add_constraint(rb, MatrixXcd::Identity(d, d), sdp::Relation::le, 1.0);
    p.add_constraint(rb, (psi * psi.adjoint()).eval(), sdp::Relation::ge,
                     overlap_needed * overlap_needed);
  } else {
    auto ub = p.add_block("uhlmann", 2 * d);
    add_hermitian_equality(p, {sdp::term_subblock(ub, 2 * d, 0, d)}, rho.matrix());
    add_hermitian_equality(p,
                           {sdp::term_scalar_times(mb, omega),
                            sdp::term_subblock(ub, 2 * d, d, d, -1.0),
                            sdp::term_identity(sb, d, -1.0)},
                           MatrixXcd::Zero(d, d));
    p.add_constraint(ub, bottom_right_identity(d), sdp::Relation::le, 1.0);
    p.add_constraint(ub, off_diag_trace_coeff(d), sdp::Relation::ge, overlap_needed);
  }

  auto sol = sdp::solve(p);
  require_optimal(sol, "dmax_smooth");
  EntropyResult out;
  out.value = std::log2(sol.primal_value);
  out.epsilon_used = eps;
  out.solver = summarize(sol);
  return out;
}

EntropyResult hmax_smooth(const PureStateVector& psi,
                          const std::vector<std::string>& target,
                          const std::vector<std::string>& cond,
                          const std::vector<std::string>& complement, double eps) {
  std::vector<std::string> all = target;
  all.insert(all.end(), cond.begin(), cond.end());
  all.insert(all.end(), complement.begin(), complement.end());
  SystemLayout check = psi.layout().restricted(all);
  if ((std::size_t)check.size() != all.size() || all.size() != psi.layout().size())
    throw std::invalid_argument("hmax_smooth: partition must cover all labels");

  std::vector<std::string> ab = target;
  ab.insert(ab.end(), complement.begin(), complement.end());
  EntropyResult r = hmin_smooth(psi.marginal(ab), complement, eps);
  r.value = -r.value;
  return r;
}

double h0(const DensityOperator& rho, const std::vector<std::string>& target) {
  auto [vals, vecs] = hermitian_eig(partial_trace(rho, target).matrix());
  return std::log2((double)std::max(numerical_rank(vals), 1L));
}

double h0_smooth(const DensityOperator& rho, const std::vector<std::string>& target,
                 double eps) {
  if (eps < 0 || eps >= 1) throw std::invalid_argument("h0_smooth: eps must lie in [0, 1)");
  auto [vals, vecs] = hermitian_eig(partial_trace(rho, target).matrix());
  double needed = std::sqrt(std::max(1.0 - eps * eps, 0.0));
  double mass = 0;
  long r = 0;
  for (Eigen::Index i = vals.size() - 1; i >= 0; --i) {
    mass += std::max(vals(i), 0.0);
    ++r;
    if (mass >= needed - 1e-10) break;
  }
  return std::log2((double)std::max(r, 1L));
}

}  // namespace qsr
