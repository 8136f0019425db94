#include "qsr/sdp.hpp"

#include <cmath>
#include <sstream>

namespace qsr::sdp {

namespace {
constexpr double kCoeffZero = 0.0;  // exact-zero sparsification threshold
}

std::size_t SdpProblem::add_block(const std::string& name, long size, bool is_complex) {
  if (size < 1) throw std::invalid_argument("SdpProblem: block size < 1");
  if (size > cap_)
    throw std::invalid_argument("SdpProblem: block '" + name + "' size " +
                                std::to_string(size) + " exceeds cap " +
                                std::to_string(cap_));
  blocks_.push_back({name, size, is_complex});
  return blocks_.size() - 1;
}

namespace {
void check_coeff(const SdpProblem::Block& b, const MatrixXcd& c) {
  if (c.rows() != b.size || c.cols() != b.size)
    throw std::invalid_argument("SdpProblem: coefficient dim mismatch on block " + b.name);
  if (hermiticity_defect(c) > 1e-10 * std::max(1.0, c.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("SdpProblem: non-Hermitian coefficient on block " + b.name);
  if (!b.is_complex && c.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("SdpProblem: complex coefficient on real block " + b.name);
}
}  // namespace

void SdpProblem::add_objective(std::size_t block, const MatrixXcd& c) {
  if (block >= blocks_.size()) throw std::invalid_argument("SdpProblem: bad block index");
  check_coeff(blocks_[block], c);
  auto it = objective_.find(block);
  if (it == objective_.end())
    objective_[block] = c;
  else
    it->second += c;
}

void SdpProblem::add_constraint(Constraint c) {
  for (const auto& [bi, coeff] : c.coeffs) {
    if (bi >= blocks_.size()) throw std::invalid_argument("SdpProblem: bad block index");
    check_coeff(blocks_[bi], coeff);
  }
  constraints_.push_back(std::move(c));
}

void SdpProblem::add_constraint(std::size_t block, const MatrixXcd& coeff, Relation rel,
                                double rhs) {
  Constraint c;
  c.coeffs[block] = coeff;
  c.rel = rel;
  c.rhs = rhs;
  add_constraint(std::move(c));
}

std::string SdpProblem::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << "# qsr sdp dump v1\n";
  os << "sense " << (sense_ == Sense::minimize ? "minimize" : "maximize") << "\n";
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    os << "block " << j << " " << blocks_[j].name << " " << blocks_[j].size << " "
       << (blocks_[j].is_complex ? "complex" : "real") << "\n";
  auto emit = [&os](const std::string& tag, std::size_t block, const MatrixXcd& m) {
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c)
        if (m(r, c) != Complex(0, 0))
          os << tag << " " << block << " " << r << " " << c << " " << m(r, c).real()
             << " " << m(r, c).imag() << "\n";
  };
  for (const auto& [bi, c] : objective_) emit("objective", bi, c);
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& con = constraints_[i];
    const char* rel = con.rel == Relation::eq ? "eq" : (con.rel == Relation::le ? "le" : "ge");
    os << "constraint " << i << " " << rel << " " << con.rhs << "\n";
    for (const auto& [bi, c] : con.coeffs) emit("coeff." + std::to_string(i), bi, c);
  }
  return os.str();
}

namespace {

MatrixXcd embed_matrix(const MatrixXcd& a) {
  long d = a.rows();
  MatrixXd re = a.real(), im = a.imag();
  MatrixXd out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = re;
  out.bottomRightCorner(d, d) = re;
  out.topRightCorner(d, d) = -im;
  out.bottomLeftCorner(d, d) = im;
  return out.cast<Complex>();
}

}  // namespace

SdpProblem embed_complex(const SdpProblem& p) {
  bool any = false;
  for (const auto& b : p.blocks()) any |= b.is_complex;
  if (!any) return p;

  SdpProblem out(p.sense(), 2 * p.size_cap());
  for (const auto& b : p.blocks())
    out.add_block(b.name, b.is_complex ? 2 * b.size : b.size, /*is_complex=*/false);

  auto map_coeff = [&](std::size_t bi, const MatrixXcd& c) -> MatrixXcd {
    if (p.blocks()[bi].is_complex) return 0.5 * embed_matrix(c);
    return c.real().cast<Complex>();
  };
  for (const auto& [bi, c] : p.objective()) out.add_objective(bi, map_coeff(bi, c));
  for (const auto& con : p.constraints()) {
    SdpProblem::Constraint nc;
    nc.rel = con.rel;
    nc.rhs = con.rhs;
    for (const auto& [bi, c] : con.coeffs) nc.coeffs[bi] = map_coeff(bi, c);
    out.add_constraint(std::move(nc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interior-point core (real symmetric blocks, equality standard form).
// ---------------------------------------------------------------------------

namespace {

struct Entry {
  long r, c;
  double v;
};

struct StdForm {
  std::vector<long> bsize;
  std::vector<MatrixXd> cost;                                   // per block
  std::vector<std::vector<std::pair<std::size_t, std::vector<Entry>>>> cons;
  std::vector<double> rhs;
  double obj_sign = 1.0;   // applied to reported values
  double obj_scale = 1.0;  // internal normalization of the cost matrices
  std::size_t n_problem_blocks = 0;  // blocks before appended slacks
};

std::vector<Entry> sparsify(const MatrixXcd& m) {
  std::vector<Entry> out;
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      double v = m(r, c).real();
      if (std::abs(v) > kCoeffZero) out.push_back({r, c, v});
    }
  return out;
}

double sparse_dot(const std::vector<Entry>& a, const MatrixXd& x) {
  double acc = 0;
  for (const auto& e : a) acc += e.v * x(e.r, e.c);
  return acc;
}

void sparse_axpy(double alpha, const std::vector<Entry>& a, MatrixXd& x) {
  for (const auto& e : a) x(e.r, e.c) += alpha * e.v;
}

// Largest alpha in (0, inf] with X + alpha * dX psd, via lambda_min of
// L^{-1} dX L^{-T}.
double step_to_boundary(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd l = llt.matrixL();
  MatrixXd s = l.triangularView<Eigen::Lower>().solve(dx);
  s = l.triangularView<Eigen::Lower>().solve(s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es((s + s.transpose()) * 0.5,
                                             Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Nesterov-Todd scaling point: W psd with W Z W = X.
bool nt_scaling(const MatrixXd& x, const MatrixXd& z, MatrixXd& w) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return false;
  MatrixXd lx = llt.matrixL();
  MatrixXd m = lx.transpose() * z * lx;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es((m + m.transpose()) * 0.5);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) return false;
  MatrixXd lq = lx * es.eigenvectors();
  w = lq * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * lq.transpose();
  return true;
}

struct IpmState {
  std::vector<MatrixXd> x, z;
  VectorXd y;
};

struct IpmResult {
  SdpSolution::Status status = SdpSolution::Status::max_iter;
  int iterations = 0;
  std::string diagnostics;
  IpmState state;
};

IpmResult ipm_solve(const StdForm& f, double tol, int max_iter) {
  const std::size_t nb = f.bsize.size();
  const std::size_t m = f.cons.size();
  long ntot = 0;
  for (long s : f.bsize) ntot += s;

  double bmax = 0, cmax = 0;
  for (double b : f.rhs) bmax = std::max(bmax, std::abs(b));
  for (const auto& c : f.cost) if (c.size()) cmax = std::max(cmax, c.cwiseAbs().maxCoeff());

  IpmResult res;
  res.state.x.resize(nb);
  res.state.z.resize(nb);
  double xi = std::max(10.0, 2.0 * bmax);
  double eta = std::max(10.0, 2.0 * cmax);
  for (std::size_t j = 0; j < nb; ++j) {
    res.state.x[j] = xi * MatrixXd::Identity(f.bsize[j], f.bsize[j]);
    res.state.z[j] = eta * MatrixXd::Identity(f.bsize[j], f.bsize[j]);
  }
  res.state.y = VectorXd::Zero((Eigen::Index)m);

  auto& x = res.state.x;
  auto& z = res.state.z;
  auto& y = res.state.y;

  std::vector<MatrixXd> w(nb), rd(nb), wrw(nb), dz(nb), dx(nb), zinv(nb);
  VectorXd rp((Eigen::Index)m);
  Eigen::MatrixXd schur((Eigen::Index)m, (Eigen::Index)m);

  // Most accurate iterate seen so far; on numerical breakdown near the
  // optimum (thin interiors make the scaling collapse) it is returned with a
  // relaxed tolerance instead of failing outright.
  IpmState best;
  double best_merit = std::numeric_limits<double>::infinity();
  auto finish_with_best = [&](const std::string& why) {
    if (best_merit <= 1000.0) {  // within 1000x of the requested tolerance
      res.state = best;
      res.status = SdpSolution::Status::optimal;
      res.diagnostics = "reduced accuracy (merit " + std::to_string(best_merit) +
                        ") after " + why;
    } else {
      res.diagnostics = "numerical breakdown: " + why + " (best merit " +
                        std::to_string(best_merit) + ")";
    }
    return res;
  };

  int stalls = 0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    res.iterations = iter;

    // Residuals.
    double primal_obj = 0, dual_obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double ax = 0;
      for (const auto& [bj, ent] : f.cons[i]) ax += sparse_dot(ent, x[bj]);
      rp((Eigen::Index)i) = f.rhs[i] - ax;
      dual_obj += f.rhs[i] * y((Eigen::Index)i);
    }
    double mu = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      rd[j] = f.cost[j] - z[j];
      primal_obj += (f.cost[j].array() * x[j].array()).sum();
      mu += (x[j].array() * z[j].array()).sum();
    }
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& [bj, ent] : f.cons[i]) sparse_axpy(-y((Eigen::Index)i), ent, rd[bj]);
    mu /= (double)ntot;

    double prim_res = rp.size() ? rp.cwiseAbs().maxCoeff() : 0.0;
    double dual_res = 0;
    for (const auto& r : rd) dual_res = std::max(dual_res, r.cwiseAbs().maxCoeff());
    double gap_ok_at = tol * (1.0 / f.obj_scale +
                              std::min(std::abs(primal_obj), std::abs(dual_obj)));

    double merit = std::max({prim_res / (tol * (1 + bmax)),
                             dual_res / (tol * (1 + cmax)),
                             std::abs(primal_obj - dual_obj) / gap_ok_at});
    if (merit < best_merit) {
      best_merit = merit;
      best = res.state;
    }
    if (merit <= 1.0) {
      res.status = SdpSolution::Status::optimal;
      return res;
    }

    // Infeasibility heuristic: a diverging dual with b'y > 0 and A^T(y) <~ 0
    // is an improving ray.
    double ynorm = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
    if (ynorm > 1e8 * (1 + bmax + cmax)) {
      double by = 0;
      for (std::size_t i = 0; i < m; ++i) by += f.rhs[i] * y((Eigen::Index)i);
      double aty_max = 0;
      for (std::size_t j = 0; j < nb; ++j) {
        MatrixXd aty = MatrixXd::Zero(f.bsize[j], f.bsize[j]);
        for (std::size_t i = 0; i < m; ++i)
          for (const auto& [bj, ent] : f.cons[i])
            if (bj == j) sparse_axpy(y((Eigen::Index)i), ent, aty);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es((aty + aty.transpose()) * 0.5,
                                                   Eigen::EigenvaluesOnly);
        aty_max = std::max(aty_max, es.eigenvalues().maxCoeff());
      }
      if (by > tol * ynorm && aty_max <= tol * ynorm) {
        res.status = SdpSolution::Status::infeasible;
        res.diagnostics = "dual improving ray: b'y = " + std::to_string(by / ynorm) +
                          " per unit y, lambda_max(A^T y) = " +
                          std::to_string(aty_max / ynorm);
        return res;
      }
    }

    // Scaling and Schur complement.
    bool ok = true;
    for (std::size_t j = 0; j < nb && ok; ++j) ok = nt_scaling(x[j], z[j], w[j]);
    if (!ok)
      return finish_with_best("NT scaling failed at iteration " + std::to_string(iter));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = k; l < m; ++l) {
        double acc = 0;
        auto itk = f.cons[k].begin();
        auto itl = f.cons[l].begin();
        while (itk != f.cons[k].end() && itl != f.cons[l].end()) {
          if (itk->first < itl->first) {
            ++itk;
          } else if (itl->first < itk->first) {
            ++itl;
          } else {
            const MatrixXd& wj = w[itk->first];
            for (const auto& a : itk->second)
              for (const auto& b : itl->second)
                acc += a.v * b.v * wj(a.r, b.r) * wj(a.c, b.c);
            ++itk;
            ++itl;
          }
        }
        schur((Eigen::Index)k, (Eigen::Index)l) = acc;
        schur((Eigen::Index)l, (Eigen::Index)k) = acc;
      }

    Eigen::LDLT<MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      schur.diagonal().array() += 1e-12 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success)
        return finish_with_best("singular Schur complement");
    }

    for (std::size_t j = 0; j < nb; ++j) {
      wrw[j] = w[j] * rd[j] * w[j];
      Eigen::LLT<MatrixXd> llt(z[j]);
      zinv[j] = llt.solve(MatrixXd::Identity(f.bsize[j], f.bsize[j]));
    }

    auto direction = [&](double sigma_mu, VectorXd& dy) {
      VectorXd rhs((Eigen::Index)m);
      for (std::size_t i = 0; i < m; ++i) {
        double t = rp((Eigen::Index)i);
        for (const auto& [bj, ent] : f.cons[i]) {
          t += sparse_dot(ent, x[bj]) - sigma_mu * sparse_dot(ent, zinv[bj]);
          t += sparse_dot(ent, wrw[bj]);
        }
        rhs((Eigen::Index)i) = t;
      }
      dy = ldlt.solve(rhs);
      for (std::size_t j = 0; j < nb; ++j) dz[j] = rd[j];
      for (std::size_t i = 0; i < m; ++i)
        for (const auto& [bj, ent] : f.cons[i])
          sparse_axpy(-dy((Eigen::Index)i), ent, dz[bj]);
      for (std::size_t j = 0; j < nb; ++j) {
        dx[j] = sigma_mu * zinv[j] - x[j] - w[j] * dz[j] * w[j];
        dx[j] = ((dx[j] + dx[j].transpose()) * 0.5).eval();
      }
    };

    // Predictor to pick the centering weight, then the actual step.
    VectorXd dy;
    direction(0.0, dy);
    double ap = 1.0, ad = 1.0;
    for (std::size_t j = 0; j < nb; ++j) {
      ap = std::min(ap, step_to_boundary(x[j], dx[j]));
      ad = std::min(ad, step_to_boundary(z[j], dz[j]));
    }
    double gap_aff = 0;
    for (std::size_t j = 0; j < nb; ++j)
      gap_aff += ((x[j] + std::min(1.0, ap) * dx[j]).array() *
                  (z[j] + std::min(1.0, ad) * dz[j]).array())
                     .sum();
    double sigma = std::pow(std::max(gap_aff, 0.0) / (mu * ntot), 3.0);
    sigma = std::clamp(sigma, 1e-4, 0.999);

    direction(sigma * mu, dy);
    ap = ad = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nb; ++j) {
      ap = std::min(ap, step_to_boundary(x[j], dx[j]));
      ad = std::min(ad, step_to_boundary(z[j], dz[j]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3)
        return finish_with_best("step size collapsed at iteration " +
                                std::to_string(iter));
    } else {
      stalls = 0;
    }

    for (std::size_t j = 0; j < nb; ++j) {
      x[j] += ap * dx[j];
      z[j] += ad * dz[j];
    }
    y += ad * dy;
  }

  return finish_with_best("max_iter reached");
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, double tol, int max_iter) {
  if (tol <= 0) throw std::invalid_argument("sdp::solve: tol must be positive");
  if (problem.constraints().empty())
    throw std::invalid_argument("sdp::solve: problem has no constraints");

  SdpProblem p = embed_complex(problem);

  StdForm f;
  f.obj_sign = (p.sense() == Sense::maximize) ? -1.0 : 1.0;
  f.n_problem_blocks = p.blocks().size();
  for (const auto& b : p.blocks()) {
    f.bsize.push_back(b.size);
    f.cost.push_back(MatrixXd::Zero(b.size, b.size));
  }
  double cmax = 0;
  for (const auto& [bi, c] : p.objective())
    cmax = std::max(cmax, c.cwiseAbs().maxCoeff());
  f.obj_scale = std::max(1.0, cmax);
  for (const auto& [bi, c] : p.objective())
    f.cost[bi] = f.obj_sign / f.obj_scale * c.real();

  for (const auto& con : p.constraints()) {
    std::vector<std::pair<std::size_t, std::vector<Entry>>> terms;
    for (const auto& [bi, c] : con.coeffs) {
      auto ent = sparsify(c);
      if (!ent.empty()) terms.emplace_back(bi, std::move(ent));
    }
    if (con.rel != Relation::eq) {
      // Slack block: <A,X> + s = b for le, minus for ge.
      std::size_t sb = f.bsize.size();
      f.bsize.push_back(1);
      f.cost.push_back(MatrixXd::Zero(1, 1));
      terms.emplace_back(sb, std::vector<Entry>{{0, 0, con.rel == Relation::le ? 1.0 : -1.0}});
    }
    f.cons.push_back(std::move(terms));
    f.rhs.push_back(con.rhs);
  }

  IpmResult r = ipm_solve(f, tol, max_iter);

  SdpSolution sol;
  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.diagnostics = r.diagnostics;

  if (r.status == SdpSolution::Status::infeasible) return sol;

  // De-embed block values and evaluate the objective against the original data.
  sol.block_values.resize(problem.blocks().size());
  for (std::size_t j = 0; j < problem.blocks().size(); ++j) {
    const MatrixXd& xr = r.state.x[j];
    if (problem.blocks()[j].is_complex && p.blocks()[j].size == 2 * problem.blocks()[j].size) {
      long d = problem.blocks()[j].size;
      MatrixXd re = 0.5 * (xr.topLeftCorner(d, d) + xr.bottomRightCorner(d, d));
      MatrixXd im = 0.5 * (xr.bottomLeftCorner(d, d) - xr.topRightCorner(d, d));
      MatrixXcd xc = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
      sol.block_values[j] = ((xc + xc.adjoint()) * 0.5).eval();
    } else {
      sol.block_values[j] = xr.cast<Complex>();
    }
  }
  double primal = 0;
  for (const auto& [bi, c] : problem.objective())
    primal += (c.adjoint() * sol.block_values[bi]).trace().real();
  sol.primal_value = primal;
  double dual = 0;
  for (std::size_t i = 0; i < f.cons.size(); ++i)
    dual += f.rhs[i] * r.state.y((Eigen::Index)i);
  sol.dual_value = f.obj_sign * f.obj_scale * dual;
  return sol;
}

// ---------------------------------------------------------------------------
// Constraint-building helpers.
// ---------------------------------------------------------------------------

void add_hermitian_equality(SdpProblem& p, const std::vector<MatrixTerm>& terms,
                            const MatrixXcd& target) {
  long dim = target.rows();
  if (target.cols() != dim)
    throw std::invalid_argument("add_hermitian_equality: target not square");
  for (long r = 0; r < dim; ++r)
    for (long c = r; c < dim; ++c) {
      SdpProblem::Constraint re_con, im_con;
      re_con.rel = im_con.rel = Relation::eq;
      re_con.rhs = target(r, c).real();
      im_con.rhs = target(r, c).imag();
      for (const auto& t : terms) {
        MatrixXcd k = t.k(r, c);
        if (k.size() == 0) continue;
        bool cplx = p.blocks()[t.block].is_complex;
        MatrixXcd re_coeff = (k + k.adjoint()) * 0.5;
        // On a real symmetric block only the real symmetric part of a
        // Hermitian coefficient pairs nontrivially (the imaginary part is
        // antisymmetric), so project it out.
        if (!cplx) re_coeff = re_coeff.real().cast<Complex>();
        if (re_coeff.cwiseAbs().maxCoeff() > 0) {
          auto it = re_con.coeffs.find(t.block);
          if (it == re_con.coeffs.end())
            re_con.coeffs[t.block] = re_coeff;
          else
            it->second += re_coeff;
        }
        if (r != c) {
          MatrixXcd im_coeff = (k - k.adjoint()) / Complex(0, 2);
          if (!cplx) im_coeff = im_coeff.real().cast<Complex>();
          if (im_coeff.cwiseAbs().maxCoeff() > 0) {
            auto jt = im_con.coeffs.find(t.block);
            if (jt == im_con.coeffs.end())
              im_con.coeffs[t.block] = im_coeff;
            else
              jt->second += im_coeff;
          }
        }
      }
      if (!re_con.coeffs.empty())
        p.add_constraint(std::move(re_con));
      else if (std::abs(re_con.rhs) > 1e-14)
        throw std::invalid_argument(
            "add_hermitian_equality: nonzero target entry with vanishing coefficients");
      if (r != c) {
        if (!im_con.coeffs.empty())
          p.add_constraint(std::move(im_con));
        else if (std::abs(im_con.rhs) > 1e-14)
          throw std::invalid_argument(
              "add_hermitian_equality: nonzero target entry with vanishing coefficients");
      }
    }
}

MatrixTerm term_identity(std::size_t block, long dim, double scale) {
  return {block, [dim, scale](long r, long c) -> MatrixXcd {
            MatrixXcd k = MatrixXcd::Zero(dim, dim);
            k(c, r) = scale;  // Tr[E_cr X] = X_rc
            return k;
          }};
}

MatrixTerm term_subblock(std::size_t block, long block_dim, long offset, long dim,
                         double scale) {
  if (offset + dim > block_dim)
    throw std::invalid_argument("term_subblock: sub-block exceeds block dimension");
  return {block, [block_dim, offset, scale](long r, long c) -> MatrixXcd {
            MatrixXcd k = MatrixXcd::Zero(block_dim, block_dim);
            k(offset + c, offset + r) = scale;
            return k;
          }};
}

MatrixTerm term_id_tensor(std::size_t block, long dim_left, long dim_right, double scale) {
  return {block, [dim_left, dim_right, scale](long r, long c) -> MatrixXcd {
            long ar = r / dim_right, ir = r % dim_right;
            long ac = c / dim_right, ic = c % dim_right;
            if (ar != ac) return MatrixXcd();
            MatrixXcd k = MatrixXcd::Zero(dim_right, dim_right);
            k(ic, ir) = scale;
            return k;
          }};
}

MatrixTerm term_scalar_times(std::size_t block, const MatrixXcd& fixed) {
  return {block, [fixed](long r, long c) -> MatrixXcd {
            MatrixXcd k(1, 1);
            k(0, 0) = fixed(r, c);
            return k;
          }};
}

}  // namespace qsr::sdp
