#include "qsr/state.hpp"

#include <algorithm>
#include <cmath>

namespace qsr {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kTraceTol = 1e-10;

void check_density_invariants(const MatrixXcd& m, TraceClass tc, bool check_psd) {
  if (m.rows() != m.cols()) throw std::invalid_argument("DensityOperator: non-square matrix");
  if (hermiticity_defect(m) > kHermTol)
    throw std::invalid_argument("DensityOperator: matrix not Hermitian within 1e-10");
  double tr = m.trace().real();
  if (tr < -kTraceTol || tr > 1.0 + kTraceTol)
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr) +
                                " outside [0, 1]");
  if (tc == TraceClass::normalized && std::abs(tr - 1.0) > kTraceTol)
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr) +
                                " not 1 for normalized state");
  if (check_psd) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es((m + m.adjoint().eval()) * 0.5,
                                                Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
      throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                  std::to_string(es.eigenvalues().minCoeff()));
  }
}

// Flat offsets contributed by each flat index of the sub-layout `part` within
// the full layout (explicit index map for the row-major convention).
std::vector<long> offsets_in(const SystemLayout& full, const SystemLayout& part) {
  std::vector<long> full_strides(full.size());
  {
    long acc = 1;
    for (std::size_t i = full.size(); i-- > 0;) {
      full_strides[i] = acc;
      acc *= full.subsystems()[i].dim;
    }
  }
  std::vector<long> part_pos;
  for (const auto& s : part.subsystems()) part_pos.push_back((long)full.index_of(s.label));

  std::vector<long> offsets((std::size_t)part.total_dim(), 0);
  for (long flat = 0; flat < part.total_dim(); ++flat) {
    auto multi = part.unravel(flat);
    long off = 0;
    for (std::size_t i = 0; i < multi.size(); ++i)
      off += multi[i] * full_strides[(std::size_t)part_pos[i]];
    offsets[(std::size_t)flat] = off;
  }
  return offsets;
}

}  // namespace

DensityOperator::DensityOperator(SystemLayout layout, MatrixXcd matrix, TraceClass tc)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), trace_class_(tc) {
  if (matrix_.rows() != layout_.total_dim())
    throw std::invalid_argument("DensityOperator: matrix dim does not match layout");
  check_density_invariants(matrix_, trace_class_, /*check_psd=*/true);
  matrix_ = ((matrix_ + matrix_.adjoint().eval()) * 0.5).eval();
}

DensityOperator DensityOperator::unchecked(SystemLayout layout, MatrixXcd matrix,
                                           TraceClass tc) {
  DensityOperator out;
  out.layout_ = std::move(layout);
  out.matrix_ = std::move(matrix);
  out.trace_class_ = tc;
  if (out.matrix_.rows() != out.layout_.total_dim())
    throw std::invalid_argument("DensityOperator: matrix dim does not match layout");
  check_density_invariants(out.matrix_, tc, /*check_psd=*/false);
  return out;
}

PureStateVector::PureStateVector(SystemLayout layout, VectorXcd amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.total_dim())
    throw std::invalid_argument("PureStateVector: vector dim does not match layout");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("PureStateVector: norm not 1 within 1e-12");
}

DensityOperator PureStateVector::projector() const {
  return DensityOperator::unchecked(layout_, amplitudes_ * amplitudes_.adjoint(),
                                    TraceClass::normalized);
}

DensityOperator PureStateVector::marginal(const std::vector<std::string>& keep) const {
  return partial_trace(projector(), keep);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SystemLayout layout = a.layout().concat(b.layout());
  long da = a.dim(), db = b.dim();
  MatrixXcd out(da * db, da * db);
  for (long ia = 0; ia < da; ++ia)
    for (long ja = 0; ja < da; ++ja)
      out.block(ia * db, ja * db, db, db) = a.matrix()(ia, ja) * b.matrix();
  TraceClass tc = (a.is_normalized() && b.is_normalized()) ? TraceClass::normalized
                                                           : TraceClass::subnormalized;
  return DensityOperator::unchecked(std::move(layout), std::move(out), tc);
}

PureStateVector tensor(const PureStateVector& a, const PureStateVector& b) {
  SystemLayout layout = a.layout().concat(b.layout());
  long da = a.dim(), db = b.dim();
  VectorXcd out(da * db);
  for (long ia = 0; ia < da; ++ia) out.segment(ia * db, db) = a.amplitudes()(ia) * b.amplitudes();
  return PureStateVector(std::move(layout), std::move(out));
}

MatrixXcd partial_trace(const MatrixXcd& m, const SystemLayout& layout,
                        const std::vector<std::string>& keep) {
  SystemLayout keep_layout = layout.restricted(keep);
  SystemLayout trace_layout = layout.restricted(layout.complement(keep));
  auto keep_off = offsets_in(layout, keep_layout);
  auto tr_off = offsets_in(layout, trace_layout);
  long dk = keep_layout.total_dim();
  MatrixXcd out = MatrixXcd::Zero(dk, dk);
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j) {
      Complex acc = 0;
      for (long t : tr_off) acc += m(keep_off[(std::size_t)i] + t, keep_off[(std::size_t)j] + t);
      out(i, j) = acc;
    }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  SystemLayout keep_layout = rho.layout().restricted(keep);
  MatrixXcd out = partial_trace(rho.matrix(), rho.layout(), keep);
  return DensityOperator::unchecked(std::move(keep_layout), std::move(out),
                                    rho.trace_class());
}

PureStateVector purify(const DensityOperator& rho, const std::string& ref_label) {
  if (!rho.is_normalized())
    throw std::invalid_argument("purify: input must be normalized");
  auto [vals, vecs] = hermitian_eig(rho.matrix());
  long d = rho.dim();
  long rank = numerical_rank(vals);
  if (rank < 1) rank = 1;
  SystemLayout layout = rho.layout().concat(SystemLayout::single(ref_label, rank));
  VectorXcd amps = VectorXcd::Zero(d * rank);
  // Eigenvalues ascending; pair the k-th reference basis vector with the k-th
  // largest eigenvalue.
  for (long k = 0; k < rank; ++k) {
    Eigen::Index idx = vals.size() - 1 - k;
    double lam = std::max(vals(idx), 0.0);
    for (long a = 0; a < d; ++a) amps(a * rank + k) = std::sqrt(lam) * vecs(a, idx);
  }
  amps /= amps.norm();
  return PureStateVector(std::move(layout), std::move(amps));
}

double fidelity(const MatrixXcd& rho, const MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  MatrixXcd s = psd_sqrt(rho);
  MatrixXcd inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es((inner + inner.adjoint().eval()) * 0.5,
                                              Eigen::EigenvaluesOnly);
  // Drop round-off eigenvalues; sqrt would otherwise inflate them to ~1e-8.
  double lmax = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
  double cut = 1e-14 * std::max(lmax, 1e-300);
  double f = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cut) f += std::sqrt(es.eigenvalues()(i));
  return f;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.layout() != sigma.layout())
    throw std::invalid_argument("fidelity: layout mismatch");
  return fidelity(rho.matrix(), sigma.matrix());
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.layout() != sigma.layout())
    throw std::invalid_argument("trace_distance: layout mismatch");
  auto [vals, vecs] = hermitian_eig(rho.matrix() - sigma.matrix());
  return 0.5 * vals.cwiseAbs().sum();
}

PureStateVector permute(const PureStateVector& psi,
                        const std::vector<std::string>& new_order) {
  if (new_order.size() != psi.layout().size())
    throw std::invalid_argument("permute: label count mismatch");
  std::vector<SystemLayout::Subsystem> subs;
  for (const auto& l : new_order)
    subs.push_back({l, psi.layout().dim_of(l)});
  SystemLayout new_layout(std::move(subs));
  // When the sub-layout covers the whole layout, offsets_in maps each new flat
  // index to the corresponding old flat index.
  auto off = offsets_in(psi.layout(), new_layout);
  VectorXcd out(psi.dim());
  for (long i = 0; i < psi.dim(); ++i) out(i) = psi.amplitudes()(off[(std::size_t)i]);
  return PureStateVector(std::move(new_layout), std::move(out));
}

DensityOperator permute(const DensityOperator& rho,
                        const std::vector<std::string>& new_order) {
  if (new_order.size() != rho.layout().size())
    throw std::invalid_argument("permute: label count mismatch");
  std::vector<SystemLayout::Subsystem> subs;
  for (const auto& l : new_order) subs.push_back({l, rho.layout().dim_of(l)});
  SystemLayout new_layout(std::move(subs));
  auto off = offsets_in(rho.layout(), new_layout);
  long d = rho.dim();
  MatrixXcd out(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      out(i, j) = rho.matrix()(off[(std::size_t)i], off[(std::size_t)j]);
  return DensityOperator::unchecked(std::move(new_layout), std::move(out),
                                    rho.trace_class());
}

std::pair<SystemLayout, VectorXcd> apply_on(const PureStateVector& psi,
                                            const std::vector<std::string>& targets,
                                            const MatrixXcd& op,
                                            const SystemLayout& out_layout) {
  std::vector<std::string> order = targets;
  for (const auto& l : psi.layout().complement(targets)) order.push_back(l);
  PureStateVector front = permute(psi, order);
  long d_t = psi.layout().dim_of(targets);
  long d_rest = psi.dim() / d_t;
  if (op.cols() != d_t)
    throw std::invalid_argument("apply_on: operator input dim mismatch");
  if (op.rows() != out_layout.total_dim())
    throw std::invalid_argument("apply_on: operator output dim does not match out_layout");
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      in(front.amplitudes().data(), d_t, d_rest);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> outm = op * in;
  SystemLayout new_layout = out_layout.concat(
      front.layout().restricted(psi.layout().complement(targets)));
  VectorXcd flat = Eigen::Map<VectorXcd>(outm.data(), outm.size());
  return {std::move(new_layout), std::move(flat)};
}

PureStateVector split_subsystem(const PureStateVector& psi, const std::string& label,
                                const std::string& label_hi, long dim_hi,
                                const std::string& label_lo, long dim_lo) {
  std::size_t pos = psi.layout().index_of(label);
  if (dim_hi * dim_lo != psi.layout().dim_of(label))
    throw std::invalid_argument("split_subsystem: dims do not factor " + label);
  std::vector<SystemLayout::Subsystem> subs = psi.layout().subsystems();
  subs[pos] = {label_hi, dim_hi};
  subs.insert(subs.begin() + (long)pos + 1, {label_lo, dim_lo});
  // Row-major: splitting one index into (hi, lo) leaves the flat amplitudes
  // unchanged.
  return PureStateVector(SystemLayout(std::move(subs)), psi.amplitudes());
}

PureStateVector rename_subsystem(const PureStateVector& psi, const std::string& from,
                                 const std::string& to) {
  std::vector<SystemLayout::Subsystem> subs = psi.layout().subsystems();
  subs[psi.layout().index_of(from)].label = to;
  return PureStateVector(SystemLayout(std::move(subs)), psi.amplitudes());
}

PureStateVector max_entangled(const std::string& label_a, const std::string& label_b,
                              long d) {
  SystemLayout layout({{label_a, d}, {label_b, d}});
  VectorXcd amps = VectorXcd::Zero(d * d);
  for (long i = 0; i < d; ++i) amps(i * d + i) = 1.0 / std::sqrt((double)d);
  return PureStateVector(std::move(layout), std::move(amps));
}

PureStateVector basis_state(const SystemLayout& layout, long index) {
  VectorXcd amps = VectorXcd::Zero(layout.total_dim());
  amps(index) = 1.0;
  return PureStateVector(layout, std::move(amps));
}

}  // namespace qsr
