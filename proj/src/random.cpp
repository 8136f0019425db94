#include "qsr/random.hpp"

namespace qsr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

MatrixXcd ginibre(long rows, long cols, Rng& rng) {
  MatrixXcd g(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return g;
}

MatrixXcd haar_unitary(long dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim < 1");
  MatrixXcd g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so that the distribution is exactly Haar.
  for (long j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Complex(1, 0));
  }
  return q;
}

PureStateVector haar_pure(const SystemLayout& layout, Rng& rng) {
  VectorXcd v(layout.total_dim());
  for (long i = 0; i < layout.total_dim(); ++i) v(i) = Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return PureStateVector(layout, std::move(v));
}

DensityOperator random_density(const SystemLayout& layout, Rng& rng) {
  long d = layout.total_dim();
  MatrixXcd g = ginibre(d, d, rng);
  MatrixXcd w = g * g.adjoint();
  w /= w.trace().real();
  return DensityOperator(layout, std::move(w), TraceClass::normalized);
}

}  // namespace qsr
