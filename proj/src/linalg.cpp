#include "qsr/linalg.hpp"

#include <functional>
#include <stdexcept>

namespace qsr {

double hermiticity_defect(const MatrixXcd& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

std::pair<VectorXd, MatrixXcd> hermitian_eig(const MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: non-square");
  double defect = hermiticity_defect(m);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (defect > tol * scale)
    throw std::invalid_argument("hermitian_eig: input not Hermitian (defect " +
                                std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es((m + m.adjoint().eval()) * 0.5);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

MatrixXcd hermitian_function(const MatrixXcd& m, const std::function<double(double)>& f) {
  auto [vals, vecs] = hermitian_eig(m);
  VectorXd fv(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) fv(i) = f(vals(i));
  return vecs * fv.asDiagonal() * vecs.adjoint();
}

MatrixXcd psd_sqrt(const MatrixXcd& m) {
  return hermitian_function(
      m, [](double x) { return x > kEigClip ? std::sqrt(x) : 0.0; });
}

MatrixXcd psd_inv_sqrt(const MatrixXcd& m, double threshold) {
  return hermitian_function(
      m, [threshold](double x) { return x > threshold ? 1.0 / std::sqrt(x) : 0.0; });
}

long numerical_rank(const VectorXd& eigenvalues, double rel_threshold) {
  double lmax = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  if (lmax <= 0) return 0;
  long r = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > rel_threshold * lmax) ++r;
  return r;
}

MatrixXcd support_projector(const MatrixXcd& m, double rel_threshold) {
  auto [vals, vecs] = hermitian_eig(m);
  double lmax = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  MatrixXcd p = MatrixXcd::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (lmax > 0 && vals(i) > rel_threshold * lmax)
      p += vecs.col(i) * vecs.col(i).adjoint();
  return p;
}

}  // namespace qsr
