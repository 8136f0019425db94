#ifndef QSR_LINALG_HPP
#define QSR_LINALG_HPP

#include <Eigen/Dense>
#include <functional>
#include <utility>

namespace qsr {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kEigClip = 1e-12;
inline constexpr double kRankTol = 1e-10;

/// Max-abs deviation of M from its adjoint.
double hermiticity_defect(const MatrixXcd& m);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws if the input is not Hermitian within tolerance.
std::pair<VectorXd, MatrixXcd> hermitian_eig(const MatrixXcd& m, double tol = kHermTol);

/// Apply f to the eigenvalues of a Hermitian matrix.
MatrixXcd hermitian_function(const MatrixXcd& m, const std::function<double(double)>& f);

/// PSD square root; negative eigenvalues clipped at kEigClip.
MatrixXcd psd_sqrt(const MatrixXcd& m);

/// Moore-Penrose inverse square root on the support (eigenvalues > threshold).
MatrixXcd psd_inv_sqrt(const MatrixXcd& m, double threshold = kRankTol);

/// Number of eigenvalues above threshold * lambda_max (relative).
long numerical_rank(const VectorXd& eigenvalues, double rel_threshold = kRankTol);

/// Orthogonal projector onto the support of a PSD matrix.
MatrixXcd support_projector(const MatrixXcd& m, double rel_threshold = kRankTol);

}  // namespace qsr

#endif
