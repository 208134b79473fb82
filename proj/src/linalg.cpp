#include "bopcrit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>

namespace bopcrit {

namespace {

constexpr double kRcondFloor = 1e-13;

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("matrix must be square and non-empty");
}

void require_symmetric(const Matrix& m) {
  require_square(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix must be symmetric");
}

}  // namespace

Matrix invert(const Matrix& m) {
  require_square(m);
  Eigen::PartialPivLU<Matrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond >= kRcondFloor)) throw SingularMatrixError(rcond);
  return lu.inverse();
}

EigenDecomposition sym_eigen(const Matrix& m) {
  require_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double algebraic_connectivity(const Matrix& laplacian) {
  const EigenDecomposition dec = sym_eigen(laplacian);
  if (dec.eigenvalues.size() < 2)
    throw std::invalid_argument("algebraic connectivity needs at least two nodes");
  return dec.eigenvalues(1);
}

Matrix laplacian_pseudoinverse(const Matrix& laplacian) {
  const EigenDecomposition dec = sym_eigen(laplacian);
  const int n = static_cast<int>(dec.eigenvalues.size());
  const double scale = dec.eigenvalues.cwiseAbs().maxCoeff();
  const double cutoff = 1e-9 * scale;
  int zeros = 0;
  Matrix pinv = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double lambda = dec.eigenvalues(k);
    if (std::abs(lambda) < cutoff || scale == 0.0) {
      ++zeros;
      continue;
    }
    pinv.noalias() += dec.eigenvectors.col(k) * dec.eigenvectors.col(k).transpose() / lambda;
  }
  if (zeros != 1)
    throw DisconnectedGraphError("Laplacian pseudoinverse requires a connected graph (found " +
                                 std::to_string(zeros) + " zero eigenvalues)");
  return pinv;
}

Vector expm_diag(const Matrix& a) {
  const EigenDecomposition dec = sym_eigen(a);
  const int n = static_cast<int>(dec.eigenvalues.size());
  Vector out = Vector::Zero(n);
  const Vector exp_l = dec.eigenvalues.array().exp();
  for (int i = 0; i < n; ++i)
    out(i) = (dec.eigenvectors.row(i).array().square() * exp_l.transpose().array()).sum();
  return out;
}

double dominant_eigenvalue(const Matrix& a) {
  const EigenDecomposition dec = sym_eigen(a);
  return dec.eigenvalues(dec.eigenvalues.size() - 1);
}

}  // namespace bopcrit
