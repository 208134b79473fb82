#pragma once

#include "bopcrit/graph.hpp"

#include <stdexcept>
#include <string>

namespace bopcrit {

// Matrix inversion failed because the input is singular to working precision.
struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(double rcond_estimate, const std::string& context = {})
      : std::runtime_error("matrix is numerically singular (rcond ~ " +
                           std::to_string(rcond_estimate) + ")" +
                           (context.empty() ? "" : " [" + context + "]")),
        rcond(rcond_estimate) {}
  double rcond;
};

struct DisconnectedGraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EigenDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, aligned with eigenvalues
};

// Inverse via partial-pivot LU; rejects inputs whose reciprocal condition
// estimate falls below 1e-13.
Matrix invert(const Matrix& m);

// Full eigendecomposition of a symmetric matrix (rejects asymmetric input).
EigenDecomposition sym_eigen(const Matrix& m);

// Second-smallest Laplacian eigenvalue.
double algebraic_connectivity(const Matrix& laplacian);

// Moore-Penrose pseudoinverse of a connected graph's Laplacian; eigenvalues
// with |lambda| < 1e-9 * max|lambda| are treated as zero, and exactly one
// zero eigenvalue is expected (otherwise the graph is disconnected).
Matrix laplacian_pseudoinverse(const Matrix& laplacian);

// Diagonal of the matrix exponential expm(A) of a symmetric matrix.
Vector expm_diag(const Matrix& a);

// Largest eigenvalue of a symmetric matrix.
double dominant_eigenvalue(const Matrix& a);

}  // namespace bopcrit
