#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace tprod {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

struct HermitianEigen {
  std::vector<double> values;  // nonincreasing
  Mat vectors;                 // column j pairs with values[j]
};

// Cyclic Jacobi eigensolver for Hermitian matrices.  Sweeps until the
// off-diagonal Frobenius mass drops below tol * ||a||_F.
HermitianEigen hermitian_eigen(const Mat& a, double tol = 1e-12);

struct Svd {
  std::vector<double> values;  // nonincreasing, >= 0
  Mat u, v;                    // a = u * diag(values) * v^H
};

// One-sided Jacobi SVD: orthogonalizes column pairs by right rotations.
Svd jacobi_svd(const Mat& a, double tol = 1e-13);

std::vector<double> singular_values(const Mat& a);

double spectral_norm(const Mat& a);

bool is_hermitian(const Mat& a, double tol = 1e-10);

// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

// Matrix functions of Hermitian arguments via eigendecomposition.
Mat expm_hermitian(const Mat& a);
Mat logm_hermitian_pd(const Mat& a);  // requires a positive spectrum

// Integer power by repeated squaring.
Mat mat_pow(const Mat& a, long long n);

}  // namespace tprod
