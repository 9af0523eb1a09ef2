#include "tprod/mat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tprod {

namespace {

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// 2x2 unitary annihilating the (p,q) entry of a Hermitian matrix with
// diagonal (app, aqq) and off-diagonal apq: factor out the phase of apq and
// apply the classic real Jacobi rotation.
struct Rotation {
  double c;
  cplx s_pq;  // entry (p,q) of the rotation
  cplx s_qp;  // entry (q,p)
};

Rotation make_rotation(double app, double aqq, cplx apq) {
  const double r = std::abs(apq);
  const cplx phase = apq / r;
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return Rotation{c, s * phase, -s * std::conj(phase)};
}

}  // namespace

HermitianEigen hermitian_eigen(const Mat& a, double tol) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("hermitian_eigen: matrix must be square");
  Mat w = 0.5 * (a + a.adjoint());  // symmetrize tiny asymmetries
  Mat v = Mat::Identity(n, n);
  const double scale = w.norm();
  if (scale > 0.0) {
    for (int sweep = 0; sweep < 80; ++sweep) {
      if (off_diagonal_norm(w) <= tol * scale) break;
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const cplx apq = w(p, q);
          if (std::abs(apq) <= 1e-300) continue;
          const Rotation rot =
              make_rotation(std::real(w(p, p)), std::real(w(q, q)), apq);
          // w <- J^H w J applied to rows/columns p and q; v <- v J.
          for (int i = 0; i < n; ++i) {
            const cplx wip = w(i, p), wiq = w(i, q);
            w(i, p) = rot.c * wip + rot.s_qp * wiq;
            w(i, q) = rot.s_pq * wip + rot.c * wiq;
          }
          for (int i = 0; i < n; ++i) {
            const cplx wpi = w(p, i), wqi = w(q, i);
            w(p, i) = rot.c * wpi + std::conj(rot.s_qp) * wqi;
            w(q, i) = std::conj(rot.s_pq) * wpi + rot.c * wqi;
          }
          for (int i = 0; i < n; ++i) {
            const cplx vip = v(i, p), viq = v(i, q);
            v(i, p) = rot.c * vip + rot.s_qp * viq;
            v(i, q) = rot.s_pq * vip + rot.c * viq;
          }
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = std::real(w(i, i));
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return diag[i] > diag[j]; });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

Svd jacobi_svd(const Mat& a, double tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Mat w = a;
  Mat v = Mat::Identity(n, n);
  const double scale = w.norm();
  if (scale > 0.0) {
    for (int sweep = 0; sweep < 80; ++sweep) {
      bool rotated = false;
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double alpha = w.col(p).squaredNorm();
          const double beta = w.col(q).squaredNorm();
          const cplx gamma = w.col(p).dot(w.col(q));  // conj(w_p) . w_q
          if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) ||
              std::abs(gamma) <= 1e-300)
            continue;
          rotated = true;
          const Rotation rot = make_rotation(alpha, beta, gamma);
          for (int i = 0; i < m; ++i) {
            const cplx wip = w(i, p), wiq = w(i, q);
            w(i, p) = rot.c * wip + rot.s_qp * wiq;
            w(i, q) = rot.s_pq * wip + rot.c * wiq;
          }
          for (int i = 0; i < n; ++i) {
            const cplx vip = v(i, p), viq = v(i, q);
            v(i, p) = rot.c * vip + rot.s_qp * viq;
            v(i, q) = rot.s_pq * vip + rot.c * viq;
          }
        }
      }
      if (!rotated) break;
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) norms[j] = w.col(j).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return norms[i] > norms[j]; });
  Svd out;
  out.values.resize(n);
  out.u.resize(m, n);
  out.v.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.values[j] = norms[src];
    out.v.col(j) = v.col(src);
    if (norms[src] > 1e-300) {
      out.u.col(j) = w.col(src) / norms[src];
    } else {
      out.u.col(j).setZero();
      out.u(std::min<int>(j, m - 1), j) = 1.0;
    }
  }
  return out;
}

std::vector<double> singular_values(const Mat& a) {
  // One-sided Jacobi works on columns; operate on the thinner orientation.
  if (a.rows() < a.cols()) return jacobi_svd(a.adjoint()).values;
  return jacobi_svd(a).values;
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  std::vector<double> s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

Mat expm_hermitian(const Mat& a) {
  const HermitianEigen e = hermitian_eigen(a);
  Mat d = Mat::Zero(a.rows(), a.cols());
  for (int j = 0; j < a.rows(); ++j) d(j, j) = std::exp(e.values[j]);
  return e.vectors * d * e.vectors.adjoint();
}

Mat logm_hermitian_pd(const Mat& a) {
  const HermitianEigen e = hermitian_eigen(a);
  Mat d = Mat::Zero(a.rows(), a.cols());
  for (int j = 0; j < a.rows(); ++j) {
    if (!(e.values[j] > 0.0))
      throw std::domain_error("logm_hermitian_pd: spectrum must be positive");
    d(j, j) = std::log(e.values[j]);
  }
  return e.vectors * d * e.vectors.adjoint();
}

Mat mat_pow(const Mat& a, long long n) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_pow: matrix must be square");
  if (n < 0) throw std::invalid_argument("mat_pow: exponent must be nonnegative");
  Mat result = Mat::Identity(a.rows(), a.cols());
  Mat base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace tprod
