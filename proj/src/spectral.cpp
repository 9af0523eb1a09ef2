#include "tprod/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tprod/rng.hpp"

namespace tprod {

namespace {

std::vector<cplx> twiddles(int p, double sign) {
  std::vector<cplx> w(p);
  for (int k = 0; k < p; ++k) {
    const double ang = sign * 2.0 * pi * k / p;
    w[k] = cplx(std::cos(ang), std::sin(ang));
  }
  return w;
}

void check_symmetric(const Tensor3& t, const char* who) {
  if (!t.square()) throw std::invalid_argument(std::string(who) + ": slices must be square");
  if (!approx_equal(t, transpose(t), 1e-8, 1e-8))
    throw std::invalid_argument(std::string(who) + ": tensor must be symmetric");
}

SpectrumVec sorted_spectrum(std::vector<std::vector<double>> per_slice) {
  SpectrumVec out;
  for (int i = 0; i < static_cast<int>(per_slice.size()); ++i) {
    std::sort(per_slice[i].begin(), per_slice[i].end(), std::greater<double>());
    for (int j = 0; j < static_cast<int>(per_slice[i].size()); ++j)
      out.push_back({per_slice[i][j], i, j});
  }
  std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.slice != b.slice) return a.slice < b.slice;
    return a.index < b.index;
  });
  return out;
}

}  // namespace

FrequencySlices to_frequency(const Tensor3& t) {
  const int m = t.m(), n = t.n(), p = t.p();
  FrequencySlices f;
  f.m = m;
  f.n = n;
  f.p = p;
  f.slices.resize(p);
  const std::vector<cplx> w = twiddles(p, -1.0);
  std::vector<Mat> slices(p);
  for (int k = 0; k < p; ++k) slices[k] = t.slice(k);
  for (int i = 0; i < p; ++i) {
    Mat acc = Mat::Zero(m, n);
    for (int k = 0; k < p; ++k) acc += w[(static_cast<long long>(i) * k) % p] * slices[k];
    f.slices[i] = std::move(acc);
  }
  return f;
}

Tensor3 from_frequency(const FrequencySlices& f) {
  const int m = f.m, n = f.n, p = f.p;
  if (static_cast<int>(f.slices.size()) != p)
    throw std::invalid_argument("from_frequency: slice count mismatch");
  Tensor3 t(m, n, p);
  const std::vector<cplx> w = twiddles(p, 1.0);
  for (int k = 0; k < p; ++k) {
    Mat acc = Mat::Zero(m, n);
    for (int i = 0; i < p; ++i) acc += w[(static_cast<long long>(i) * k) % p] * f.slices[i];
    t.set_slice(k, acc / static_cast<double>(p));
  }
  return t;
}

std::vector<double> values_of(const SpectrumVec& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].value;
  return out;
}

TEigenDecomposition t_eigen(const Tensor3& t, double herm_tol) {
  check_symmetric(t, "t_eigen");
  const FrequencySlices f = to_frequency(t);
  TEigenDecomposition d;
  d.m = t.m();
  d.p = t.p();
  d.values.resize(t.p());
  d.vectors.resize(t.p());
  for (int i = 0; i < t.p(); ++i) {
    const Mat& s = f.slices[i];
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() > herm_tol * scale)
      throw std::invalid_argument("t_eigen: frequency slice is not Hermitian");
    HermitianEigen e = hermitian_eigen(s);
    d.values[i] = std::move(e.values);
    d.vectors[i] = std::move(e.vectors);
  }
  return d;
}

SpectrumVec t_eigenvalues(const Tensor3& t) {
  TEigenDecomposition d = t_eigen(t);
  return sorted_spectrum(std::move(d.values));
}

SpectrumVec t_singular_values(const Tensor3& t) {
  const FrequencySlices f = to_frequency(t);
  std::vector<std::vector<double>> per_slice(t.p());
  for (int i = 0; i < t.p(); ++i) {
    per_slice[i] = singular_values(f.slices[i]);
    per_slice[i].resize(std::min(t.m(), t.n()), 0.0);
  }
  return sorted_spectrum(std::move(per_slice));
}

SpectralFunction SpectralFunction::make_exp() { return SpectralFunction{Kind::exp_fn, 1.0, {}, 1.0}; }
SpectralFunction SpectralFunction::make_log() { return SpectralFunction{Kind::log_fn, 1.0, {}, 1.0}; }
SpectralFunction SpectralFunction::power(double alpha) {
  return SpectralFunction{Kind::power_fn, alpha, {}, 1.0};
}
SpectralFunction SpectralFunction::polynomial(std::vector<double> coeff, double s) {
  if (coeff.empty()) throw std::invalid_argument("SpectralFunction::polynomial: empty coefficients");
  return SpectralFunction{Kind::poly_fn, 1.0, std::move(coeff), s};
}

double SpectralFunction::eval(double x) const {
  switch (kind) {
    case Kind::exp_fn:
      return std::exp(x);
    case Kind::log_fn:
      if (!(x > 0.0)) throw std::domain_error("SpectralFunction: log of non-positive value");
      return std::log(x);
    case Kind::power_fn:
      if (x < 0.0 && alpha != std::floor(alpha))
        throw std::domain_error("SpectralFunction: fractional power of negative value");
      return std::pow(x, alpha);
    case Kind::poly_fn: {
      double inner = 0.0;
      for (std::size_t l = coeff.size(); l-- > 0;) inner = inner * x + coeff[l];
      if (inner < 0.0 && s != std::floor(s))
        throw std::domain_error("SpectralFunction: fractional power of negative polynomial value");
      return s == 1.0 ? inner : std::pow(inner, s);
    }
  }
  throw std::logic_error("SpectralFunction: bad kind");
}

namespace {

cplx eval_complex(const SpectralFunction& fn, cplx lam) {
  switch (fn.kind) {
    case SpectralFunction::Kind::exp_fn:
      return std::exp(lam);
    case SpectralFunction::Kind::log_fn:
      if (!(lam.real() > 0.0) || std::abs(lam.imag()) > 1e-9 * std::max(1.0, std::abs(lam)))
        throw std::domain_error("apply_spectral_function: log requires a positive spectrum");
      return std::log(lam.real());
    case SpectralFunction::Kind::power_fn:
      if (std::abs(lam.imag()) > 1e-9 * std::max(1.0, std::abs(lam))) return std::pow(lam, fn.alpha);
      if (lam.real() < 0.0 && fn.alpha != std::floor(fn.alpha))
        throw std::domain_error("apply_spectral_function: fractional power of negative eigenvalue");
      if (lam.real() < 0.0) return std::pow(lam.real(), fn.alpha);
      if (lam.real() == 0.0 && fn.alpha < 0.0)
        throw std::domain_error("apply_spectral_function: negative power of zero eigenvalue");
      return std::pow(lam.real(), fn.alpha);
    case SpectralFunction::Kind::poly_fn: {
      cplx inner = 0.0;
      for (std::size_t l = fn.coeff.size(); l-- > 0;) inner = inner * lam + fn.coeff[l];
      if (fn.s == 1.0) return inner;
      if (std::abs(inner.imag()) <= 1e-12 * std::max(1.0, std::abs(inner))) {
        if (inner.real() < 0.0 && fn.s != std::floor(fn.s))
          throw std::domain_error(
              "apply_spectral_function: fractional power of negative polynomial value");
        return inner.real() < 0.0 ? cplx(std::pow(inner.real(), fn.s), 0.0)
                                  : cplx(std::pow(inner.real(), fn.s), 0.0);
      }
      return std::pow(inner, fn.s);
    }
  }
  throw std::logic_error("apply_spectral_function: bad kind");
}

}  // namespace

Tensor3 apply_spectral_function(const Tensor3& t, const SpectralFunction& fn, cplx z) {
  check_symmetric(t, "apply_spectral_function");
  const FrequencySlices f = to_frequency(t);
  FrequencySlices out;
  out.m = f.m;
  out.n = f.n;
  out.p = f.p;
  out.slices.resize(f.p);
  for (int i = 0; i < f.p; ++i) {
    HermitianEigen e = hermitian_eigen(f.slices[i]);
    Mat d = Mat::Zero(f.m, f.m);
    for (int j = 0; j < f.m; ++j) d(j, j) = eval_complex(fn, z * e.values[j]);
    out.slices[i] = e.vectors * d * e.vectors.adjoint();
  }
  return from_frequency(out);
}

namespace {

// min eigenvalue across frequency slices; -inf when any slice is not Hermitian
double min_frequency_eigenvalue(const Tensor3& t, double herm_tol) {
  if (!t.square()) throw std::invalid_argument("is_tpd/is_tpsd: slices must be square");
  const FrequencySlices f = to_frequency(t);
  double lo = std::numeric_limits<double>::infinity();
  for (const Mat& s : f.slices) {
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() > herm_tol * scale)
      return -std::numeric_limits<double>::infinity();
    const HermitianEigen e = hermitian_eigen(s);
    lo = std::min(lo, e.values.back());
  }
  return lo;
}

}  // namespace

bool is_tpd(const Tensor3& t, double tol) { return min_frequency_eigenvalue(t, tol) > tol; }

bool is_tpsd(const Tensor3& t, double tol) { return min_frequency_eigenvalue(t, tol) >= -tol; }

Tensor3 t_abs(const Tensor3& t) {
  if (!t.square()) throw std::invalid_argument("t_abs: slices must be square");
  const FrequencySlices f = to_frequency(t);
  FrequencySlices out;
  out.m = f.m;
  out.n = f.n;
  out.p = f.p;
  out.slices.resize(f.p);
  for (int i = 0; i < f.p; ++i) {
    const Svd s = jacobi_svd(f.slices[i]);
    Mat d = Mat::Zero(f.n, f.n);
    for (int j = 0; j < f.n; ++j) d(j, j) = s.values[j];
    out.slices[i] = s.v * d * s.v.adjoint();
  }
  return from_frequency(out);
}

double ky_fan_norm(const Tensor3& t, int k) {
  const SpectrumVec s = t_singular_values(t);
  if (k < 1 || k > static_cast<int>(s.size()))
    throw std::invalid_argument("ky_fan_norm: k out of range");
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += s[i].value;
  return sum;
}

double schatten_norm(const Tensor3& t, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("schatten_norm: q must be >= 1");
  const SpectrumVec s = t_singular_values(t);
  double sum = 0.0;
  for (const SpectrumEntry& e : s) sum += std::pow(e.value, q);
  return std::pow(sum, 1.0 / q);
}

double spectral_norm(const Tensor3& t) { return ky_fan_norm(t, 1); }

double determinant(const Tensor3& t) {
  const SpectrumVec s = t_eigenvalues(t);
  double prod = 1.0;
  for (const SpectrumEntry& e : s) prod *= e.value;
  return prod;
}

double spectral_trace(const Tensor3& t) {
  check_symmetric(t, "spectral_trace");
  cplx tr = 0.0;
  for (int i = 0; i < t.m(); ++i) tr += t(i, i, 0);
  return static_cast<double>(t.p()) * tr.real();
}

double rayleigh_quotient(const Tensor3& t, const Tensor3& x) {
  check_symmetric(t, "rayleigh_quotient");
  if (x.m() != t.m() || x.n() != 1 || x.p() != t.p())
    throw std::invalid_argument("rayleigh_quotient: x must have shape m x 1 x p");
  const cplx den = inner_product(x, x);
  if (!(den.real() > 0.0)) throw std::invalid_argument("rayleigh_quotient: x must be nonzero");
  const cplx num = inner_product(x, tprod(t, x));
  return num.real() / den.real();
}

double courant_fischer_probe(const Tensor3& t, const std::vector<int>& ks) {
  const TEigenDecomposition d = t_eigen(t);
  if (static_cast<int>(ks.size()) != d.p)
    throw std::invalid_argument("courant_fischer_probe: need one k per frequency slice");
  for (int i = 0; i < d.p; ++i)
    if (ks[i] < 1 || ks[i] > d.m)
      throw std::invalid_argument("courant_fischer_probe: k out of range");
  double lam = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.p; ++i) lam = std::min(lam, d.values[i][ks[i] - 1]);
  for (int i = 0; i < d.p; ++i) {
    if (ks[i] < d.m && lam < d.values[i][ks[i]] - 1e-10)
      throw std::invalid_argument("courant_fischer_probe: infeasible selection");
  }
  return lam;
}

namespace {

// Modified Gram-Schmidt orthonormalization of a random matrix.
Mat random_unitary(int m, Rng& rng, bool real_valued) {
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a(i, j) = real_valued ? cplx(rng.normal(), 0.0) : cplx(rng.normal(), rng.normal());
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < j; ++i) a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

}  // namespace

Tensor3 random_orthogonal(int m, int p, std::uint64_t seed) {
  Rng rng(seed);
  FrequencySlices f;
  f.m = m;
  f.n = m;
  f.p = p;
  f.slices.resize(p);
  for (int i = 0; i <= p / 2; ++i) {
    const bool self_paired = (i == 0) || (2 * i == p);
    f.slices[i] = random_unitary(m, rng, self_paired);
    if (!self_paired) f.slices[p - i] = f.slices[i].conjugate();
  }
  return from_frequency(f);
}

}  // namespace tprod
