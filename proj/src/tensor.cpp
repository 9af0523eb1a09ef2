#include "tprod/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tprod/rng.hpp"

namespace tprod {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

Tensor3::Tensor3(int m, int n, int p) : m_(m), n_(n), p_(p) {
  require(m > 0 && n > 0 && p > 0, "Tensor3: dimensions must be positive");
  a_.assign(static_cast<std::size_t>(m) * n * p, cplx(0.0, 0.0));
  real_known_ = true;
  real_ = true;
}

std::size_t Tensor3::idx(int i, int j, int k) const {
  if (i < 0 || i >= m_ || j < 0 || j >= n_ || k < 0 || k >= p_)
    throw std::invalid_argument("Tensor3: index out of range");
  return (static_cast<std::size_t>(k) * m_ + i) * n_ + j;
}

Mat Tensor3::slice(int k) const {
  if (k < 0 || k >= p_) throw std::invalid_argument("Tensor3::slice: slice index out of range");
  Mat s(m_, n_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) s(i, j) = a_[(static_cast<std::size_t>(k) * m_ + i) * n_ + j];
  return s;
}

void Tensor3::set_slice(int k, const Mat& s) {
  if (k < 0 || k >= p_) throw std::invalid_argument("Tensor3::set_slice: slice index out of range");
  require(s.rows() == m_ && s.cols() == n_, "Tensor3::set_slice: slice shape mismatch");
  real_known_ = false;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) a_[(static_cast<std::size_t>(k) * m_ + i) * n_ + j] = s(i, j);
}

bool Tensor3::is_real() const {
  if (!real_known_) {
    real_ = true;
    for (const cplx& v : a_) {
      if (std::abs(v.imag()) > real_tol) {
        real_ = false;
        break;
      }
    }
    real_known_ = true;
  }
  return real_;
}

Tensor3 zero_tensor(int m, int n, int p) { return Tensor3(m, n, p); }

Tensor3 identity_tensor(int m, int p) {
  Tensor3 t(m, m, p);
  for (int i = 0; i < m; ++i) t(i, i, 0) = 1.0;
  return t;
}

Tensor3 random_tensor(int m, int n, int p, std::uint64_t seed) {
  Tensor3 t(m, n, p);
  Rng rng(seed);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) t(i, j, k) = rng.normal();
  return t;
}

Tensor3 random_symmetric(int m, int p, std::uint64_t seed) {
  Tensor3 g = random_tensor(m, m, p, seed);
  return scale(add(g, transpose(g)), 0.5);
}

Mat unfold(const Tensor3& t) {
  Mat a(static_cast<Eigen::Index>(t.m()) * t.p(), t.n());
  for (int k = 0; k < t.p(); ++k)
    for (int i = 0; i < t.m(); ++i)
      for (int j = 0; j < t.n(); ++j) a(k * t.m() + i, j) = t(i, j, k);
  return a;
}

Tensor3 fold(const Mat& a, int m, int n, int p) {
  require(m > 0 && n > 0 && p > 0, "fold: dimensions must be positive");
  require(a.rows() == static_cast<Eigen::Index>(m) * p && a.cols() == n,
          "fold: matrix shape incompatible with m, n, p");
  Tensor3 t(m, n, p);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) t(i, j, k) = a(k * m + i, j);
  return t;
}

Mat bcirc(const Tensor3& t) {
  const int m = t.m(), n = t.n(), p = t.p();
  Mat a(static_cast<Eigen::Index>(m) * p, static_cast<Eigen::Index>(n) * p);
  for (int bi = 0; bi < p; ++bi) {
    for (int bj = 0; bj < p; ++bj) {
      const int k = ((bi - bj) % p + p) % p;  // slice 1 + ((i - j) mod p), 0-based
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(bi * m + i, bj * n + j) = t(i, j, k);
    }
  }
  return a;
}

Tensor3 bcirc_inv(const Mat& a, int m, int n, int p) {
  require(m > 0 && n > 0 && p > 0, "bcirc_inv: dimensions must be positive");
  require(a.rows() == static_cast<Eigen::Index>(m) * p &&
              a.cols() == static_cast<Eigen::Index>(n) * p,
          "bcirc_inv: matrix shape incompatible with m, n, p");
  Tensor3 t(m, n, p);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) t(i, j, k) = a(k * m + i, j);
  // every block must agree with the circulant pattern of the first column
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int bi = 0; bi < p; ++bi) {
    for (int bj = 0; bj < p; ++bj) {
      const int k = ((bi - bj) % p + p) % p;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          if (std::abs(a(bi * m + i, bj * n + j) - t(i, j, k)) > 1e-10 * scale)
            throw std::invalid_argument("bcirc_inv: matrix is not block-circulant");
        }
    }
  }
  return t;
}

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
  require(a.n() == b.m(), "tprod: inner dimensions must match");
  require(a.p() == b.p(), "tprod: depths must match");
  const int m = a.m(), n = b.n(), p = a.p();
  // slice k of the product is sum_j A^{(1+((k-j) mod p))} B^{(1+j)}
  Tensor3 out(m, n, p);
  std::vector<Mat> as(p), bs(p);
  for (int k = 0; k < p; ++k) {
    as[k] = a.slice(k);
    bs[k] = b.slice(k);
  }
  for (int k = 0; k < p; ++k) {
    Mat s = Mat::Zero(m, n);
    for (int j = 0; j < p; ++j) s += as[((k - j) % p + p) % p] * bs[j];
    out.set_slice(k, s);
  }
  return out;
}

Tensor3 transpose(const Tensor3& t) {
  const int p = t.p();
  Tensor3 out(t.n(), t.m(), p);
  out.set_slice(0, t.slice(0).transpose());
  for (int k = 1; k < p; ++k) out.set_slice(k, t.slice(p - k).transpose());
  return out;
}

Tensor3 hermitian_transpose(const Tensor3& t) {
  const int p = t.p();
  Tensor3 out(t.n(), t.m(), p);
  out.set_slice(0, t.slice(0).adjoint());
  for (int k = 1; k < p; ++k) out.set_slice(k, t.slice(p - k).adjoint());
  return out;
}

cplx trace(const Tensor3& t) {
  require(t.square(), "trace: slices must be square");
  cplx s = 0.0;
  for (int k = 0; k < t.p(); ++k)
    for (int i = 0; i < t.m(); ++i) s += t(i, i, k);
  return s;
}

cplx inner_product(const Tensor3& a, const Tensor3& b) {
  require(a.m() == b.m() && a.n() == b.n() && a.p() == b.p(),
          "inner_product: dimensions must match");
  cplx s = 0.0;
  const std::vector<cplx>& x = a.data();
  const std::vector<cplx>& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

Tensor3 add(const Tensor3& a, const Tensor3& b) {
  require(a.m() == b.m() && a.n() == b.n() && a.p() == b.p(), "add: dimensions must match");
  Tensor3 out = a;
  std::vector<cplx>& x = out.mutable_data();
  const std::vector<cplx>& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return out;
}

Tensor3 sub(const Tensor3& a, const Tensor3& b) {
  require(a.m() == b.m() && a.n() == b.n() && a.p() == b.p(), "sub: dimensions must match");
  Tensor3 out = a;
  std::vector<cplx>& x = out.mutable_data();
  const std::vector<cplx>& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return out;
}

Tensor3 scale(const Tensor3& t, cplx c) {
  Tensor3 out = t;
  for (cplx& v : out.mutable_data()) v *= c;
  return out;
}

Tensor3 negate(const Tensor3& t) { return scale(t, -1.0); }

Tensor3 operator+(const Tensor3& a, const Tensor3& b) { return add(a, b); }
Tensor3 operator-(const Tensor3& a, const Tensor3& b) { return sub(a, b); }
Tensor3 operator*(cplx c, const Tensor3& t) { return scale(t, c); }
Tensor3 operator-(const Tensor3& t) { return negate(t); }

double max_abs(const Tensor3& t) {
  double m = 0.0;
  for (const cplx& v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

bool approx_equal(const Tensor3& a, const Tensor3& b, double atol, double rtol) {
  if (a.m() != b.m() || a.n() != b.n() || a.p() != b.p()) return false;
  const double scale = std::max(max_abs(a), max_abs(b));
  const double tol = atol + rtol * scale;
  const std::vector<cplx>& x = a.data();
  const std::vector<cplx>& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > tol) return false;
  return true;
}

namespace {

std::string format_entry(cplx v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", v.real(), v.imag());
  return buf;
}

cplx parse_entry(const std::string& tok) {
  if (tok.empty() || tok.back() != 'j')
    throw std::invalid_argument("tensor parse: entry must end with 'j': " + tok);
  const std::string body = tok.substr(0, tok.size() - 1);
  // split at the sign that starts the imaginary part (not an exponent sign)
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    throw std::invalid_argument("tensor parse: malformed complex entry: " + tok);
  std::size_t used = 0;
  const double re = std::stod(body.substr(0, split), &used);
  if (used != split) throw std::invalid_argument("tensor parse: malformed real part: " + tok);
  const std::string im_str = body.substr(split);
  const double im = std::stod(im_str, &used);
  if (used != im_str.size())
    throw std::invalid_argument("tensor parse: malformed imaginary part: " + tok);
  return cplx(re, im);
}

}  // namespace

void write_tensor(std::ostream& os, const Tensor3& t) {
  os << t.m() << ' ' << t.n() << ' ' << t.p() << '\n';
  for (int k = 0; k < t.p(); ++k)
    for (int i = 0; i < t.m(); ++i) {
      for (int j = 0; j < t.n(); ++j) {
        if (j) os << ' ';
        os << format_entry(t(i, j, k));
      }
      os << '\n';
    }
}

Tensor3 read_tensor(std::istream& is) {
  int m = 0, n = 0, p = 0;
  if (!(is >> m >> n >> p)) throw std::invalid_argument("tensor parse: bad header");
  if (m <= 0 || n <= 0 || p <= 0) throw std::invalid_argument("tensor parse: bad dimensions");
  Tensor3 t(m, n, p);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        std::string tok;
        if (!(is >> tok)) throw std::invalid_argument("tensor parse: truncated data");
        t(i, j, k) = parse_entry(tok);
      }
  return t;
}

std::string to_text(const Tensor3& t) {
  std::ostringstream ss;
  write_tensor(ss, t);
  return ss.str();
}

Tensor3 tensor_from_text(const std::string& text) {
  std::istringstream ss(text);
  return read_tensor(ss);
}

std::string to_json(const Tensor3& t) {
  nlohmann::json j;
  j["m"] = t.m();
  j["n"] = t.n();
  j["p"] = t.p();
  std::vector<double> re, im;
  re.reserve(t.data().size());
  im.reserve(t.data().size());
  for (const cplx& v : t.data()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

Tensor3 tensor_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("tensor json parse: ") + e.what());
  }
  if (!j.contains("m") || !j.contains("n") || !j.contains("p") || !j.contains("re") ||
      !j.contains("im"))
    throw std::invalid_argument("tensor json parse: missing field");
  const int m = j["m"].get<int>();
  const int n = j["n"].get<int>();
  const int p = j["p"].get<int>();
  if (m <= 0 || n <= 0 || p <= 0) throw std::invalid_argument("tensor json parse: bad dimensions");
  const std::vector<double> re = j["re"].get<std::vector<double>>();
  const std::vector<double> im = j["im"].get<std::vector<double>>();
  const std::size_t count = static_cast<std::size_t>(m) * n * p;
  if (re.size() != count || im.size() != count)
    throw std::invalid_argument("tensor json parse: wrong entry count");
  Tensor3 t(m, n, p);
  std::vector<cplx>& a = t.mutable_data();
  for (std::size_t i = 0; i < count; ++i) a[i] = cplx(re[i], im[i]);
  return t;
}

}  // namespace tprod
