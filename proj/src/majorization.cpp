#include "tprod/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "tprod/numeric.hpp"

namespace tprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

void check_sorted_nonincreasing(const std::vector<double>& x, const char* who) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] < x[i + 1] - 1e-12)
      throw std::invalid_argument(std::string(who) + ": input must be sorted nonincreasing");
}

std::vector<double> log_prefix(const std::vector<double>& x, const char* who) {
  std::vector<double> out(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0)
      throw std::invalid_argument(std::string(who) + ": log variant needs nonnegative entries");
    acc += x[i] == 0.0 ? -kInf : std::log(x[i]);
    out[i] = acc;
  }
  return out;
}

// nonincreasing spectrum of a symmetric tensor
std::vector<double> spectrum_of(const Tensor3& t) { return values_of(t_eigenvalues(t)); }

void check_same_dims(const Tensor3& a, const Tensor3& b, const char* who) {
  if (a.m() != b.m() || a.n() != b.n() || a.p() != b.p())
    throw std::invalid_argument(std::string(who) + ": tensors must share dimensions");
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

void DiscreteMeasure::validate() const {
  require(!support.empty(), "DiscreteMeasure: support must be nonempty");
  require(support.size() == weights.size(), "DiscreteMeasure: support/weight size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "DiscreteMeasure: weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "DiscreteMeasure: weights must sum to 1");
  for (const Tensor3& t : support) check_same_dims(t, support.front(), "DiscreteMeasure");
}

GaugeSpec GaugeSpec::KyFan(int k) {
  require(k >= 1, "GaugeSpec::KyFan: k must be >= 1");
  GaugeSpec g;
  g.kind = Kind::ky_fan;
  g.k = k;
  return g;
}

GaugeSpec GaugeSpec::Schatten(double q) {
  require(q >= 1.0, "GaugeSpec::Schatten: q must be >= 1");
  GaugeSpec g;
  g.kind = Kind::schatten;
  g.q = q;
  return g;
}

std::string GaugeSpec::name() const {
  char buf[48];
  if (kind == Kind::ky_fan)
    std::snprintf(buf, sizeof buf, "ky_fan(%d)", k);
  else
    std::snprintf(buf, sizeof buf, "schatten(%g)", q);
  return buf;
}

double gauge_eval(const GaugeSpec& g, std::vector<double> v) {
  for (double x : v)
    if (x < 0.0) throw std::invalid_argument("gauge_eval: entries must be nonnegative");
  std::sort(v.begin(), v.end(), std::greater<double>());
  if (g.kind == GaugeSpec::Kind::ky_fan) {
    if (g.k < 1 || g.k > static_cast<int>(v.size()))
      throw std::invalid_argument("gauge_eval: Ky Fan k out of range");
    double s = 0.0;
    for (int i = 0; i < g.k; ++i) s += v[i];
    return s;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(x, g.q);
  return std::pow(s, 1.0 / g.q);
}

double gauge_norm(const GaugeSpec& g, const Tensor3& t) {
  std::vector<double> sv = values_of(t_singular_values(t));
  return gauge_eval(g, std::move(sv));
}

bool weak_majorize(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  require(x.size() == y.size(), "weak_majorize: length mismatch");
  check_sorted_nonincreasing(x, "weak_majorize");
  check_sorted_nonincreasing(y, "weak_majorize");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    if (sx > sy + tol) return false;
  }
  return true;
}

bool majorize(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  if (!weak_majorize(x, y, tol)) return false;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  return std::abs(sx - sy) <= tol;
}

bool weak_log_majorize(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  require(x.size() == y.size(), "weak_log_majorize: length mismatch");
  check_sorted_nonincreasing(x, "weak_log_majorize");
  check_sorted_nonincreasing(y, "weak_log_majorize");
  const std::vector<double> px = log_prefix(x, "weak_log_majorize");
  const std::vector<double> py = log_prefix(y, "weak_log_majorize");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (px[i] == -kInf) continue;  // zero product is dominated by anything
    if (px[i] > py[i] + tol) return false;
  }
  return true;
}

bool log_majorize(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  if (!weak_log_majorize(x, y, tol)) return false;
  const std::vector<double> px = log_prefix(x, "log_majorize");
  const std::vector<double> py = log_prefix(y, "log_majorize");
  const double tx = px.back(), ty = py.back();
  if (tx == -kInf || ty == -kInf) return tx == ty;
  return std::abs(tx - ty) <= tol;
}

bool holder_gauge_check(const GaugeSpec& g, const std::vector<std::vector<double>>& b,
                        const std::vector<double>& alpha, double tol) {
  require(!b.empty() && b.size() == alpha.size(), "holder_gauge_check: size mismatch");
  double asum = 0.0;
  for (double a : alpha) {
    require(a > 0.0, "holder_gauge_check: exponents must be positive");
    asum += a;
  }
  require(std::abs(asum - 1.0) <= 1e-12, "holder_gauge_check: exponents must sum to 1");
  const std::size_t dim = b.front().size();
  for (const std::vector<double>& v : b) {
    require(v.size() == dim, "holder_gauge_check: vector length mismatch");
    for (double x : v)
      require(x >= 0.0, "holder_gauge_check: entries must be nonnegative");
  }
  std::vector<double> prod(dim, 1.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) prod[j] *= std::pow(b[i][j], alpha[i]);
  const double lhs = gauge_eval(g, prod);
  double rhs = 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) rhs *= std::pow(gauge_eval(g, b[i]), alpha[i]);
  return lhs <= rhs + tol;
}

Mat compound_matrix(const Mat& m, int k) {
  require(m.rows() == m.cols(), "compound_matrix: matrix must be square");
  const int n = static_cast<int>(m.rows());
  require(k >= 1 && k <= n, "compound_matrix: k out of range");
  if (binomial(n, k) > 5000.0)
    throw std::length_error("compound_matrix: combinatorial size exceeds limit");
  const std::vector<std::vector<int>> subsets = k_subsets(n, k);
  const int dim = static_cast<int>(subsets.size());
  Mat out(dim, dim);
  Mat minor(k, k);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = m(subsets[r][i], subsets[c][j]);
      out(r, c) = minor.determinant();
    }
  return out;
}

std::string to_json(const CheckReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"check\":\"%s\",\"premise\":%s,\"lhs\":%.9g,\"rhs\":%.9g,\"holds\":%s}",
                r.check.c_str(), r.premise ? "true" : "false", r.lhs, r.rhs,
                r.holds ? "true" : "false");
  return buf;
}

CheckReport antisym_norm_check(const Tensor3& t, int k) {
  const Mat b = bcirc(t);
  const Mat comp = compound_matrix(b, k);
  CheckReport rep;
  rep.check = "antisym_norm";
  rep.lhs = spectral_norm(comp);
  std::vector<double> sv = singular_values(b);
  require(k <= static_cast<int>(sv.size()), "antisym_norm_check: k out of range");
  double prod = 1.0;
  for (int i = 0; i < k; ++i) prod *= sv[i];
  rep.rhs = prod;
  rep.holds = std::abs(rep.lhs - rep.rhs) <= 1e-7 * std::max(1.0, std::abs(rep.rhs));
  return rep;
}

ScalarFn ScalarFn::Exp() { return ScalarFn{Kind::exp_fn, 1.0}; }
ScalarFn ScalarFn::Power(double q) {
  require(q > 0.0, "ScalarFn::Power: exponent must be positive");
  return ScalarFn{Kind::power_fn, q};
}
ScalarFn ScalarFn::ShiftedRelu(double c) { return ScalarFn{Kind::shifted_relu_fn, c}; }
ScalarFn ScalarFn::LogShift(double delta) {
  require(delta > 0.0, "ScalarFn::LogShift: offset must be positive");
  return ScalarFn{Kind::log_shift_fn, delta};
}

double ScalarFn::operator()(double x) const {
  switch (kind) {
    case Kind::exp_fn:
      return std::exp(x);
    case Kind::power_fn:
      if (x < 0.0) throw std::domain_error("ScalarFn: power of negative value");
      return std::pow(x, param);
    case Kind::shifted_relu_fn:
      return std::max(x + param, 0.0);
    case Kind::log_shift_fn:
      if (!(param + x > 0.0)) throw std::domain_error("ScalarFn: log of non-positive value");
      return std::log(param + x);
  }
  throw std::logic_error("ScalarFn: bad kind");
}

bool ScalarFn::nondecreasing() const { return true; }  // every whitelist member

bool ScalarFn::convex() const {
  switch (kind) {
    case Kind::exp_fn:
      return true;
    case Kind::power_fn:
      return param >= 1.0;
    case Kind::shifted_relu_fn:
      return true;
    case Kind::log_shift_fn:
      return false;
  }
  return false;
}

bool ScalarFn::log_exp_convex() const {
  switch (kind) {
    case Kind::exp_fn:
      return true;  // log exp(e^x) = e^x
    case Kind::power_fn:
      return true;  // log (e^x)^q = qx
    case Kind::shifted_relu_fn:
      return param >= 0.0;  // log(e^x + c) convex for c >= 0
    case Kind::log_shift_fn:
      return false;  // no certificate for log log(delta + e^x)
  }
  return false;
}

bool ScalarFn::exp_convex() const {
  switch (kind) {
    case Kind::exp_fn:
      return true;  // exp(e^x)
    case Kind::power_fn:
      return true;  // e^{qx}
    case Kind::shifted_relu_fn:
      return true;  // max(e^x + c, 0)
    case Kind::log_shift_fn:
      return true;  // softplus log(delta + e^x)
  }
  return false;
}

std::string ScalarFn::name() const {
  char buf[48];
  switch (kind) {
    case Kind::exp_fn:
      return "exp";
    case Kind::power_fn:
      std::snprintf(buf, sizeof buf, "power(%g)", param);
      return buf;
    case Kind::shifted_relu_fn:
      std::snprintf(buf, sizeof buf, "shifted_relu(%g)", param);
      return buf;
    case Kind::log_shift_fn:
      std::snprintf(buf, sizeof buf, "log_shift(%g)", param);
      return buf;
  }
  return "?";
}

namespace {

// gauge norm of fn applied to the spectrum of a symmetric tensor
double gauge_of_fn_spectrum(const GaugeSpec& gauge, const ScalarFn& fn,
                            const std::vector<double>& spectrum) {
  std::vector<double> mapped(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) mapped[i] = std::abs(fn(spectrum[i]));
  return gauge_eval(gauge, std::move(mapped));
}

}  // namespace

CheckReport integral_majorization_check(MajorizationVariant variant, const Tensor3& c,
                                        const DiscreteMeasure& nu, const ScalarFn& fn,
                                        const GaugeSpec& gauge, ConclusionForm form,
                                        double tol) {
  nu.validate();
  check_same_dims(c, nu.support.front(), "integral_majorization_check");
  const bool multiplicative =
      variant == MajorizationVariant::thm7 || variant == MajorizationVariant::thm10;
  switch (variant) {
    case MajorizationVariant::thm4:
      require(fn.nondecreasing() && fn.convex(),
              "integral_majorization_check: needs a nondecreasing convex function");
      require(form == ConclusionForm::average,
              "integral_majorization_check: arithmetic-average variants use the average form");
      break;
    case MajorizationVariant::thm5:
      require(fn.convex(), "integral_majorization_check: needs a convex function");
      require(form == ConclusionForm::average,
              "integral_majorization_check: arithmetic-average variants use the average form");
      break;
    case MajorizationVariant::thm7:
    case MajorizationVariant::thm10:
      if (form == ConclusionForm::log_average)
        require(fn.log_exp_convex() && fn.nondecreasing(),
                "integral_majorization_check: needs log f(e^x) convex and f nondecreasing");
      else
        require(fn.exp_convex() && fn.nondecreasing(),
                "integral_majorization_check: needs g(e^x) convex and g nondecreasing");
      break;
  }

  const std::vector<double> spec_c = spectrum_of(c);
  std::vector<std::vector<double>> spec_d(nu.support.size());
  for (std::size_t t = 0; t < nu.support.size(); ++t) {
    spec_d[t] = spectrum_of(nu.support[t]);
    if (multiplicative) {
      if (!is_tpsd(nu.support[t], 1e-8))
        throw std::invalid_argument("integral_majorization_check: support must be TPSD");
    }
  }
  if (multiplicative && !is_tpsd(c, 1e-8))
    throw std::invalid_argument("integral_majorization_check: tensor must be TPSD");

  const std::size_t dim = spec_c.size();
  std::vector<double> avg(dim, 0.0);
  if (!multiplicative) {
    for (std::size_t t = 0; t < spec_d.size(); ++t)
      for (std::size_t i = 0; i < dim; ++i) avg[i] += nu.weights[t] * spec_d[t][i];
  } else {
    // geometric average; a zero eigenvalue anywhere zeroes that component
    std::vector<double> logs(dim, 0.0);
    std::vector<bool> zero(dim, false);
    for (std::size_t t = 0; t < spec_d.size(); ++t)
      for (std::size_t i = 0; i < dim; ++i) {
        const double v = spec_d[t][i];
        if (v <= 0.0)
          zero[i] = true;
        else
          logs[i] += nu.weights[t] * std::log(v);
      }
    for (std::size_t i = 0; i < dim; ++i) avg[i] = zero[i] ? 0.0 : std::exp(logs[i]);
  }
  std::sort(avg.begin(), avg.end(), std::greater<double>());

  bool premise = false;
  switch (variant) {
    case MajorizationVariant::thm4:
      premise = weak_majorize(spec_c, avg);
      break;
    case MajorizationVariant::thm5:
      premise = majorize(spec_c, avg);
      break;
    case MajorizationVariant::thm7:
      premise = weak_log_majorize(spec_c, avg);
      break;
    case MajorizationVariant::thm10:
      premise = log_majorize(spec_c, avg);
      break;
  }

  const double lhs = gauge_of_fn_spectrum(gauge, fn, spec_c);
  double rhs = 0.0;
  if (form == ConclusionForm::average) {
    std::vector<double> terms(spec_d.size());
    for (std::size_t t = 0; t < spec_d.size(); ++t)
      terms[t] = nu.weights[t] * gauge_of_fn_spectrum(gauge, fn, spec_d[t]);
    rhs = pairwise_sum(terms);
  } else {
    double acc = 0.0;
    for (std::size_t t = 0; t < spec_d.size(); ++t) {
      const double norm = gauge_of_fn_spectrum(gauge, fn, spec_d[t]);
      if (norm <= 0.0) {
        acc = -kInf;
        break;
      }
      acc += nu.weights[t] * std::log(norm);
    }
    rhs = std::exp(acc);
  }

  CheckReport rep;
  const char* names[] = {"integral_majorization_thm4", "integral_majorization_thm5",
                         "integral_majorization_thm7", "integral_majorization_thm10"};
  rep.check = names[static_cast<int>(variant)];
  rep.premise = premise;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  return rep;
}

double lie_trotter_error(const std::vector<Tensor3>& ls, int n) {
  require(!ls.empty(), "lie_trotter_error: need at least one tensor");
  require(n >= 1, "lie_trotter_error: n must be >= 1");
  for (const Tensor3& l : ls) {
    require(l.square(), "lie_trotter_error: slices must be square");
    check_same_dims(l, ls.front(), "lie_trotter_error");
    if (!approx_equal(l, transpose(l), 1e-8, 1e-8))
      throw std::invalid_argument("lie_trotter_error: tensors must be symmetric");
  }
  const int p = ls.front().p();
  std::vector<FrequencySlices> freq(ls.size());
  for (std::size_t k = 0; k < ls.size(); ++k) freq[k] = to_frequency(ls[k]);
  double worst = 0.0;
  for (int i = 0; i < p; ++i) {
    Mat prod = Mat::Identity(ls.front().m(), ls.front().m());
    Mat sum = Mat::Zero(ls.front().m(), ls.front().m());
    for (std::size_t k = 0; k < ls.size(); ++k) {
      prod = prod * expm_hermitian(freq[k].slices[i] / static_cast<double>(n));
      sum += freq[k].slices[i];
    }
    const Mat diff = mat_pow(prod, n) - expm_hermitian(sum);
    worst = std::max(worst, tprod::spectral_norm(diff));
  }
  return worst;
}

double beta0_weight(double t) { return pi / (2.0 * (std::cosh(pi * t) + 1.0)); }

CheckReport multivariate_norm_ineq_check(const std::vector<Tensor3>& cs, const ScalarFn& fn,
                                         const GaugeSpec& gauge, const Quadrature& quad,
                                         ConclusionForm form, double budget) {
  require(!cs.empty(), "multivariate_norm_ineq_check: need at least one tensor");
  for (const Tensor3& c : cs) {
    check_same_dims(c, cs.front(), "multivariate_norm_ineq_check");
    if (!is_tpd(c, 1e-10))
      throw std::domain_error("multivariate_norm_ineq_check: tensors must be TPD");
  }
  if (form == ConclusionForm::log_average)
    require(fn.log_exp_convex(), "multivariate_norm_ineq_check: needs log f(e^x) convex");
  else
    require(fn.exp_convex(), "multivariate_norm_ineq_check: needs g(e^x) convex");
  // quadrature window must cover >= 99.9% of the weight mass tanh(pi t/2)
  require(std::tanh(pi * quad.t_max / 2.0) >= 0.999,
          "multivariate_norm_ineq_check: quadrature window too small");
  require(quad.steps >= 3, "multivariate_norm_ineq_check: need at least 3 quadrature nodes");

  const int m = cs.front().m(), p = cs.front().p();
  // per-factor, per-frequency eigendecompositions (slices Hermitian PD)
  std::vector<std::vector<HermitianEigen>> eig(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const FrequencySlices f = to_frequency(cs[k]);
    eig[k].reserve(p);
    for (int i = 0; i < p; ++i) {
      HermitianEigen e = hermitian_eigen(f.slices[i]);
      if (!(e.values.back() > 0.0))
        throw std::domain_error("multivariate_norm_ineq_check: tensors must be TPD");
      eig[k].push_back(std::move(e));
    }
  }

  // LHS: gauge of fn on the eigenvalues of exp(sum_k log C_k), per frequency.
  std::vector<double> lhs_vals;
  lhs_vals.reserve(static_cast<std::size_t>(m) * p);
  for (int i = 0; i < p; ++i) {
    Mat h = Mat::Zero(m, m);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const HermitianEigen& e = eig[k][i];
      Mat d = Mat::Zero(m, m);
      for (int j = 0; j < m; ++j) d(j, j) = std::log(e.values[j]);
      h += e.vectors * d * e.vectors.adjoint();
    }
    const HermitianEigen he = hermitian_eigen(h);
    for (int j = 0; j < m; ++j) lhs_vals.push_back(std::abs(fn(std::exp(he.values[j]))));
  }
  const double lhs = gauge_eval(gauge, std::move(lhs_vals));

  // gauge of fn over singular values of prod_k C_k^{1 + i t}, all frequencies
  auto node_norm = [&](double t) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(m) * p);
    for (int i = 0; i < p; ++i) {
      Mat prod = Mat::Identity(m, m);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const HermitianEigen& e = eig[k][i];
        Mat d = Mat::Zero(m, m);
        for (int j = 0; j < m; ++j) {
          // lambda^{1+it} = lambda * exp(i t log lambda)
          const double lg = std::log(e.values[j]);
          d(j, j) = e.values[j] * cplx(std::cos(t * lg), std::sin(t * lg));
        }
        prod = prod * (e.vectors * d * e.vectors.adjoint());
      }
      const std::vector<double> sv = singular_values(prod);
      for (double s : sv) vals.push_back(std::abs(fn(s)));
    }
    return gauge_eval(gauge, std::move(vals));
  };

  const std::vector<double> nodes = lin_space(-quad.t_max, quad.t_max, quad.steps);
  const double h = 2.0 * quad.t_max / (quad.steps - 1);
  std::vector<double> terms(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double w = (j == 0 || j + 1 == nodes.size()) ? 0.5 * h : h;
    const double norm = node_norm(nodes[j]);
    terms[j] = form == ConclusionForm::average
                   ? w * beta0_weight(nodes[j]) * norm
                   : w * beta0_weight(nodes[j]) * std::log(std::max(norm, 1e-300));
  }
  const double acc = pairwise_sum(terms);
  const double rhs = form == ConclusionForm::average ? acc : std::exp(acc);

  CheckReport rep;
  rep.check = form == ConclusionForm::average ? "multivariate_norm_ineq_avg"
                                              : "multivariate_norm_ineq_log_avg";
  rep.premise = true;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = lhs <= rhs + budget;
  return rep;
}

LimitReport schatten_limit_check(const DiscreteMeasure& nu,
                                 const std::vector<double>& q_sequence) {
  nu.validate();
  require(!q_sequence.empty(), "schatten_limit_check: need at least one q");
  std::vector<std::vector<double>> spec(nu.support.size());
  for (std::size_t t = 0; t < nu.support.size(); ++t) {
    spec[t] = spectrum_of(nu.support[t]);
    if (!(spec[t].back() > 0.0))
      throw std::domain_error("schatten_limit_check: support must be TPD");
  }
  const double mp = static_cast<double>(spec.front().size());
  double target = 0.0;
  for (std::size_t t = 0; t < spec.size(); ++t) {
    double logdet = 0.0;
    for (double v : spec[t]) logdet += std::log(v);
    target -= nu.weights[t] * logdet / mp;
  }
  LimitReport rep;
  rep.target = target;
  rep.values.reserve(q_sequence.size());
  for (double q : q_sequence) {
    require(q > 0.0, "schatten_limit_check: q must be positive");
    double avg = 0.0;
    for (std::size_t t = 0; t < spec.size(); ++t) {
      double s = 0.0;
      for (double v : spec[t]) s += std::pow(v, -q);
      avg += nu.weights[t] * s / mp;
    }
    rep.values.push_back(std::log(avg) / q);
  }
  rep.gap_decreasing = true;
  double prev = kInf;
  for (double v : rep.values) {
    const double gap = std::abs(v - target);
    if (gap > prev + 1e-15) rep.gap_decreasing = false;
    prev = gap;
  }
  rep.final_gap = std::abs(rep.values.back() - target);
  return rep;
}

}  // namespace tprod
