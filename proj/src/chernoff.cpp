#include "tprod/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tprod/numeric.hpp"
#include "tprod/stats.hpp"

namespace tprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

void check_assignment(const TensorAssignment& assignment, const RegularGraph& graph) {
  require(assignment.m >= 1 && assignment.p >= 1, "assignment: bad dimensions");
  require(static_cast<int>(assignment.g.size()) == graph.n,
          "assignment: one tensor per vertex required");
  for (const Tensor3& t : assignment.g)
    require(t.m() == assignment.m && t.n() == assignment.m && t.p() == assignment.p,
            "assignment: tensor shape mismatch");
}

// nonincreasing |f(spectrum)| and the raw spectrum of sum_j g(v_j)
std::vector<double> walk_spectrum(const TensorAssignment& assignment,
                                  const std::vector<int>& walk) {
  require(!walk.empty(), "walk_statistic: walk must be nonempty");
  Tensor3 s = zero_tensor(assignment.m, assignment.m, assignment.p);
  for (int v : walk) {
    require(v >= 0 && v < static_cast<int>(assignment.g.size()),
            "walk_statistic: vertex out of range");
    s = s + assignment.g[v];
  }
  return values_of(t_eigenvalues(s));
}

double top_k_statistic(const std::vector<double>& spectrum, const PolySpec& poly, int k) {
  std::vector<double> mags(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) mags[i] = std::abs(poly.eval(spectrum[i]));
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  require(k >= 1 && k <= static_cast<int>(mags.size()), "walk_statistic: k out of range");
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += mags[i];
  return sum;
}

double count_walks(const RegularGraph& graph, int kappa) {
  return std::pow(static_cast<double>(graph.n), kappa);
}

void format_sci(std::string& out, double v) {
  if (std::isfinite(v)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    out += buf;
  } else {
    out += v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  }
}

void format_json_number(std::string& out, double v) {
  if (std::isfinite(v)) {
    format_sci(out, v);
  } else {
    out += "null";
  }
}

}  // namespace

TensorAssignment random_assignment(const RegularGraph& graph, int m, int p, double r,
                                   bool centered, std::uint64_t seed) {
  require(r > 0.0, "random_assignment: r must be positive");
  require(m >= 1 && p >= 1, "random_assignment: bad dimensions");
  TensorAssignment out;
  out.m = m;
  out.p = p;
  out.r = r;
  out.centered = centered;
  out.g.reserve(graph.n);
  for (int v = 0; v < graph.n; ++v)
    out.g.push_back(random_symmetric(m, p, derive_seed(seed, v)));
  if (centered) {
    Tensor3 mean = zero_tensor(m, m, p);
    for (const Tensor3& t : out.g) mean = mean + t;
    mean = cplx(1.0 / graph.n, 0.0) * mean;
    for (Tensor3& t : out.g) t = t - mean;
  }
  double max_norm = 0.0;
  for (const Tensor3& t : out.g) max_norm = std::max(max_norm, spectral_norm(t));
  if (max_norm > 0.0) {
    const cplx factor(r / max_norm, 0.0);
    for (Tensor3& t : out.g) t = factor * t;
  }
  return out;
}

double PolySpec::eval(double x) const {
  if (a.empty()) throw std::invalid_argument("PolySpec: empty coefficients");
  double inner = 0.0;
  for (std::size_t l = a.size(); l-- > 0;) inner = inner * x + a[l];
  if (s == 1.0) return inner;
  if (inner < 0.0 && s != std::floor(s))
    throw std::domain_error("PolySpec: fractional power of negative value");
  return std::pow(inner, s);
}

double PolySpec::degree_bound(double x_max) const {
  if (a.empty()) throw std::invalid_argument("PolySpec: empty coefficients");
  // nonnegative coefficients: the max over |x| <= x_max sits at +x_max
  double inner = 0.0;
  for (std::size_t l = a.size(); l-- > 0;) inner = inner * x_max + a[l];
  return std::pow(inner, s);
}

double walk_statistic(const TensorAssignment& assignment, const std::vector<int>& walk,
                      const PolySpec& poly, int k) {
  return top_k_statistic(walk_spectrum(assignment, walk), poly, k);
}

MomentOperator make_moment_operator(const RegularGraph& graph,
                                    const TensorAssignment& assignment, double t, double a,
                                    double b) {
  check_assignment(assignment, graph);
  MomentOperator op;
  op.graph = graph;
  op.m = assignment.m;
  op.p = assignment.p;
  op.t = t;
  op.a = a;
  op.b = b;
  op.r = assignment.r;
  const int m = op.m, p = op.p;
  const cplx z_fwd = 0.5 * t * cplx(a, b);
  const cplx z_rev = 0.5 * t * cplx(a, -b);
  const SpectralFunction ex = SpectralFunction::make_exp();
  op.xs.reserve(graph.n);
  op.ys.reserve(graph.n);
  op.blocks.reserve(graph.n);
  for (int v = 0; v < graph.n; ++v) {
    op.xs.push_back(apply_spectral_function(assignment.g[v], ex, z_fwd));
    op.ys.push_back(apply_spectral_function(assignment.g[v], ex, z_rev));
    op.blocks.push_back(kron(bcirc(op.xs.back()), bcirc(op.ys.back())));
  }
  const int dim = m * m * p * p;
  op.u0 = CVec::Zero(dim);
  for (int k1 = 0; k1 < p; ++k1)
    for (int k2 = 0; k2 < p; ++k2)
      for (int r1 = 0; r1 < m; ++r1)
        op.u0[(k1 * m + r1) * m * p + (k2 * m + r1)] = 1.0;
  return op;
}

Mat io_matrix(int dim) {
  require(dim >= 1, "io_matrix: dimension must be positive");
  Mat io = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    io(i, 0) = 1.0;
    if (i >= 1) io(i, i) = 1.0;
  }
  return io;
}

void for_each_walk(const RegularGraph& graph, int kappa,
                   const std::function<void(const std::vector<int>&, double)>& fn) {
  require(kappa >= 1, "for_each_walk: kappa must be >= 1");
  std::vector<int> walk(kappa, 0);
  // odometer over vertex tuples, skipping zero-probability prefixes
  int depth = 0;
  while (true) {
    if (depth == kappa) {
      fn(walk, walk_probability(graph, walk));
      --depth;
      while (depth >= 0) {
        ++walk[depth];
        if (walk[depth] < graph.n) break;
        walk[depth] = 0;
        --depth;
      }
      if (depth < 0) return;
    }
    // skip branches with no edge from the previous vertex
    if (depth > 0 && graph.adjacency[walk[depth - 1]][walk[depth]] == 0) {
      while (depth >= 0) {
        ++walk[depth];
        if (walk[depth] < graph.n) break;
        walk[depth] = 0;
        --depth;
      }
      if (depth < 0) return;
      continue;
    }
    ++depth;
  }
}

double moment_exact(const MomentOperator& op, int kappa) {
  require(kappa >= 1, "moment_exact: kappa must be >= 1");
  if (count_walks(op.graph, kappa) > 1e6)
    throw std::length_error("moment_exact: walk enumeration exceeds limit");
  cplx total = 0.0;
  for_each_walk(op.graph, kappa, [&](const std::vector<int>& walk, double prob) {
    Tensor3 fwd = op.xs[walk[0]];
    for (int i = 1; i < kappa; ++i) fwd = tprod(fwd, op.xs[walk[i]]);
    Tensor3 rev = op.ys[walk[kappa - 1]];
    for (int i = kappa - 2; i >= 0; --i) rev = tprod(rev, op.ys[walk[i]]);
    total += prob * trace(tprod(fwd, rev));
  });
  if (std::abs(total.imag()) > 1e-9 * (1.0 + std::abs(total.real())))
    throw std::domain_error("moment_exact: imaginary residue too large");
  return total.real();
}

double moment_transfer(const MomentOperator& op, int kappa) {
  require(kappa >= 1, "moment_transfer: kappa must be >= 1");
  const int n = op.graph.n;
  const int dim = static_cast<int>(op.u0.size());
  std::vector<CVec> w(n, op.u0);
  std::vector<CVec> mixed(n);
  for (int step = 0; step < kappa; ++step) {
    for (int u = 0; u < n; ++u) {
      CVec acc = CVec::Zero(dim);
      for (int v = 0; v < n; ++v) {
        const int mult = op.graph.adjacency[u][v];
        if (mult > 0) acc += (static_cast<double>(mult) / op.graph.d) * w[v];
      }
      mixed[u] = op.blocks[u] * acc;
    }
    std::swap(w, mixed);
  }
  cplx quad = 0.0;
  for (int u = 0; u < n; ++u) quad += op.u0.dot(w[u]);  // u0 real: no conjugation effect
  quad /= static_cast<double>(n);
  if (std::abs(quad.imag()) > 1e-9 * (1.0 + std::abs(quad.real())))
    throw std::domain_error("moment_transfer: imaginary residue too large");
  // the u0 layout makes the quadratic form p^2 times the walk-trace moment
  return quad.real() / (static_cast<double>(op.p) * op.p);
}

GammaFactors gamma_factors(double t, double a, double b, double r, double lambda) {
  require(t >= 0.0 && r >= 0.0, "gamma_factors: t and r must be nonnegative");
  require(lambda >= 0.0 && lambda <= 1.0, "gamma_factors: lambda must be in [0, 1]");
  const double e = std::exp(t * r * std::sqrt(a * a + b * b));
  return GammaFactors{e, lambda * (e - 1.0), e - 1.0, lambda * e};
}

bool gamma_empirical_check(const MomentOperator& op, int trials, std::uint64_t seed,
                           double* worst_slack) {
  const int n = op.graph.n;
  const int dim = static_cast<int>(op.u0.size());
  const GammaFactors gf =
      gamma_factors(op.t, op.a, op.b, op.r, op.graph.lambda);
  Rng rng(seed);
  double worst = -kInf;
  const auto norm_of = [&](const std::vector<CVec>& u) {
    double s = 0.0;
    for (const CVec& seg : u) s += seg.squaredNorm();
    return std::sqrt(s);
  };
  const auto project_parallel = [&](const std::vector<CVec>& u) {
    CVec mean = CVec::Zero(dim);
    for (const CVec& seg : u) mean += seg;
    mean /= static_cast<double>(n);
    return std::vector<CVec>(n, mean);
  };
  const auto subtract = [&](const std::vector<CVec>& x, const std::vector<CVec>& y) {
    std::vector<CVec> out(n);
    for (int v = 0; v < n; ++v) out[v] = x[v] - y[v];
    return out;
  };
  const auto apply = [&](const std::vector<CVec>& u) {
    std::vector<CVec> out(n);
    for (int a_ = 0; a_ < n; ++a_) {
      CVec acc = CVec::Zero(dim);
      for (int v = 0; v < n; ++v) {
        const int mult = op.graph.adjacency[a_][v];
        if (mult > 0) acc += (static_cast<double>(mult) / op.graph.d) * u[v];
      }
      out[a_] = op.blocks[a_] * acc;
    }
    return out;
  };
  bool ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<CVec> u(n);
    for (int v = 0; v < n; ++v) {
      u[v] = CVec::Zero(dim);
      for (int i = 0; i < dim; ++i) u[v][i] = rng.normal();
    }
    const std::vector<CVec> upar = project_parallel(u);
    const std::vector<CVec> uperp = subtract(u, upar);
    const double npar = norm_of(upar), nperp = norm_of(uperp);
    const std::vector<CVec> mpar = apply(upar);
    const std::vector<CVec> mperp = apply(uperp);
    const std::vector<CVec> mpar_par = project_parallel(mpar);
    const std::vector<CVec> mperp_par = project_parallel(mperp);
    const double checks[4][2] = {
        {norm_of(mpar_par), gf.g1 * npar},
        {norm_of(mperp_par), gf.g2 * nperp},
        {norm_of(subtract(mpar, mpar_par)), gf.g3 * npar},
        {norm_of(subtract(mperp, mperp_par)), gf.g4 * nperp},
    };
    for (const auto& c : checks) {
      const double slack = c[0] - c[1];
      worst = std::max(worst, slack);
      if (slack > 1e-9) ok = false;
    }
  }
  if (worst_slack) *worst_slack = worst;
  return ok;
}

double lemma43_bound(double t, double a, double b, double r, double lambda, int kappa, int m,
                     int p) {
  require(kappa >= 1 && m >= 1 && p >= 1, "lemma43_bound: bad dimensions");
  if (lambda >= 1.0) return kInf;
  const double trs = t * r * std::sqrt(a * a + b * b);
  const double exponent =
      kappa * (2.0 * trs + 8.0 / (1.0 - lambda) + 16.0 * trs / (1.0 - lambda));
  return static_cast<double>(m) * m * p * p * std::exp(exponent);
}

bool lemma43_validity(double t, double a, double b, double r, double lambda) {
  const double trs = t * r * std::sqrt(a * a + b * b);
  if (!(trs < 1.0)) return false;
  return lambda * (2.0 * std::exp(trs) - 1.0) <= 1.0;
}

CheckReport ky_fan_sum_check(const std::vector<Tensor3>& cs, double s, int k) {
  require(!cs.empty(), "ky_fan_sum_check: need at least one tensor");
  require(s >= 1.0, "ky_fan_sum_check: s must be >= 1");
  Tensor3 sum = cs.front();
  for (std::size_t i = 1; i < cs.size(); ++i) sum = sum + cs[i];
  const auto top_k_pow = [&](const Tensor3& t) {
    const SpectrumVec sv = t_singular_values(t);
    require(k >= 1 && k <= static_cast<int>(sv.size()), "ky_fan_sum_check: k out of range");
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += std::pow(sv[i].value, s);
    return acc;
  };
  CheckReport rep;
  rep.check = "ky_fan_sum";
  rep.lhs = top_k_pow(sum);
  double rsum = 0.0;
  for (const Tensor3& c : cs) rsum += top_k_pow(c);
  rep.rhs = std::pow(static_cast<double>(cs.size()), s - 1.0) * rsum;
  rep.holds = rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

std::vector<double> default_t_grid() { return log_space(1e-4, 10.0, 200); }

void BoundParams::validate(int m, int p) const {
  require(kappa >= 1, "BoundParams: kappa must be >= 1");
  require(k >= 1 && k <= m * p, "BoundParams: k must satisfy 1 <= k <= m*p");
  require(!poly.a.empty(), "BoundParams: polynomial needs coefficients");
  for (double c : poly.a) require(c >= 0.0, "BoundParams: coefficients must be nonnegative");
  require(poly.s >= 1.0, "BoundParams: outer power must be >= 1");
  require(C > 0.0, "BoundParams: C must be positive");
  require(sigma > 0.0, "BoundParams: sigma must be positive");
  require(lambda_bar >= 0.0 && lambda_bar <= 1.0, "BoundParams: lambda_bar must be in [0, 1]");
  require(!t_grid.empty(), "BoundParams: t_grid must be nonempty");
  for (double t : t_grid) require(t > 0.0, "BoundParams: t_grid entries must be positive");
}

BoundResult main_bound_at(double theta, const BoundParams& params, int m, int p, double r) {
  params.validate(m, p);
  require(r > 0.0, "main_bound: r must be positive");
  const double mp = static_cast<double>(m) * p;
  const double k = params.k;
  const double s = params.poly.s;
  const int d = static_cast<int>(params.poly.a.size()) - 1;
  const double q = params.kappa + 8.0 * params.lambda_bar;
  const double cfac = params.C * (mp + std::sqrt((mp - k) * mp / k));
  const double base = 8.0 * params.kappa * params.lambda_bar;

  struct Term {
    double c0, c1, c2;  // exponent c0 + c1 t + c2 t^2
  };
  std::vector<Term> terms;
  if (params.poly.a[0] > 0.0) terms.push_back({std::log(params.poly.a[0] * k), 0.0, 0.0});
  for (int l = 1; l <= d; ++l) {
    const double al = params.poly.a[l];
    if (al <= 0.0) continue;
    const double lsr = l * s * r;
    terms.push_back({std::log(cfac * al) + base, 2.0 * q * lsr,
                     2.0 * (params.sigma * q * lsr) * (params.sigma * q * lsr)});
  }

  BoundResult res;
  res.theta = theta;
  if (terms.empty()) {  // f is identically zero
    res.value = 0.0;
    res.log_value = -kInf;
    res.t_star = params.t_grid.front();
    res.interior = true;
    return res;
  }

  const double lead = (s - 1.0) * std::log(static_cast<double>(d) + 1.0);
  std::vector<double> buf(terms.size());
  const auto log_objective = [&](double t) {
    for (std::size_t i = 0; i < terms.size(); ++i)
      buf[i] = terms[i].c0 + terms[i].c1 * t + terms[i].c2 * t * t;
    return lead - theta * t + log_sum_exp(buf);
  };

  std::size_t best = 0;
  double best_val = kInf;
  for (std::size_t i = 0; i < params.t_grid.size(); ++i) {
    const double v = log_objective(params.t_grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = params.t_grid[best > 0 ? best - 1 : best];
  const double hi = params.t_grid[best + 1 < params.t_grid.size() ? best + 1 : best];
  double t_star = params.t_grid[best];
  double log_min = best_val;
  if (hi > lo) {
    const MinResult refined = golden_section_min(log_objective, lo, hi, 1e-10);
    if (refined.value < log_min) {
      log_min = refined.value;
      t_star = refined.x;
    }
  }
  res.log_value = log_min;
  res.value = std::exp(log_min);
  res.t_star = t_star;
  res.interior = best > 0 && best + 1 < params.t_grid.size();
  return res;
}

std::vector<BoundResult> main_bound(const BoundParams& params, int m, int p, double r) {
  std::vector<BoundResult> out;
  out.reserve(params.theta_list.size());
  for (double theta : params.theta_list) out.push_back(main_bound_at(theta, params, m, p, r));
  return out;
}

CorollaryResult corollary_bound(double theta, const BoundParams& params, int m, int p,
                                double r) {
  params.validate(m, p);
  require(r > 0.0, "corollary_bound: r must be positive");
  const double mp = static_cast<double>(m) * p;
  const double k = params.k;
  const double q = params.kappa + 8.0 * params.lambda_bar;
  const double cfac = params.C * (mp + std::sqrt((mp - k) * mp / k));
  const double sig2 = params.sigma * params.sigma;
  CorollaryResult res;
  res.theta = theta;
  res.t_star_printed = (theta - 2.0 * q * r) / (4.0 * sig2 * r * r * q * q);
  res.value_printed =
      cfac * std::exp(-theta * theta / (8.0 * sig2 * r * r) + theta / (2.0 * sig2 * r * r) -
                      1.0 / (2.0 * sig2) + 8.0 * params.kappa * params.lambda_bar);
  const double excess = std::max(theta - 2.0 * q * r, 0.0);
  res.value_derived = cfac * std::exp(8.0 * params.kappa * params.lambda_bar -
                                      excess * excess / (8.0 * sig2 * r * r * q * q));
  return res;
}

GaussianFit gaussian_domination_fit(double sigma, double window, int grid_steps) {
  require(sigma > 0.0, "gaussian_domination_fit: sigma must be positive");
  require(window > 0.0, "gaussian_domination_fit: window must be positive");
  require(grid_steps >= 2, "gaussian_domination_fit: need at least 2 grid points");
  GaussianFit fit;
  const std::vector<double> taus = lin_space(-window, window, grid_steps);
  for (double tau : taus) {
    const double c = beta0_weight(tau) * sigma * std::sqrt(2.0 * pi) *
                     std::exp(tau * tau / (2.0 * sigma * sigma));
    fit.c_min = std::max(fit.c_min, c);
  }
  fit.violation_tail_flag = true;
  return fit;
}

AssumptionCheck check_assumptions(const TensorAssignment& assignment,
                                  const std::vector<int>& walk, const PolySpec& poly,
                                  double t) {
  const std::vector<double> spectrum = walk_spectrum(assignment, walk);
  AssumptionCheck out;
  out.f_tpd = true;
  out.submult_ok = true;
  for (double mu : spectrum) {
    if (!(poly.eval(mu) > 1e-10)) out.f_tpd = false;
    const double lhs = poly.eval(std::exp(t * mu));
    const double rhs = std::exp(t * poly.eval(mu));
    if (lhs < rhs - 1e-9 * std::max(1.0, std::abs(rhs))) out.submult_ok = false;
  }
  return out;
}

namespace {

struct TrialCounts {
  std::vector<long long> exceed;  // per theta
  long long violations = 0;
};

TrialCounts run_trials(const TensorAssignment& assignment, const RegularGraph& graph,
                       const BoundParams& params, const std::vector<double>& t_stars,
                       long long lo, long long hi, std::uint64_t master_seed) {
  TrialCounts counts;
  counts.exceed.assign(params.theta_list.size(), 0);
  for (long long trial = lo; trial < hi; ++trial) {
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    const std::vector<int> walk = sample_walk_vertices(graph, params.kappa, rng);
    const std::vector<double> spectrum = walk_spectrum(assignment, walk);
    const double stat = top_k_statistic(spectrum, params.poly, params.k);
    bool violated = false;
    for (double mu : spectrum)
      if (!(params.poly.eval(mu) > 1e-10)) violated = true;
    for (double t : t_stars) {
      if (violated) break;
      for (double mu : spectrum) {
        const double lhs = params.poly.eval(std::exp(t * mu));
        const double rhs = std::exp(t * params.poly.eval(mu));
        if (lhs < rhs - 1e-9 * std::max(1.0, std::abs(rhs))) {
          violated = true;
          break;
        }
      }
    }
    if (violated) ++counts.violations;
    for (std::size_t j = 0; j < params.theta_list.size(); ++j)
      if (stat >= params.theta_list[j]) ++counts.exceed[j];
  }
  return counts;
}

}  // namespace

TailStats empirical_tail_stats(const TensorAssignment& assignment, const RegularGraph& graph,
                               const BoundParams& params, long long trials,
                               std::uint64_t master_seed, int threads) {
  check_assignment(assignment, graph);
  params.validate(assignment.m, assignment.p);
  require(trials >= 1, "empirical_tail: trials must be >= 1");
  require(!params.theta_list.empty(), "empirical_tail: theta_list must be nonempty");
  for (std::size_t j = 0; j + 1 < params.theta_list.size(); ++j)
    require(params.theta_list[j] <= params.theta_list[j + 1],
            "empirical_tail: theta_list must be ascending");

  const std::vector<BoundResult> bounds = main_bound(params, assignment.m, assignment.p,
                                                     assignment.r);
  std::vector<double> t_stars(bounds.size());
  for (std::size_t j = 0; j < bounds.size(); ++j) t_stars[j] = bounds[j].t_star;

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(std::min<long long>(nthreads, trials));

  std::vector<TrialCounts> partial(nthreads);
  std::vector<std::thread> pool;
  const long long chunk = trials / nthreads;
  const long long rem = trials % nthreads;
  long long start = 0;
  for (int i = 0; i < nthreads; ++i) {
    const long long stop = start + chunk + (i < rem ? 1 : 0);
    pool.emplace_back([&, i, start, stop]() {
      partial[i] = run_trials(assignment, graph, params, t_stars, start, stop, master_seed);
    });
    start = stop;
  }
  for (std::thread& th : pool) th.join();

  TrialCounts total;
  total.exceed.assign(params.theta_list.size(), 0);
  for (const TrialCounts& c : partial) {
    total.violations += c.violations;
    for (std::size_t j = 0; j < total.exceed.size(); ++j) total.exceed[j] += c.exceed[j];
  }

  TailStats stats;
  stats.trials = trials;
  stats.assumption_violations = total.violations;
  stats.report.rows.resize(params.theta_list.size());
  for (std::size_t j = 0; j < params.theta_list.size(); ++j) {
    TailRow& row = stats.report.rows[j];
    row.theta = params.theta_list[j];
    row.trials = trials;
    row.empirical_p = static_cast<double>(total.exceed[j]) / trials;
    const std::pair<double, double> ci = clopper_pearson(total.exceed[j], trials, 0.95);
    row.ci_low = ci.first;
    row.ci_high = ci.second;
    row.bound_eq8 = bounds[j].value;
    row.t_star = bounds[j].t_star;
    const CorollaryResult cor =
        corollary_bound(row.theta, params, assignment.m, assignment.p, assignment.r);
    row.corollary_printed = cor.value_printed;
    row.corollary_derived = cor.value_derived;
  }
  return stats;
}

TailReport empirical_tail(const TensorAssignment& assignment, const RegularGraph& graph,
                          const BoundParams& params, long long trials,
                          std::uint64_t master_seed, int threads) {
  return empirical_tail_stats(assignment, graph, params, trials, master_seed, threads).report;
}

std::vector<double> exact_tail(const TensorAssignment& assignment, const RegularGraph& graph,
                               const BoundParams& params) {
  check_assignment(assignment, graph);
  params.validate(assignment.m, assignment.p);
  require(!params.theta_list.empty(), "exact_tail: theta_list must be nonempty");
  if (count_walks(graph, params.kappa) > 1e6)
    throw std::length_error("exact_tail: walk enumeration exceeds limit");
  std::vector<double> tail(params.theta_list.size(), 0.0);
  for_each_walk(graph, params.kappa, [&](const std::vector<int>& walk, double prob) {
    const double stat = walk_statistic(assignment, walk, params.poly, params.k);
    for (std::size_t j = 0; j < params.theta_list.size(); ++j)
      if (stat >= params.theta_list[j]) tail[j] += prob;
  });
  return tail;
}

std::string TailReport::csv() const {
  std::string out =
      "theta,empirical_p,ci_low,ci_high,bound_eq8,t_star,corollary_printed,corollary_derived,"
      "trials\n";
  for (const TailRow& row : rows) {
    format_sci(out, row.theta);
    out += ',';
    format_sci(out, row.empirical_p);
    out += ',';
    format_sci(out, row.ci_low);
    out += ',';
    format_sci(out, row.ci_high);
    out += ',';
    format_sci(out, row.bound_eq8);
    out += ',';
    format_sci(out, row.t_star);
    out += ',';
    format_sci(out, row.corollary_printed);
    out += ',';
    format_sci(out, row.corollary_derived);
    out += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", row.trials);
    out += buf;
    out += '\n';
  }
  return out;
}

std::string TailReport::json() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TailRow& row = rows[i];
    if (i) out += ',';
    out += "\n  {\"theta\":";
    format_json_number(out, row.theta);
    out += ",\"empirical_p\":";
    format_json_number(out, row.empirical_p);
    out += ",\"ci_low\":";
    format_json_number(out, row.ci_low);
    out += ",\"ci_high\":";
    format_json_number(out, row.ci_high);
    out += ",\"bound_eq8\":";
    format_json_number(out, row.bound_eq8);
    out += ",\"t_star\":";
    format_json_number(out, row.t_star);
    out += ",\"corollary_printed\":";
    format_json_number(out, row.corollary_printed);
    out += ",\"corollary_derived\":";
    format_json_number(out, row.corollary_derived);
    out += ",\"trials\":";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", row.trials);
    out += buf;
    out += '}';
  }
  out += "\n]\n";
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const RegularGraph graph = parse_graph_spec(config.graph);
  const std::uint64_t assignment_seed = derive_seed(config.master_seed, (1ull << 62) + 1);
  const TensorAssignment assignment = random_assignment(graph, config.m, config.p, config.r,
                                                        config.centered, assignment_seed);
  const double c_used =
      config.C > 0.0 ? config.C : gaussian_domination_fit(config.sigma, 8.0, 4001).c_min;

  BoundParams params;
  params.kappa = config.kappa;
  params.k = config.k;
  params.poly = config.poly;
  params.C = c_used;
  params.sigma = config.sigma;
  params.lambda_bar = 1.0 - graph.lambda;
  if (config.theta_list.empty()) {
    const double cap = config.k * config.poly.degree_bound(config.kappa * config.r);
    params.theta_list = cap > 0.0 ? lin_space(0.0, 1.25 * cap, 10) : std::vector<double>{0.0};
  } else {
    params.theta_list = config.theta_list;
    std::sort(params.theta_list.begin(), params.theta_list.end());
  }

  const TailStats stats = empirical_tail_stats(assignment, graph, params, config.trials,
                                               config.master_seed, config.threads);

  ExperimentResult res;
  res.report = stats.report;
  res.n = graph.n;
  res.d = graph.d;
  res.lambda = graph.lambda;
  res.c_used = c_used;
  res.assumption_violation_rate =
      static_cast<double>(stats.assumption_violations) / stats.trials;
  for (const TailRow& row : res.report.rows) {
    const bool vacuous = !(row.bound_eq8 < 1.0);
    if (vacuous)
      ++res.vacuous_rows;
    else if (row.empirical_p > row.bound_eq8)
      res.tail_within_bound = false;
  }
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "graph=%s n=%d d=%d lambda=%.6g C=%.6g trials=%lld "
                "assumption_violation_rate=%.6g vacuous_rows=%lld tail_within_bound=%s",
                config.graph.c_str(), res.n, res.d, res.lambda, res.c_used,
                static_cast<long long>(stats.trials), res.assumption_violation_rate,
                res.vacuous_rows, res.tail_within_bound ? "true" : "false");
  res.summary = buf;
  return res;
}

}  // namespace tprod
