#include "tprod/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "tprod/chernoff.hpp"
#include "tprod/expander.hpp"
#include "tprod/majorization.hpp"
#include "tprod/mat.hpp"
#include "tprod/numeric.hpp"
#include "tprod/rng.hpp"
#include "tprod/spectral.hpp"
#include "tprod/stats.hpp"
#include "tprod/tensor.hpp"

#include <json.hpp>

namespace tprod {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double tensor_gap(const Tensor3& a, const Tensor3& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

double mat_gap(const Mat& a, const Mat& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// ---------------------------------------------------------------- core -----

std::vector<VerifyResult> suite_core(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  Rng rng(derive_seed(seed, 101));

  {
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
      const int m = 1 + static_cast<int>(rng.below(3));
      const int n = 1 + static_cast<int>(rng.below(3));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 t = random_tensor(m, n, p, rng.bits());
      worst = std::max(worst, tensor_gap(fold(unfold(t), m, n, p), t));
      worst = std::max(worst, tensor_gap(bcirc_inv(bcirc(t), m, n, p), t));
    }
    out.push_back({"core.roundtrips", worst <= 1e-12,
                   fmt("fold/unfold and bcirc round-trips, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
      const int m = 1 + static_cast<int>(rng.below(3));
      const int n = 1 + static_cast<int>(rng.below(3));
      const int q = 1 + static_cast<int>(rng.below(3));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 a = random_tensor(m, n, p, rng.bits());
      const Tensor3 b = random_tensor(n, q, p, rng.bits());
      const Tensor3 c3 = random_tensor(q, m, p, rng.bits());
      worst = std::max(worst, tensor_gap(tprod(tprod(a, b), c3), tprod(a, tprod(b, c3))));
      worst = std::max(worst, tensor_gap(tprod(identity_tensor(m, p), a), a));
      worst = std::max(worst, tensor_gap(tprod(a, identity_tensor(n, p)), a));
    }
    out.push_back({"core.tprod_laws", worst <= 1e-10,
                   fmt("associativity and identity law, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
      const int m = 1 + static_cast<int>(rng.below(3));
      const int n = 1 + static_cast<int>(rng.below(3));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 a = random_tensor(m, n, p, rng.bits());
      const Tensor3 b = random_tensor(n, m, p, rng.bits());
      const Tensor3 sq = random_tensor(m, m, p, rng.bits());
      worst = std::max(worst, std::abs(trace(sq) - trace(transpose(sq))));
      worst = std::max(worst, std::abs(trace(tprod(a, b)) - trace(tprod(b, a))));
    }
    out.push_back({"core.trace_laws", worst <= 1e-10,
                   fmt("transpose invariance and cyclicity, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
      const int m = 1 + static_cast<int>(rng.below(3));
      const int n = 1 + static_cast<int>(rng.below(3));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 t = random_tensor(m, n, p, rng.bits());
      worst = std::max(worst, mat_gap(bcirc(transpose(t)), Mat(bcirc(t).transpose())));
    }
    out.push_back({"core.transpose_bcirc", worst <= 1e-12,
                   fmt("200 tensors, transpose matches block level, max gap %.3g", worst)});
  }
  return out;
}

// ------------------------------------------------------------ spectral -----

std::vector<VerifyResult> suite_spectral(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  Rng rng(derive_seed(seed, 202));

  {
    double worst = 0.0;
    for (int c = 0; c < 40; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 t = random_symmetric(m, p, rng.bits());
      const std::vector<double> freq = values_of(t_eigenvalues(t));
      const HermitianEigen dense = hermitian_eigen(bcirc(t));
      double scale = 1.0;
      for (double v : dense.values) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < freq.size(); ++i)
        worst = std::max(worst, std::abs(freq[i] - dense.values[i]) / scale);
    }
    out.push_back({"spectral.block_spectrum", worst <= 1e-8,
                   fmt("frequency vs block-circulant spectra, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 25; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = 1 + static_cast<int>(rng.below(3));
      const Tensor3 h = random_tensor(m, m, p, rng.bits());
      const Tensor3 u = random_orthogonal(m, p, rng.bits());
      const Tensor3 v = random_orthogonal(m, p, rng.bits());
      const Tensor3 rotated = tprod(tprod(u, h), v);
      for (int k = 1; k <= m * p; ++k)
        worst = std::max(worst, rel_err(ky_fan_norm(rotated, k), ky_fan_norm(h, k)));
    }
    out.push_back({"spectral.unitary_invariance", worst <= 1e-8,
                   fmt("Ky Fan norms under orthogonal rotation, max gap %.3g", worst)});
  }
  {
    double worst = -1.0;
    for (int c = 0; c < 40; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = 1 + static_cast<int>(rng.below(3));
      const Tensor3 a = random_tensor(m, m, p, rng.bits());
      const Tensor3 b = random_tensor(m, m, p, rng.bits());
      for (int k = 1; k <= m * p; ++k)
        worst = std::max(worst,
                         ky_fan_norm(a + b, k) - ky_fan_norm(a, k) - ky_fan_norm(b, k));
      for (double q : {1.0, 2.0, 3.5})
        worst = std::max(worst,
                         schatten_norm(a + b, q) - schatten_norm(a, q) - schatten_norm(b, q));
    }
    out.push_back({"spectral.triangle", worst <= 1e-10,
                   fmt("norm triangle inequalities, worst slack %.3g", worst)});
  }
  {
    double worst = 0.0;
    bool tpd_ok = true;
    for (int c = 0; c < 25; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = 1 + static_cast<int>(rng.below(3));
      Tensor3 t = random_symmetric(m, p, rng.bits());
      t = cplx(1.0 / std::max(1.0, spectral_norm(t)), 0.0) * t;
      const Tensor3 e = apply_spectral_function(t, SpectralFunction::make_exp());
      if (!is_tpd(e)) tpd_ok = false;
      const Tensor3 back = apply_spectral_function(e, SpectralFunction::make_log());
      worst = std::max(worst, max_abs(back - t));
    }
    out.push_back({"spectral.exp_log", tpd_ok && worst <= 1e-7,
                   fmt("log(exp(C)) round-trip, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 40; ++c) {
      const int m = 1 + static_cast<int>(rng.below(3));
      const int p = 1 + static_cast<int>(rng.below(4));
      const FrequencySlices f = to_frequency(random_tensor(m, m, p, rng.bits()));
      for (int i = 0; i < p; ++i) {
        const Mat conj_pair = f.slices[(p - i) % p].conjugate();
        worst = std::max(worst, mat_gap(f.slices[i], conj_pair));
      }
    }
    out.push_back({"spectral.conjugate_symmetry", worst <= 1e-10,
                   fmt("real input frequency pairing, max gap %.3g", worst)});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 40; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = 1 + static_cast<int>(rng.below(4));
      const Tensor3 t = random_symmetric(m, p, rng.bits());
      cplx first = 0.0;
      for (int i = 0; i < m; ++i) first += t(i, i, 0);
      const double direct = p * first.real();
      double eig_sum = 0.0;
      for (double v : values_of(t_eigenvalues(t))) eig_sum += v;
      const double scale = std::max(1.0, std::abs(direct));
      worst = std::max(worst, std::abs(spectral_trace(t) - direct) / scale);
      worst = std::max(worst, std::abs(spectral_trace(t) - eig_sum) / scale);
    }
    out.push_back({"spectral.trace", worst <= 1e-10,
                   fmt("slice formula and eigenvalue sum agree, max gap %.3g", worst)});
  }
  return out;
}

// -------------------------------------------------------- majorization -----

std::vector<double> random_sorted_positive(Rng& rng, int n) {
  std::vector<double> v(n);
  for (double& x : v) x = 0.05 + std::abs(rng.normal());
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

// Pinch y with random T-transforms: the result is majorized by y.
std::vector<double> pinch(Rng& rng, std::vector<double> y, int rounds) {
  const int n = static_cast<int>(y.size());
  for (int rd = 0; rd < rounds; ++rd) {
    const int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n));
    if (i == j) continue;
    const double t = rng.uniform();
    const double yi = y[i], yj = y[j];
    y[i] = t * yi + (1.0 - t) * yj;
    y[j] = (1.0 - t) * yi + t * yj;
  }
  std::sort(y.begin(), y.end(), std::greater<double>());
  return y;
}

std::vector<VerifyResult> suite_majorization(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  Rng rng(derive_seed(seed, 303));

  {
    bool ok = true;
    for (int c = 0; c < 200 && ok; ++c) {
      const int n = 2 + static_cast<int>(rng.below(5));
      const std::vector<double> y = random_sorted_positive(rng, n);
      const std::vector<double> x = pinch(rng, y, 2 * n);
      if (!majorize(x, y) || !weak_majorize(x, y)) ok = false;
      std::vector<double> ylog(n), xlog(n);
      for (int i = 0; i < n; ++i) ylog[i] = std::log(y[i]);
      std::vector<double> zlog = pinch(rng, ylog, 2 * n);
      std::vector<double> z(n);
      for (int i = 0; i < n; ++i) z[i] = std::exp(zlog[i]);
      std::sort(z.begin(), z.end(), std::greater<double>());
      if (!log_majorize(z, y) || !weak_log_majorize(z, y)) ok = false;
    }
    out.push_back({"majorization.implications", ok,
                   "majorize implies weak forms on 200 pinched pairs"});
  }
  {
    bool ok = true;
    const ScalarFn fns[3] = {ScalarFn::Exp(), ScalarFn::Power(2.0), ScalarFn::ShiftedRelu(0.3)};
    for (int c = 0; c < 500 && ok; ++c) {
      const int n = 2 + static_cast<int>(rng.below(5));
      const std::vector<double> y = random_sorted_positive(rng, n);
      std::vector<double> x = pinch(rng, y, 2 * n);
      const double shrink = 0.5 + 0.5 * rng.uniform();
      for (double& v : x) v *= shrink;  // keep weak majorization, drop equality
      const ScalarFn& fn = fns[c % 3];
      if (!fn.convex() || !fn.nondecreasing()) ok = false;
      if (!weak_majorize(x, y)) ok = false;
      std::vector<double> fx(n), fy(n);
      for (int i = 0; i < n; ++i) {
        fx[i] = fn(x[i]);
        fy[i] = fn(y[i]);
      }
      std::sort(fx.begin(), fx.end(), std::greater<double>());
      std::sort(fy.begin(), fy.end(), std::greater<double>());
      if (!weak_majorize(fx, fy, 1e-9)) ok = false;
    }
    out.push_back({"majorization.monotone_convex_transport", ok,
                   "weak majorization survives convex nondecreasing maps, 500 pairs"});
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 30; ++c) {
      const int n = 4;
      Mat a(n, n), b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          a(i, j) = cplx(rng.normal(), rng.normal());
          b(i, j) = cplx(rng.normal(), rng.normal());
        }
      const int k = 2;
      worst = std::max(
          worst, mat_gap(compound_matrix(a * b, k),
                         Mat(compound_matrix(a, k) * compound_matrix(b, k))));
    }
    out.push_back({"majorization.compound_multiplicative", worst <= 1e-8,
                   fmt("compound(AB) = compound(A) compound(B), max gap %.3g", worst)});
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int c = 0; c < 100; ++c) {
      const int m = 2 + static_cast<int>(rng.below(2));
      const int p = m == 2 ? 1 + static_cast<int>(rng.below(4)) : 1 + static_cast<int>(rng.below(2));
      const int k = 1 + static_cast<int>(rng.below(std::min(3, m * p)));
      const CheckReport rep = antisym_norm_check(random_tensor(m, m, p, rng.bits()), k);
      if (!rep.holds) ok = false;
      worst = std::max(worst, rel_err(rep.lhs, rep.rhs));
    }
    out.push_back({"majorization.antisym_norm", ok,
                   fmt("compound norm equals singular-value product, max gap %.3g", worst)});
  }
  {
    // Simpson rule over [-8, 8]; the weight integrates to 1 over the line.
    const int steps = 16000;
    const double h = 16.0 / steps;
    double mass = beta0_weight(-8.0) + beta0_weight(8.0);
    for (int i = 1; i < steps; ++i)
      mass += beta0_weight(-8.0 + i * h) * (i % 2 ? 4.0 : 2.0);
    mass *= h / 3.0;
    const double deficit = std::abs(1.0 - mass);
    out.push_back({"majorization.weight_mass", deficit < 1e-9,
                   fmt("integral weight mass deficit %.3g at half-width 8", deficit)});
  }
  return out;
}

// ------------------------------------------------------------ expander -----

std::vector<VerifyResult> suite_expander(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  Rng rng(derive_seed(seed, 404));

  {
    const RegularGraph g = gen_complete(5);
    const int kappa = 3;
    const long long samples = 100000;
    std::vector<std::vector<long long>> counts(kappa, std::vector<long long>(g.n, 0));
    for (long long s = 0; s < samples; ++s) {
      const std::vector<int> walk = sample_walk_vertices(g, kappa, rng);
      for (int j = 0; j < kappa; ++j) ++counts[j][walk[j]];
    }
    const double expected = static_cast<double>(samples) / g.n;
    double min_p = 1.0;
    for (int j = 0; j < kappa; ++j) {
      double stat = 0.0;
      for (int v = 0; v < g.n; ++v) {
        const double dlt = counts[j][v] - expected;
        stat += dlt * dlt / expected;
      }
      min_p = std::min(min_p, chi_square_sf(stat, g.n - 1));
    }
    out.push_back({"expander.stationarity", min_p > 0.001,
                   fmt("uniform marginals chi-square, min p-value %.4g", min_p)});
  }
  {
    const std::uint64_t s = rng.bits();
    const RegularGraph g1 = gen_random_regular(8, 3, s);
    const RegularGraph g2 = gen_random_regular(8, 3, s);
    const bool graphs_equal = g1.adjacency == g2.adjacency;
    const WalkSample w1 = sample_walk(g1, 6, s + 1);
    const WalkSample w2 = sample_walk(g1, 6, s + 1);
    out.push_back({"expander.reproducible", graphs_equal && w1.vertices == w2.vertices,
                   "identical seeds give identical graphs and walks"});
  }
  {
    const RegularGraph g = gen_random_regular(200, 4, rng.bits());
    out.push_back({"expander.random_regular_gap", g.lambda < 0.9,
                   fmt("n=200 d=4 second eigenvalue %.4g < 0.9", g.lambda)});
  }
  return out;
}

// ------------------------------------------------------------ chernoff -----

TensorAssignment shifted_assignment(const RegularGraph& g, int m, int p, double base_r,
                                    std::uint64_t seed) {
  TensorAssignment a;
  a.m = m;
  a.p = p;
  a.centered = false;
  a.g.reserve(g.n);
  for (int v = 0; v < g.n; ++v) {
    Tensor3 t = random_symmetric(m, p, derive_seed(seed, v));
    t = cplx(base_r / std::max(1e-12, spectral_norm(t)), 0.0) * t;
    t = t + cplx(1.1 * base_r, 0.0) * identity_tensor(m, p);
    a.g.push_back(t);
  }
  a.r = 0.0;
  for (const Tensor3& t : a.g) a.r = std::max(a.r, spectral_norm(t));
  return a;
}

std::vector<VerifyResult> suite_chernoff(std::uint64_t seed) {
  std::vector<VerifyResult> out;
  Rng rng(derive_seed(seed, 505));

  const RegularGraph k3 = gen_complete(3);
  {
    bool ok = true;
    double worst = -1e300;
    TensorAssignment asg = random_assignment(k3, 2, 2, 0.5, false, rng.bits());
    for (double t : {0.1, 0.3})
      for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.5, 0.5}}) {
        if (!lemma43_validity(t, a, b, asg.r, k3.lambda)) continue;
        const MomentOperator op = make_moment_operator(k3, asg, t, a, b);
        const double exact = moment_exact(op, 3);
        const double bound = lemma43_bound(t, a, b, asg.r, k3.lambda, 3, 2, 2);
        worst = std::max(worst, exact - bound);
        if (exact > bound) ok = false;
      }
    out.push_back({"chernoff.trace_moment_bound", ok,
                   fmt("enumerated moment within closed-form bound, worst slack %.3g", worst)});
  }
  {
    const TensorAssignment asg = shifted_assignment(k3, 2, 2, 0.4, rng.bits());
    BoundParams params;
    params.kappa = 3;
    params.k = 1;
    params.poly = PolySpec{{0.0, 1.0}, 1.0};
    params.sigma = 1.0;
    params.lambda_bar = 1.0 - k3.lambda;
    params.theta_list = lin_space(0.0, 1.25 * 3 * asg.r, 10);
    const std::vector<double> exact = exact_tail(asg, k3, params);
    const std::vector<BoundResult> bounds = main_bound(params, 2, 2, asg.r);
    bool ok = true;
    for (std::size_t j = 0; j < exact.size(); ++j)
      if (exact[j] > bounds[j].value) ok = false;
    out.push_back({"chernoff.tail_bound_enumerable", ok,
                   "exact tail below the minimized bound on a positive-spectrum fixture"});

    const long long trials = 2000;
    const TailReport mc = empirical_tail(asg, k3, params, trials, rng.bits(), 0);
    bool ci_ok = true;
    for (std::size_t j = 0; j < mc.rows.size(); ++j) {
      const long long hits = std::llround(mc.rows[j].empirical_p * trials);
      const auto ci = clopper_pearson(hits, trials, 0.999);
      if (exact[j] < ci.first || exact[j] > ci.second) ci_ok = false;
    }
    out.push_back({"chernoff.mc_matches_enumeration", ci_ok,
                   "widened Monte Carlo intervals contain the exact tail"});
  }
  {
    bool ok = true;
    double worst = -1e300;
    const RegularGraph graphs[3] = {gen_complete(3), gen_complete(4), gen_cycle(5)};
    for (const RegularGraph& g : graphs) {
      const TensorAssignment asg = random_assignment(g, 2, 2, 0.5, false, rng.bits());
      for (double t : {0.05, 0.1, 0.2}) {
        const MomentOperator op = make_moment_operator(g, asg, t, 1.0, 0.5);
        double slack = 0.0;
        if (!gamma_empirical_check(op, 100, rng.bits(), &slack)) ok = false;
        worst = std::max(worst, slack);
      }
    }
    out.push_back({"chernoff.contraction_factors", ok,
                   fmt("norm contraction grid, worst slack %.3g", worst)});
  }
  {
    bool ok = true;
    for (int c = 0; c < 500 && ok; ++c) {
      const double s = 1.0 + c % 3;
      const int count = 1 + static_cast<int>(rng.below(3));
      std::vector<Tensor3> cs;
      for (int i = 0; i < count; ++i) cs.push_back(random_symmetric(2, 2, rng.bits()));
      const int k = 1 + static_cast<int>(rng.below(4));
      if (!ky_fan_sum_check(cs, s, k).holds) ok = false;
    }
    out.push_back({"chernoff.ky_fan_sum", ok, "sum inequality on 500 draws, s in {1,2,3}"});
  }
  {
    BoundParams params;
    params.kappa = 3;
    params.k = 1;
    params.poly = PolySpec{{0.0, 1.0}, 1.0};
    params.sigma = 1.0;
    params.lambda_bar = 0.5;
    const double q = params.kappa + 8.0 * params.lambda_bar;
    const BoundResult res = main_bound_at(2.0 * q + 6.0, params, 2, 2, 1.0);
    out.push_back({"chernoff.bound_argmin_interior",
                   res.interior && res.t_star > 1e-4 && res.t_star < 10.0,
                   fmt("minimizer t = %.6g sits inside the search window", res.t_star)});
  }
  return out;
}

}  // namespace

bool all_pass(const std::vector<VerifyResult>& results) {
  for (const VerifyResult& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<VerifyResult> verify_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "core") return suite_core(seed);
  if (suite == "spectral") return suite_spectral(seed);
  if (suite == "majorization") return suite_majorization(seed);
  if (suite == "expander") return suite_expander(seed);
  if (suite == "chernoff") return suite_chernoff(seed);
  if (suite == "all") {
    std::vector<VerifyResult> out;
    for (const char* name : {"core", "spectral", "majorization", "expander", "chernoff"}) {
      std::vector<VerifyResult> part = verify_suite(name, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("verify: unknown suite '" + suite + "'");
}

std::string verify_json(const std::string& suite, const std::vector<VerifyResult>& results) {
  nlohmann::json j;
  j["suite"] = suite;
  j["pass"] = all_pass(results);
  j["results"] = nlohmann::json::array();
  for (const VerifyResult& r : results)
    j["results"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  return j.dump(2) + "\n";
}

}  // namespace tprod
