#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "tprod/chernoff.hpp"
#include "tprod/rng.hpp"
#include "tprod/stats.hpp"

using namespace tprod;
using oracles::tmul;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One vertex with a double self-loop: the only walk repeats that vertex.
RegularGraph single_vertex() { return make_graph({{2}}); }

// Random symmetric tensors scaled to base_r, then shifted well into the
// positive cone so every walk sum has positive spectrum.
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

double max_tensor_gap(const Tensor3& a, const Tensor3& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

}  // namespace

TEST_CASE("random assignments respect the norm cap and the centering flag") {
  const RegularGraph k5 = gen_complete(5);
  const TensorAssignment a = random_assignment(k5, 2, 3, 1.5, false, 11);
  CHECK(a.m == 2);
  CHECK(a.p == 3);
  CHECK(a.r == doctest::Approx(1.5));
  CHECK_FALSE(a.centered);
  REQUIRE(a.g.size() == 5);
  double max_norm = 0.0;
  for (const Tensor3& t : a.g) {
    CHECK(max_tensor_gap(t, transpose(t)) <= 1e-10);
    const double norm = spectral_norm(t);
    CHECK(norm <= 1.5 + 1e-10);
    max_norm = std::max(max_norm, norm);
  }
  CHECK(max_norm == doctest::Approx(1.5));  // rescaled so the max hits r

  const TensorAssignment c = random_assignment(k5, 2, 2, 0.7, true, 12);
  Tensor3 sum = zero_tensor(2, 2, 2);
  for (const Tensor3& t : c.g) sum = sum + t;
  CHECK(spectral_norm(sum) <= 1e-9 * 0.7);

  // deterministic under the seed
  const TensorAssignment b = random_assignment(k5, 2, 3, 1.5, false, 11);
  for (int v = 0; v < 5; ++v) CHECK(max_tensor_gap(a.g[v], b.g[v]) == doctest::Approx(0.0));
  const TensorAssignment other = random_assignment(k5, 2, 3, 1.5, false, 13);
  CHECK(max_tensor_gap(a.g[0], other.g[0]) > 1e-6);

  CHECK_THROWS_AS(random_assignment(k5, 2, 2, 0.0, false, 1), std::invalid_argument);
}

TEST_CASE("polynomial specs evaluate Horner form with an outer power") {
  const PolySpec ident;  // default x^1
  CHECK(ident.eval(3.25) == doctest::Approx(3.25));
  CHECK(ident.eval(-2.0) == doctest::Approx(-2.0));
  CHECK(ident.degree_bound(4.0) == doctest::Approx(4.0));

  const PolySpec q{{1.0, 2.0, 3.0}, 2.0};
  CHECK(q.eval(0.5) == doctest::Approx((1.0 + 1.0 + 0.75) * (1.0 + 1.0 + 0.75)));
  CHECK(q.degree_bound(2.0) == doctest::Approx((1.0 + 4.0 + 12.0) * (1.0 + 4.0 + 12.0)));

  // integer powers accept negative inner values; fractional powers do not
  const PolySpec sq{{0.0, 1.0}, 2.0};
  CHECK(sq.eval(-3.0) == doctest::Approx(9.0));
  const PolySpec frac{{0.0, 1.0}, 1.5};
  CHECK(frac.eval(4.0) == doctest::Approx(8.0));
  CHECK_THROWS_AS(frac.eval(-1.0), std::domain_error);
  CHECK_THROWS_AS((PolySpec{{}, 1.0}.eval(1.0)), std::invalid_argument);
}

TEST_CASE("walk statistics take the Ky Fan norm of the polynomial image") {
  const RegularGraph k3 = gen_complete(3);
  const PolySpec ident;

  // zero assignment: statistic vanishes
  TensorAssignment zero;
  zero.m = 2;
  zero.p = 2;
  zero.r = 0.0;
  for (int v = 0; v < 3; ++v) zero.g.push_back(zero_tensor(2, 2, 2));
  CHECK(walk_statistic(zero, {0, 1, 2}, ident, 2) == doctest::Approx(0.0));

  // single vertex: the walk sum is kappa times one tensor
  const RegularGraph sv = single_vertex();
  const TensorAssignment sa = random_assignment(sv, 2, 2, 1.0, false, 21);
  const double stat = walk_statistic(sa, {0, 0, 0}, ident, 2);
  CHECK(stat == doctest::Approx(ky_fan_norm(cplx(3.0) * sa.g[0], 2)).epsilon(1e-10));

  // dense oracle: Ky Fan norm of the matrix polynomial of bcirc(sum g)
  const TensorAssignment ra = random_assignment(k3, 2, 2, 1.2, false, 22);
  const PolySpec poly{{0.3, 0.7, 0.2}, 2.0};
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const WalkSample w = sample_walk(k3, 4, derive_seed(24, rep));
    Tensor3 sum = zero_tensor(2, 2, 2);
    for (int v : w.vertices) sum = sum + ra.g[v];
    const Mat dense = oracles::apply_sym(bcirc(sum), [&](double x) { return poly.eval(x); });
    const int k = 1 + rng.index(4);
    CHECK(walk_statistic(ra, w.vertices, poly, k) ==
          doctest::Approx(oracles::ky_fan_norm(dense, k)).epsilon(1e-8));
  }

  CHECK_THROWS_AS(walk_statistic(ra, {0, 1}, ident, 5), std::invalid_argument);
  CHECK_THROWS_AS(walk_statistic(ra, {}, ident, 1), std::invalid_argument);
  CHECK_THROWS_AS(walk_statistic(ra, {0, 7}, ident, 1), std::invalid_argument);
}

TEST_CASE("io matrix carries the all-ones first column over the standard basis") {
  const Mat io = io_matrix(4);
  for (int i = 0; i < 4; ++i) {
    CHECK(io(i, 0) == cplx(1.0));
    for (int j = 1; j < 4; ++j) CHECK(io(i, j) == (i == j ? cplx(1.0) : cplx(0.0)));
  }
  CHECK_THROWS_AS(io_matrix(0), std::invalid_argument);
}

TEST_CASE("walk enumeration visits exactly the positive-probability walks") {
  const RegularGraph k3 = gen_complete(3);
  int count = 0;
  double total = 0.0;
  for_each_walk(k3, 3, [&](const std::vector<int>& w, double prob) {
    ++count;
    total += prob;
    REQUIRE(w.size() == 3);
    for (std::size_t j = 0; j + 1 < w.size(); ++j) REQUIRE(k3.adjacency[w[j]][w[j + 1]] > 0);
    CHECK(prob == doctest::Approx(walk_probability(k3, w)));
  });
  CHECK(count == 12);
  CHECK(total == doctest::Approx(1.0));

  const RegularGraph c4 = gen_cycle(4);
  int cycle_count = 0;
  for_each_walk(c4, 3, [&](const std::vector<int>&, double) { ++cycle_count; });
  CHECK(cycle_count == 16);
}

TEST_CASE("moment operator blocks reduce to the identity at t = 0") {
  const RegularGraph k3 = gen_complete(3);
  const TensorAssignment a = random_assignment(k3, 2, 2, 1.0, false, 31);
  const MomentOperator op = make_moment_operator(k3, a, 0.0, 1.0, 0.5);
  REQUIRE(op.blocks.size() == 3);
  for (const Mat& b : op.blocks) {
    REQUIRE(b.rows() == 16);
    CHECK((b - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  // start vector: one 1 per (frequency pair, diagonal position)
  REQUIRE(op.u0.size() == 16);
  double mass = 0.0;
  for (int i = 0; i < 16; ++i) {
    CHECK((op.u0[i] == cplx(0.0) || op.u0[i] == cplx(1.0)));
    mass += op.u0[i].real();
  }
  CHECK(mass == doctest::Approx(2.0 * 2 * 2));  // m * p^2

  // both moment paths return the tensor trace of the identity
  CHECK(moment_exact(op, 3) == doctest::Approx(2.0));
  CHECK(moment_transfer(op, 3) == doctest::Approx(2.0));
}

TEST_CASE("transfer-operator moments match walk enumeration") {
  // single vertex: no randomness, both paths equal the direct trace
  const RegularGraph sv = single_vertex();
  const TensorAssignment sa = random_assignment(sv, 2, 2, 0.8, false, 41);
  const MomentOperator sop = make_moment_operator(sv, sa, 0.3, 1.0, 0.4);
  Tensor3 x3 = sop.xs[0];
  Tensor3 y3 = sop.ys[0];
  for (int i = 0; i < 2; ++i) {
    x3 = tmul(x3, sop.xs[0]);
    y3 = tmul(y3, sop.ys[0]);
  }
  const double direct = trace(tmul(x3, y3)).real();
  CHECK(moment_exact(sop, 3) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(moment_transfer(sop, 3) == doctest::Approx(direct).epsilon(1e-10));

  // complete graph, complex rotation, two shapes
  const RegularGraph k3 = gen_complete(3);
  for (const auto& [m, p] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
    const TensorAssignment a = random_assignment(k3, m, p, 1.0, false, 42 + m);
    for (const auto& [t, aa, bb] :
         std::vector<std::array<double, 3>>{{0.1, 1.0, 0.5}, {0.25, 0.6, 0.3}}) {
      const MomentOperator op = make_moment_operator(k3, a, t, aa, bb);
      const double exact = moment_exact(op, 3);
      const double transfer = moment_transfer(op, 3);
      CHECK(std::abs(transfer - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }

  // enumeration guard on the number of walks
  const RegularGraph k5 = gen_complete(5);
  const TensorAssignment big = random_assignment(k5, 2, 2, 1.0, false, 43);
  const MomentOperator bop = make_moment_operator(k5, big, 0.1, 1.0, 0.0);
  CHECK_THROWS_AS(moment_exact(bop, 10), std::length_error);
  CHECK(moment_transfer(bop, 10) > 0.0);  // matrix powers stay cheap
}

TEST_CASE("gamma factors follow the closed forms") {
  const GammaFactors z = gamma_factors(0.0, 1.0, 2.0, 1.5, 0.3);
  CHECK(z.g1 == doctest::Approx(1.0));
  CHECK(z.g2 == doctest::Approx(0.0));
  CHECK(z.g3 == doctest::Approx(0.0));
  CHECK(z.g4 == doctest::Approx(0.3));

  const GammaFactors g = gamma_factors(0.1, 1.0, 0.0, 1.0, 0.5);
  CHECK(g.g1 == doctest::Approx(1.105170918).epsilon(1e-9));
  CHECK(g.g2 == doctest::Approx(0.5 * (std::exp(0.1) - 1.0)));
  CHECK(g.g3 == doctest::Approx(std::exp(0.1) - 1.0));
  CHECK(g.g4 == doctest::Approx(0.5 * std::exp(0.1)));

  // the modulus of a + ib drives the exponent
  const double trs = 0.2 * 1.5 * std::hypot(0.6, 0.8);
  CHECK(gamma_factors(0.2, 0.6, 0.8, 1.5, 0.4).g1 == doctest::Approx(std::exp(trs)));

  CHECK_THROWS_AS(gamma_factors(-0.1, 1.0, 0.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(gamma_factors(0.1, 1.0, 0.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("operator norms obey the four contraction factors") {
  const RegularGraph k3 = gen_complete(3);
  const TensorAssignment a = random_assignment(k3, 2, 2, 1.0, false, 51);
  const MomentOperator op = make_moment_operator(k3, a, 0.1, 1.0, 0.5);
  double worst = 0.0;
  CHECK(gamma_empirical_check(op, 100, 52, &worst));
  CHECK(worst <= 1e-9);

  const RegularGraph c5 = gen_cycle(5);
  const TensorAssignment ac = random_assignment(c5, 2, 2, 0.8, false, 53);
  const MomentOperator opc = make_moment_operator(c5, ac, 0.2, 0.7, 0.2);
  CHECK(gamma_empirical_check(opc, 100, 54));
}

TEST_CASE("trace-moment bound and its validity window") {
  // t = 0 closed form
  CHECK(lemma43_bound(0.0, 1.0, 0.0, 1.0, 0.5, 3, 2, 2) ==
        doctest::Approx(16.0 * std::exp(8.0 * 3 / 0.5)));
  CHECK(lemma43_bound(0.1, 1.0, 0.0, 1.0, 1.0, 3, 2, 2) == kInf);

  CHECK(lemma43_validity(0.1, 1.0, 0.0, 1.0, 0.5));
  // trs < 1 but lambda(2 e^{trs} - 1) = 0.9 * 2.297 > 1
  CHECK_FALSE(lemma43_validity(0.5, 1.0, 0.0, 1.0, 0.9));
  CHECK_FALSE(lemma43_validity(1.5, 1.0, 0.0, 1.0, 0.1));  // trs >= 1

  // enumerated moments stay under the bound at valid parameter points
  const RegularGraph k3 = gen_complete(3);
  const TensorAssignment a = random_assignment(k3, 2, 2, 1.0, false, 61);
  for (const auto& [t, aa, bb] :
       std::vector<std::array<double, 3>>{{0.05, 1.0, 0.0}, {0.1, 0.6, 0.3}}) {
    REQUIRE(lemma43_validity(t, aa, bb, a.r, k3.lambda));
    const MomentOperator op = make_moment_operator(k3, a, t, aa, bb);
    CHECK(moment_exact(op, 3) <= lemma43_bound(t, aa, bb, a.r, k3.lambda, 3, 2, 2));
  }
}

TEST_CASE("Ky Fan sums of powered tensors satisfy the scaled triangle bound") {
  const Tensor3 single = random_symmetric(2, 2, 71);
  const CheckReport one = ky_fan_sum_check({single}, 2.0, 2);
  CHECK(one.check == "ky_fan_sum");
  CHECK(one.holds);
  CHECK(one.lhs == doctest::Approx(one.rhs).epsilon(1e-10));  // M = 1: equality

  Rng rng(72);
  for (int rep = 0; rep < 50; ++rep) {
    const int count = 1 + rng.index(3);
    std::vector<Tensor3> cs;
    for (int i = 0; i < count; ++i)
      cs.push_back(random_symmetric(2, 2, derive_seed(7300 + rep, i)));
    const double s = 1.0 + rng.index(3);
    const int k = 1 + rng.index(4);
    CHECK(ky_fan_sum_check(cs, s, k).holds);
  }

  CHECK_THROWS_AS(ky_fan_sum_check({single}, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(ky_fan_sum_check({single}, 1.0, 9), std::invalid_argument);
  CHECK_THROWS_AS(ky_fan_sum_check({}, 1.0, 1), std::invalid_argument);
}

TEST_CASE("main bound: log-space minimization matches the closed form") {
  BoundParams params;
  params.kappa = 3;
  params.k = 1;
  params.poly = PolySpec{{0.0, 1.0}, 1.0};
  params.C = 2.0;
  params.sigma = 1.0;
  params.lambda_bar = 0.25;
  const int m = 2, p = 2;
  const double r = 1.0;
  const double q = params.kappa + 8.0 * params.lambda_bar;
  const double cfac = params.C * (4.0 + std::sqrt(3.0 * 4.0 / 1.0));

  // identity polynomial: the optimum has the quadratic-exponent closed form
  for (double theta : {2.0 * q * r + 1.0, 2.0 * q * r + 4.0, 2.0 * q * r + 8.0}) {
    const BoundResult res = main_bound_at(theta, params, m, p, r);
    const double excess = theta - 2.0 * q * r;
    const double expected =
        cfac * std::exp(8.0 * params.kappa * params.lambda_bar -
                        excess * excess / (8.0 * params.sigma * params.sigma * r * r * q * q));
    CHECK(res.value == doctest::Approx(expected).epsilon(1e-6));
    CHECK(res.interior);
    CHECK(res.t_star > 1e-4);
    CHECK(res.t_star < 10.0);
  }

  // nonincreasing in theta
  params.theta_list = {0.0, 2.0, 4.0, 8.0, 12.0, 20.0};
  const std::vector<BoundResult> rows = main_bound(params, m, p, r);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].log_value <= rows[i].log_value + 1e-12);
  for (const BoundResult& row : rows)
    CHECK(row.value == doctest::Approx(main_bound_at(row.theta, params, m, p, r).value));

  // zero polynomial collapses the bound
  BoundParams zerop = params;
  zerop.poly = PolySpec{{0.0, 0.0}, 1.0};
  CHECK(main_bound_at(5.0, zerop, m, p, r).value == doctest::Approx(0.0));

  BoundParams bad = params;
  bad.t_grid.clear();
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.k = 5;
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.poly.a = {0.5, -1.0};
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.poly.s = 0.5;
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.C = 0.0;
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.sigma = -1.0;
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.lambda_bar = 1.5;
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  bad = params;
  bad.t_grid = {0.0, 1.0};
  CHECK_THROWS_AS(main_bound_at(1.0, bad, m, p, r), std::invalid_argument);
  CHECK_THROWS_AS(main_bound_at(1.0, params, m, p, 0.0), std::invalid_argument);
}

TEST_CASE("corollary closed forms and their re-derivation") {
  BoundParams params;
  params.kappa = 1;
  params.k = 1;
  params.poly = PolySpec{{0.0, 1.0}, 1.0};
  params.C = 1.3;
  params.sigma = 1.0;
  params.lambda_bar = 0.0;
  const int m = 2, p = 2;
  const double r = 1.0;
  const double cfac = params.C * (4.0 + std::sqrt(12.0));

  // numerator vanishes at theta = 2(kappa + 8 lambda_bar) r
  CHECK(corollary_bound(2.0, params, m, p, r).t_star_printed == doctest::Approx(0.0));

  // kappa = 1, lambda_bar = 0, theta = 4: t* = 1/2 and the printed value
  // coincides with the re-derived minimum
  const CorollaryResult c4 = corollary_bound(4.0, params, m, p, r);
  CHECK(c4.t_star_printed == doctest::Approx(0.5));
  CHECK(c4.value_printed == doctest::Approx(cfac * std::exp(-0.5)).epsilon(1e-12));
  CHECK(c4.value_derived == doctest::Approx(cfac * std::exp(-0.5)).epsilon(1e-12));

  // below the threshold t* goes negative but both values stay defined
  const CorollaryResult low = corollary_bound(1.0, params, m, p, r);
  CHECK(low.t_star_printed < 0.0);
  CHECK(low.value_derived == doctest::Approx(cfac));  // clamped exponent
  CHECK(std::isfinite(low.value_printed));

  // the derived value equals the grid minimum for theta past the threshold
  BoundParams grid_params = params;
  grid_params.kappa = 3;
  grid_params.lambda_bar = 0.25;
  const double q = grid_params.kappa + 8.0 * grid_params.lambda_bar;
  for (double theta : {2.0 * q * r + 2.0, 2.0 * q * r + 6.0}) {
    const CorollaryResult c = corollary_bound(theta, grid_params, m, p, r);
    const BoundResult g = main_bound_at(theta, grid_params, m, p, r);
    CHECK(c.value_derived == doctest::Approx(g.value).epsilon(1e-6));
  }
}

TEST_CASE("gaussian domination fit maximizes over the window") {
  const GaussianFit f8 = gaussian_domination_fit(1.0, 8.0, 4001);
  CHECK(f8.violation_tail_flag);
  // tau = 0 gives the floor (pi/4) sqrt(2 pi)
  CHECK(f8.c_min >= 3.141592653589793 / 4.0 * std::sqrt(2.0 * 3.141592653589793));
  // the maximand grows at the window edge, so the fit sits exactly there
  const double edge = beta0_weight(8.0) * std::sqrt(2.0 * 3.141592653589793) * std::exp(32.0);
  CHECK(f8.c_min == doctest::Approx(edge).epsilon(1e-12));

  const double w2 = gaussian_domination_fit(1.0, 2.0, 801).c_min;
  const double w4 = gaussian_domination_fit(1.0, 4.0, 1601).c_min;
  CHECK(w2 <= w4);
  CHECK(w4 <= f8.c_min);

  CHECK_THROWS_AS(gaussian_domination_fit(0.0, 8.0, 101), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_domination_fit(1.0, -1.0, 101), std::invalid_argument);
}

TEST_CASE("per-walk hypothesis checks flag indefinite instances") {
  const RegularGraph k3 = gen_complete(3);
  const PolySpec ident;

  // shifted instance: positive spectra, identity map is its own exponential
  const TensorAssignment good = shifted_assignment(k3, 2, 2, 0.4, 81);
  bool all_good = true;
  for_each_walk(k3, 3, [&](const std::vector<int>& w, double) {
    const AssumptionCheck c = check_assumptions(good, w, ident, 0.5);
    all_good = all_good && c.f_tpd && c.submult_ok;
  });
  CHECK(all_good);

  // a centered instance must have indefinite walk sums somewhere
  const TensorAssignment bad = random_assignment(k3, 2, 2, 1.0, true, 82);
  bool any_indefinite = false;
  for_each_walk(k3, 3, [&](const std::vector<int>& w, double) {
    if (!check_assumptions(bad, w, ident, 0.5).f_tpd) any_indefinite = true;
  });
  CHECK(any_indefinite);
}

TEST_CASE("empirical tails agree with exact enumeration") {
  const RegularGraph k3 = gen_complete(3);
  const TensorAssignment a = shifted_assignment(k3, 2, 2, 0.4, 91);
  BoundParams params;
  params.kappa = 3;
  params.k = 1;
  params.poly = PolySpec{{0.0, 1.0}, 1.0};
  params.sigma = 1.0;
  params.lambda_bar = 1.0 - k3.lambda;
  const double cap = params.poly.degree_bound(3 * a.r) * params.k;
  params.theta_list = {0.0, 0.3 * cap, 0.6 * cap, 0.9 * cap, cap + 1.0};

  const std::vector<double> exact = exact_tail(a, k3, params);
  REQUIRE(exact.size() == params.theta_list.size());
  CHECK(exact.front() == doctest::Approx(1.0));
  CHECK(exact.back() == doctest::Approx(0.0));
  for (std::size_t j = 0; j + 1 < exact.size(); ++j) CHECK(exact[j + 1] <= exact[j] + 1e-12);

  const long long trials = 2000;
  const TailStats stats = empirical_tail_stats(a, k3, params, trials, 92, 2);
  CHECK(stats.trials == trials);
  CHECK(stats.assumption_violations == 0);  // spectra shifted positive
  REQUIRE(stats.report.rows.size() == params.theta_list.size());
  for (std::size_t j = 0; j < stats.report.rows.size(); ++j) {
    const TailRow& row = stats.report.rows[j];
    CHECK(row.trials == trials);
    CHECK(row.ci_low <= row.empirical_p + 1e-12);
    CHECK(row.empirical_p <= row.ci_high + 1e-12);
    // widened interval contains the enumerated tail
    const auto ci = clopper_pearson(
        static_cast<long long>(std::llround(row.empirical_p * trials)), trials, 0.999);
    CHECK(ci.first <= exact[j] + 1e-12);
    CHECK(exact[j] <= ci.second + 1e-12);
  }
  CHECK(stats.report.rows.front().empirical_p == doctest::Approx(1.0));
  CHECK(stats.report.rows.back().empirical_p == doctest::Approx(0.0));

  // single-vertex enumeration: the tail is an indicator
  const RegularGraph sv = single_vertex();
  const TensorAssignment sa = shifted_assignment(sv, 2, 2, 0.4, 93);
  BoundParams sp = params;
  const double sv_stat = walk_statistic(sa, {0, 0, 0}, sp.poly, sp.k);
  sp.theta_list = {sv_stat - 0.1, sv_stat + 0.1};
  const std::vector<double> sv_tail = exact_tail(sa, sv, sp);
  CHECK(sv_tail[0] == doctest::Approx(1.0));
  CHECK(sv_tail[1] == doctest::Approx(0.0));

  // guards
  BoundParams unsorted = params;
  unsorted.theta_list = {1.0, 0.5};
  CHECK_THROWS_AS(empirical_tail(a, k3, unsorted, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(empirical_tail(a, k3, params, 0, 1), std::invalid_argument);
  BoundParams huge = params;
  huge.kappa = 14;
  CHECK_THROWS_AS(exact_tail(a, k3, huge), std::length_error);
}

TEST_CASE("tail reports serialize deterministically across thread counts") {
  const RegularGraph k3 = gen_complete(3);
  const TensorAssignment a = shifted_assignment(k3, 2, 2, 0.4, 95);
  BoundParams params;
  params.kappa = 3;
  params.k = 2;
  params.poly = PolySpec{{0.0, 1.0}, 1.0};
  params.lambda_bar = 1.0 - k3.lambda;
  params.theta_list = {0.5, 1.5, 2.5};

  const TailReport r1 = empirical_tail(a, k3, params, 500, 96, 1);
  const TailReport r3 = empirical_tail(a, k3, params, 500, 96, 3);
  CHECK(r1.csv() == r3.csv());
  CHECK(r1.json() == r3.json());

  // csv shape: header plus one line of nine fields per theta
  std::stringstream ss(r1.csv());
  std::string line;
  REQUIRE(std::getline(ss, line));
  CHECK(line ==
        "theta,empirical_p,ci_low,ci_high,bound_eq8,t_star,corollary_printed,"
        "corollary_derived,trials");
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(rows == 3);

  // json mirror parses and repeats the numbers
  const auto j = nlohmann::json::parse(r1.json());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0]["theta"].get<double>() == doctest::Approx(0.5));
  CHECK(j[0]["trials"].get<long long>() == 500);
  CHECK(j[1]["empirical_p"].get<double>() ==
        doctest::Approx(r1.rows[1].empirical_p));

  // non-finite values degrade to inf/nan tokens in csv and null in json
  TailReport weird;
  TailRow row;
  row.theta = 1.0;
  row.bound_eq8 = kInf;
  row.corollary_printed = -kInf;
  row.t_star = std::nan("");
  weird.rows.push_back(row);
  const std::string wcsv = weird.csv();
  CHECK(wcsv.find(",inf,") != std::string::npos);
  CHECK(wcsv.find(",-inf,") != std::string::npos);
  CHECK(wcsv.find("nan") != std::string::npos);
  const auto wj = nlohmann::json::parse(weird.json());
  CHECK(wj[0]["bound_eq8"].is_null());
  CHECK(wj[0]["t_star"].is_null());
}
