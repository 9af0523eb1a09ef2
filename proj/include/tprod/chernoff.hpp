#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tprod/expander.hpp"
#include "tprod/majorization.hpp"
#include "tprod/spectral.hpp"
#include "tprod/tensor.hpp"

namespace tprod {

// Per-vertex symmetric tensor data with a spectral-norm cap r.
struct TensorAssignment {
  int m = 0, p = 0;
  double r = 0.0;
  bool centered = false;
  std::vector<Tensor3> g;  // one symmetric m x m x p tensor per vertex
};

TensorAssignment random_assignment(const RegularGraph& graph, int m, int p, double r,
                                   bool centered, std::uint64_t seed);

// f(x) = (a0 + a1 x + ... + a_d x^d)^s, applied spectrally.
struct PolySpec {
  std::vector<double> a{0.0, 1.0};
  double s = 1.0;

  double eval(double x) const;
  double degree_bound(double x_max) const;  // max of f over |x| <= x_max
};

// Ky Fan k-norm of f(sum_j g(v_j)) along the walk.
double walk_statistic(const TensorAssignment& assignment, const std::vector<int>& walk,
                      const PolySpec& poly, int k);

// ---------------------------------------------------------------------------
// Transfer-operator moment machinery.
//
// Per vertex the operator block is bcirc(exp(t g(v)(a+ib)/2)) (x)
// bcirc(exp(t g(v)(a-ib)/2)), an (m^2 p^2)-square dense matrix; the walk
// operator applies the normalized adjacency between block applications.  The
// start vector u0 pins the trace: with u0[(k1*m+r1)*m*p + (k2*m+r2)] =
// delta_{r1 r2}, one gets u0^T (bcirc(B) (x) bcirc(C)) u0 =
// p^2 * trace(B * C^T), so the quadratic form divided by p^2 reproduces the
// walk-averaged trace moment (value m at t = 0).
// ---------------------------------------------------------------------------
struct MomentOperator {
  RegularGraph graph;
  int m = 0, p = 0;
  double t = 0.0, a = 0.0, b = 0.0;
  double r = 0.0;                 // assignment norm cap
  std::vector<Mat> blocks;        // per-vertex (m^2 p^2)-square
  std::vector<Tensor3> xs, ys;    // exp(t g (a+ib)/2), exp(t g (a-ib)/2)
  CVec u0;                        // pinned start column, length m^2 p^2
};

MomentOperator make_moment_operator(const RegularGraph& graph,
                                    const TensorAssignment& assignment, double t, double a,
                                    double b);

// Square matrix with all-ones first column; remaining columns complete the
// standard basis (used by layout tests).
Mat io_matrix(int dim);

// Walk-enumeration average of trace(prod_i X_{v_i} * prod_i^rev Y_{v_i}).
double moment_exact(const MomentOperator& op, int kappa);

// Quadratic form u0-weighted power of the transfer operator, divided by the
// frozen p^2 layout constant.
double moment_transfer(const MomentOperator& op, int kappa);

struct GammaFactors {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
};

// g1 = e^{t r sqrt(a^2+b^2)}, g2 = lambda(g1 - 1), g3 = g1 - 1, g4 = lambda g1.
GammaFactors gamma_factors(double t, double a, double b, double r, double lambda);

// Draws random start vectors, splits them into the parallel subspace
// (1_n tensor w) and its complement, and checks the four operator-norm
// contraction inequalities with slack tolerance 1e-9.
bool gamma_empirical_check(const MomentOperator& op, int trials, std::uint64_t seed,
                           double* worst_slack = nullptr);

// m^2 p^2 exp[kappa(2 trs + 8/(1-lambda) + 16 trs/(1-lambda))],
// trs = t r sqrt(a^2 + b^2); +infinity at lambda = 1.
double lemma43_bound(double t, double a, double b, double r, double lambda, int kappa, int m,
                     int p);

// trs < 1 and lambda(2 e^{trs} - 1) <= 1.
bool lemma43_validity(double t, double a, double b, double r, double lambda);

// || |sum C_i|^s ||_(k)  <=  M^{s-1} sum_i || |C_i|^s ||_(k) + 1e-9.
CheckReport ky_fan_sum_check(const std::vector<Tensor3>& cs, double s, int k);

// Logarithmic grid on [1e-4, 10], 200 points.
std::vector<double> default_t_grid();

struct BoundParams {
  int kappa = 4;
  int k = 1;
  PolySpec poly;
  double C = 1.9687012432153024;  // (pi/4) sqrt(2 pi): domination fit at tau = 0, sigma = 1
  double sigma = 1.0;
  double lambda_bar = 0.5;        // 1 - lambda
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> theta_list;

  void validate(int m, int p) const;
};

struct BoundResult {
  double theta = 0.0;
  double value = 0.0;      // exp(log_value); may overflow to +inf
  double log_value = 0.0;
  double t_star = 0.0;
  bool interior = false;   // grid argmin away from both grid edges
};

// min over t of (d+1)^{s-1} e^{-theta t} [ a0 k + C(mp + sqrt((mp-k)mp/k)) *
//   sum_{l>=1} a_l exp(8 kappa lb + 2(kappa+8 lb) l s r t +
//                      2(sigma (kappa+8 lb) l s r)^2 t^2) ],
// lb = lambda_bar; evaluated in log space, grid search plus golden-section.
BoundResult main_bound_at(double theta, const BoundParams& params, int m, int p, double r);
std::vector<BoundResult> main_bound(const BoundParams& params, int m, int p, double r);

struct CorollaryResult {
  double theta = 0.0;
  // as-printed closed forms
  double value_printed = 0.0;
  double t_star_printed = 0.0;
  // re-derived minimum of the single-term objective (clamped at theta below
  // the positivity threshold of t*); not asserted equal to value_printed
  double value_derived = 0.0;
};

CorollaryResult corollary_bound(double theta, const BoundParams& params, int m, int p,
                                double r);

struct GaussianFit {
  double c_min = 0.0;
  bool violation_tail_flag = true;  // the weight tail always escapes a Gaussian
};

// max over tau in [-window, window] of beta0(tau) sigma sqrt(2 pi)
// exp(tau^2 / (2 sigma^2)).
GaussianFit gaussian_domination_fit(double sigma, double window, int grid_steps);

// Per-walk hypothesis checks: f positive on the spectrum of sum g(v_j), and
// f(e^{t mu}) >= e^{t f(mu)} for each eigenvalue mu at parameter t.
struct AssumptionCheck {
  bool f_tpd = false;
  bool submult_ok = false;
};

AssumptionCheck check_assumptions(const TensorAssignment& assignment,
                                  const std::vector<int>& walk, const PolySpec& poly,
                                  double t);

struct TailRow {
  double theta = 0.0;
  double empirical_p = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound_eq8 = 0.0;
  double t_star = 0.0;
  double corollary_printed = 0.0;
  double corollary_derived = 0.0;
  long long trials = 0;
};

struct TailReport {
  std::vector<TailRow> rows;

  std::string csv() const;
  std::string json() const;
};

struct TailStats {
  TailReport report;
  long long trials = 0;
  long long assumption_violations = 0;  // trials where any per-walk check failed
};

TailStats empirical_tail_stats(const TensorAssignment& assignment, const RegularGraph& graph,
                               const BoundParams& params, long long trials,
                               std::uint64_t master_seed, int threads = 0);

TailReport empirical_tail(const TensorAssignment& assignment, const RegularGraph& graph,
                          const BoundParams& params, long long trials,
                          std::uint64_t master_seed, int threads = 0);

// Exact tail over full walk enumeration (guarded at 1e6 walks).
std::vector<double> exact_tail(const TensorAssignment& assignment, const RegularGraph& graph,
                               const BoundParams& params);

// Enumerates all positive-probability walks of length kappa.
void for_each_walk(const RegularGraph& graph, int kappa,
                   const std::function<void(const std::vector<int>&, double)>& fn);

struct ExperimentConfig {
  std::string graph = "complete:5";
  int m = 2, p = 2;
  double r = 1.0;
  bool centered = false;
  PolySpec poly;
  int kappa = 4;
  int k = 1;
  double C = -1.0;      // <= 0: fit via gaussian_domination_fit(sigma, 8, 4001)
  double sigma = 1.0;
  std::vector<double> theta_list;  // empty: 10-point grid from the statistic cap
  long long trials = 10000;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct ExperimentResult {
  TailReport report;
  int n = 0, d = 0;
  double lambda = 0.0;
  double c_used = 0.0;
  double assumption_violation_rate = 0.0;
  long long vacuous_rows = 0;       // rows with bound_eq8 >= 1
  bool tail_within_bound = true;    // empirical_p <= bound_eq8 on non-vacuous rows
  std::string summary;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace tprod
