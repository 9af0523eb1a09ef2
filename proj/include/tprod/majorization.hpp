#pragma once

#include <string>
#include <vector>

#include "tprod/spectral.hpp"
#include "tprod/tensor.hpp"

namespace tprod {

// Finite probability measure over same-shaped tensors.
struct DiscreteMeasure {
  std::vector<Tensor3> support;
  std::vector<double> weights;

  void validate() const;  // nonempty, shared dims, weights >= 0 summing to 1
};

// Unitarily invariant norm selector: its gauge function evaluated on a
// singular-value vector.
struct GaugeSpec {
  enum class Kind { ky_fan, schatten };
  Kind kind = Kind::ky_fan;
  int k = 1;      // ky_fan
  double q = 2.0; // schatten

  static GaugeSpec KyFan(int k);
  static GaugeSpec Schatten(double q);
  std::string name() const;
};

// Evaluates the gauge on a nonnegative vector (sorted internally).
double gauge_eval(const GaugeSpec& g, std::vector<double> v);
double gauge_norm(const GaugeSpec& g, const Tensor3& t);

// Majorization predicates on nonincreasing vectors.
bool weak_majorize(const std::vector<double>& x, const std::vector<double>& y,
                   double tol = 1e-10);
bool majorize(const std::vector<double>& x, const std::vector<double>& y, double tol = 1e-10);
bool weak_log_majorize(const std::vector<double>& x, const std::vector<double>& y,
                       double tol = 1e-10);
bool log_majorize(const std::vector<double>& x, const std::vector<double>& y, double tol = 1e-10);

// rho(prod_i b_i^{alpha_i} componentwise) <= prod_i rho(b_i)^{alpha_i} + tol,
// for positive exponents summing to 1.
bool holder_gauge_check(const GaugeSpec& g, const std::vector<std::vector<double>>& b,
                        const std::vector<double>& alpha, double tol = 1e-10);

// Matrix of k x k minors over lexicographically ordered k-subsets.
Mat compound_matrix(const Mat& m, int k);

struct CheckReport {
  std::string check;
  bool premise = true;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

std::string to_json(const CheckReport& r);

// Spectral norm of compound_k(bcirc(t)) vs the product of the top-k
// singular values of bcirc(t).
CheckReport antisym_norm_check(const Tensor3& t, int k);

// Scalar test functions with known convexity certificates.
struct ScalarFn {
  enum class Kind { exp_fn, power_fn, shifted_relu_fn, log_shift_fn };
  Kind kind = Kind::exp_fn;
  double param = 1.0;  // exponent q / shift c / offset delta

  static ScalarFn Exp();
  static ScalarFn Power(double q);          // x^q on x >= 0
  static ScalarFn ShiftedRelu(double c);    // max(x + c, 0)
  static ScalarFn LogShift(double delta);   // log(delta + x), delta > 0

  double operator()(double x) const;
  bool nondecreasing() const;
  bool convex() const;
  // log f(e^x) convex in x: the certificate needed by the multiplicative
  // (geometric-average) statements.
  bool log_exp_convex() const;
  // f(e^x) convex in x: the certificate for the additive form of the
  // geometric-average statements.
  bool exp_convex() const;
  std::string name() const;
};

enum class MajorizationVariant { thm4, thm5, thm7, thm10 };

// Which conclusion of the geometric-average statements to evaluate:
// 'average' integrates the norm, 'log_average' exponentiates the integral of
// its log.
enum class ConclusionForm { average, log_average };

// Checks one of the integral-average majorization statements on a discrete
// measure: the premise compares the spectrum of c with the weighted
// arithmetic (thm4/thm5) or geometric (thm7/thm10) eigenvalue average of the
// measure; the conclusion compares gauge norms of the transformed tensors.
CheckReport integral_majorization_check(MajorizationVariant variant, const Tensor3& c,
                                        const DiscreteMeasure& nu, const ScalarFn& fn,
                                        const GaugeSpec& gauge,
                                        ConclusionForm form = ConclusionForm::average,
                                        double tol = 1e-8);

// Spectral-norm distance || (prod_k exp(L_k / n))^n - exp(sum_k L_k) ||.
double lie_trotter_error(const std::vector<Tensor3>& ls, int n);

struct Quadrature {
  double t_max = 8.0;
  int steps = 4001;
};

// Compares ||g(exp sum_i log C_i)|| against the weighted-quadrature average
// of ||g(|prod_i C_i^{1 + i t}|)|| (form 'average') or the exponentiated
// average of its log (form 'log_average'), with weight pi/(2(cosh(pi t)+1)).
CheckReport multivariate_norm_ineq_check(const std::vector<Tensor3>& cs, const ScalarFn& fn,
                                         const GaugeSpec& gauge, const Quadrature& quad = {},
                                         ConclusionForm form = ConclusionForm::average,
                                         double budget = 1e-6);

// Weight function of the multivariate norm inequality.
double beta0_weight(double t);

struct LimitReport {
  std::vector<double> values;  // one per q in the sequence
  double target = 0.0;
  double final_gap = 0.0;
  bool gap_decreasing = false;
};

// (1/q) log of the measure-average of mean lambda^{-q} along q_sequence,
// against the limit -(1/(mp)) * average log-determinant.
LimitReport schatten_limit_check(const DiscreteMeasure& nu,
                                 const std::vector<double>& q_sequence);

}  // namespace tprod
