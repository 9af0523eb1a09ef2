#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tprod {

// Pairwise (cascade) summation: deterministic and far more accurate than a
// sequential accumulator on long vectors.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}

// log(sum_i exp(x[i])) without overflow.
inline double log_sum_exp(const std::vector<double>& x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

struct MinResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the minimum of f on [lo, hi]; stops when the
// bracket shrinks below rel_tol relative to |x|.
template <class F>
MinResult golden_section_min(F f, double lo, double hi, double rel_tol = 1e-10) {
  const double phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 400 && (b - a) > rel_tol * (std::abs(a) + std::abs(b) + 1e-300); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? MinResult{x1, f1} : MinResult{x2, f2};
}

inline std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = std::exp(llo + f * (lhi - llo));
  }
  return out;
}

inline std::vector<double> lin_space(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[i] = lo + f * (hi - lo);
  }
  return out;
}

}  // namespace tprod
