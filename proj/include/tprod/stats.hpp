#pragma once

#include <cstdint>
#include <utility>

namespace tprod {

// Regularized incomplete beta function I_x(a, b).
double beta_inc(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x).
double gamma_inc_lower(double a, double x);

// Survival function of the chi-square distribution with k degrees of freedom.
double chi_square_sf(double x, int k);

// Two-sided Clopper-Pearson interval for a binomial proportion.
std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials,
                                          double confidence = 0.95);

}  // namespace tprod
