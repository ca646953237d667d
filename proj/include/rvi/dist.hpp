#pragma once

namespace rvi::dist {

// Two-sided critical value: the (1 - alpha/2) quantile of the Student-t
// distribution with df degrees of freedom. Absolute accuracy <= 1e-8 over
// the usual significance range; strictly decreasing in alpha and in df,
// converging to the normal quantile as df grows.
//
// Throws std::invalid_argument unless 0 < alpha < 1 and df >= 1.
double t_critical(double alpha, long df);

// p-quantile of the chi-square distribution with one degree of freedom,
// i.e. the square of the standard-normal (1+p)/2 quantile.
//
// Throws std::invalid_argument unless 0 < p < 1.
double chi2_critical_1df(double p);

// p-quantile of the standard normal distribution, 0 < p < 1.
double normal_quantile(double p);

// Student-t CDF, exposed for round-trip checks.
double t_cdf(double x, long df);

}  // namespace rvi::dist
