#pragma once

namespace cutpoint {

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative error below 1e-13 over the range used here.
double log_gamma(double x);

double normal_pdf(double x, double mean = 0.0, double sd = 1.0);
double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

// Regularized lower incomplete gamma P(s, x), series for x < s + 1 and a
// Lentz continued fraction otherwise. Relative error below 1e-10.
double reg_lower_gamma(double s, double x);

// Gamma(shape, scale) with mean shape * scale.
double gamma_pdf(double x, double shape, double scale);
double gamma_cdf(double x, double shape, double scale);

}  // namespace cutpoint
