#pragma once

namespace oilrisk {

// CDFs used by the test battery. Incomplete gamma/beta are evaluated by
// series/continued-fraction expansions; absolute error is well under 1e-10
// over the ranges exercised here.

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);
double normal_ppf(double p);  // inverse standard normal (Wichura AS 241)

double chi2_cdf(double x, double df);          // df > 0
double f_cdf(double x, double df1, double df2);  // df1, df2 > 0
double t_cdf(double x, double df);             // df > 0

// Regularized incomplete functions, exposed for reuse/tests.
double lower_regularized_gamma(double a, double x);
double regularized_beta(double a, double b, double x);

}  // namespace oilrisk
