#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lqg::stats {

/// Sup distance between the empirical CDF of `samples` and `cdf`. Non-finite samples count as +inf.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic Kolmogorov tail probability P(sqrt(n_eff) D > x).
double kolmogorov_tail(double x);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  int bins = 0;
};

/// Pearson chi-square on `bins` equiprobable bins of the reference `cdf` (bin edges by bisection).
ChiSquare chi_square_equiprobable(std::span<const double> samples, const std::function<double(double)>& cdf,
                                  int bins, double lo, double hi);

double mean(std::span<const double> x);
double variance(std::span<const double> x);
/// Standard error of the mean.
double std_error(std::span<const double> x);
double correlation(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y against x.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lqg::stats
