#pragma once

#include <vector>

namespace smallholes {

/// Least-squares slope of ln y against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// max / min - 1 of positive values (0 for fewer than two values).
double variation(const std::vector<double>& values);

double max_over_min(const std::vector<double>& values);

}  // namespace smallholes
