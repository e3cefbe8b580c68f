#include "smallholes/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smallholes {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope needs at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double max_over_min(const std::vector<double>& values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi / *lo;
}

double variation(const std::vector<double>& values) {
  return values.size() < 2 ? 0.0 : max_over_min(values) - 1.0;
}

}  // namespace smallholes
