#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the conformal-map machinery of the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

inline std::vector<C> curve(const std::function<C(double)>& z, int m) {
  std::vector<C> p(m);
  for (int j = 0; j < m; ++j) p[j] = z(2 * pi * j / m);
  return p;
}

inline C centroid(const std::vector<C>& p) {
  C s = 0.0;
  for (C z : p) s += z;
  return s / double(p.size());
}

/// Bounded exterior Dirichlet problem by fundamental solutions:
/// u = c + sum q_k ln|X - s_k|, sum q_k = 0. Sources on the boundary pulled
/// towards the centroid by `shrink`. Returns (value at infinity, solver).
struct ExteriorMfs {
  std::vector<C> sources;
  Eigen::VectorXd q;
  double c = 0.0;
  double operator()(C x) const {
    double v = c;
    for (std::size_t k = 0; k < sources.size(); ++k) v += q(k) * std::log(std::abs(x - sources[k]));
    return v;
  }
};

inline ExteriorMfs exterior_mfs(const std::vector<C>& boundary, const std::function<double(C)>& data,
                                double shrink = 0.6, int nsrc = 100) {
  const C g = centroid(boundary);
  const int m = static_cast<int>(boundary.size());
  ExteriorMfs out;
  for (int k = 0; k < nsrc; ++k) out.sources.push_back(g + shrink * (boundary[k * m / nsrc] - g));
  Eigen::MatrixXd A(m + 1, nsrc + 1);
  Eigen::VectorXd b(m + 1);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < nsrc; ++k) A(j, k) = std::log(std::abs(boundary[j] - out.sources[k]));
    A(j, nsrc) = 1.0;
    b(j) = data(boundary[j]);
  }
  A.row(m).setZero();
  A.row(m).head(nsrc).setConstant(1.0);
  b(m) = 0.0;
  const Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
  out.q = sol.head(nsrc);
  out.c = sol(nsrc);
  return out;
}

/// Logarithmic capacity: sum q_k ln|x - s_k| = V on the boundary with
/// sum q_k = 1 gives capacity exp(V).
inline double capacity(const std::vector<C>& boundary, double shrink = 0.6, int nsrc = 100) {
  const C g = centroid(boundary);
  const int m = static_cast<int>(boundary.size());
  std::vector<C> src;
  for (int k = 0; k < nsrc; ++k) src.push_back(g + shrink * (boundary[k * m / nsrc] - g));
  Eigen::MatrixXd A(m + 1, nsrc + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < nsrc; ++k) A(j, k) = std::log(std::abs(boundary[j] - src[k]));
    A(j, nsrc) = -1.0;
  }
  A.row(m).setZero();
  A.row(m).head(nsrc).setConstant(1.0);
  b(m) = 1.0;
  const Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
  return std::exp(sol(nsrc));
}

/// Poisson integral in the unit disk by the trapezoid rule.
inline double poisson_disk(const std::function<double(double)>& phi, C x, int m = 4096) {
  const double r = std::abs(x), t = std::arg(x);
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    const double th = 2 * pi * j / m;
    s += phi(th) * (1 - r * r) / (1 - 2 * r * std::cos(th - t) + r * r);
  }
  return s / m;
}

/// Green's function of the unit disk, -Delta G = delta_s, G = 0 on |x| = 1.
inline double green_disk(C x, C s) {
  return -std::log(std::abs(x - s) / std::abs(1.0 - std::conj(s) * x)) / (2 * pi);
}

inline C fd_gradient(const std::function<double(C)>& f, C x, double h = 1e-6) {
  return C((f(x + h) - f(x - h)) / (2 * h), (f(x + C(0, h)) - f(x - C(0, h))) / (2 * h));
}

inline double fd_laplacian(const std::function<double(C)>& f, C x, double h = 1e-3) {
  return (f(x + h) + f(x - h) + f(x + C(0, h)) + f(x - C(0, h)) - 4 * f(x)) / (h * h);
}

}  // namespace oracle
