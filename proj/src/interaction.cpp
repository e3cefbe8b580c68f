#include "smallholes/interaction.hpp"

#include <cmath>
#include <cstdio>

namespace smallholes {

std::string_view to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::separated: return "separated";
    case RegimeKind::clustered: return "clustered";
    case RegimeKind::mixed: return "mixed";
    case RegimeKind::three_scale: return "three_scale";
    case RegimeKind::general: return "general";
  }
  return "?";
}

std::string Regime::describe() const {
  char buf[96];
  switch (kind) {
    case RegimeKind::clustered: std::snprintf(buf, sizeof buf, "clustered(l=%g)", alpha); break;
    case RegimeKind::mixed: std::snprintf(buf, sizeof buf, "mixed(alpha=%g)", alpha); break;
    case RegimeKind::three_scale:
      std::snprintf(buf, sizeof buf, "three_scale(alpha=%g,beta=%g)", alpha, beta);
      break;
    default: return std::string(to_string(kind));
  }
  return buf;
}

Regime detect_regime(const Scene& scene) {
  const int n = static_cast<int>(scene.size());
  Regime r;
  r.exponents = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& a = scene.inclusions[i];
      const auto& b = scene.inclusions[j];
      if (a.base_center != b.base_center) continue;
      const double ea = a.offset == 0.0 ? 1.0 : a.exponent;
      const double eb = b.offset == 0.0 ? 1.0 : b.exponent;
      r.exponents(i, j) = std::min(ea, eb);
    }
  }
  const auto& e = r.exponents;
  std::vector<std::pair<int, int>> close;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (e(i, j) > 0) close.emplace_back(i, j);

  if (close.empty()) {
    r.kind = RegimeKind::separated;
    return r;
  }
  if (static_cast<int>(close.size()) == n * (n - 1) / 2) {
    const double l = e(0, 1);
    bool uniform = true;
    for (auto [i, j] : close) uniform = uniform && std::abs(e(i, j) - l) < 1e-14;
    if (uniform) {
      r.kind = RegimeKind::clustered;
      r.alpha = l;
      return r;
    }
    if (n == 3) {
      // one pair at eps^alpha, the third inclusion at eps^beta from both
      for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        if (std::abs(e(k, i) - e(k, j)) < 1e-14 && e(i, j) > e(k, i)) {
          r.kind = RegimeKind::three_scale;
          r.alpha = e(i, j);
          r.beta = e(k, i);
          return r;
        }
      }
    }
  }
  if (close.size() == 1 && n >= 3 && close[0] == std::pair<int, int>{0, 1}) {
    r.kind = RegimeKind::mixed;
    r.alpha = e(0, 1);
    return r;
  }
  r.kind = RegimeKind::general;
  return r;
}

Eigen::MatrixXd interaction_entries(const std::vector<Profile>& profiles) {
  const int n = static_cast<int>(profiles.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Profile& pj = profiles[j];
      const Point xi = profiles[i].center;
      if (i == j)
        m(i, i) = std::log(pj.eps) - pj.w_center;
      else
        m(i, j) = std::log(pj.beta * std::abs(xi - pj.center)) - pj.w(xi);
    }
  }
  return m;
}

Eigen::VectorXd solve_coefficients(InteractionMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.entries);
  const auto& s = svd.singularValues();
  m.condition = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1)
                                    : std::numeric_limits<double>::infinity();
  if (!(m.condition <= 1e12))
    throw NumericalError("interaction matrix is singular or ill-conditioned (cond = " +
                         std::to_string(m.condition) + ")");
  m.solution = m.entries.partialPivLu().solve(m.rhs);
  const double scale = std::max(m.rhs.cwiseAbs().maxCoeff(), 1e-300);
  m.solve_residual = (m.entries * m.solution - m.rhs).cwiseAbs().maxCoeff() / scale;
  return m.solution;
}

Eigen::MatrixXd leading_inverse(const Eigen::MatrixXd& exponents, double eps) {
  const Eigen::Index n = exponents.rows();
  Eigen::MatrixXd a = exponents;
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = 1.0;
  return a.inverse() / std::log(eps);
}

AsymptoticInverse asymptotic_inverse(const InteractionMatrix& m) {
  AsymptoticInverse out;
  const double ln_eps = std::log(m.eps);
  const int n = static_cast<int>(m.entries.rows());
  switch (m.regime.kind) {
    case RegimeKind::separated: out.analytic = Eigen::MatrixXd::Identity(n, n) / ln_eps; break;
    case RegimeKind::clustered:
      out.analytic = closed_form::clustered_scaled_inverse(n, m.regime.alpha) / ln_eps;
      break;
    case RegimeKind::mixed:
      out.analytic = closed_form::mixed_scaled_inverse(n, m.regime.alpha) / ln_eps;
      break;
    case RegimeKind::three_scale: {
      // reorder so that the close pair comes first and the third inclusion last
      const auto& e = m.regime.exponents;
      int k = 0;
      for (int c = 0; c < 3; ++c) {
        const int i = (c + 1) % 3, j = (c + 2) % 3;
        if (std::abs(e(i, j) - m.regime.alpha) < 1e-14) k = c;
      }
      const int perm[3] = {(k + 1) % 3, (k + 2) % 3, k};
      const Eigen::Matrix3d inv =
          closed_form::inverse_m_alpha_beta(m.regime.alpha, m.regime.beta);
      out.analytic = Eigen::MatrixXd::Zero(3, 3);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.analytic(perm[a], perm[b]) = inv(a, b) / ln_eps;
      break;
    }
    case RegimeKind::general: out.analytic = leading_inverse(m.regime.exponents, m.eps); break;
  }
  out.exact = m.entries.inverse();
  out.scaled_deviation = closed_form::inf_norm(out.exact - out.analytic) * ln_eps * ln_eps;
  return out;
}

namespace closed_form {

double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

double delta(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1); }

Eigen::Matrix2d inverse_2x2(const Eigen::Matrix2d& m) {
  Eigen::Matrix2d inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / delta(m);
}

Eigen::MatrixXd ones(int n) { return Eigen::MatrixXd::Ones(n, n); }

Eigen::MatrixXd m0(int n, double ln_eps, double ln_eta) {
  return (ln_eps - ln_eta) * Eigen::MatrixXd::Identity(n, n) + ln_eta * ones(n);
}

Eigen::MatrixXd m0_inverse(int n, double ln_eps, double ln_eta) {
  const double a = 1.0 / (ln_eps - ln_eta);
  const double b = 1.0 / (ln_eps + (n - 1) * ln_eta);
  return a * Eigen::MatrixXd::Identity(n, n) + (b - a) / n * ones(n);
}

Eigen::MatrixXd clustered_scaled_inverse(int n, double l) {
  const double a = 1.0 / (1.0 - l);
  const double b = 1.0 / (1.0 + (n - 1) * l);
  return a * Eigen::MatrixXd::Identity(n, n) + (b - a) / n * ones(n);
}

Eigen::MatrixXd mixed_scaled_inverse(int n, double alpha) {
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
  const double s = 1.0 / (1.0 - alpha * alpha);
  inv(0, 0) = s;
  inv(1, 1) = s;
  inv(0, 1) = -alpha * s;
  inv(1, 0) = -alpha * s;
  return inv;
}

Eigen::Matrix3d m_alpha_beta(double alpha, double beta) {
  Eigen::Matrix3d m;
  m << 1, alpha, beta, alpha, 1, beta, beta, beta, 1;
  return m;
}

double det_m_alpha_beta(double alpha, double beta) {
  return (alpha - 1.0) * (2.0 * beta * beta - alpha - 1.0);
}

Eigen::Vector3d eigenvalues_m_alpha_beta(double alpha, double beta) {
  const double root = std::sqrt(alpha * alpha + 8.0 * beta * beta);
  return {(alpha + 2.0 + root) / 2.0, (alpha + 2.0 - root) / 2.0, 1.0 - alpha};
}

Eigen::Matrix3d eigenvectors_m_alpha_beta(double alpha, double beta) {
  if (!(beta > 0.0 && beta <= alpha && alpha < 1.0))
    throw std::invalid_argument("three-scale regime needs 0 < beta <= alpha < 1");
  const Eigen::Vector3d lam = eigenvalues_m_alpha_beta(alpha, beta);
  const Eigen::Vector3d ea = Eigen::Vector3d(1, 1, 0) / std::sqrt(2.0);
  const Eigen::Vector3d eb(0, 0, 1);
  Eigen::Matrix3d p;
  for (int c = 0; c < 2; ++c) {
    // eigenvector of [[1+alpha, sqrt2 beta], [sqrt2 beta, 1]] in the (ea, eb) basis
    Eigen::Vector2d v(std::sqrt(2.0) * beta, lam(c) - 1.0 - alpha);
    v.normalize();
    p.col(c) = v(0) * ea + v(1) * eb;
  }
  p.col(2) = Eigen::Vector3d(1, -1, 0) / std::sqrt(2.0);
  return p;
}

Eigen::Matrix3d inverse_m_alpha_beta(double alpha, double beta) {
  const Eigen::Matrix3d p = eigenvectors_m_alpha_beta(alpha, beta);
  const Eigen::Vector3d lam = eigenvalues_m_alpha_beta(alpha, beta);
  return p * lam.cwiseInverse().asDiagonal() * p.transpose();
}

Eigen::Matrix3d fixed_p() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  Eigen::Matrix3d p;
  p << s2, s3, 1, s2, -s3, 1, s2, 0, -2;
  return p / std::sqrt(6.0);
}

Eigen::Matrix3d inverse_m_alpha_beta_fixed_p(double alpha, double beta) {
  const Eigen::Matrix3d p = fixed_p();
  const double root = std::sqrt(alpha * alpha + 8.0 * beta * beta);
  const Eigen::Vector3d d(2.0 / (alpha + 2.0 + root), 2.0 / (alpha + 2.0 - root),
                          1.0 / (1.0 - alpha));
  return p * d.asDiagonal() * p.transpose();
}

}  // namespace closed_form

}  // namespace smallholes
