#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "smallholes/profiles.hpp"
#include "smallholes/scene.hpp"

namespace smallholes {

enum class RegimeKind { separated, clustered, mixed, three_scale, general };

std::string_view to_string(RegimeKind kind);

/// Distance regime of a scene. exponents(i, j) = e such that
/// |x_eps^i - x_eps^j| ~ eps^e (0 for O(1) distances).
struct Regime {
  RegimeKind kind = RegimeKind::separated;
  double alpha = 0.0;  // clustered: l; mixed: pair exponent; three_scale: alpha
  double beta = 0.0;   // three_scale only
  Eigen::MatrixXd exponents;
  std::string describe() const;
};

Regime detect_regime(const Scene& scene);

struct InteractionMatrix {
  double eps = 0.0;
  Eigen::MatrixXd entries;
  Eigen::VectorXd rhs;
  Eigen::VectorXd solution;
  Regime regime;
  double condition = 0.0;
  double solve_residual = 0.0;
};

/// Entries: M_ii = ln eps - w_i(x_i), M_ij = ln(beta_j |x_i - x_j|) - w_j(x_i).
Eigen::MatrixXd interaction_entries(const std::vector<Profile>& profiles);

/// Solves M a = rhs by partial pivoting. Throws NumericalError when the
/// 2-norm condition number exceeds 1e12.
Eigen::VectorXd solve_coefficients(InteractionMatrix& m);

struct AsymptoticInverse {
  Eigen::MatrixXd analytic;
  Eigen::MatrixXd exact;
  /// ||exact - analytic||_inf * ln^2 eps.
  double scaled_deviation = 0.0;
};

/// Closed-form leading inverse for the tagged regime.
AsymptoticInverse asymptotic_inverse(const InteractionMatrix& m);

/// (1/ln eps) (I + E_offdiag)^{-1}; valid in every regime.
Eigen::MatrixXd leading_inverse(const Eigen::MatrixXd& exponents, double eps);

namespace closed_form {

/// Maximum-row-sum norm.
double inf_norm(const Eigen::MatrixXd& a);

double delta(const Eigen::Matrix2d& m);
/// Explicit inverse of a 2x2 interaction matrix through delta(eps).
Eigen::Matrix2d inverse_2x2(const Eigen::Matrix2d& m);

/// H_N, the all-ones matrix.
Eigen::MatrixXd ones(int n);
/// M0 = (ln eps - ln eta) I + ln eta H_N.
Eigen::MatrixXd m0(int n, double ln_eps, double ln_eta);
/// Spectral inverse of M0.
Eigen::MatrixXd m0_inverse(int n, double ln_eps, double ln_eta);
/// Leading inverse in the clustered regime with l = ln eta / ln eps, times ln eps.
Eigen::MatrixXd clustered_scaled_inverse(int n, double l);
/// Leading inverse (times ln eps) when inclusions 0, 1 are eps^alpha apart and the rest O(1).
Eigen::MatrixXd mixed_scaled_inverse(int n, double alpha);

Eigen::Matrix3d m_alpha_beta(double alpha, double beta);
double det_m_alpha_beta(double alpha, double beta);
/// Orthogonal eigenvector matrix of M_{alpha,beta}, columns ordered to match
/// eigenvalues (lambda_+, lambda_-, 1 - alpha).
Eigen::Matrix3d eigenvectors_m_alpha_beta(double alpha, double beta);
Eigen::Vector3d eigenvalues_m_alpha_beta(double alpha, double beta);
/// P diag(1/lambda) P^T with the general eigenvectors.
Eigen::Matrix3d inverse_m_alpha_beta(double alpha, double beta);
/// The fixed matrix (1/sqrt 6)[[sqrt2, sqrt3, 1], [sqrt2, -sqrt3, 1], [sqrt2, 0, -2]];
/// it diagonalizes M_{alpha,beta} only when alpha = beta.
Eigen::Matrix3d fixed_p();
Eigen::Matrix3d inverse_m_alpha_beta_fixed_p(double alpha, double beta);

}  // namespace closed_form

}  // namespace smallholes
