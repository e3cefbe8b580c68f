#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "smallholes/harmonic_ext.hpp"
#include "smallholes/harmonic_int.hpp"
#include "smallholes/interaction.hpp"
#include "smallholes/profiles.hpp"
#include "smallholes/scene.hpp"

namespace smallholes {

/// Solution of -Delta u0 = f in Omega0, u0 = 0 on the outer boundary:
/// u0 = u_p + G[-u_p].
struct U0Field {
  Forcing forcing;
  HarmonicInteriorField correction;

  double operator()(Point x) const { return forcing.particular(x) + correction(x); }
  Complex gradient(Point x) const {
    return forcing.particular_gradient(x) + correction.gradient(x);
  }
};

U0Field u0_of(const Scene& scene, std::size_t samples = kDefaultSamples);

/// scale * G[phi](x)
struct InteriorTerm {
  HarmonicInteriorField field;
};
/// scale * (Psi((x - center)/eps) - Psi0) for inclusion `inclusion`.
struct ExteriorTerm {
  int inclusion;
  HarmonicExteriorField field;
};
/// scale * weight * (ell_i(x) - w_i(x)).
struct CorrectorTerm {
  int inclusion;
  double weight;
};

struct Term {
  int order = 0;
  double scale = 1.0;
  std::variant<InteriorTerm, ExteriorTerm, CorrectorTerm> body;
};

/// Per-boundary sup of |target - trace| on the sample points.
struct ResidualReport {
  double outer = 0.0;
  std::vector<double> inclusions;
  double max() const;
  double max_inclusions() const;
};

/// Output of one step of the single-inclusion recursion.
struct IterationResult {
  HarmonicInteriorField v0;
  HarmonicExteriorField psi;
  double psi0 = 0.0;
  double v0_center = 0.0;
  double weight = 0.0;
  /// Residual traces already divided by eps (inputs of the next step).
  BoundaryFunction next_phi;
  BoundaryFunction next_f;
  /// sup |residual| / (sup |f| + sup |phi|), residual before division by eps.
  double constant = 0.0;
};

struct Expansion {
  double eps = 0.0;
  /// Number of recursion steps minus one (single); 0 for the multi-inclusion case.
  int order = 0;
  Scene scene;
  std::shared_ptr<const U0Field> u0;
  std::vector<Profile> profiles;
  std::vector<Term> terms;
  /// Corrector weights per order (single inclusion).
  std::vector<double> weights;
  /// Psi0 per order (outer index) and inclusion (inner index).
  std::vector<std::vector<double>> psi0s;
  /// Recorded residual constants per order (single inclusion).
  std::vector<double> constants;
  /// Boundary residual sups after each order, before division by eps.
  std::vector<ResidualReport> residual_history;
  /// a_{eps,i} (multi-inclusion).
  std::vector<double> coefficients;
  std::optional<InteractionMatrix> matrix;

  /// u0 plus every term with order <= max_order. Throws DomainError inside an inclusion.
  double evaluate(Point x, int max_order = INT_MAX) const;
  double term_value(const Term& t, Point x) const;
};

/// One step of the recursion for the single inclusion described by `profile`.
IterationResult one_iteration(const Profile& profile,
                              std::shared_ptr<const InteriorMap> domain,
                              const BoundaryFunction& phi, const BoundaryFunction& f);

/// u0 + sum_{k=0}^{order} eps^k [G[phi^k] + (Psi^k - Psi0^k) + weight_k corr]
/// starting from phi^0 = 0 and F^0 = -u0 on the inclusion.
Expansion expand_single(const Scene& scene, int order,
                        std::size_t samples = kDefaultSamples);

/// Same recursion with explicit initial traces.
Expansion expand_single_with_data(const Scene& scene, int order, const BoundaryFunction& phi0,
                                  const BoundaryFunction& f0,
                                  std::size_t samples = kDefaultSamples);

/// First-order N-inclusion expansion; N = 1 delegates to expand_single(order 0).
Expansion expand_multi(const Scene& scene, std::size_t samples = kDefaultSamples);

/// Interaction matrix with rhs Psi0_i from F = -u0 on each inclusion.
InteractionMatrix assemble_interaction_matrix(const Scene& scene,
                                              std::size_t samples = kDefaultSamples);

std::vector<Profile> build_profiles(const Scene& scene, std::size_t samples = kDefaultSamples);

double evaluate_expansion(const Expansion& e, Point x, int max_order = INT_MAX);

/// Sup of |expansion| on the sample points of every boundary (the exact
/// solution vanishes there).
ResidualReport boundary_residual(const Expansion& e, int max_order = INT_MAX,
                                 std::size_t samples = kDefaultSamples);

/// Expansion truncated to `level` correction steps: level 0 is u0 alone,
/// level k >= 1 keeps the recursion terms of orders 0..k-1.
double evaluate_level(const Expansion& e, Point x, int level);

}  // namespace smallholes
