#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "smallholes/config.hpp"
#include "smallholes/expansion.hpp"
#include "smallholes/interaction.hpp"
#include "smallholes/reference.hpp"
#include "smallholes/sweep.hpp"
#include "smallholes/validate.hpp"

using namespace smallholes;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

std::string num(double v) { return format_number(v); }

void apply_overrides(SceneConfig& cfg, const std::string& out, const std::string& orders,
                     const std::string& eps) {
  if (!out.empty()) cfg.plan.outputs = out;
  if (!orders.empty()) {
    cfg.plan.orders.clear();
    for (double o : parse_number_list(orders)) {
      if (o < 0 || o != static_cast<int>(o)) throw ConfigError("--orders", 0, "orders must be non-negative integers");
      cfg.plan.orders.push_back(static_cast<int>(o));
    }
  }
  if (!eps.empty()) {
    cfg.plan.eps_values = parse_number_list(eps);
    for (std::size_t i = 0; i < cfg.plan.eps_values.size(); ++i) {
      const double e = cfg.plan.eps_values[i];
      if (!(e > 0 && e < 1)) throw ConfigError("--eps", 0, "eps values must lie in (0, 1)");
      if (i > 0 && !(e < cfg.plan.eps_values[i - 1]))
        throw ConfigError("--eps", 0, "eps values must be strictly decreasing");
      try {
        validate_scene(cfg.scene.at(e), cfg.plan.min_separation);
      } catch (const Error& ex) {
        throw ConfigError("--eps", 0, ex.what());
      }
    }
  }
}

int run_expand(const SceneConfig& cfg) {
  const double eps = cfg.plan.eps_values.front();
  const Scene scene = cfg.scene.at(eps);
  int level = 1;
  for (int o : cfg.plan.orders) level = std::max(level, o);
  const Expansion e = scene.size() == 1 ? expand_single(scene, std::max(level - 1, 0)) : expand_multi(scene);
  std::printf("eps = %s\n", num(eps).c_str());
  std::printf("inclusions = %zu\n", scene.size());
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const Profile& p = e.profiles[i];
    std::printf("inclusion %zu: center = (%s, %s) beta = %s h_eps = %s w(x_eps) = %s\n", i,
                num(p.center.real()).c_str(), num(p.center.imag()).c_str(), num(p.beta).c_str(),
                num(p.h_eps).c_str(), num(p.w_center).c_str());
  }
  if (scene.size() == 1) {
    for (std::size_t k = 0; k < e.weights.size(); ++k)
      std::printf("order %zu: weight = %s psi0 = %s constant = %s\n", k, num(e.weights[k]).c_str(),
                  num(e.psi0s[k][0]).c_str(), num(e.constants[k]).c_str());
  } else {
    for (std::size_t i = 0; i < scene.size(); ++i)
      std::printf("a_%zu = %s\n", i + 1, num(e.coefficients[i]).c_str());
  }
  const ReferenceSolution ref = solve_reference(scene);
  const int max_level = scene.size() == 1 ? e.order + 1 : 1;
  for (int l = 0; l <= max_level; ++l) {
    const RemainderNorm r = remainder_norm(ref, e, GridSpec{}, l);
    std::printf("level %d: interior_sup = %s interior_rms = %s\n", l, num(r.sup).c_str(), num(r.rms).c_str());
  }
  return kOk;
}

int run_matrix(const SceneConfig& cfg) {
  for (double eps : cfg.plan.eps_values) {
    const Scene scene = cfg.scene.at(eps);
    InteractionMatrix m = assemble_interaction_matrix(scene);
    solve_coefficients(m);
    std::printf("eps = %s regime = %s condition = %s\n", num(eps).c_str(), m.regime.describe().c_str(),
                num(m.condition).c_str());
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
      std::printf("  M[%ld] =", static_cast<long>(i));
      for (Eigen::Index j = 0; j < m.entries.cols(); ++j) std::printf(" %s", num(m.entries(i, j)).c_str());
      std::printf("   rhs = %s a = %s\n", num(m.rhs(i)).c_str(), num(m.solution(i)).c_str());
    }
    if (scene.size() > 1) {
      const AsymptoticInverse inv = asymptotic_inverse(m);
      for (Eigen::Index i = 0; i < inv.analytic.rows(); ++i) {
        std::printf("  analytic[%ld] =", static_cast<long>(i));
        for (Eigen::Index j = 0; j < inv.analytic.cols(); ++j) std::printf(" %s", num(inv.analytic(i, j)).c_str());
        std::printf("\n");
      }
      std::printf("  scaled deviation ||M^-1 - leading||_inf ln^2 eps = %s\n", num(inv.scaled_deviation).c_str());
    }
  }
  return kOk;
}

int run_sweep_cmd(const SceneConfig& cfg) {
  const SweepReport report = run_sweep(cfg.scene, cfg.plan);
  int failed = 0;
  for (const auto& row : report.rows) {
    if (row.ok) {
      std::printf("eps = %s level = %d interior_sup = %s\n", num(row.eps).c_str(), row.order,
                  num(row.interior_sup).c_str());
    } else {
      ++failed;
      std::printf("eps = %s level = %d error: %s\n", num(row.eps).c_str(), row.order, row.message.c_str());
    }
  }
  for (const auto& s : report.slopes)
    std::printf("slope level %d %s = %s (%zu points)\n", s.order, s.quantity.c_str(), num(s.slope).c_str(),
                s.points);
  std::printf("wrote %s\n", cfg.plan.outputs.string().c_str());
  return !report.rows.empty() && failed == static_cast<int>(report.rows.size()) ? kNumericalFailure : kOk;
}

int run_validate_cmd(std::uint64_t seed, bool inject) {
  const ValidationReport r = run_validate(seed, inject);
  for (const auto& c : r.checks)
    std::printf("%s %s/%s value = %.3e bound = %.3e\n", c.pass ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                c.value, c.bound);
  std::printf("seed %llu: %zu checks, %d failed\n", static_cast<unsigned long long>(seed), r.checks.size(),
              r.failures());
  return r.passed() ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic expansions for the Dirichlet Laplacian with small inclusions"};
  app.require_subcommand(1);

  std::string config, out, orders, eps;
  std::uint64_t seed = 0;
  bool inject = false;

  auto add_scene_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config, "scene file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--orders", orders, "comma separated expansion levels");
    sub->add_option("--eps", eps, "comma separated, strictly decreasing eps values");
  };
  CLI::App* expand = app.add_subcommand("expand", "expand at the first eps and compare with the reference");
  add_scene_opts(expand);
  CLI::App* sweep = app.add_subcommand("sweep", "run an eps sweep and write CSV files");
  add_scene_opts(sweep);
  CLI::App* matrix = app.add_subcommand("matrix", "print the interaction matrix and its asymptotic inverse");
  add_scene_opts(matrix);
  CLI::App* validate = app.add_subcommand("validate", "run randomized invariant checks");
  validate->add_option("--seed", seed, "random seed");
  validate->add_flag("--inject-failure", inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (validate->parsed()) return run_validate_cmd(seed, inject);
    SceneConfig cfg = parse_scene(config);
    apply_overrides(cfg, out, orders, eps);
    if (!sweep->parsed() && cfg.plan.eps_values.empty()) cfg.plan.eps_values = {cfg.scene.eps};
    if (expand->parsed()) return run_expand(cfg);
    if (matrix->parsed()) return run_matrix(cfg);
    return run_sweep_cmd(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}
