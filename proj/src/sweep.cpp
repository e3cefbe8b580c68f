#include "smallholes/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>

#include "smallholes/convergence.hpp"
#include "smallholes/expansion.hpp"
#include "smallholes/reference.hpp"

namespace smallholes {

namespace {

struct EpsResult {
  std::vector<SweepRow> rows;
  std::string fields;
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

EpsResult compute_eps(const Scene& base, const SweepPlan& plan, double eps) {
  EpsResult out;
  const Scene scene = base.at(eps);
  const std::size_t n = scene.size();
  const int max_level = plan.orders.empty() ? 0
                                            : *std::max_element(plan.orders.begin(), plan.orders.end());

  std::optional<Expansion> e;
  std::optional<ReferenceSolution> ref;
  std::string failure;
  try {
    e = n == 1 ? expand_single(scene, std::max(max_level - 1, 0)) : expand_multi(scene);
    ref = solve_reference(scene);
  } catch (const std::exception& ex) {
    failure = ex.what();
  }

  int field_level = -1;
  for (int level : plan.orders) {
    SweepRow row;
    row.eps = eps;
    row.order = level;
    row.residual_inclusions.assign(n, 0.0);
    row.coefficients.assign(n, 0.0);
    row.psi0s.assign(n, 0.0);
    row.h_eps.assign(n, 0.0);
    try {
      if (!failure.empty()) throw NumericalError(failure);
      if (n > 1 && level > 1)
        throw std::invalid_argument("multi-inclusion expansion is first order only");
      const RemainderNorm r = remainder_norm(*ref, *e, GridSpec{}, level);
      row.interior_sup = r.sup;
      row.interior_rms = r.rms;
      const ResidualReport res = boundary_residual(*e, level - 1);
      row.residual_outer = res.outer;
      row.residual_inclusions = res.inclusions;
      for (std::size_t i = 0; i < n; ++i) {
        row.h_eps[i] = e->profiles[i].h_eps;
        row.psi0s[i] = e->psi0s[0][i];
        row.coefficients[i] = n == 1 ? e->weights[0] : e->coefficients[i];
      }
      row.condition = e->matrix ? e->matrix->condition : 1.0;
      field_level = std::max(field_level, level);
    } catch (const std::exception& ex) {
      row.ok = false;
      row.message = ex.what();
    }
    out.rows.push_back(std::move(row));
  }

  if (field_level >= 0) {
    std::string text = "x,y,u_ref,u_exp,diff\n";
    GridSpec spec;
    spec.n = 40;
    for (Point x : remainder_grid(scene, spec)) {
      const double ur = (*ref)(x);
      const double ue = evaluate_level(*e, x, field_level);
      text += format_number(x.real()) + "," + format_number(x.imag()) + "," + format_number(ur) +
              "," + format_number(ue) + "," + format_number(ur - ue) + "\n";
    }
    out.fields = std::move(text);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

SweepReport run_sweep(const Scene& scene, const SweepPlan& plan, bool write_files) {
  std::vector<std::future<EpsResult>> jobs;
  for (double eps : plan.eps_values)
    jobs.push_back(std::async(std::launch::async, compute_eps, std::cref(scene), std::cref(plan), eps));

  SweepReport report;
  std::vector<EpsResult> results;
  for (auto& j : jobs) results.push_back(j.get());
  for (const auto& r : results)
    for (const auto& row : r.rows) report.rows.push_back(row);

  for (int level : plan.orders) {
    for (const char* quantity : {"interior_sup", "residual_max"}) {
      std::vector<double> x, y;
      for (const auto& row : report.rows) {
        if (!row.ok || row.order != level) continue;
        double v = row.interior_sup;
        if (std::string(quantity) == "residual_max") {
          v = row.residual_outer;
          for (double r : row.residual_inclusions) v = std::max(v, r);
        }
        if (v > 0) {
          x.push_back(row.eps);
          y.push_back(v);
        }
      }
      if (x.size() >= 2) report.slopes.push_back({level, quantity, loglog_slope(x, y), x.size()});
    }
  }

  if (!write_files) return report;
  std::filesystem::create_directories(plan.outputs);
  const std::size_t n = scene.size();
  {
    std::ofstream f(plan.outputs / "residuals.csv");
    f << "eps,order,status,interior_sup,interior_rms,residual_outer";
    for (std::size_t i = 1; i <= n; ++i) f << ",residual_inclusion_" << i;
    for (std::size_t i = 1; i <= n; ++i) f << ",a_" << i;
    for (std::size_t i = 1; i <= n; ++i) f << ",psi0_" << i;
    for (std::size_t i = 1; i <= n; ++i) f << ",h_eps_" << i;
    f << ",condition,message\n";
    for (const auto& row : report.rows) {
      f << format_number(row.eps) << "," << row.order << "," << (row.ok ? "ok" : "error") << ","
        << format_number(row.interior_sup) << "," << format_number(row.interior_rms) << ","
        << format_number(row.residual_outer);
      for (double v : row.residual_inclusions) f << "," << format_number(v);
      for (double v : row.coefficients) f << "," << format_number(v);
      for (double v : row.psi0s) f << "," << format_number(v);
      for (double v : row.h_eps) f << "," << format_number(v);
      f << "," << format_number(row.condition) << "," << csv_quote(row.message) << "\n";
    }
  }
  {
    std::ofstream f(plan.outputs / "slopes.csv");
    f << "order,quantity,slope,points\n";
    for (const auto& s : report.slopes)
      f << s.order << "," << s.quantity << "," << format_number(s.slope) << "," << s.points << "\n";
  }
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (results[k].fields.empty()) continue;
    char name[64];
    std::snprintf(name, sizeof name, "fields_%g.csv", plan.eps_values[k]);
    std::ofstream f(plan.outputs / name);
    f << results[k].fields;
  }
  return report;
}

}  // namespace smallholes
