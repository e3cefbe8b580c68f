#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smallholes/config.hpp"

namespace smallholes {

struct SweepRow {
  double eps = 0.0;
  int order = 0;
  bool ok = true;
  std::string message;
  double interior_sup = 0.0;
  double interior_rms = 0.0;
  double residual_outer = 0.0;
  std::vector<double> residual_inclusions;
  std::vector<double> coefficients;
  std::vector<double> psi0s;
  std::vector<double> h_eps;
  double condition = 0.0;
};

struct SweepSlope {
  int order;
  std::string quantity;
  double slope;
  std::size_t points;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<SweepSlope> slopes;
};

/// Runs expansion and reference for every (eps, order) of the plan. Rows are
/// computed concurrently and written in plan order; failures are recorded per
/// row. Writes residuals.csv, slopes.csv and fields_<eps>.csv into plan.outputs
/// when write_files is set.
SweepReport run_sweep(const Scene& scene, const SweepPlan& plan, bool write_files = true);

/// %.16e formatting used by every CSV.
std::string format_number(double v);

}  // namespace smallholes
