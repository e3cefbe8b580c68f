#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "smallholes/config.hpp"
#include "smallholes/interaction.hpp"
#include "smallholes/sweep.hpp"

using namespace smallholes;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("smallholes_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

int error_line(const std::string& text) {
  try {
    parse_scene_text(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("minimal disk-in-disk config") {
    const SceneConfig cfg = parse_scene_text("[inclusion]\nshape = disk\nbase_center = 0.3, 0\n");
    CHECK(cfg.scene.size() == 1);
    CHECK(cfg.scene.inclusions[0].base_center == Point(0.3, 0));
    CHECK(cfg.scene.forcing.kind == Forcing::Kind::zero);
    CHECK(cfg.plan.orders == std::vector<int>{0, 1});
  }

  TEST_CASE("full config with comments") {
    const SceneConfig cfg = parse_scene_text(R"(# two clustered inclusions
[domain]
kind = disk
[forcing]
kind = point_sources
sources = 0, 0.6, 1; -0.2, -0.7, 0.5   # two sources
; a comment line
[inclusion]
shape = disk
offset = (1.6, 0)
exponent = 0.5
[inclusion]
shape = "ellipse:1,2,2"
offset = -1.6, 0
exponent = 0.5
map_order = 16
[sweep]
eps = 0.1, 0.05, 0.025
orders = 0, 1
out = somewhere
seed = 4
)");
    CHECK(cfg.scene.size() == 2);
    CHECK(cfg.scene.forcing.sources.size() == 2);
    CHECK(cfg.scene.forcing.sources[1].charge == 0.5);
    CHECK(cfg.plan.eps_values.size() == 3);
    CHECK(cfg.plan.outputs == "somewhere");
    CHECK(cfg.plan.seed == 4);
    CHECK(cfg.scene.eps == 0.1);
    const Regime r = detect_regime(cfg.scene);
    CHECK(r.kind == RegimeKind::clustered);
    CHECK(r.alpha == 0.5);
  }

  TEST_CASE("schema errors carry the line") {
    CHECK(error_line("[inclusion]\nshape = disk\nexponent = 1.2\n") == 3);
    CHECK(error_line("[inclusion]\nshape = disk\ncolour = red\n") == 3);
    CHECK(error_line("[inclusion]\nshape = disk\nshape = disk\n") == 3);
    CHECK(error_line("[inclusion]\nshape = disk\n[extras]\n") == 3);
    CHECK(error_line("[inclusion]\nshape = blob\n") == 2);
    CHECK(error_line("[inclusion]\nshape = disk\n[sweep]\neps = 0.05, 0.1\n") == 4);
    CHECK(error_line("[inclusion]\nshape = disk\n[sweep]\norders = 0, -1\n") == 4);
    CHECK(error_line("shape = disk\n") == 1);
    CHECK(error_line("[domain]\nkind = disk\n") > 0);
  }

  TEST_CASE("geometry is checked at every requested eps") {
    const std::string base = "[inclusion]\nshape = disk\nbase_center = 0.3, 0\n[inclusion]\nshape = disk\nbase_center = -0.3, 0\n";
    CHECK_NOTHROW(parse_scene_text(base + "[sweep]\neps = 0.05, 0.025\n"));
    // touching at eps = 0.3
    CHECK(error_line(base + "[sweep]\neps = 0.3, 0.05\n") == 1);
    CHECK(error_line("[inclusion]\nshape = disk\nbase_center = 0.85, 0\n[sweep]\neps = 0.2\n") == 1);
  }

  TEST_CASE("annulus with constant forcing is exact at level 1") {
    SceneConfig cfg = parse_scene_text("[forcing]\nkind = constant\nf0 = 4\n[inclusion]\nshape = disk\n"
                                       "[sweep]\neps = 0.1, 0.05, 0.025, 0.0125\norders = 0, 1\n");
    const SweepReport rep = run_sweep(cfg.scene, cfg.plan, false);
    CHECK(rep.rows.size() == 8);
    for (const auto& row : rep.rows) {
      CHECK(row.ok);
      if (row.order == 1) CHECK(row.interior_sup < 1e-12);
    }
  }

  TEST_CASE("annulus sweep with a point source") {
    const auto out = scratch("annulus");
    SceneConfig cfg = parse_scene_text("[forcing]\nkind = point_sources\nsources = -0.5, 0, 1\n[inclusion]\nshape = disk\n"
                                       "[sweep]\neps = 0.1, 0.05, 0.025, 0.0125\norders = 0, 1\n");
    cfg.plan.outputs = out;
    const SweepReport rep = run_sweep(cfg.scene, cfg.plan);
    CHECK(rep.rows.size() == 8);
    for (const auto& row : rep.rows) CHECK(row.ok);
    bool found = false;
    for (const auto& s : rep.slopes)
      if (s.order == 1 && s.quantity == "interior_sup") {
        found = true;
        CHECK(s.slope >= 0.9);
      }
    CHECK(found);
    const std::string csv = slurp(out / "residuals.csv");
    CHECK(csv.rfind("eps,order,status,interior_sup,interior_rms,residual_outer,residual_inclusion_1,a_1,psi0_1,"
                    "h_eps_1,condition,message\n",
                    0) == 0);
    CHECK(csv.find("1.0000000000000001e-01,0,ok,") != std::string::npos);
    CHECK(std::filesystem::exists(out / "slopes.csv"));
    CHECK(std::filesystem::exists(out / "fields_0.0125.csv"));
    CHECK(slurp(out / "fields_0.1.csv").rfind("x,y,u_ref,u_exp,diff\n", 0) == 0);
  }

  TEST_CASE("separated pair: a ln eps roughly constant") {
    SceneConfig cfg = parse_scene_text(
        "[forcing]\nkind = point_sources\nsources = 0, 0.6, 1\n"
        "[inclusion]\nshape = disk\nbase_center = 0.4, 0\n[inclusion]\nshape = disk\nbase_center = -0.4, 0\n"
        "[sweep]\neps = 0.05, 0.025, 0.0125\norders = 1\n");
    const SweepReport rep = run_sweep(cfg.scene, cfg.plan, false);
    std::vector<double> scaled;
    for (const auto& row : rep.rows) {
      REQUIRE(row.ok);
      scaled.push_back(row.coefficients[0] * std::log(row.eps));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi / *lo < 1.1);
  }

  TEST_CASE("empty eps list is a no-op") {
    const auto out = scratch("empty");
    SceneConfig cfg = parse_scene_text("[inclusion]\nshape = disk\nbase_center = 0.3, 0\n");
    cfg.plan.outputs = out;
    const SweepReport rep = run_sweep(cfg.scene, cfg.plan);
    CHECK(rep.rows.empty());
    CHECK(rep.slopes.empty());
    CHECK(slurp(out / "slopes.csv") == "order,quantity,slope,points\n");
  }

  TEST_CASE("failures are recorded per row") {
    SceneConfig cfg = parse_scene_text(
        "[inclusion]\nshape = disk\nbase_center = 0.4, 0\n[inclusion]\nshape = disk\nbase_center = -0.4, 0\n"
        "[sweep]\neps = 0.05\norders = 1, 2\n");
    const SweepReport rep = run_sweep(cfg.scene, cfg.plan, false);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].ok);
    CHECK_FALSE(rep.rows[1].ok);
    CHECK(rep.rows[1].message.find("first order") != std::string::npos);
  }

  TEST_CASE("identical config gives byte-identical CSV output") {
    const std::string text =
        "[forcing]\nkind = point_sources\nsources = -0.5, 0, 1\n[inclusion]\nshape = ellipse:1,2,2\n"
        "base_center = 0.3, 0\n[sweep]\neps = 0.1, 0.05\norders = 0, 1, 2\n";
    const auto a = scratch("det_a"), b = scratch("det_b");
    SceneConfig cfg = parse_scene_text(text);
    cfg.plan.outputs = a;
    run_sweep(cfg.scene, cfg.plan);
    cfg = parse_scene_text(text);
    cfg.plan.outputs = b;
    run_sweep(cfg.scene, cfg.plan);
    for (const char* f : {"residuals.csv", "slopes.csv", "fields_0.1.csv", "fields_0.05.csv"})
      CHECK(slurp(a / f) == slurp(b / f));
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(format_number(-2.5) == "-2.5000000000000000e+00");
  }
}
