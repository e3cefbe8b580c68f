#include "smallholes/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "smallholes/profiles.hpp"

namespace smallholes {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  // ';' separates list items in values, so only a leading ';' is a comment
  const std::string t = trim(line);
  if (!t.empty() && t[0] == ';') return {};
  const auto hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

struct Entry {
  std::string value;
  int line;
};

struct Section {
  std::string name;
  int line;
  std::map<std::string, Entry> entries;
};

double to_double(const std::string& s) {
  std::size_t used = 0;
  const std::string t = trim(s);
  const double v = std::stod(t, &used);
  if (used != t.size()) throw std::invalid_argument("trailing characters in '" + t + "'");
  return v;
}

Point parse_point(const std::string& s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  const auto v = parse_number_list(t);
  if (v.size() != 2) throw std::invalid_argument("expected a point 'x, y'");
  return {v[0], v[1]};
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw std::invalid_argument("expected a list [c0, c1, ...]");
  // reuse the laurent parser for complex entries
  const ShapeSpec spec = parse_shape("laurent:" + t);
  return spec.laurent;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> v;
  std::string t = trim(text);
  if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    v.push_back(to_double(item));
  }
  return v;
}

SceneConfig parse_scene_text(const std::string& text, const std::string& name,
                             const std::filesystem::path& base_dir) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(name, lineno, "unterminated section header");
      const std::string sec = trim(line.substr(1, line.size() - 2));
      if (sec != "domain" && sec != "forcing" && sec != "inclusion" && sec != "sweep")
        throw ConfigError(name, lineno, "unknown section [" + sec + "]");
      if (sec != "inclusion")
        for (const auto& s : sections)
          if (s.name == sec) throw ConfigError(name, lineno, "duplicate section [" + sec + "]");
      sections.push_back({sec, lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(name, lineno, "expected 'key = value'");
    if (sections.empty()) throw ConfigError(name, lineno, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (sections.back().entries.count(key))
      throw ConfigError(name, lineno, "duplicate key '" + key + "'");
    sections.back().entries[key] = {value, lineno};
  }

  SceneConfig cfg;
  Scene& scene = cfg.scene;
  std::vector<const Section*> inclusion_sections;

  for (const auto& sec : sections) {
    std::map<std::string, Entry> e = sec.entries;
    auto take = [&](const std::string& key) -> std::optional<Entry> {
      auto it = e.find(key);
      if (it == e.end()) return std::nullopt;
      Entry v = it->second;
      e.erase(it);
      return v;
    };
    auto guarded = [&](const Entry& entry, auto&& fn) {
      try {
        return fn(entry.value);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& ex) {
        throw ConfigError(name, entry.line, ex.what());
      }
    };

    if (sec.name == "domain") {
      const auto kind = take("kind");
      const std::string k = kind ? kind->value : "disk";
      if (k == "disk") {
        scene.domain = std::make_shared<InteriorMap>(InteriorMap::identity());
      } else if (k == "series") {
        const auto coeffs = take("coeffs");
        if (!coeffs) throw ConfigError(name, sec.line, "[domain] kind = series needs coeffs");
        scene.domain = guarded(*coeffs, [](const std::string& v) {
          return std::make_shared<InteriorMap>(
              InteriorMap::from_inverse_series(parse_complex_list(v)));
        });
      } else {
        throw ConfigError(name, kind->line, "unknown domain kind '" + k + "'");
      }
    } else if (sec.name == "forcing") {
      const auto kind = take("kind");
      const std::string k = kind ? kind->value : "zero";
      if (k == "zero") {
        scene.forcing = Forcing::zero();
      } else if (k == "constant") {
        const auto f0 = take("f0");
        if (!f0) throw ConfigError(name, sec.line, "constant forcing needs f0");
        scene.forcing = Forcing::constant(guarded(*f0, to_double));
      } else if (k == "point_sources") {
        const auto src = take("sources");
        if (!src) throw ConfigError(name, sec.line, "point_sources forcing needs sources");
        scene.forcing = guarded(*src, [](const std::string& v) {
          std::vector<Forcing::Source> list;
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ';')) {
            if (trim(item).empty()) continue;
            const auto nums = parse_number_list(item);
            if (nums.size() != 3) throw std::invalid_argument("source must be 'x, y, q'");
            list.push_back({Point(nums[0], nums[1]), nums[2]});
          }
          if (list.empty()) throw std::invalid_argument("no sources given");
          return Forcing::point_sources(std::move(list));
        });
      } else {
        throw ConfigError(name, kind->line, "unknown forcing kind '" + k + "'");
      }
    } else if (sec.name == "inclusion") {
      inclusion_sections.push_back(&sec);
      const auto shape = take("shape");
      if (!shape) throw ConfigError(name, sec.line, "[inclusion] needs shape");
      const auto base = take("base_center");
      const auto offset = take("offset");
      const auto exponent = take("exponent");
      const auto order = take("map_order");
      const ShapeSpec spec = guarded(*shape, [&](const std::string& v) { return parse_shape(v, base_dir); });
      const Point b = base ? guarded(*base, parse_point) : Point(0.0);
      const Point u = offset ? guarded(*offset, parse_point) : Point(0.0);
      const double a = exponent ? guarded(*exponent, to_double) : 0.0;
      if (!(a >= 0.0 && a < 1.0))
        throw ConfigError(name, exponent->line, "exponent must lie in [0, 1)");
      const int k = order ? static_cast<int>(guarded(*order, to_double)) : kDefaultMapOrder;
      scene.inclusions.push_back(guarded(*shape, [&](const std::string&) {
        return make_inclusion(spec, b, u, a, k);
      }));
    } else if (sec.name == "sweep") {
      if (const auto v = take("eps")) {
        cfg.plan.eps_values = guarded(*v, parse_number_list);
        for (std::size_t i = 0; i < cfg.plan.eps_values.size(); ++i) {
          if (!(cfg.plan.eps_values[i] > 0 && cfg.plan.eps_values[i] < 1))
            throw ConfigError(name, v->line, "eps values must lie in (0, 1)");
          if (i > 0 && !(cfg.plan.eps_values[i] < cfg.plan.eps_values[i - 1]))
            throw ConfigError(name, v->line, "eps values must be strictly decreasing");
        }
      }
      if (const auto v = take("orders")) {
        cfg.plan.orders.clear();
        for (double o : guarded(*v, parse_number_list)) {
          if (o < 0 || o != std::floor(o))
            throw ConfigError(name, v->line, "orders must be non-negative integers");
          cfg.plan.orders.push_back(static_cast<int>(o));
        }
      }
      if (const auto v = take("out")) cfg.plan.outputs = v->value;
      if (const auto v = take("seed"))
        cfg.plan.seed = static_cast<std::uint64_t>(guarded(*v, to_double));
      if (const auto v = take("min_separation")) cfg.plan.min_separation = guarded(*v, to_double);
    }
    if (!e.empty())
      throw ConfigError(name, e.begin()->second.line,
                        "unknown key '" + e.begin()->first + "' in [" + sec.name + "]");
  }

  if (scene.inclusions.empty()) throw ConfigError(name, lineno, "no [inclusion] block");

  for (double eps : cfg.plan.eps_values) {
    Scene s = scene.at(eps);
    try {
      validate_scene(s, cfg.plan.min_separation);
      for (std::size_t i = 0; i < s.size(); ++i)
        build_profile(s.domain, s.inclusions[i].map, s.inclusions[i].center(eps), eps,
                      static_cast<int>(i), 64);
    } catch (const Error& ex) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "at eps = %g: ", eps);
      const std::string msg = ex.what();
      int line = inclusion_sections.empty() ? 1 : inclusion_sections.front()->line;
      // point at the offending inclusion block when the message names one
      for (std::size_t i = 0; i < inclusion_sections.size(); ++i)
        if (msg.find("inclusion " + std::to_string(i)) != std::string::npos ||
            msg.find("inclusions " + std::to_string(i)) != std::string::npos) {
          line = inclusion_sections[i]->line;
          break;
        }
      throw ConfigError(name, line, buf + msg);
    }
  }
  if (!cfg.plan.eps_values.empty()) scene.eps = cfg.plan.eps_values.front();
  return cfg;
}

SceneConfig parse_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str(), path.string(), path.parent_path());
}

}  // namespace smallholes
