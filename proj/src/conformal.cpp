#include "smallholes/conformal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unsupported/Eigen/FFT>

namespace smallholes {

namespace {

constexpr double kBoundaryTol = 1e-9;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view s) {
  std::string t = trim(s);
  if (t.size() > 1 && t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

// Accepts "1.5", "-0.2i", "1.5+0.2i", "1e-3-2e-4i".
Complex parse_complex(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty coefficient");
  if (t.back() != 'i') return {parse_double(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (t.empty() || t == "+") return {0.0, 1.0};
    if (t == "-") return {0.0, -1.0};
    return {0.0, parse_double(t)};
  }
  const std::string im = t.substr(split);
  const double imv = (im == "+") ? 1.0 : (im == "-") ? -1.0 : parse_double(im);
  return {parse_double(t.substr(0, split)), imv};
}

Complex horner_negative_powers(const std::vector<Complex>& c, std::size_t first,
                               Complex inv_w) {
  // sum_{k>=0} c[first + k] inv_w^k
  Complex acc = 0.0;
  for (std::size_t k = c.size(); k-- > first;) acc = acc * inv_w + c[k];
  return acc;
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  auto cross = [](Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); };
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

// Trigonometric interpolant of a closed curve sampled at t_j = 2 pi j / n.
class TrigCurve {
 public:
  explicit TrigCurve(const std::vector<Point>& pts) : n_(pts.size()) {
    std::vector<Complex> out;
    Eigen::FFT<double> fft;
    std::vector<Complex> in(pts.begin(), pts.end());
    fft.fwd(out, in);
    const int n = static_cast<int>(n_);
    const int half = n / 2;
    for (int k = 0; k < n; ++k) {
      int freq = (k <= half) ? k : k - n;
      Complex c = out[k] / static_cast<double>(n);
      if (n % 2 == 0 && k == half) {
        // split the Nyquist mode symmetrically
        modes_.push_back({half, 0.5 * c});
        modes_.push_back({-half, 0.5 * c});
        continue;
      }
      modes_.push_back({freq, c});
    }
  }

  Point value(double t) const {
    Complex v = 0.0;
    for (const auto& [k, c] : modes_) v += c * std::polar(1.0, k * t);
    return v;
  }

  Complex derivative(double t) const {
    Complex v = 0.0;
    for (const auto& [k, c] : modes_) v += Complex(0.0, k) * c * std::polar(1.0, k * t);
    return v;
  }

 private:
  std::size_t n_;
  std::vector<std::pair<int, Complex>> modes_;
};

// Real periodic function on [0, 2 pi) held by its modes; supports the
// antiderivative with the mean part split off.
class TrigReal {
 public:
  explicit TrigReal(const std::vector<double>& samples) {
    std::vector<Complex> out;
    Eigen::FFT<double> fft;
    std::vector<double> in = samples;
    fft.fwd(out, in);
    n_ = samples.size();
    coeffs_.resize(n_ / 2 + 1);
    for (std::size_t k = 0; k <= n_ / 2; ++k)
      coeffs_[k] = out[k] / static_cast<double>(n_);
  }
  double mean() const { return coeffs_[0].real(); }
  double value(double t) const {
    double v = coeffs_[0].real();
    const std::size_t half = n_ / 2;
    for (std::size_t k = 1; k < half; ++k)
      v += 2.0 * (coeffs_[k] * std::polar(1.0, double(k) * t)).real();
    v += coeffs_[half].real() * std::cos(double(half) * t);
    return v;
  }
  /// int_0^t (f - mean) dt'.
  double periodic_antiderivative(double t) const {
    double v = 0.0;
    const std::size_t half = n_ / 2;
    for (std::size_t k = 1; k < half; ++k) {
      const Complex ik(0.0, double(k));
      v += 2.0 * (coeffs_[k] * (std::polar(1.0, double(k) * t) - 1.0) / ik).real();
    }
    v += coeffs_[half].real() * std::sin(double(half) * t) / double(half);
    return v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Complex> coeffs_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Resamples a smooth closed curve at m points uniformly spaced in arc length.
std::vector<Point> arc_length_resample(const std::vector<Point>& pts, std::size_t m) {
  const TrigCurve curve(pts);
  const std::size_t nf = next_pow2(std::max<std::size_t>(4 * pts.size(), 1024));
  std::vector<double> speed(nf);
  for (std::size_t j = 0; j < nf; ++j)
    speed[j] = std::abs(curve.derivative(kTwoPi * double(j) / double(nf)));
  const TrigReal sp(speed);
  const double length = kTwoPi * sp.mean();
  auto arc = [&](double t) { return sp.mean() * t + sp.periodic_antiderivative(t); };
  std::vector<Point> out(m);
  double t = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double target = length * double(j) / double(m);
    for (int it = 0; it < 50; ++it) {
      const double step = (arc(t) - target) / sp.value(t);
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    out[j] = curve.value(t);
  }
  return out;
}

struct SymmResult {
  std::vector<Point> nodes;
  std::vector<double> angles;  // boundary correspondence theta_j = arg T(nodes_j)
  double log_capacity = 0.0;   // ln beta
};

// Nystrom discretization of Symm's equation
//   int ln|z - zeta| sigma(zeta) ds(zeta) = -ln beta on the boundary,
//   int sigma ds = 1,
// with Kress's logarithmic quadrature on 2m arc-length nodes. The
// equilibrium density gives the boundary correspondence d theta/ds = 2 pi sigma.
SymmResult solve_symm(const std::vector<Point>& nodes) {
  const std::size_t n2 = nodes.size();
  const std::size_t m = n2 / 2;
  const double h = kPi / double(m);
  const TrigCurve zeta(nodes);

  std::vector<double> speed(n2);
  for (std::size_t j = 0; j < n2; ++j) speed[j] = std::abs(zeta.derivative(h * double(j)));

  std::vector<double> kress(n2);
  for (std::size_t d = 0; d < n2; ++d) {
    double s = 0.0;
    for (std::size_t k = 1; k < m; ++k) s += std::cos(double(k * d) * h) / double(k);
    kress[d] = -(2.0 * kPi / double(m)) * s -
               (kPi / double(m * m)) * ((d % 2 == 0) ? 1.0 : -1.0);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(n2);
  Eigen::MatrixXd a(n + 1, n + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t d = static_cast<std::size_t>(std::abs(i - j));
      double smooth;
      if (i == j) {
        smooth = std::log(speed[i]);
      } else {
        const double dt = h * double(i - j);
        const double s2 = 4.0 * std::pow(std::sin(0.5 * dt), 2);
        smooth = std::log(std::abs(nodes[i] - nodes[j])) - 0.5 * std::log(s2);
      }
      a(i, j) = 0.5 * kress[d] + h * smooth;
    }
    a(i, n) = -1.0;  // unknown gamma = -ln beta
    a(n, i) = h;
  }
  a(n, n) = 0.0;
  rhs(n) = 1.0;
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);

  std::vector<double> density(n2);
  for (std::size_t j = 0; j < n2; ++j) density[j] = sol(static_cast<Eigen::Index>(j));
  const TrigReal phi(density);
  SymmResult out;
  out.nodes = nodes;
  out.angles.resize(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    const double t = h * double(j);
    out.angles[j] = kTwoPi * (phi.mean() * t + phi.periodic_antiderivative(t));
  }
  out.log_capacity = -sol(n);
  return out;
}

void check_closed_curve(const std::vector<Point>& pts, const std::string& what) {
  if (pts.size() < 8) throw std::invalid_argument(what + ": too few boundary points");
  if (!is_simple_polygon(pts)) throw std::invalid_argument(what + ": curve is not simple");
  Point centroid = 0.0;
  for (Point p : pts) centroid += p;
  centroid /= double(pts.size());
  if (winding_number(pts, centroid) != 1)
    throw std::invalid_argument(what + ": curve is not positively oriented about its centroid");
  if (winding_number(pts, 0.0) != 1)
    throw std::invalid_argument(what + ": the origin must lie inside the shape");
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::disk: return "disk";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::laurent: return "laurent";
    case ShapeKind::samples: return "samples";
  }
  return "?";
}

ShapeSpec ShapeSpec::disk() {
  ShapeSpec s;
  s.text = "disk";
  return s;
}

ShapeSpec ShapeSpec::ellipse(double a, double b, double c) {
  ShapeSpec s;
  s.kind = ShapeKind::ellipse;
  s.a = a;
  s.b = b;
  s.c = c;
  std::ostringstream os;
  os << "ellipse:" << a << "," << b << "," << c;
  s.text = os.str();
  return s;
}

ShapeSpec ShapeSpec::laurent_series(std::vector<Complex> inverse_coeffs) {
  ShapeSpec s;
  s.kind = ShapeKind::laurent;
  s.laurent = std::move(inverse_coeffs);
  s.text = "laurent";
  return s;
}

ShapeSpec ShapeSpec::sampled(std::vector<Point> boundary) {
  ShapeSpec s;
  s.kind = ShapeKind::samples;
  s.samples = std::move(boundary);
  s.text = "samples";
  return s;
}

void ShapeSpec::validate() const {
  switch (kind) {
    case ShapeKind::disk: return;
    case ShapeKind::ellipse:
      if (!(a > 0 && b > 0 && c > 0))
        throw std::invalid_argument("ellipse parameters a, b, c must be positive");
      return;
    case ShapeKind::laurent:
      if (laurent.size() < 2 || std::abs(laurent[0]) == 0.0)
        throw std::invalid_argument("laurent shape needs c_{-1} != 0 and c_0");
      return;
    case ShapeKind::samples: check_closed_curve(samples, "sampled shape"); return;
  }
}

ShapeSpec parse_shape(std::string_view text, const std::filesystem::path& base_dir) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string head = trim(t.substr(0, colon));
  const std::string body = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
  ShapeSpec s;
  if (head == "disk") {
    if (!body.empty()) throw std::invalid_argument("disk takes no parameters");
    s = ShapeSpec::disk();
  } else if (head == "ellipse") {
    std::vector<double> v;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_double(item));
    if (v.size() != 3) throw std::invalid_argument("ellipse needs a,b,c");
    s = ShapeSpec::ellipse(v[0], v[1], v[2]);
  } else if (head == "laurent") {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw std::invalid_argument("laurent coefficients must be written as [c_-1, c_0, ...]");
    std::vector<Complex> c;
    std::stringstream ss(body.substr(1, body.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_complex(item));
    s = ShapeSpec::laurent_series(std::move(c));
  } else if (head == "samples") {
    std::filesystem::path p(body);
    if (p.is_relative()) p = base_dir / p;
    s = ShapeSpec::sampled(read_boundary_csv(p));
  } else {
    throw std::invalid_argument("unknown shape kind '" + head + "'");
  }
  s.text = t;
  s.validate();
  return s;
}

std::vector<Point> read_boundary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open boundary file " + path.string());
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected two columns x,y");
    pts.emplace_back(parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1)));
  }
  return pts;
}

int winding_number(const std::vector<Point>& polygon, Point p) {
  double total = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = polygon[j] - p;
    const Complex b = polygon[(j + 1) % n] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

bool is_simple_polygon(const std::vector<Point>& polygon) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p1 = polygon[i], p2 = polygon[(i + 1) % n];
    if (p1 == p2) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(p1, p2, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ExteriorMap

Complex ExteriorMap::inverse_series(Complex w) const {
  const Complex inv_w = 1.0 / w;
  return inv_coeffs_[0] * w + horner_negative_powers(inv_coeffs_, 1, inv_w);
}

Complex ExteriorMap::inverse_series_derivative(Complex w) const {
  // d/dw [c_{-1} w + sum_k c_k w^{-k}] = c_{-1} - sum_k k c_k w^{-k-1}
  const Complex inv_w = 1.0 / w;
  Complex acc = 0.0;
  for (std::size_t k = inv_coeffs_.size(); k-- > 2;)
    acc = acc * inv_w + double(k - 1) * inv_coeffs_[k];
  return inv_coeffs_[0] - acc * inv_w * inv_w;
}

Complex ExteriorMap::forward_series(Complex z) const {
  return beta_ * z + horner_negative_powers(coeffs_, 0, 1.0 / z);
}

Complex ExteriorMap::ellipse_forward(Complex z) const {
  const double s = 1.0 / ea_ + 1.0 / eb_;
  const double d = 1.0 / (eb_ * eb_) - 1.0 / (ea_ * ea_);
  const Complex root = std::sqrt(z * z / (ec_ * ec_) + d);
  const Complex plus = (z / ec_ + root) / s;
  const Complex minus = (z / ec_ - root) / s;
  return std::abs(plus) >= std::abs(minus) ? plus : minus;
}

Complex ExteriorMap::newton_forward(Complex z) const {
  Complex w;
  if (std::abs(z) >= validity_radius_) {
    w = forward_series(z);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [zs, ws] : seeds_) {
      const double d = std::norm(zs - z);
      if (d < best) {
        best = d;
        w = ws;
      }
    }
  }
  if (std::abs(w) < 1.0) w /= std::abs(w);
  for (int it = 0; it < 80; ++it) {
    const Complex step = (inverse_series(w) - z) / inverse_series_derivative(w);
    w -= step;
    if (std::abs(w) < 1.0) w /= std::abs(w);
    if (std::abs(step) <= 1e-15 * std::abs(w)) break;
  }
  const double residual = std::abs(inverse_series(w) - z);
  if (!(residual <= 1e-11 * std::max(1.0, std::abs(z))))
    throw DomainError("point lies inside the inclusion");
  return w;
}

Complex ExteriorMap::forward(Complex z) const {
  Complex w;
  switch (kind_) {
    case ShapeKind::disk: w = z; break;
    case ShapeKind::ellipse: w = ellipse_forward(z); break;
    default: w = newton_forward(z); break;
  }
  if (std::abs(w) < 1.0 - kBoundaryTol) throw DomainError("point lies inside the inclusion");
  return w;
}

Complex ExteriorMap::inverse(Complex w) const {
  if (std::abs(w) < 1.0 - 1e-12) throw DomainError("inverse map needs |w| >= 1");
  return inverse_series(w);
}

Complex ExteriorMap::inverse_derivative(Complex w) const {
  if (std::abs(w) < 1.0 - 1e-12) throw DomainError("inverse map needs |w| >= 1");
  return inverse_series_derivative(w);
}

Complex ExteriorMap::forward_derivative(Complex z) const {
  return 1.0 / inverse_series_derivative(forward(z));
}

Point ExteriorMap::boundary_point(double theta) const {
  return inverse_series(std::polar(1.0, theta));
}

std::vector<Point> ExteriorMap::boundary_points(std::size_t m) const {
  std::vector<Point> pts(m);
  for (std::size_t j = 0; j < m; ++j)
    pts[j] = boundary_point(kTwoPi * double(j) / double(m));
  return pts;
}

double ExteriorMap::min_boundary_speed(std::size_t m) const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const Complex w = std::polar(1.0, kTwoPi * double(j) / double(m));
    v = std::min(v, std::abs(inverse_series_derivative(w) * Complex(0, 1) * w));
  }
  return v;
}

void ExteriorMap::finalize() {
  beta_ = 1.0 / inv_coeffs_[0].real();
  max_boundary_modulus_ = 0.0;
  for (Point p : boundary_points(256))
    max_boundary_modulus_ = std::max(max_boundary_modulus_, std::abs(p));
  validity_radius_ = 1.5 * max_boundary_modulus_;

  if (kind_ == ShapeKind::laurent || kind_ == ShapeKind::samples) {
    for (double rho : {1.0, 1.02, 1.06, 1.12, 1.25, 1.45, 1.75, 2.2, 3.0, 4.5}) {
      for (int j = 0; j < 128; ++j) {
        const Complex w = std::polar(rho, kTwoPi * j / 128.0);
        seeds_.emplace_back(inverse_series(w), w);
      }
    }
    // Forward Laurent coefficients by least squares on a circle well outside
    // the validity radius.
    const int k_max = order_;
    const int m = 4 * (k_max + 2);
    const double rho = std::max(2.0, 2.0 * validity_radius_ * beta_);
    Eigen::MatrixXcd a(m, k_max + 1);
    Eigen::VectorXcd rhs(m);
    for (int j = 0; j < m; ++j) {
      const Complex w = std::polar(rho, kTwoPi * j / m);
      const Complex z = inverse_series(w);
      Complex p = 1.0;
      for (int k = 0; k <= k_max; ++k) {
        a(j, k) = p;
        p /= z;
      }
      rhs(j) = w - beta_ * z;
    }
    const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(rhs);
    coeffs_.assign(sol.data(), sol.data() + sol.size());
  }

  far_field_constant_ = 0.0;
  for (int j = 0; j < 256; ++j) {
    const Complex w = std::polar(1.0, kTwoPi * j / 256.0);
    far_field_constant_ = std::max(far_field_constant_, std::abs(w - beta_ * inverse_series(w)));
    const Complex z = std::polar(2.0 * validity_radius_, kTwoPi * j / 256.0);
    far_field_constant_ = std::max(far_field_constant_, std::abs(forward(z) - beta_ * z));
  }
}

ExteriorMap build_exterior_map(const ShapeSpec& shape, int order) {
  if (order < 1) throw std::invalid_argument("map truncation order must be >= 1");
  shape.validate();
  ExteriorMap map;
  map.kind_ = shape.kind;
  map.order_ = order;

  switch (shape.kind) {
    case ShapeKind::disk:
      map.inv_coeffs_ = {1.0, 0.0};
      map.coeffs_ = {0.0};
      break;

    case ShapeKind::ellipse: {
      const double a = shape.a, b = shape.b, c = shape.c;
      map.ea_ = a;
      map.eb_ = b;
      map.ec_ = c;
      // T^{-1}(w) = (c/a)(w + 1/w)/2 + (c/b)(w - 1/w)/2
      map.inv_coeffs_ = {0.5 * c * (1.0 / a + 1.0 / b), 0.0, 0.5 * c * (1.0 / a - 1.0 / b)};
      // T(z) = (1/(c s)) [2 z + sum_{n>=1} binom(1/2, n) (c^2 d)^n z^{1-2n}]
      const double s = 1.0 / a + 1.0 / b;
      const double d = 1.0 / (b * b) - 1.0 / (a * a);
      map.coeffs_.assign(order + 1, 0.0);
      double binom = 1.0;
      for (int n = 1; 2 * n - 1 <= order; ++n) {
        binom *= (0.5 - (n - 1)) / n;
        map.coeffs_[2 * n - 1] = binom * std::pow(c * c * d, n) / (c * s);
      }
      break;
    }

    case ShapeKind::laurent: {
      std::vector<Complex> c = shape.laurent;
      // rotate w so that c_{-1} is real and positive
      const double phase = std::arg(c[0]);
      for (std::size_t k = 0; k < c.size(); ++k)
        c[k] *= std::polar(1.0, (double(k) - 1.0) * phase);
      c[0] = std::abs(c[0]);
      map.inv_coeffs_ = std::move(c);
      std::vector<Point> curve(512);
      for (int j = 0; j < 512; ++j) {
        const Complex w = std::polar(1.0, kTwoPi * j / 512.0);
        curve[j] = map.inverse_series(w);
      }
      check_closed_curve(curve, "laurent shape");
      break;
    }

    case ShapeKind::samples: {
      const std::size_t n2 =
          std::max<std::size_t>(512, next_pow2(8 * static_cast<std::size_t>(order + 2)));
      const std::vector<Point> nodes = arc_length_resample(shape.samples, n2);
      const SymmResult symm = solve_symm(nodes);
      const int cols = order + 2;
      Eigen::MatrixXcd a(static_cast<Eigen::Index>(n2), cols);
      Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n2));
      for (std::size_t j = 0; j < n2; ++j) {
        const Complex w = std::polar(1.0, symm.angles[j]);
        Complex p = w;
        for (int k = 0; k < cols; ++k) {
          a(j, k) = p;
          p /= w;
        }
        rhs(j) = nodes[j];
      }
      const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(rhs);
      const Eigen::VectorXcd mismatch = a * sol - rhs;
      double scale = 0.0;
      for (Point p : nodes) scale = std::max(scale, std::abs(p));
      map.fit_residual_ = mismatch.cwiseAbs().maxCoeff() / scale;
      if (map.fit_residual_ > 1e-6)
        throw FitError("boundary fit residual " + std::to_string(map.fit_residual_) +
                           " exceeds 1e-6; raise the map order or smooth the shape",
                       map.fit_residual_);
      std::vector<Complex> c(sol.data(), sol.data() + sol.size());
      const double phase = std::arg(c[0]);
      for (std::size_t k = 0; k < c.size(); ++k)
        c[k] *= std::polar(1.0, (double(k) - 1.0) * phase);
      c[0] = std::abs(c[0]);
      map.inv_coeffs_ = std::move(c);
      break;
    }
  }
  map.finalize();
  return map;
}

Complex map_inverse(const ExteriorMap& map, Complex w) { return map.inverse(w); }

// ---------------------------------------------------------------------------
// RescaledMap

RescaledMap::RescaledMap(std::shared_ptr<const ExteriorMap> map, Point center, double eps)
    : map_(std::move(map)), center_(center), eps_(eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
}

Complex RescaledMap::operator()(Point x) const {
  return eps_ * map_->forward((x - center_) / eps_);
}

RescaledMap rescaled_map(std::shared_ptr<const ExteriorMap> map, Point center, double eps) {
  return RescaledMap(std::move(map), center, eps);
}

// ---------------------------------------------------------------------------
// InteriorMap

InteriorMap InteriorMap::identity() {
  InteriorMap m;
  m.kind_ = Kind::identity_disk;
  m.coeffs_ = {0.0, 1.0};
  m.inv_coeffs_ = {0.0, 1.0};
  m.diameter_ = 2.0;
  return m;
}

InteriorMap InteriorMap::from_inverse_series(std::vector<Complex> inverse_coeffs) {
  if (inverse_coeffs.size() < 2 || std::abs(inverse_coeffs[1]) == 0.0)
    throw std::invalid_argument("interior map series needs a_1 != 0");
  InteriorMap m;
  m.kind_ = Kind::series;
  m.inv_coeffs_ = std::move(inverse_coeffs);
  std::vector<Point> curve = m.boundary_points(512);
  if (!is_simple_polygon(curve) || winding_number(curve, m.inv_coeffs_[0]) != 1)
    throw std::invalid_argument("interior map does not parametrize a simple positively oriented boundary");
  for (int r = 0; r <= 12; ++r) {
    const double rho = r / 10.0;
    const int count = r == 0 ? 1 : 64;
    for (int j = 0; j < count; ++j) {
      const Complex w = std::polar(rho, kTwoPi * j / count);
      m.seeds_.emplace_back(m.inverse(w), w);
    }
  }
  m.diameter_ = 0.0;
  const std::vector<Point> b = m.boundary_points(256);
  for (Point p : b)
    for (Point q : b) m.diameter_ = std::max(m.diameter_, std::abs(p - q));

  // Taylor coefficients of T0 about the origin, fitted on an interior circle.
  const int k_max = 16;
  const int count = 4 * (k_max + 1);
  Eigen::MatrixXcd a(count, k_max + 1);
  Eigen::VectorXcd rhs(count);
  for (int j = 0; j < count; ++j) {
    const Complex w = std::polar(0.5, kTwoPi * j / count);
    const Complex z = m.inverse(w);
    Complex p = 1.0;
    for (int k = 0; k <= k_max; ++k) {
      a(j, k) = p;
      p *= z;
    }
    rhs(j) = w;
  }
  const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(rhs);
  m.coeffs_.assign(sol.data(), sol.data() + sol.size());
  return m;
}

Complex InteriorMap::inverse(Complex w) const {
  if (kind_ == Kind::identity_disk) return w;
  Complex acc = 0.0;
  for (std::size_t k = inv_coeffs_.size(); k-- > 0;) acc = acc * w + inv_coeffs_[k];
  return acc;
}

Complex InteriorMap::inverse_derivative(Complex w) const {
  if (kind_ == Kind::identity_disk) return 1.0;
  Complex acc = 0.0;
  for (std::size_t k = inv_coeffs_.size(); k-- > 1;) acc = acc * w + double(k) * inv_coeffs_[k];
  return acc;
}

Complex InteriorMap::forward_unchecked(Complex z) const {
  if (kind_ == Kind::identity_disk) return z;
  Complex w = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [zs, ws] : seeds_) {
    const double d = std::norm(zs - z);
    if (d < best) {
      best = d;
      w = ws;
    }
  }
  for (int it = 0; it < 80; ++it) {
    const Complex step = (inverse(w) - z) / inverse_derivative(w);
    w -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  if (!(std::abs(inverse(w) - z) <= 1e-11 * std::max(1.0, std::abs(z))))
    throw DomainError("interior map inversion failed; point outside the domain");
  return w;
}

Complex InteriorMap::forward(Complex z) const {
  const Complex w = forward_unchecked(z);
  if (std::abs(w) > 1.0 + kBoundaryTol) throw DomainError("point lies outside Omega0");
  return w;
}

Complex InteriorMap::forward_derivative(Complex z) const {
  return 1.0 / inverse_derivative(forward(z));
}

std::vector<Point> InteriorMap::boundary_points(std::size_t m) const {
  std::vector<Point> pts(m);
  for (std::size_t j = 0; j < m; ++j) pts[j] = boundary_point(kTwoPi * double(j) / double(m));
  return pts;
}

bool InteriorMap::contains(Point z, double margin) const {
  try {
    return std::abs(forward_unchecked(z)) < 1.0 - margin;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace smallholes
