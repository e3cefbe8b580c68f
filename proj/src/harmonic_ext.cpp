#include "smallholes/harmonic_ext.hpp"

#include <cmath>

namespace smallholes {

HarmonicExteriorField solve_exterior(std::shared_ptr<const ExteriorMap> map,
                                     const BoundaryFunction& F) {
  HarmonicExteriorField field;
  field.map_ = std::move(map);
  field.psi0_ = psi0_of(*field.map_, F);
  const auto& c = F.fourier();
  const std::size_t half = F.size() / 2;
  field.d_.assign(half + 1, 0.0);
  // Re(d_k e^{-ik theta}) must equal 2 Re(c_k e^{ik theta}).
  for (std::size_t k = 1; k < half; ++k) field.d_[k] = 2.0 * std::conj(c[k]);
  field.d_[half] = c[half].real();
  field.sup_norm_ = F.sup_norm();
  field.resolution_warning_ = F.under_resolved();
  return field;
}

double psi0_of(const ExteriorMap&, const BoundaryFunction& F) { return F.mean(); }

std::vector<Complex> HarmonicExteriorField::derivative_coeffs() const {
  std::vector<Complex> c(d_.size() + 1, 0.0);
  for (std::size_t k = 1; k < d_.size(); ++k) c[k + 1] = -double(k) * d_[k];
  return c;
}

double HarmonicExteriorField::at_mapped(Complex w) const {
  const Complex inv_w = 1.0 / w;
  Complex acc = 0.0;
  for (std::size_t k = d_.size(); k-- > 1;) acc = (acc + d_[k]) * inv_w;
  return psi0_ + acc.real();
}

double HarmonicExteriorField::operator()(Point X) const { return at_mapped(map_->forward(X)); }

Complex HarmonicExteriorField::gradient(Point X) const {
  const Complex w = map_->forward(X);
  const Complex inv_w = 1.0 / w;
  Complex acc = 0.0;
  for (std::size_t k = d_.size(); k-- > 1;) acc = acc * inv_w - double(k) * d_[k];
  const Complex dpsi = acc * inv_w * inv_w;  // d/dw sum d_k w^{-k}
  const Complex g = dpsi * map_->forward_derivative(X);
  return std::conj(g);
}

double evaluate_exterior(const HarmonicExteriorField& field, Point X) { return field(X); }

double tail_sup(const HarmonicExteriorField& field, int n, double radius) {
  const auto& d = field.coeffs();
  double sup = 0.0;
  for (int j = 0; j < 256; ++j) {
    const Point X = std::polar(radius, kTwoPi * j / 256.0);
    const Complex inv_w = 1.0 / field.map().forward(X);
    Complex acc = 0.0;
    for (std::size_t k = d.size(); k-- > static_cast<std::size_t>(std::max(n, 1));)
      acc = (acc + d[k]) * inv_w;
    // acc = sum_{k>=n} d_k w^{-(k-n+1)}; restore the missing powers
    acc *= std::pow(inv_w, std::max(n, 1) - 1);
    sup = std::max(sup, std::pow(radius, n) * std::abs(acc.real()));
  }
  return sup;
}

Complex contour_mean_check(const HarmonicExteriorField& field) {
  const double r = 2.0 * field.map().validity_radius();
  const int m = 256;
  const auto& d = field.coeffs();
  Complex total = 0.0;
  for (int j = 0; j < m; ++j) {
    const Point z = std::polar(r, kTwoPi * j / m);
    const Complex inv_w = 1.0 / field.map().forward(z);
    Complex acc = 0.0;
    for (std::size_t k = d.size(); k-- > 1;) acc = (acc + d[k]) * inv_w;
    // dz / (2 pi i z) = d theta / 2 pi
    total += field.psi0() + acc;
  }
  return total / double(m);
}

}  // namespace smallholes
