#include "smallholes/harmonic_int.hpp"

namespace smallholes {

HarmonicInteriorField solve_interior(std::shared_ptr<const InteriorMap> domain,
                                     const BoundaryFunction& phi) {
  HarmonicInteriorField field;
  field.domain_ = std::move(domain);
  const auto& c = phi.fourier();
  const std::size_t half = phi.size() / 2;
  field.g_.assign(half + 1, 0.0);
  field.g_[0] = c[0].real();
  for (std::size_t k = 1; k < half; ++k) field.g_[k] = 2.0 * c[k];
  field.g_[half] = c[half].real();
  field.sup_norm_ = phi.sup_norm();
  return field;
}

double HarmonicInteriorField::at_mapped(Complex w) const {
  Complex acc = 0.0;
  for (std::size_t k = g_.size(); k-- > 0;) acc = acc * w + g_[k];
  return acc.real();
}

double HarmonicInteriorField::operator()(Point x) const { return at_mapped(domain_->forward(x)); }

Complex HarmonicInteriorField::gradient(Point x) const {
  const Complex w = domain_->forward(x);
  Complex acc = 0.0;
  for (std::size_t k = g_.size(); k-- > 1;) acc = acc * w + double(k) * g_[k];
  return std::conj(acc * domain_->forward_derivative(x));
}

double evaluate_interior(const HarmonicInteriorField& field, Point x) { return field(x); }

Complex evaluate_gradient(const HarmonicInteriorField& field, Point x) {
  return field.gradient(x);
}

}  // namespace smallholes
