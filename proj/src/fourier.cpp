#include "smallholes/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/FFT>

namespace smallholes {

namespace {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

std::vector<Complex> real_fourier_coefficients(std::span<const double> samples) {
  const std::size_t m = samples.size();
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<Complex> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  std::vector<Complex> coeffs(m / 2 + 1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k <= m / 2; ++k) coeffs[k] = out[k] * inv_m;
  return coeffs;
}

double periodic_mean(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

BoundaryFunction BoundaryFunction::from_samples(std::vector<double> samples,
                                                int boundary_id) {
  if (samples.size() < 32 || !is_power_of_two(samples.size()))
    throw std::invalid_argument(
        "boundary function needs a power-of-two sample count >= 32");
  BoundaryFunction f;
  f.fourier_ = real_fourier_coefficients(samples);
  f.sup_norm_ = 0.0;
  for (double v : samples) f.sup_norm_ = std::max(f.sup_norm_, std::abs(v));
  f.samples_ = std::move(samples);
  f.boundary_id_ = boundary_id;
  return f;
}

BoundaryFunction BoundaryFunction::sample(std::size_t m,
                                          const std::function<double(double)>& f,
                                          int boundary_id) {
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = f(sample_angle(j, m));
  return from_samples(std::move(s), boundary_id);
}

BoundaryFunction BoundaryFunction::zeros(std::size_t m, int boundary_id) {
  return from_samples(std::vector<double>(m, 0.0), boundary_id);
}

double BoundaryFunction::value_at(double theta) const {
  const std::size_t half = size() / 2;
  double v = fourier_[0].real();
  for (std::size_t k = 1; k < half; ++k)
    v += 2.0 * (fourier_[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
  v += fourier_[half].real() * std::cos(static_cast<double>(half) * theta);
  return v;
}

double BoundaryFunction::high_frequency_content() const {
  double tail = 0.0;
  for (std::size_t k = size() / 4 + 1; k < fourier_.size(); ++k)
    tail = std::max(tail, std::abs(fourier_[k]));
  return tail;
}

BoundaryFunction& BoundaryFunction::operator+=(const BoundaryFunction& other) {
  if (other.size() != size())
    throw std::invalid_argument("boundary functions differ in sample count");
  std::vector<double> s = samples_;
  for (std::size_t j = 0; j < s.size(); ++j) s[j] += other.samples_[j];
  *this = from_samples(std::move(s), boundary_id_);
  return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(double scale) {
  std::vector<double> s = samples_;
  for (double& v : s) v *= scale;
  *this = from_samples(std::move(s), boundary_id_);
  return *this;
}

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) {
  a += b;
  return a;
}

BoundaryFunction operator*(double s, BoundaryFunction a) {
  a *= s;
  return a;
}

}  // namespace smallholes
