#include "maris/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maris {

namespace {

constexpr double kConvergence = 1e-17;
constexpr int kMaxIterations = 1'000'000;

void check_incomplete_gamma_domain(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("incomplete gamma requires s > 0 and finite");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("incomplete gamma requires x >= 0 and finite");
  }
}

// Kummer-style lower series: sum_{k>=0} x^k / ((s+1)(s+2)...(s+k)), so that
// P(s, x) = x^s e^-x / Gamma(s+1) * series. Converges fast for x < s + 1.
double lower_series(double s, double x) {
  double term = 1.0;
  double total = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / (s + k);
    total += term;
    if (term < total * kConvergence) {
      return total;
    }
  }
  throw std::runtime_error("incomplete gamma series did not converge");
}

// Modified-Lentz continued fraction for the upper tail factor h, so that
// Q(s, x) = x^s e^-x / Gamma(s) * h. Converges fast for x >= s + 1.
double upper_continued_fraction(double s, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - s;
  double c = 1.0 / floor;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < floor) d = floor;
    c = b + an / c;
    if (std::abs(c) < floor) c = floor;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= eps) {
      return h;
    }
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double log_gamma(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("log_gamma requires s > 0 and finite");
  }
  return std::lgamma(s);
}

double reg_lower_incomplete_gamma(double s, double x) {
  check_incomplete_gamma_domain(s, x);
  if (x == 0.0) {
    return 0.0;
  }
  if (x < s + 1.0) {
    const double ln_prefix = s * std::log(x) - x - log_gamma(s + 1.0);
    return std::exp(ln_prefix) * lower_series(s, x);
  }
  const double ln_prefix = s * std::log(x) - x - log_gamma(s);
  const double q = std::exp(ln_prefix) * upper_continued_fraction(s, x);
  return 1.0 - q;
}

double log_reg_lower_incomplete_gamma(double s, double x) {
  check_incomplete_gamma_domain(s, x);
  if (x == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (x < s + 1.0) {
    return s * std::log(x) - x - log_gamma(s + 1.0) +
           std::log(lower_series(s, x));
  }
  const double ln_prefix = s * std::log(x) - x - log_gamma(s);
  const double q = std::exp(ln_prefix) * upper_continued_fraction(s, x);
  // q < 1 here (x >= s + 1 keeps the upper tail below one); log1p keeps full
  // precision as P -> 1.
  return std::log1p(-q);
}

double rayleigh_quantile(double scale, double u) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::domain_error("rayleigh_quantile requires scale > 0");
  }
  if (!(u >= 0.0) || u >= 1.0) {
    throw std::domain_error("rayleigh_quantile requires u in [0, 1)");
  }
  return scale * std::sqrt(-2.0 * std::log1p(-u));
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double total = 0.0;
    for (const double v : values) {
      total += v;
    }
    return total;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace maris
