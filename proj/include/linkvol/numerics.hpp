#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace linkvol {

using Complex = std::complex<double>;

template <std::floating_point T>
constexpr T pi_squared = std::numbers::pi_v<T> * std::numbers::pi_v<T>;

template <std::floating_point T>
bool is_finite(std::complex<T> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// log|z| + i arg z with arg in (-pi, pi]; a negative zero imaginary part is
// read as +0 so that -1 maps to +i pi.
template <std::floating_point T>
std::complex<T> principal_log(std::complex<T> z) {
  if (z.real() == T(0) && z.imag() == T(0))
    throw std::domain_error("log of zero");
  if (!is_finite(z)) throw std::domain_error("log of non-finite value");
  if (z.imag() == T(0)) z = {z.real(), T(0)};
  return std::log(z);
}

namespace detail {

// B_{2k} / (2k+1)! for k = 1..15.
template <std::floating_point T>
struct BernoulliCoefficients {
  static constexpr int kMax = 15;
  std::array<T, kMax + 1> c{};
  BernoulliCoefficients() {
    static constexpr long double num[kMax + 1] = {
        0, 1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513, -236364091,
        8553103, -23749461029.0L, 8615841276005.0L};
    static constexpr long double den[kMax + 1] = {
        1, 6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730, 6, 870, 14322};
    long double fact = 1;  // (2k+1)!
    for (int k = 1; k <= kMax; ++k) {
      fact *= static_cast<long double>(2 * k) * static_cast<long double>(2 * k + 1);
      c[k] = static_cast<T>(num[k] / den[k] / fact);
    }
  }
};

template <std::floating_point T>
std::complex<T> dilog_series(std::complex<T> z) {
  std::complex<T> sum = 0, zk = z;
  for (int k = 1; k <= 60; ++k) {
    std::complex<T> term = zk / T(k * k);
    sum += term;
    if (std::abs(term) < std::numeric_limits<T>::epsilon() * std::abs(sum) * T(1e-2)) break;
    zk *= z;
  }
  return sum;
}

// sum_n B_n u^{n+1}/(n+1)! with u = -log(1-z); fast for |u| well below 2 pi.
template <std::floating_point T>
std::complex<T> dilog_bernoulli(std::complex<T> z) {
  static const BernoulliCoefficients<T> coef;
  const std::complex<T> u = -principal_log(std::complex<T>(1) - z);
  const std::complex<T> u2 = u * u;
  std::complex<T> sum = u - u2 / T(4);
  std::complex<T> up = u;
  for (int k = 1; k <= BernoulliCoefficients<T>::kMax; ++k) {
    up *= u2;
    std::complex<T> term = coef.c[k] * up;
    sum += term;
    if (std::abs(term) < std::numeric_limits<T>::epsilon() * std::abs(sum) * T(1e-2)) break;
  }
  return sum;
}

template <std::floating_point T>
std::complex<T> dilog_unit_disc(std::complex<T> z) {
  const T half = T(0.5);
  if (std::abs(z) <= half) return dilog_series(z);
  const std::complex<T> one_minus = std::complex<T>(1) - z;
  if (std::abs(one_minus) <= half) {
    return pi_squared<T> / 6 - principal_log(z) * principal_log(one_minus) -
           dilog_series(one_minus);
  }
  return dilog_bernoulli(z);
}

}  // namespace detail

// Principal branch of Li2. For real z > 1 the value is the limit from below
// the cut, i.e. Im Li2(x) = -pi log x.
template <std::floating_point T>
std::complex<T> dilog(std::complex<T> z) {
  if (!is_finite(z)) throw std::domain_error("dilog of non-finite value");
  if (z.imag() == T(0)) z = {z.real(), T(0)};
  if (z == std::complex<T>(0)) return 0;
  if (z == std::complex<T>(1)) return pi_squared<T> / 6;
  if (std::abs(z) > T(1)) {
    const std::complex<T> l = principal_log(-z);
    return -pi_squared<T> / 6 - l * l / T(2) - detail::dilog_unit_disc(std::complex<T>(1) / z);
  }
  return detail::dilog_unit_disc(z);
}

// Representative of x mod pi^2 in [0, pi^2).
inline double reduce_mod_pi2(double x) {
  const double p = pi_squared<double>;
  double r = std::fmod(x, p);
  if (r < 0) r += p;
  // rounding noise just below a multiple of pi^2 is zero, not pi^2
  if (r >= p - 1e-12 * std::max(1.0, std::abs(x))) r = 0;
  return r + 0.0;  // no -0
}

inline bool mod_pi2_equal(Complex a, Complex b, double tol) {
  if (std::abs(a.imag() - b.imag()) > tol) return false;
  const double p = pi_squared<double>;
  const double d = a.real() - b.real();
  return std::abs(d - p * std::round(d / p)) <= tol;
}

}  // namespace linkvol
