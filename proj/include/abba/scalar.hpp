#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <string>
#include <string_view>

namespace abba {

enum class Backend { exact, floating };

std::string_view to_string(Backend backend);

/// Complex number whose real and imaginary parts are arbitrary-precision
/// rationals. mpq_class keeps both parts in lowest terms with positive
/// denominator after every arithmetic operation.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}
  GaussianRational(long re) : re_(re) {}
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Exact conversion: every finite double is a dyadic rational.
  static GaussianRational from_complex(std::complex<double> z);

  /// Parses "p", "-p", "p/q" or "-p/q" into a rational.
  static mpq_class parse_rational(std::string_view text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// re^2 + im^2
  mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Human-readable form such as "3/2-i" or "-1/3i".
  std::string str() const;

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(mpq_class(-a.re_), mpq_class(-a.im_));
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using Exact = GaussianRational;
using Complex = std::complex<double>;

inline const GaussianRational kImaginaryUnit{0, 1};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::exact;
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::floating;
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline GaussianRational conj(const GaussianRational& z) {
  return GaussianRational(z.real(), mpq_class(-z.imag()));
}
inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

inline double magnitude(const GaussianRational& z) { return std::abs(z.to_complex()); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

inline std::complex<double> to_complex(const GaussianRational& z) { return z.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

template <Scalar T>
T from_complex(std::complex<double> z) {
  if constexpr (is_exact_v<T>) {
    return GaussianRational::from_complex(z);
  } else {
    return z;
  }
}

template <Scalar T>
T from_int(long re, long im = 0) {
  if constexpr (is_exact_v<T>) {
    return GaussianRational(mpq_class(re), mpq_class(im));
  } else {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
}

/// Formats a scalar for the matrix file format: exact parts as "p" or "p/q",
/// float parts as the shortest round-tripping decimal.
std::string format_part(const mpq_class& q);
std::string format_part(double x);

}  // namespace abba
