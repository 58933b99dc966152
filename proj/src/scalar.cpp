#include "abba/scalar.hpp"

#include <charconv>
#include <cmath>

#include "abba/errors.hpp"

namespace abba {

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "float";
}

GaussianRational GaussianRational::from_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParseError("cannot convert a non-finite value to an exact scalar");
  }
  return GaussianRational(mpq_class(z.real()), mpq_class(z.imag()));
}

mpq_class GaussianRational::parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  auto all_digits = [](std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  }
  mpq_class q;
  q.get_num() = mpz_class(std::string(num));
  q.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den));
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class d = o.norm();
  if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string out;
  if (sgn(re_) != 0) out = re_.get_str();
  const mpq_class abs_im = abs(im_);
  if (sgn(im_) < 0) {
    out += "-";
  } else if (!out.empty()) {
    out += "+";
  }
  if (abs_im != 1) out += abs_im.get_str();
  out += "i";
  return out;
}

std::string format_part(const mpq_class& q) { return q.get_str(); }

std::string format_part(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buf, end);
}

}  // namespace abba
