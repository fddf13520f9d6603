#include "gcred/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace gcred {

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  std::size_t pos = 0;
  auto digits = [&](std::string& out) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    out = text.substr(start, pos - start);
    return !out.empty();
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string num;
  std::string den = "1";
  if (!digits(num)) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!digits(den)) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
  }
  if (pos != text.size()) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  mpz_class n(num);
  mpz_class d(den);
  if (d == 0) {
    throw std::invalid_argument("rational with zero denominator '" + text + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  if (negative) {
    r = -r;
  }
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(norm) == 0) {
    throw std::domain_error("division by zero in Q(i)");
  }
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = re;
  im_ = im;
  return *this;
}

std::string to_string(const Gaussian& x) {
  if (is_zero(x.im())) {
    return to_string(x.re());
  }
  std::string imag;
  if (x.im() == 1) {
    imag = "i";
  } else if (x.im() == -1) {
    imag = "-i";
  } else {
    imag = to_string(x.im()) + "i";
  }
  if (is_zero(x.re())) {
    return imag;
  }
  std::string out = to_string(x.re());
  if (imag.front() != '-') {
    out += '+';
  }
  return out + imag;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << to_string(x); }

}  // namespace gcred
