#pragma once

// Exact scalar fields: the rationals and the Gaussian rationals Q(i).

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace gcred {

using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on bad input.
Rational parse_rational(const std::string& text);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational conj(const Rational& x) { return x; }
inline bool is_real(const Rational&) { return true; }
inline Rational real_part(const Rational& x) { return x; }
std::string to_string(const Rational& x);

/// Element a + b i of Q(i). Values with b == 0 embed Q losslessly.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Gaussian(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

 private:
  Rational re_;
  Rational im_;
};

inline bool is_zero(const Gaussian& x) { return is_zero(x.re()) && is_zero(x.im()); }
inline Gaussian conj(const Gaussian& x) { return {x.re(), Rational(-x.im())}; }
inline bool is_real(const Gaussian& x) { return is_zero(x.im()); }
inline Rational real_part(const Gaussian& x) { return x.re(); }
std::string to_string(const Gaussian& x);

std::ostream& operator<<(std::ostream& os, const Gaussian& x);

}  // namespace gcred
