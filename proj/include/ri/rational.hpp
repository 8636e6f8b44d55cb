#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ri {

using int128 = __int128;

/// Exact rational number on 128-bit integers.
///
/// Always stored reduced with a positive denominator; every arithmetic
/// operation checks for overflow and throws std::overflow_error instead of
/// wrapping. The 128-bit range comfortably covers the combinatorics this
/// library needs (ground sizes up to 24, so factorials up to 24!).
class Rational {
  public:
    constexpr Rational() : num_(0), den_(1) {}
    template <std::integral I>
    constexpr Rational(I n) : num_(n), den_(1) {}
    Rational(int128 num, int128 den);

    /// Parses "p", "-p/q" or a plain decimal like "0.25".
    static Rational parse(const std::string& text);

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

  private:
    void reduce();

    int128 num_;
    int128 den_;
};

std::string int128_to_string(int128 v);

Rational rational_factorial(int n);
Rational rational_binomial(int n, int k);

/// B(a, n-a+1) = (a-1)!(n-a)!/n!, the equal-likelihood ordering weight.
/// Requires 1 <= a <= n <= 24.
Rational beta_exact(int a, int n);

} // namespace ri
