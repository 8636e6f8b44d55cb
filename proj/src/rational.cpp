#include "ri/rational.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace ri {

namespace {

int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow (add)");
    return r;
}

int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow (mul)");
    return r;
}

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(int128 num, int128 den) : num_(num), den_(den) {
    if (den_ == 0)
        throw std::domain_error("rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    int128 g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational& Rational::operator+=(const Rational& o) {
    // Knuth's gcd trick keeps intermediates small.
    int128 g = gcd128(den_, o.den_);
    int128 b1 = den_ / g;
    int128 d1 = o.den_ / g;
    num_ = checked_add(checked_mul(num_, d1), checked_mul(o.num_, b1));
    den_ = checked_mul(b1, o.den_);
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    int128 g1 = gcd128(num_, o.den_);
    int128 g2 = gcd128(o.num_, den_);
    num_ = checked_mul(num_ / g1, o.num_ / g2);
    den_ = checked_mul(den_ / g2, o.den_ / g1);
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0)
        throw std::domain_error("rational division by zero");
    return *this *= Rational(o.den_, o.num_);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

bool operator<(const Rational& a, const Rational& b) {
    // Denominators are positive, so cross-multiplication preserves order.
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

double Rational::to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
}

std::string int128_to_string(int128 v) {
    if (v == 0)
        return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg)
        digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

std::string Rational::str() const {
    if (den_ == 1)
        return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("cannot parse rational: '" + text + "'");
    };
    size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    auto read_digits = [&](int128& out) {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw bad();
        out = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out = checked_add(checked_mul(out, 10), text[i] - '0');
            ++i;
        }
    };
    int128 whole = 0;
    read_digits(whole);
    int128 num = whole;
    int128 den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        read_digits(den);
        if (den == 0)
            throw bad();
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            num = checked_add(checked_mul(num, 10), text[i] - '0');
            den = checked_mul(den, 10);
            ++i;
        }
    }
    skip_ws();
    if (i != text.size())
        throw bad();
    if (neg)
        num = -num;
    return Rational(num, den);
}

Rational rational_factorial(int n) {
    if (n < 0)
        throw std::invalid_argument("factorial of negative argument");
    int128 r = 1;
    for (int k = 2; k <= n; ++k)
        r = checked_mul(r, k);
    return Rational(r, 1);
}

Rational rational_binomial(int n, int k) {
    if (k < 0 || k > n)
        return Rational(0);
    int128 r = 1;
    for (int j = 1; j <= k; ++j) {
        r = checked_mul(r, n - k + j);
        r /= j;
    }
    return Rational(r, 1);
}

Rational beta_exact(int a, int n) {
    if (a < 1 || a > n || n > 24)
        throw std::invalid_argument("beta_exact requires 1 <= a <= n <= 24");
    return rational_factorial(a - 1) * rational_factorial(n - a) / rational_factorial(n);
}

} // namespace ri
