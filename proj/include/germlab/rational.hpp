#ifndef GERMLAB_RATIONAL_HPP
#define GERMLAB_RATIONAL_HPP

#include <gmp.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace germlab {

/// Error type used throughout the library for contract violations and
/// malformed input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational number (GMP mpq, always canonical:
/// gcd(num,den)=1 and den>0).
class Rational {
  public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(long num, unsigned long den);
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    /// Parses "a", "-a", or "a/b" with integer a and positive integer b.
    static Rational parse(std::string_view s);

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    int sgn() const { return mpq_sgn(v_); }
    double to_double() const { return mpq_get_d(v_); }
    std::string str() const;

    mpq_srcptr raw() const { return v_; }
    mpq_ptr raw() { return v_; }

    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.v_, a.v_);
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return mpq_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend Rational abs(const Rational& a) {
        Rational r;
        mpq_abs(r.v_, a.v_);
        return r;
    }

  private:
    mpq_t v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Exact complex number with rational real and imaginary parts -- the
/// coefficient field for all series algebra and classification.
struct RationalComplex {
    Rational re, im;

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(long n) : re(n) {}

    /// Parses the coefficient grammar: <rat>, <rat>i, or <rat>(+|-)<rat>i.
    static RationalComplex parse(std::string_view s);

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    RationalComplex conj() const { return {re, -im}; }
    /// |x|^2 = re^2 + im^2, exact.
    Rational norm2() const { return re * re + im * im; }

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    RationalComplex& operator*=(const RationalComplex& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    RationalComplex& operator/=(const RationalComplex& o);

    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) {
        return a += b;
    }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) {
        return a -= b;
    }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) {
        return a *= b;
    }
    friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) {
        return a /= b;
    }
    friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RationalComplex& a, const RationalComplex& b) {
        return !(a == b);
    }

    /// Canonical string in the input grammar ("3/4", "-2i", "1/2-1/3i", "0").
    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const RationalComplex& c);

}  // namespace germlab

#endif
