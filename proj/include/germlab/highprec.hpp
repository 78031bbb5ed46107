#ifndef GERMLAB_HIGHPREC_HPP
#define GERMLAB_HIGHPREC_HPP

#include <mpfr.h>

#include <string>
#include <vector>

#include "germlab/rational.hpp"

namespace germlab {

constexpr mpfr_prec_t kMinPrecision = 64;
constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Binary floating-point value with explicit precision (MPFR, round to
/// nearest).  Every value carries its own precision; binary operations
/// produce results at the wider of the two operand precisions.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = kMinPrecision) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(double d, mpfr_prec_t prec);
    static Real of(long n, mpfr_prec_t prec);
    static Real of(const Rational& q, mpfr_prec_t prec);
    /// Parses a decimal string ("0.05", "1e-4", "-2.5e3").
    static Real parse(const std::string& s, mpfr_prec_t prec);
    static Real pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Deterministic decimal rendering with the given number of significant
    /// digits, e.g. "1.234500000e-23"; "0" for zero.
    std::string str(int sig_digits) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) {
        return mpfr_greaterequal_p(a.v_, b.v_);
    }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

    friend Real abs(const Real& a);
    friend Real sqrt(const Real& a);
    friend Real exp(const Real& a);
    friend Real log(const Real& a);
    friend Real pow(const Real& a, const Real& b);
    friend Real atan2(const Real& y, const Real& x);
    friend Real hypot(const Real& x, const Real& y);
    friend Real cos(const Real& a);
    friend Real sin(const Real& a);
    /// Principal k-th root of a non-negative value.
    friend Real rootn(const Real& a, unsigned long k);

  private:
    mpfr_t v_;
};

/// Complex number over Real; the numeric substrate for orbit iteration,
/// director branches, and rescaling.
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = kMinPrecision) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex of(const RationalComplex& q, mpfr_prec_t prec) {
        return {Real::of(q.re, prec), Real::of(q.im, prec)};
    }
    static Complex of(double r, double i, mpfr_prec_t prec) {
        return {Real::of(r, prec), Real::of(i, prec)};
    }

    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    Real abs() const { return hypot(re, im); }
    /// Principal argument in (-pi, pi].
    Real arg() const { return atan2(im, re); }
    Complex conj() const { return {re, -im}; }

    Complex& operator+=(const Complex& o) {
        re = re + o.re;
        im = im + o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re = re - o.re;
        im = im - o.im;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    std::string str(int sig_digits) const;
};

Complex polar(const Real& mag, const Real& angle);
Complex pow_int(const Complex& a, long e);
/// All k-th roots of x (k values, principal first then counterclockwise).
std::vector<Complex> nth_roots(const Complex& x, unsigned long k);

}  // namespace germlab

#endif
