#include "germlab/highprec.hpp"

#include <cstring>

namespace germlab {

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real Real::of(double d, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

Real Real::of(long n, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
}

Real Real::of(const Rational& q, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.v_, q.raw(), MPFR_RNDN);
    return r;
}

Real Real::parse(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    char* end = nullptr;
    if (s.empty() || mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN) > 1 ||
        end != s.c_str() + s.size())
        throw Error("malformed decimal value '" + s + "'");
    return r;
}

Real Real::pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int sig_digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig_digits), v_, MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    // mpfr_get_str: value = 0.digits * 10^e; render as d.ddd...e<k>.
    std::string out = sign + digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

static mpfr_prec_t joint(const Real& a, const Real& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
}

Real operator+(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real pow(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
Real atan2(const Real& y, const Real& x) {
    Real r(joint(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
}
Real hypot(const Real& x, const Real& y) {
    Real r(joint(x, y));
    mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
}
Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
}
Real rootn(const Real& a, unsigned long k) {
    Real r(a.prec());
    mpfr_rootn_ui(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

Complex operator*(const Complex& a, const Complex& b) {
    mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
    Complex r(p);
    mpfr_fmms(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    return r;
}

Complex operator/(const Complex& a, const Complex& b) {
    if (b.is_zero()) throw Error("complex division by zero");
    mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
    Real n2(p);
    mpfr_fmma(n2.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    Complex num = a * b.conj();
    return {num.re / n2, num.im / n2};
}

std::string Complex::str(int sig_digits) const {
    std::string r = re.str(sig_digits);
    std::string i = im.str(sig_digits);
    if (i[0] == '-') return r + i + "i";
    return r + "+" + i + "i";
}

Complex polar(const Real& mag, const Real& angle) {
    return {mag * cos(angle), mag * sin(angle)};
}

Complex pow_int(const Complex& a, long e) {
    mpfr_prec_t p = a.prec();
    if (e == 0) return Complex::of(1.0, 0.0, p);
    Complex base = e > 0 ? a : Complex::of(1.0, 0.0, p) / a;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Complex acc = Complex::of(1.0, 0.0, p);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::vector<Complex> nth_roots(const Complex& x, unsigned long k) {
    mpfr_prec_t p = x.prec();
    if (k == 0) throw Error("nth_roots: k must be positive");
    if (x.is_zero()) return {Complex(p)};
    Real mag = rootn(x.abs(), k);
    Real theta = x.arg();
    Real twopi = Real::of(2L, p) * Real::pi(p);
    std::vector<Complex> out;
    out.reserve(k);
    for (unsigned long j = 0; j < k; ++j) {
        Real ang = (theta + Real::of(static_cast<long>(j), p) * twopi) / Real::of(static_cast<long>(k), p);
        out.push_back(polar(mag, ang));
    }
    return out;
}

}  // namespace germlab
