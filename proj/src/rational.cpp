#include "germlab/rational.hpp"

#include <cctype>
#include <ostream>

namespace germlab {

Rational::Rational(long num, unsigned long den) {
    if (den == 0) throw Error("rational: zero denominator");
    mpq_init(v_);
    mpq_set_si(v_, num, den);
    mpq_canonicalize(v_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("rational: division by zero");
    mpq_div(v_, v_, o.v_);
    return *this;
}

static bool valid_rational_chars(std::string_view s) {
    if (s.empty()) return false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    if (i == s.size()) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i == s.size();
}

Rational Rational::parse(std::string_view s) {
    if (!valid_rational_chars(s))
        throw Error("rational: malformed value '" + std::string(s) + "'");
    Rational r;
    std::string buf(s);
    if (buf[0] == '+') buf.erase(0, 1);
    if (mpq_set_str(r.v_, buf.c_str(), 10) != 0)
        throw Error("rational: malformed value '" + std::string(s) + "'");
    if (mpz_sgn(mpq_denref(r.v_)) == 0)
        throw Error("rational: zero denominator in '" + std::string(s) + "'");
    mpq_canonicalize(r.v_);
    return r;
}

std::string Rational::str() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

RationalComplex& RationalComplex::operator/=(const RationalComplex& o) {
    if (o.is_zero()) throw Error("complex rational: division by zero");
    Rational n2 = o.norm2();
    RationalComplex num = *this * o.conj();
    re = num.re / n2;
    im = num.im / n2;
    return *this;
}

RationalComplex RationalComplex::parse(std::string_view s) {
    if (s.empty()) throw Error("coefficient: empty string");
    if (s.back() != 'i') return RationalComplex(Rational::parse(s));
    std::string_view body = s.substr(0, s.size() - 1);
    // Signs occur only at the front of a <rat>, so the first interior +/-
    // separates the real part from the imaginary part.
    size_t sep = std::string_view::npos;
    for (size_t i = 1; i < body.size(); ++i) {
        if (body[i] == '+' || body[i] == '-') {
            sep = i;
            break;
        }
    }
    if (sep == std::string_view::npos) {
        if (body.empty() || body == "-" || body == "+") {
            Rational one(1);
            return {Rational(0), body == "-" ? -one : one};
        }
        return {Rational(0), Rational::parse(body)};
    }
    std::string_view re_part = body.substr(0, sep);
    std::string_view im_part = body.substr(sep);
    if (im_part.size() >= 1 && im_part[0] == '+') im_part.remove_prefix(1);
    if (im_part == "-") return {Rational::parse(re_part), Rational(-1)};
    return {Rational::parse(re_part), Rational::parse(im_part)};
}

std::string RationalComplex::str() const {
    if (im.is_zero()) return re.str();
    std::string imi = im.str() + "i";
    if (re.is_zero()) return imi;
    if (im.sgn() > 0) return re.str() + "+" + imi;
    return re.str() + imi;
}

std::ostream& operator<<(std::ostream& os, const RationalComplex& c) { return os << c.str(); }

}  // namespace germlab
