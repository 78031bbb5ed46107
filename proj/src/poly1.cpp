#include "germlab/poly1.hpp"

#include <sstream>

namespace germlab {

void Poly1::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly1 Poly1::constant(RationalComplex v) {
    Poly1 p;
    if (!v.is_zero()) p.c_.push_back(std::move(v));
    return p;
}

Poly1 Poly1::monomial(int deg, RationalComplex v) {
    Poly1 p;
    if (deg < 0) throw Error("poly: negative degree");
    if (!v.is_zero()) {
        p.c_.assign(static_cast<size_t>(deg) + 1, RationalComplex());
        p.c_.back() = std::move(v);
    }
    return p;
}

void Poly1::set_coeff(int i, RationalComplex v) {
    if (i < 0) throw Error("poly: negative degree");
    if (static_cast<size_t>(i) >= c_.size()) {
        if (v.is_zero()) return;
        c_.resize(static_cast<size_t>(i) + 1);
    }
    c_[static_cast<size_t>(i)] = std::move(v);
    trim();
}

std::optional<int> Poly1::vanishing_order() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return static_cast<int>(i);
    return std::nullopt;
}

Poly1& Poly1::operator+=(const Poly1& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly1& Poly1::operator-=(const Poly1& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly1 operator-(const Poly1& a) {
    Poly1 r = a;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return Poly1();
    Poly1 r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, RationalComplex());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly1 Poly1::scaled(const RationalComplex& s) const {
    if (s.is_zero()) return Poly1();
    Poly1 r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

Poly1 Poly1::mul_truncated(const Poly1& o, int n) const {
    Poly1 r;
    if (is_zero() || o.is_zero() || n < 0) return r;
    r.c_.assign(static_cast<size_t>(n) + 1, RationalComplex());
    for (size_t i = 0; i < c_.size() && static_cast<int>(i) <= n; ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size() && static_cast<int>(i + j) <= n; ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly1 Poly1::truncated(int n) const {
    Poly1 r = *this;
    if (n < 0) return Poly1();
    if (r.c_.size() > static_cast<size_t>(n) + 1) r.c_.resize(static_cast<size_t>(n) + 1);
    r.trim();
    return r;
}

Poly1 Poly1::shifted(int k) const {
    if (is_zero()) return Poly1();
    Poly1 r;
    if (k >= 0) {
        r.c_.assign(static_cast<size_t>(k), RationalComplex());
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    } else {
        size_t drop = static_cast<size_t>(-k);
        for (size_t i = 0; i < drop && i < c_.size(); ++i)
            if (!c_[i].is_zero()) throw Error("poly: inexact division by power of the variable");
        if (drop >= c_.size()) return Poly1();
        r.c_.assign(c_.begin() + static_cast<long>(drop), c_.end());
    }
    return r;
}

Poly1 Poly1::derivative() const {
    Poly1 r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * RationalComplex(static_cast<long>(i));
    r.trim();
    return r;
}

RationalComplex Poly1::eval(const RationalComplex& x) const {
    RationalComplex acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Complex Poly1::eval(const Complex& x) const {
    mpfr_prec_t p = x.prec();
    Complex acc(p);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + Complex::of(c_[i], p);
    return acc;
}

Poly1 Poly1::series_inverse(int n) const {
    if (is_zero() || c_[0].is_zero()) throw Error("poly: series inverse needs nonzero constant term");
    RationalComplex inv0 = RationalComplex(1) / c_[0];
    Poly1 r = Poly1::constant(inv0);
    // Newton iteration r <- r(2 - p r) doubles correct coefficients.
    int correct = 0;
    Poly1 two = Poly1::constant(RationalComplex(2));
    while (correct < n) {
        correct = correct * 2 + 1;
        int m = correct < n ? correct : n;
        Poly1 t = two - mul_truncated(r, m);
        r = r.mul_truncated(t, m);
    }
    return r.truncated(n);
}

Poly1 Poly1::compose_truncated(const Poly1& o, int n) const {
    if (!o.is_zero() && !o.c_[0].is_zero())
        throw Error("poly: composition requires zero constant term");
    Poly1 acc;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc.mul_truncated(o, n);
        acc += Poly1::constant(c_[i]);
    }
    return acc.truncated(n);
}

Poly1 Poly1::reverse_series(int n) const {
    if (is_zero() || !coeff(0).is_zero()) throw Error("series reversion requires h(0)=0");
    RationalComplex c1 = coeff(1);
    if (c1.is_zero()) throw Error("series reversion requires nonzero linear coefficient");
    // h = c1 z + hot;  solve H = (z - hot(H)) / c1 degree by degree.
    Poly1 hot = *this;
    hot.set_coeff(0, RationalComplex());
    hot.set_coeff(1, RationalComplex());
    Poly1 zp = Poly1::monomial(1, RationalComplex(1));
    RationalComplex c1inv = RationalComplex(1) / c1;
    Poly1 h = zp.scaled(c1inv);
    for (int it = 1; it < n; ++it)
        h = (zp - hot.compose_truncated(h, n)).scaled(c1inv).truncated(n);
    return h;
}

Poly1 Poly1::monic() const {
    if (is_zero()) return *this;
    return scaled(RationalComplex(1) / c_.back());
}

std::pair<Poly1, Poly1> Poly1::divrem(const Poly1& d) const {
    if (d.is_zero()) throw Error("poly: division by zero polynomial");
    Poly1 q, r = *this;
    RationalComplex lead = d.c_.back();
    int dd = d.degree();
    while (!r.is_zero() && r.degree() >= dd) {
        int k = r.degree() - dd;
        RationalComplex f = r.c_.back() / lead;
        q.set_coeff(k, f);
        r -= d.shifted(k).scaled(f);
    }
    return {q, r};
}

std::string Poly1::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[i].str() << ")";
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

Poly1 gcd(const Poly1& a, const Poly1& b) {
    Poly1 x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        Poly1 r = x.divrem(y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x;
}

std::vector<std::pair<Poly1, int>> squarefree_decomposition(const Poly1& p) {
    std::vector<std::pair<Poly1, int>> out;
    if (p.degree() < 1) return out;
    Poly1 f = p.monic();
    Poly1 df = f.derivative();
    Poly1 a0 = gcd(f, df);
    Poly1 w = f.divrem(a0).first;
    Poly1 y = df.divrem(a0).first;
    int i = 1;
    while (w.degree() > 0) {
        Poly1 z = y - w.derivative();
        Poly1 g = gcd(w, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        w = w.divrem(g).first;
        y = z.divrem(g).first;
        ++i;
    }
    return out;
}

RationalComplex residue_at_zero(const Poly1& num, const Poly1& den) {
    if (den.is_zero()) throw Error("residue: zero denominator");
    auto vo = den.vanishing_order();
    int n = vo.value();
    if (n == 0) {
        // Holomorphic at 0 unless num has a pole -- num is a polynomial, so 0.
        return RationalComplex();
    }
    Poly1 dhat = den.shifted(-n);  // dhat(0) != 0
    // Laurent coefficient of x^{-1}: coefficient of x^{n-1} in num/dhat.
    Poly1 series = num.mul_truncated(dhat.series_inverse(n - 1 >= 0 ? n - 1 : 0), n - 1);
    return series.coeff(n - 1);
}

}  // namespace germlab
