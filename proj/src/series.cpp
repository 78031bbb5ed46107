#include "germlab/series.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace germlab {

Series2::Series2(int trunc) : trunc_(trunc) {
    if (trunc < 1) throw Error("series: truncation must be >= 1");
}

Series2 Series2::constant(int trunc, RationalComplex v) {
    Series2 s(trunc);
    if (!v.is_zero()) s.c_[{0, 0}] = std::move(v);
    return s;
}

Series2 Series2::monomial(int trunc, int zp, int wp, RationalComplex v) {
    Series2 s(trunc);
    s.set_coeff(zp, wp, std::move(v));
    return s;
}

Series2 Series2::from_poly1(int trunc, const Poly1& p, int var) {
    Series2 s(trunc);
    for (int i = 0; i <= p.degree() && i <= trunc; ++i) {
        RationalComplex c = p.coeff(i);
        if (c.is_zero()) continue;
        if (var == 0)
            s.c_[{i, 0}] = std::move(c);
        else
            s.c_[{0, i}] = std::move(c);
    }
    return s;
}

RationalComplex Series2::coeff(int zp, int wp) const {
    auto it = c_.find({zp, wp});
    if (it == c_.end()) return RationalComplex();
    return it->second;
}

void Series2::set_coeff(int zp, int wp, RationalComplex v) {
    if (zp < 0 || wp < 0) throw Error("series: negative exponent");
    if (zp + wp > trunc_) {
        if (v.is_zero()) return;
        throw Error("series: monomial degree exceeds truncation");
    }
    if (v.is_zero())
        c_.erase({zp, wp});
    else
        c_[{zp, wp}] = std::move(v);
}

std::optional<int> Series2::order() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first.deg();
}

int Series2::max_degree() const {
    if (c_.empty()) return -1;
    return c_.rbegin()->first.deg();
}

Series2 Series2::truncated(int n) const {
    Series2 s(n);
    for (const auto& [m, v] : c_) {
        if (m.deg() > n) break;
        s.c_[m] = v;
    }
    return s;
}

Series2 Series2::homogeneous_part(int d) const {
    Series2 s(trunc_);
    for (auto it = c_.lower_bound({d, 0}); it != c_.end() && it->first.deg() == d; ++it)
        s.c_[it->first] = it->second;
    return s;
}

void Series2::check_same_trunc(const Series2& o) const {
    if (trunc_ != o.trunc_) throw Error("series: mismatched truncation");
}

Series2& Series2::operator+=(const Series2& o) {
    check_same_trunc(o);
    for (const auto& [m, v] : o.c_) {
        auto [it, inserted] = c_.try_emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Series2& Series2::operator-=(const Series2& o) {
    check_same_trunc(o);
    for (const auto& [m, v] : o.c_) {
        auto [it, inserted] = c_.try_emplace(m, -v);
        if (!inserted) {
            it->second -= v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Series2 operator-(const Series2& a) {
    Series2 r(a.trunc_);
    for (const auto& [m, v] : a.c_) r.c_[m] = -v;
    return r;
}

Series2 operator*(const Series2& a, const Series2& b) {
    a.check_same_trunc(b);
    Series2 r(a.trunc_);
    for (const auto& [ma, va] : a.c_) {
        int room = a.trunc_ - ma.deg();
        for (const auto& [mb, vb] : b.c_) {
            if (mb.deg() > room) break;
            Mono m{ma.zp + mb.zp, ma.wp + mb.wp};
            auto [it, inserted] = r.c_.try_emplace(m, va * vb);
            if (!inserted) {
                it->second += va * vb;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

Series2 Series2::scaled(const RationalComplex& s) const {
    Series2 r(trunc_);
    if (s.is_zero()) return r;
    for (const auto& [m, v] : c_) r.c_[m] = v * s;
    return r;
}

Series2 Series2::derivative_z() const {
    Series2 r(trunc_);
    for (const auto& [m, v] : c_)
        if (m.zp >= 1) r.c_[{m.zp - 1, m.wp}] = v * RationalComplex(m.zp);
    return r;
}

Series2 Series2::derivative_w() const {
    Series2 r(trunc_);
    for (const auto& [m, v] : c_)
        if (m.wp >= 1) r.c_[{m.zp, m.wp - 1}] = v * RationalComplex(m.wp);
    return r;
}

Series2 Series2::shifted(int dz, int dw) const {
    Series2 r(trunc_);
    for (const auto& [m, v] : c_) {
        int zp = m.zp + dz, wp = m.wp + dw;
        if (zp < 0 || wp < 0) throw Error("series: inexact monomial division");
        if (zp + wp > trunc_) throw Error("series: shift exceeds truncation");
        r.c_[{zp, wp}] = v;
    }
    return r;
}

Poly1 Series2::substitute_z1() const {
    Poly1 p;
    for (const auto& [m, v] : c_) p.set_coeff(m.wp, p.coeff(m.wp) + v);
    return p;
}

Poly1 Series2::z_axis_part() const {
    Poly1 p;
    for (const auto& [m, v] : c_)
        if (m.wp == 0) p.set_coeff(m.zp, v);
    return p;
}

Poly1 Series2::w_linear_part() const {
    Poly1 p;
    for (const auto& [m, v] : c_)
        if (m.wp == 1) p.set_coeff(m.zp, v);
    return p;
}

Complex Series2::eval(const Complex& z, const Complex& w) const {
    mpfr_prec_t p = std::max(z.prec(), w.prec());
    int mz = 0, mw = 0;
    for (const auto& [m, v] : c_) {
        mz = std::max(mz, m.zp);
        mw = std::max(mw, m.wp);
    }
    std::vector<Complex> zp, wp;
    zp.reserve(mz + 1);
    wp.reserve(mw + 1);
    zp.push_back(Complex::of(1.0, 0.0, p));
    for (int i = 1; i <= mz; ++i) zp.push_back(zp.back() * z);
    wp.push_back(Complex::of(1.0, 0.0, p));
    for (int j = 1; j <= mw; ++j) wp.push_back(wp.back() * w);
    Complex acc(p);
    for (const auto& [m, v] : c_) acc += Complex::of(v, p) * zp[m.zp] * wp[m.wp];
    return acc;
}

std::string Series2::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, v] : c_) {
        if (!first) os << " + ";
        os << "(" << v.str() << ")";
        if (m.zp) os << "*z" << (m.zp > 1 ? "^" + std::to_string(m.zp) : "");
        if (m.wp) os << "*w" << (m.wp > 1 ? "^" + std::to_string(m.wp) : "");
        first = false;
    }
    return os.str();
}

Map2::Map2(Series2 x, Series2 y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.trunc() != y_.trunc()) throw Error("map: components must share truncation");
}

Map2 Map2::identity(int trunc) {
    return Map2(Series2::monomial(trunc, 1, 0, RationalComplex(1)),
                Series2::monomial(trunc, 0, 1, RationalComplex(1)));
}

Map2 Map2::zero(int trunc) { return Map2(Series2(trunc), Series2(trunc)); }

bool Map2::has_zero_constant_term() const {
    return x_.coeff(0, 0).is_zero() && y_.coeff(0, 0).is_zero();
}

std::array<std::array<RationalComplex, 2>, 2> Map2::linear_part() const {
    return {{{x_.coeff(1, 0), x_.coeff(0, 1)}, {y_.coeff(1, 0), y_.coeff(0, 1)}}};
}

bool Map2::is_tangent_to_identity() const {
    if (!has_zero_constant_term()) return false;
    auto L = linear_part();
    return L[0][0] == RationalComplex(1) && L[0][1].is_zero() && L[1][0].is_zero() &&
           L[1][1] == RationalComplex(1);
}

Map2 Map2::truncated(int n) const { return Map2(x_.truncated(n), y_.truncated(n)); }

std::pair<Series2, Series2> Map2::homogeneous_part(int d) const {
    return {x_.homogeneous_part(d), y_.homogeneous_part(d)};
}

Map2 operator+(const Map2& a, const Map2& b) {
    return Map2(a.x_ + b.x_, a.y_ + b.y_);
}

Map2 operator-(const Map2& a, const Map2& b) {
    return Map2(a.x_ - b.x_, a.y_ - b.y_);
}

std::pair<Complex, Complex> Map2::eval(const Complex& z, const Complex& w) const {
    return {x_.eval(z, w), y_.eval(z, w)};
}

Series2 compose(const Series2& f, const Series2& g1, const Series2& g2) {
    if (f.trunc() != g1.trunc() || f.trunc() != g2.trunc())
        throw Error("compose: mismatched truncation");
    if (!g1.coeff(0, 0).is_zero() || !g2.coeff(0, 0).is_zero())
        throw Error("compose: inner map must have zero constant term");
    int n = f.trunc();
    // f(z,w) = sum_j w^j f_j(z); Horner in g2 with univariate Horner in g1.
    int max_wp = 0;
    for (const auto& [m, v] : f.terms()) max_wp = std::max(max_wp, m.wp);
    std::vector<Poly1> rows(static_cast<size_t>(max_wp) + 1);
    for (const auto& [m, v] : f.terms()) rows[static_cast<size_t>(m.wp)].set_coeff(m.zp, v);

    auto eval_row = [&](const Poly1& row) {
        Series2 acc(n);
        for (int i = row.degree(); i >= 0; --i) {
            acc = acc * g1;
            RationalComplex c = row.coeff(i);
            if (!c.is_zero()) acc += Series2::constant(n, c);
        }
        return acc;
    };

    Series2 acc(n);
    for (int j = max_wp; j >= 0; --j) {
        acc = acc * g2;
        if (!rows[static_cast<size_t>(j)].is_zero()) acc += eval_row(rows[static_cast<size_t>(j)]);
    }
    return acc;
}

Map2 compose(const Map2& f, const Map2& g) {
    return Map2(compose(f.first(), g.first(), g.second()),
                compose(f.second(), g.first(), g.second()));
}

Map2 invert_tangent_to_identity(const Map2& f) {
    if (!f.is_tangent_to_identity())
        throw Error("invert: map is not tangent to the identity");
    int n = f.trunc();
    Map2 id = Map2::identity(n);
    Map2 a = f - id;  // order tau >= 2
    auto ord_x = a.first().order();
    auto ord_y = a.second().order();
    int tau = n + 1;
    if (ord_x) tau = std::min(tau, *ord_x);
    if (ord_y) tau = std::min(tau, *ord_y);
    if (tau > n) return id;  // f == Id through truncation

    // Fixed point B <- -A o (Id + B); each pass fixes tau-1 more degrees, so
    // run early passes at reduced truncation.
    Map2 b = Map2::zero(n);
    int correct = tau - 1;
    while (correct < n) {
        int work = std::min(n, correct + tau - 1);
        Map2 gw = (id + b).truncated(work);
        Map2 aw = a.truncated(work);
        Map2 comp = compose(aw, gw);
        b = Map2(-comp.first(), -comp.second()).truncated(n);
        correct = work;
    }
    return id + b;
}

static std::array<std::array<RationalComplex, 2>, 2> invert_linear(
    const std::array<std::array<RationalComplex, 2>, 2>& L) {
    RationalComplex det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
    if (det.is_zero()) throw Error("linear map is not invertible");
    return {{{L[1][1] / det, -L[0][1] / det}, {-L[1][0] / det, L[0][0] / det}}};
}

static Map2 linear_map(int trunc, const std::array<std::array<RationalComplex, 2>, 2>& L) {
    Series2 x(trunc), y(trunc);
    x.set_coeff(1, 0, L[0][0]);
    x.set_coeff(0, 1, L[0][1]);
    y.set_coeff(1, 0, L[1][0]);
    y.set_coeff(0, 1, L[1][1]);
    return Map2(x, y);
}

Map2 invert_map(const Map2& f) {
    if (!f.has_zero_constant_term()) throw Error("invert: map must fix the origin");
    auto L = f.linear_part();
    auto Linv = invert_linear(L);
    Map2 linv = linear_map(f.trunc(), Linv);
    Map2 g = compose(linv, f);  // tangent to identity
    return compose(invert_tangent_to_identity(g), linv);
}

Map2 conjugate_by_linear(const Map2& f,
                         const std::array<std::array<RationalComplex, 2>, 2>& L) {
    Map2 l = linear_map(f.trunc(), L);
    Map2 linv = linear_map(f.trunc(), invert_linear(L));
    return compose(linv, compose(f, l));
}

}  // namespace germlab
