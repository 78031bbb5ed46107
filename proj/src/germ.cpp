#include "germlab/germ.hpp"

#include <algorithm>

namespace germlab {

Germ Germ::from_map(Map2 map, bool full_polynomial) {
    if (!map.is_tangent_to_identity())
        throw Error("germ: map is not tangent to the identity");
    int order = germ_order(map);
    return Germ(std::move(map), order, full_polynomial);
}

int germ_order(const Map2& map) {
    Map2 diff = map - Map2::identity(map.trunc());
    auto ox = diff.first().order();
    auto oy = diff.second().order();
    if (!ox && !oy) throw Error("germ: order undefined at this truncation (map equals Id)");
    int o = map.trunc() + 1;
    if (ox) o = std::min(o, *ox);
    if (oy) o = std::min(o, *oy);
    return o;
}

Direction Direction::of(RationalComplex a, RationalComplex b) {
    if (a.is_zero() && b.is_zero()) throw Error("direction: [0:0] is not projective");
    Direction d;
    if (!a.is_zero()) {
        d.a = RationalComplex(1);
        d.b = b / a;
    } else {
        d.a = RationalComplex();
        d.b = RationalComplex(1);
    }
    return d;
}

Direction Direction::parse(std::string_view s) {
    size_t colon = s.find(':');
    if (colon == std::string_view::npos)
        throw Error("direction: expected 'a:b', got '" + std::string(s) + "'");
    return of(RationalComplex::parse(s.substr(0, colon)),
              RationalComplex::parse(s.substr(colon + 1)));
}

std::string Direction::str() const { return a.str() + ":" + b.str(); }

std::string order_str(const OrderVal& v) {
    return v ? std::to_string(*v) : std::string("inf");
}

std::string dir_type_str(DirType t) {
    switch (t) {
        case DirType::Fuchsian: return "fuchsian";
        case DirType::Irregular: return "irregular";
        case DirType::Apparent: return "apparent";
        case DirType::DicriticalOrigin: return "dicritical-origin";
    }
    return "?";
}

std::optional<bool> DegreeS::greater_than(int x) const {
    switch (kind) {
        case Kind::Exact: return value > x;
        case Kind::Infinite: return true;
        case Kind::AtLeastTrunc:
            if (value > x) return true;  // s >= N > x
            return std::nullopt;
    }
    return std::nullopt;
}

bool DegreeS::consistent_with(const DegreeS& o) const {
    if (kind == Kind::Exact && o.kind == Kind::Exact) return value == o.value;
    // A flagged value (>= N or infinite) is consistent with any value that
    // does not contradict the bound.
    auto lower = [](const DegreeS& d) { return d.kind == Kind::AtLeastTrunc ? d.value : 0; };
    if (kind == Kind::Exact) return value >= lower(o) && o.kind == Kind::AtLeastTrunc;
    if (o.kind == Kind::Exact) return o.value >= lower(*this) && kind == Kind::AtLeastTrunc;
    return true;
}

std::string DegreeS::str() const {
    switch (kind) {
        case Kind::Exact: return std::to_string(value);
        case Kind::Infinite: return "inf";
        case Kind::AtLeastTrunc: return ">=" + std::to_string(value);
    }
    return "?";
}

std::string attracting_str(Attracting a) {
    switch (a) {
        case Attracting::Yes: return "yes";
        case Attracting::No: return "no";
        case Attracting::Undetermined: return "undetermined";
    }
    return "?";
}

std::string Verdict::str() const {
    switch (status) {
        case Status::Applies: return "applies";
        case Status::Fails: return "fails";
        case Status::TruncationLimited: return "truncation-limited";
    }
    return "?";
}

Series2 r_poly(const Germ& f, int j) {
    int n = f.trunc();
    if (j < f.order() || j > n) throw Error("r_poly: degree out of range");
    auto [pj, qj] = f.map().homogeneous_part(j);
    if (j + 1 > n) {
        // r_j has degree j+1; widen the carrier just enough.
        pj = pj.truncated(j + 1);
        qj = qj.truncated(j + 1);
    }
    Series2 z = Series2::monomial(pj.trunc(), 1, 0, RationalComplex(1));
    Series2 w = Series2::monomial(pj.trunc(), 0, 1, RationalComplex(1));
    return z * qj - w * pj;
}

CharDirections char_directions(const Germ& f, int j, mpfr_prec_t prec) {
    Series2 rj = r_poly(f, j);
    CharDirections out;
    if (rj.is_zero()) {
        out.dicritical = true;
        return out;
    }
    Poly1 ru = rj.substitute_z1();
    for (const PolyRoot& root : find_roots(ru, prec)) {
        CharDirection d;
        d.exact = root.exact;
        d.approx_u = root.approx;
        d.residual = root.residual;
        d.multiplicity = root.multiplicity;
        if (root.exact) d.dir = Direction::of(RationalComplex(1), root.exact_value);
        out.list.push_back(std::move(d));
    }
    // [0:1] is characteristic iff the w^{j+1} coefficient of r_j vanishes,
    // i.e. deg r_j(1,u) < j+1; the degree drop is its multiplicity.
    int drop = (j + 1) - ru.degree();
    if (drop > 0) {
        CharDirection d;
        d.exact = true;
        d.dir = Direction::e2();
        d.at_infinity = true;
        d.multiplicity = drop;
        d.approx_u = Complex(prec);
        d.residual = Real(prec);
        out.list.push_back(std::move(d));
    }
    return out;
}

VanishingOrders vanishing_orders(const Germ& f, int j) {
    int n = f.trunc();
    if (j < f.order() || j > n) throw Error("vanishing_orders: degree out of range");
    auto [pj, qj] = f.map().homogeneous_part(j);
    VanishingOrders v;
    v.degree = j;
    v.m = pj.substitute_z1().vanishing_order();
    v.l = qj.substitute_z1().vanishing_order();
    v.n = r_poly(f, j).substitute_z1().vanishing_order();
    return v;
}

DirType classify_type(const Germ& f) {
    VanishingOrders v = vanishing_orders(f, f.order());
    if (!v.n.has_value()) return DirType::DicriticalOrigin;
    if (*v.n == 0) throw Error("classify_type: [1:0] is not a characteristic direction");
    if (!v.m.has_value()) return DirType::Apparent;  // 1+m = inf > n > 0
    if (1 + *v.m == *v.n) return DirType::Fuchsian;
    if (1 + *v.m < *v.n) return DirType::Irregular;
    return DirType::Apparent;
}

DegreeS degree_s(const Germ& f) {
    int n = f.trunc();
    for (int j = f.order(); j <= n; ++j) {
        VanishingOrders v = vanishing_orders(f, j);
        if (!order_ge(v.n, 1)) return DegreeS::exact(j - 1);
    }
    if (f.full_polynomial()) return DegreeS::infinite();
    return DegreeS::at_least(n);
}

std::pair<std::optional<int>, bool> degree_r(const Germ& f) {
    int n = f.trunc();
    VanishingOrders lead = vanishing_orders(f, f.order());
    if (order_ge(lead.m, 1) == false || (lead.m && *lead.m == 0))
        throw Error("degree_r: [1:0] is non-degenerate at the leading degree");
    for (int j = f.order(); j <= n; ++j) {
        VanishingOrders v = vanishing_orders(f, j);
        if (v.m && *v.m == 0) return {j - 1, true};
    }
    return {std::nullopt, f.full_polynomial()};
}

std::pair<std::optional<int>, bool> degree_t(const Germ& f) {
    int n = f.trunc();
    for (int j = f.order(); j <= n; ++j) {
        VanishingOrders v = vanishing_orders(f, j);
        if (v.l && *v.l == 1) return {j - 1, true};
        if (v.l && *v.l == 0) return {std::nullopt, true};
    }
    return {std::nullopt, f.full_polynomial()};
}

RationalComplex abate_index(const Germ& f) {
    int k1 = f.order();
    auto [pj, qj] = f.map().homogeneous_part(k1);
    Poly1 num = pj.substitute_z1();
    Poly1 den = r_poly(f, k1).substitute_z1();
    if (den.is_zero()) throw Error("abate_index: origin is dicritical");
    return residue_at_zero(num, den);
}

namespace {

// Orders director candidates: maximal Re, then maximal Im, then smallest
// |arg a1| with nonnegative arguments preferred.
struct Candidate {
    Complex a1;
    Complex delta;
};

bool better(const Candidate& x, const Candidate& y) {
    if (x.delta.re > y.delta.re) return true;
    if (x.delta.re < y.delta.re) return false;
    if (x.delta.im > y.delta.im) return true;
    if (x.delta.im < y.delta.im) return false;
    Real ax = abs(x.a1.arg()), ay = abs(y.a1.arg());
    if (ax < ay) return true;
    if (ax > ay) return false;
    return x.a1.arg() > y.a1.arg();
}

}  // namespace

DirectorInfo director(int k, int t, int r, const RationalComplex& a, const RationalComplex& b,
                      mpfr_prec_t prec) {
    if (a.is_zero() || b.is_zero()) throw Error("director: requires a = R(0) != 0 and b = T(0) != 0");
    if (!(k <= t && t <= r && k < r)) throw Error("director: requires k <= t <= r and k < r");
    DirectorInfo info;
    // a1 ranges over the r-th roots of -1/(r a).
    RationalComplex target = RationalComplex(-1) / (RationalComplex(r) * a);
    std::vector<Complex> roots = nth_roots(Complex::of(target, prec), static_cast<unsigned long>(r));
    Complex bb = Complex::of(b, prec);

    if (t == r) {
        // Single-valued: Delta = (b/a - (r-k+1)) / r, exact.
        info.exact = true;
        info.exact_value = (b / a - RationalComplex(r - k + 1)) / RationalComplex(r);
        info.value = Complex::of(info.exact_value, prec);
        info.branches = {info.value};
        Candidate best{roots[0], info.value};
        for (const Complex& a1 : roots) {
            Candidate c{a1, info.value};
            if (better(c, best)) best = c;
        }
        info.a1 = best.a1;
        return info;
    }

    std::vector<Candidate> cands;
    for (const Complex& a1 : roots) cands.push_back({a1, -(bb * pow_int(a1, t))});
    Candidate best = cands[0];
    for (const Candidate& c : cands)
        if (better(c, best)) best = c;
    info.value = best.delta;
    info.a1 = best.a1;
    // Distinct branch values (r/gcd(r,t) of them), most attracting first.
    std::sort(cands.begin(), cands.end(), better);
    Real tol(prec);
    mpfr_set_ui_2exp(tol.raw(), 1, -(prec / 2), MPFR_RNDN);
    Real scale = best.delta.abs() + Real::of(1L, prec);
    for (const Candidate& c : cands) {
        bool dup = false;
        for (const Complex& seen : info.branches)
            if ((c.delta - seen).abs() < tol * scale) dup = true;
        if (!dup) info.branches.push_back(c.delta);
    }
    return info;
}

RationalComplex director_nondegenerate(const Germ& f) {
    int k1 = f.order();
    Poly1 p = f.map().homogeneous_part(k1).first.substitute_z1();
    Poly1 rp = r_poly(f, k1).substitute_z1().derivative();
    RationalComplex p0 = p.coeff(0);
    if (p0.is_zero()) throw Error("director: direction is degenerate");
    return rp.coeff(0) / (RationalComplex(f.k()) * p0);
}

DirectionReport classify(const Germ& f, mpfr_prec_t prec) {
    DirectionReport rep;
    rep.direction = Direction::e1();
    rep.k = f.k();
    int n = f.trunc();
    for (int j = f.order(); j <= n; ++j) rep.orders.push_back(vanishing_orders(f, j));
    rep.leading_directions = char_directions(f, f.order(), prec);
    rep.type = classify_type(f);

    const VanishingOrders& lead = rep.orders.front();
    bool nondegenerate = lead.m && *lead.m == 0;

    rep.s = degree_s(f);
    if (nondegenerate) {
        // Classical setting: Def 1.9 director; Theorem A needs k < r.
        rep.r_definitely_absent = true;
        DirectorInfo d;
        d.exact = true;
        d.exact_value = director_nondegenerate(f);
        d.value = Complex::of(d.exact_value, prec);
        d.branches = {d.value};
        d.a1 = Complex::of(1.0, 0.0, prec);
        rep.director = d;
        rep.transversally_attracting =
            d.exact_value.re.sgn() > 0 ? Attracting::Yes : Attracting::No;
        if (rep.type != DirType::DicriticalOrigin) rep.abate_index = abate_index(f);
        rep.verdict = {Verdict::Status::Fails,
                       "condition (2): no r with k<r ([1:0] is non-degenerate at degree k+1)"};
        return rep;
    }

    auto [r, r_def] = degree_r(f);
    auto [t, t_def] = degree_t(f);
    rep.r = r;
    rep.t = t;
    rep.r_definitely_absent = !r && r_def;
    rep.t_definitely_absent = !t && t_def;
    if (rep.type != DirType::DicriticalOrigin) rep.abate_index = abate_index(f);

    if (r) rep.a_coeff = f.map().first().coeff(*r + 1, 0);
    if (t) rep.b_coeff = f.map().second().coeff(*t, 1);

    if (r && t && *t <= *r && f.k() < *r) {
        rep.director = director(f.k(), *t, *r, rep.a_coeff, rep.b_coeff, prec);
        bool attracting;
        if (rep.director->exact)
            attracting = rep.director->exact_value.re.sgn() > 0;
        else
            attracting = rep.director->value.re.sgn() > 0;
        rep.transversally_attracting = attracting ? Attracting::Yes : Attracting::No;
    }

    // Theorem A verdict, naming the first violated condition.
    auto fails = [&](const std::string& why) {
        rep.verdict = {Verdict::Status::Fails, why};
    };
    if (!r) {
        if (r_def)
            fails("condition (2): no r (no level is non-degenerate at [1:0])");
        else
            rep.verdict = {Verdict::Status::TruncationLimited,
                           "condition (2): r not found through truncation N=" + std::to_string(n)};
        return rep;
    }
    auto s_gt_r = rep.s.greater_than(*r);
    if (!s_gt_r.has_value()) {
        rep.verdict = {Verdict::Status::TruncationLimited,
                       "condition (1): s > r undecided at truncation N=" + std::to_string(n)};
        return rep;
    }
    if (!*s_gt_r) {
        fails("condition (1): s = " + rep.s.str() + " <= r = " + std::to_string(*r));
        return rep;
    }
    if (!t) {
        fails("condition (3): no t with l_{t+1} = 1 and t <= r");
        return rep;
    }
    if (*t > *r) {
        fails("condition (3): t = " + std::to_string(*t) + " > r = " + std::to_string(*r));
        return rep;
    }
    if (rep.transversally_attracting != Attracting::Yes) {
        fails("condition (4): not transversally attracting (Re Delta <= 0)");
        return rep;
    }
    int bound = *r + *t - f.k();
    auto s_gt = rep.s.greater_than(bound);
    if (!s_gt.has_value()) {
        rep.verdict = {Verdict::Status::TruncationLimited,
                       "condition (5): s > r+t-k undecided at truncation N=" + std::to_string(n)};
        return rep;
    }
    if (!*s_gt) {
        fails("condition (5): s = " + rep.s.str() +
              " <= r+t-k = " + std::to_string(bound));
        return rep;
    }
    rep.verdict = {Verdict::Status::Applies, ""};
    return rep;
}

}  // namespace germlab
