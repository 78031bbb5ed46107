#include "germlab/normalform.hpp"

#include <algorithm>

namespace germlab {

NumericMap2 NumericMap2::from_exact(const Map2& m, mpfr_prec_t prec) {
    NumericMap2 out;
    out.prec = prec;
    for (const auto& [mono, v] : m.first().terms())
        out.fx.push_back({mono.zp, mono.wp, Complex::of(v, prec)});
    for (const auto& [mono, v] : m.second().terms())
        out.fy.push_back({mono.zp, mono.wp, Complex::of(v, prec)});
    out.finalize();
    return out;
}

void NumericMap2::finalize() {
    auto scrub = [](std::vector<NumericTerm>& ts) {
        std::erase_if(ts, [](const NumericTerm& t) { return t.c.is_zero(); });
    };
    scrub(fx);
    scrub(fy);
    max_zp = max_wp = 0;
    for (const auto* side : {&fx, &fy})
        for (const NumericTerm& t : *side) {
            max_zp = std::max(max_zp, t.zp);
            max_wp = std::max(max_wp, t.wp);
        }
}

std::pair<Complex, Complex> NumericMap2::eval(const Complex& z, const Complex& w) const {
    std::vector<Complex> zp, wp;
    zp.push_back(Complex::of(1.0, 0.0, prec));
    for (int i = 1; i <= max_zp; ++i) zp.push_back(zp.back() * z);
    wp.push_back(Complex::of(1.0, 0.0, prec));
    for (int j = 1; j <= max_wp; ++j) wp.push_back(wp.back() * w);
    auto accum = [&](const std::vector<NumericTerm>& ts) {
        Complex acc(prec);
        for (const NumericTerm& t : ts) acc += t.c * zp[static_cast<size_t>(t.zp)] * wp[static_cast<size_t>(t.wp)];
        return acc;
    };
    return {accum(fx), accum(fy)};
}

Germ move_to_e1(const Germ& f, const Direction& v) {
    if (v.is_e1()) return f;
    std::array<std::array<RationalComplex, 2>, 2> L;
    if (v.a.is_zero()) {
        // [0:1]: swap coordinates.
        L = {{{RationalComplex(), RationalComplex(1)}, {RationalComplex(1), RationalComplex()}}};
    } else {
        // [1:u0]: L(z,w) = (z, u0 z + w) sends e1 to (1,u0).
        L = {{{RationalComplex(1), RationalComplex()}, {v.b, RationalComplex(1)}}};
    }
    return Germ::from_map(conjugate_by_linear(f.map(), L), f.full_polynomial());
}

NormalFormData decompose(const Germ& f, int k, int t, int r, const DegreeS& s) {
    int n = f.trunc();
    if (k != f.k()) throw Error("decompose: inconsistent order k");
    if (!(k <= t && t <= r && k < r))
        throw Error("decompose: requires k <= t <= r and k < r (missing degree t or r)");
    auto s_ok = s.greater_than(r);
    if (!s_ok.has_value() || !*s_ok)
        throw Error("decompose: requires s > r (characteristic degree too small)");

    const Series2& f1 = f.map().first();
    const Series2& f2 = f.map().second();
    NormalFormData nf;
    nf.U = Series2(n);
    nf.V = Series2(n);

    // First coordinate: z-only part must be z + sum_{i>=r+1} a_i z^i.
    Poly1 zax = f1.z_axis_part();
    for (int i = 2; i <= r && i <= n; ++i)
        if (!zax.coeff(i).is_zero())
            throw Error("decompose: unexpected z^" + std::to_string(i) +
                        " term in the first coordinate (m_" + std::to_string(i) + " = 0 below r+1)");
    for (int i = r + 1; i <= n; ++i) nf.R.set_coeff(i - r - 1, zax.coeff(i));
    nf.a = nf.R.coeff(0);
    if (nf.a.is_zero()) throw Error("decompose: R(0) = 0, degree r+1 is degenerate");
    Series2 diag = Series2::from_poly1(n, zax, 0);
    nf.U = (f1 - diag).shifted(0, -1);

    // Second coordinate: w-linear part 1 + z^t T(z), z-only part z^{s+1} S(z),
    // everything with two or more powers of w is w^2 V.
    Poly1 wlin = f2.w_linear_part();
    for (int i = 1; i < t; ++i)
        if (!wlin.coeff(i).is_zero())
            throw Error("decompose: unexpected z^" + std::to_string(i) +
                        " w term in the second coordinate (l_" + std::to_string(i + 1) + " = 1 below t+1)");
    for (int i = t; i <= n - 1; ++i) nf.T.set_coeff(i - t, wlin.coeff(i));
    nf.b = nf.T.coeff(0);
    if (nf.b.is_zero()) throw Error("decompose: T(0) = 0, degree t+1 is not of order one");

    Poly1 zax2 = f2.z_axis_part();
    if (s.is_exact()) {
        for (int i = 0; i <= s.value && i <= n; ++i)
            if (!zax2.coeff(i).is_zero())
                throw Error("decompose: unexpected z^" + std::to_string(i) +
                            " term in the second coordinate below s+1");
        for (int i = s.value + 1; i <= n; ++i) nf.S.set_coeff(i - s.value - 1, zax2.coeff(i));
        nf.c = nf.S.coeff(0);
        nf.s_infinite = false;
        if (nf.c.is_zero()) throw Error("decompose: S(0) = 0 at the stated degree s");
    } else {
        if (!zax2.is_zero())
            throw Error("decompose: z-only terms present although s exceeds the truncation");
        nf.s_infinite = true;
    }

    Series2 wpart = Series2::from_poly1(n, wlin, 0);  // coefficients of w
    // Rebuild w * (w-linear part) and the z-only tail, subtract to isolate w^2 V.
    Series2 rest = f2 - wpart.shifted(0, 1) - Series2::from_poly1(n, zax2, 0);
    nf.V = rest.shifted(0, -2);

    // Order checks from Eq-level bounds: U = O((z,w)^k), V = O((z,w)^{k-1}).
    auto uo = nf.U.order();
    if (uo && *uo < k) throw Error("decompose: U has order below k");
    auto vo = nf.V.order();
    if (vo && *vo < k - 1) throw Error("decompose: V has order below k-1");
    for (const auto& [mono, val] : nf.U.terms())
        nf.u_min_w_power = nf.u_min_w_power < 0 ? mono.wp : std::min(nf.u_min_w_power, mono.wp);
    for (const auto& [mono, val] : nf.V.terms())
        nf.v_min_w_power = nf.v_min_w_power < 0 ? mono.wp : std::min(nf.v_min_w_power, mono.wp);
    return nf;
}

Map2 rebuild(const NormalFormData& nf, int t, int r, const DegreeS& s, int trunc) {
    Series2 z = Series2::monomial(trunc, 1, 0, RationalComplex(1));
    Series2 w = Series2::monomial(trunc, 0, 1, RationalComplex(1));
    Series2 first = z + Series2::from_poly1(trunc, nf.R, 0).shifted(1 + r, 0) +
                    nf.U.shifted(0, 1);
    Series2 second = w + Series2::from_poly1(trunc, nf.T, 0).shifted(t, 1) +
                     nf.V.shifted(0, 2);
    if (!nf.s_infinite && s.is_exact())
        second += Series2::from_poly1(trunc, nf.S, 0).shifted(s.value + 1, 0);
    return Map2(first, second);
}

RescaledGerm rescale(const Germ& f, const NormalFormData& nf, const DirectionReport& rep,
                     mpfr_prec_t prec, const std::string& lambda_max) {
    if (!rep.director.has_value()) throw Error("rescale: director unavailable");
    if (!rep.r || !rep.t) throw Error("rescale: degrees r and t required");
    RescaledGerm out;
    out.k = rep.k;
    out.t = *rep.t;
    out.r = *rep.r;
    out.s = rep.s;
    out.a1 = rep.director->a1;
    out.Delta = rep.director->value;
    out.beta = -(Complex::of(nf.b, prec) * pow_int(out.a1, out.t));

    if (nf.s_infinite) {
        out.a2 = Complex::of(1.0, 0.0, prec);
        out.lambda = Complex(prec);
    } else {
        Complex q = Complex::of(nf.c, prec) * pow_int(out.a1, out.s.value + 1);
        Real qa = q.abs();
        Real lmax = Real::parse(lambda_max, prec);
        if (qa <= lmax) {
            out.a2 = Complex::of(1.0, 0.0, prec);
            out.lambda = q;
        } else {
            out.a2 = Complex(qa / lmax, Real(prec));
            out.lambda = q / out.a2;
        }
    }

    // Conjugation by diag(a1,a2): coefficient (i,j) of f1 scales by a1^{i-1} a2^j,
    // of f2 by a1^i a2^{j-1}.
    NumericMap2 num;
    num.prec = prec;
    int n = f.trunc();
    std::vector<Complex> a1p, a2p;
    a1p.reserve(static_cast<size_t>(n) + 1);
    a2p.reserve(static_cast<size_t>(n) + 1);
    a1p.push_back(Complex::of(1.0, 0.0, prec));
    a2p.push_back(Complex::of(1.0, 0.0, prec));
    for (int i = 1; i <= n; ++i) {
        a1p.push_back(a1p.back() * out.a1);
        a2p.push_back(a2p.back() * out.a2);
    }
    Complex a1_inv = Complex::of(1.0, 0.0, prec) / out.a1;
    Complex a2_inv = Complex::of(1.0, 0.0, prec) / out.a2;
    for (const auto& [mono, v] : f.map().first().terms()) {
        Complex scale = a1p[static_cast<size_t>(mono.zp)] * a1_inv * a2p[static_cast<size_t>(mono.wp)];
        num.fx.push_back({mono.zp, mono.wp, Complex::of(v, prec) * scale});
    }
    for (const auto& [mono, v] : f.map().second().terms()) {
        Complex scale = a1p[static_cast<size_t>(mono.zp)] * a2p[static_cast<size_t>(mono.wp)] * a2_inv;
        num.fy.push_back({mono.zp, mono.wp, Complex::of(v, prec) * scale});
    }
    num.finalize();
    out.map = std::move(num);

    for (const NumericTerm& term : out.map.fx)
        if (term.zp == out.r + 1 && term.wp == 0) out.coeff_zr1 = term.c;
    for (const NumericTerm& term : out.map.fy)
        if (term.zp == out.t && term.wp == 1) out.coeff_zt_w = term.c;
    return out;
}

InverseInvariants inverse_invariants(const Germ& f, mpfr_prec_t prec) {
    InverseInvariants inv;
    DirectionReport rf = classify(f, prec);
    if (!rf.r || !rf.t)
        throw Error("inverse_invariants: f does not satisfy Theorem A conditions (1)-(3)");

    Map2 gmap = invert_tangent_to_identity(f.map());
    Germ g = Germ::from_map(gmap, false);
    DirectionReport rg = classify(g, prec);

    auto note = [&](const std::string& msg) {
        inv.ok = false;
        inv.violations.push_back(msg);
    };

    inv.k = rf.k;
    inv.k_hat = rg.k;
    inv.t = rf.t;
    inv.t_hat = rg.t;
    inv.r = rf.r;
    inv.r_hat = rg.r;
    inv.s = rf.s;
    inv.s_hat = rg.s;
    inv.a = rf.a_coeff;
    inv.a_hat = rg.a_coeff;
    inv.b = rf.b_coeff;
    inv.b_hat = rg.b_coeff;
    inv.director_f = rf.director;
    inv.director_finv = rg.director;
    inv.f_attracting = rf.transversally_attracting;
    inv.finv_attracting = rg.transversally_attracting;

    if (inv.k != inv.k_hat) note("order differs for the inverse");
    if (inv.t != inv.t_hat) note("degree t differs for the inverse");
    if (inv.r != inv.r_hat) note("degree r differs for the inverse");
    if (!inv.s.consistent_with(inv.s_hat)) note("degree s inconsistent for the inverse");
    if (inv.r_hat && !(inv.a_hat == -inv.a)) note("R(0) of the inverse is not -R(0)");
    if (inv.t_hat && !(inv.b_hat == -inv.b)) note("T(0) of the inverse is not -T(0)");

    if (rf.t && rf.r && *rf.t == *rf.r) {
        // r=t: the directors agree exactly; attraction is simultaneous.
        if (rf.director && rg.director && rf.director->exact && rg.director->exact) {
            if (!(rf.director->exact_value == rg.director->exact_value))
                note("directors differ in the r=t case");
        }
        if (inv.f_attracting != inv.finv_attracting)
            note("transversal attraction differs in the r=t case");
    } else if (rf.t && rf.r && *rf.r == 2 * *rf.t) {
        if (inv.f_attracting != Attracting::Yes && inv.finv_attracting != Attracting::Yes)
            note("neither f nor its inverse is transversally attracting although r = 2t");
    }
    return inv;
}

}  // namespace germlab
