#include "germlab/conjugation.hpp"

namespace germlab {

Biholo Biholo::from_map(Map2 map, bool full_polynomial) {
    if (!map.has_zero_constant_term()) throw Error("biholo: must fix the origin");
    auto L = map.linear_part();
    if ((L[0][0] * L[1][1] - L[0][1] * L[1][0]).is_zero())
        throw Error("biholo: linear part is not invertible");
    return Biholo(std::move(map), full_polynomial);
}

std::string SigmaVal::str() const {
    switch (kind) {
        case Kind::Exact: return std::to_string(value);
        case Kind::AtLeastTrunc: return ">=" + std::to_string(value);
        case Kind::Infinite: return "inf";
    }
    return "?";
}

static Map2 moved_to_e1(const Map2& m, const Direction& v) {
    if (v.is_e1()) return m;
    std::array<std::array<RationalComplex, 2>, 2> L;
    if (v.a.is_zero())
        L = {{{RationalComplex(), RationalComplex(1)}, {RationalComplex(1), RationalComplex()}}};
    else
        L = {{{RationalComplex(1), RationalComplex()}, {v.b, RationalComplex(1)}}};
    return conjugate_by_linear(m, L);
}

SigmaVal fixes_up_to(const Biholo& psi, const Direction& v) {
    Map2 m = moved_to_e1(psi.map(), v);
    Poly1 axis = m.second().z_axis_part();
    if (axis.is_zero()) {
        if (psi.full_polynomial()) return {SigmaVal::Kind::Infinite, 0};
        return {SigmaVal::Kind::AtLeastTrunc, m.trunc()};
    }
    return {SigmaVal::Kind::Exact, *axis.vanishing_order() - 1};
}

PhiChi phi_chi_decompose(const Biholo& psi) {
    int n = psi.trunc();
    SigmaVal sigma = fixes_up_to(psi, Direction::e1());
    if (sigma.kind == SigmaVal::Kind::Exact && sigma.value < 1)
        throw Error("phi_chi: psi does not fix [1:0] (sigma = 0)");

    PhiChi out(n);
    out.sigma = sigma;
    if (sigma.kind != SigmaVal::Kind::Exact) {
        // psi already preserves {w=0} through everything we can see.
        out.chi = psi.map();
        return out;
    }
    int s = sigma.value;
    Poly1 eta = psi.map().first().z_axis_part();
    if (eta.coeff(1).is_zero())
        throw Error("phi_chi: first coordinate has no linear term in z (eta not invertible)");
    Poly1 a3 = psi.map().second().z_axis_part().shifted(-(s + 1));
    Poly1 eta_inv = eta.reverse_series(n);
    Poly1 beta1 = eta_inv.shifted(-1);  // eta^{-1}(z)/z, constant term != 0
    int phi_deg = n - s - 1;
    Poly1 phi = Poly1::constant(RationalComplex(1));
    for (int i = 0; i < s + 1; ++i) phi = phi.mul_truncated(beta1, phi_deg);
    phi = phi.mul_truncated(a3.compose_truncated(eta_inv, phi_deg), phi_deg);
    out.phi = phi;

    Series2 lift = Series2::from_poly1(n, phi, 0).shifted(s + 1, 0);
    Map2 id = Map2::identity(n);
    out.Phi = Map2(id.first(), id.second() + lift);
    Map2 phi_inv(id.first(), id.second() - lift);
    out.chi = compose(phi_inv, psi.map());
    if (!out.chi.second().z_axis_part().is_zero())
        throw Error("phi_chi: internal error, chi does not preserve {w=0}");
    return out;
}

Map2 conjugate(const Map2& f, const Biholo& psi) {
    Map2 inv = invert_map(psi.map());
    return compose(inv, compose(f, psi.map()));
}

Germ conjugate(const Germ& f, const Biholo& psi) {
    return Germ::from_map(conjugate(f.map(), psi), false);
}

PropCReport prop_c_report(const Germ& f, const Biholo& psi, mpfr_prec_t prec) {
    DirectionReport before = classify(f, prec);
    if (!before.r || !before.t || *before.t > *before.r)
        throw Error("prop_c: f does not satisfy Theorem A conditions (1)-(3)");
    auto s_gt_r = before.s.greater_than(*before.r);
    if (!s_gt_r.has_value() || !*s_gt_r)
        throw Error("prop_c: f does not satisfy s > r");

    PropCReport rep;
    rep.sigma = fixes_up_to(psi, Direction::e1());
    rep.k_before = before.k;
    rep.t_before = before.t;
    rep.r_before = before.r;
    rep.s_before = before.s;

    Germ g = conjugate(f, psi);
    rep.k_after = g.k();
    rep.s_after = degree_s(g);
    VanishingOrders lead = vanishing_orders(g, g.order());
    if (lead.m && *lead.m == 0) {
        // Conjugation moved the direction to a non-degenerate one; r,t are
        // reported absent rather than guessed.
        rep.r_after = std::nullopt;
        rep.t_after = degree_t(g).first;
    } else {
        rep.r_after = degree_r(g).first;
        rep.t_after = degree_t(g).first;
    }

    int k = before.k, t = *before.t, r = *before.r;
    rep.t_threshold = rep.sigma.greater_than(t - k);
    rep.r_threshold = rep.sigma.greater_than(r - k);
    if (before.s.is_exact()) {
        int s = before.s.value;
        // sigma > max{s-t, (s-k)/2}; the half-integer compare is 2*sigma > s-k.
        bool st = rep.sigma.greater_than(s - t);
        bool sk = rep.sigma.kind != SigmaVal::Kind::Exact || 2 * rep.sigma.value > s - k;
        rep.s_threshold = st && sk;
    } else {
        rep.s_threshold = false;
    }

    rep.t_equal = rep.t_after == rep.t_before;
    rep.r_equal = rep.r_after == rep.r_before;
    rep.s_consistent = rep.s_before.consistent_with(rep.s_after) ||
                       rep.s_before == rep.s_after;

    if (rep.k_after != rep.k_before)
        rep.violations.push_back("order k changed under conjugation");
    if (rep.t_threshold && !rep.t_equal)
        rep.violations.push_back("t changed although sigma > t-k");
    if (rep.r_threshold && !rep.r_equal)
        rep.violations.push_back("r changed although sigma > r-k");
    if (rep.s_threshold && !rep.s_consistent)
        rep.violations.push_back("s changed although sigma > max{s-t,(s-k)/2}");
    return rep;
}

}  // namespace germlab
