#include "germlab/roots.hpp"

#include <algorithm>

namespace germlab {

// Best rational approximation with denominator <= bound (continued
// fractions on the exact dyadic value of x).  Returns nullopt when x is not
// within 2^-(prec/2) of such a rational.
static std::optional<Rational> reconstruct_rational(const Real& x, unsigned long den_bound) {
    if (!x.is_finite()) return std::nullopt;
    Rational q;
    mpfr_get_q(q.raw(), x.raw());  // exact

    // Standard continued fraction: h_n = a_n h_{n-1} + h_{n-2}, with
    // h_{-1}=1, h_{-2}=0, k_{-1}=0, k_{-2}=1.
    mpz_t h, k, a, num, den, tmp, hp, hpp, kp, kpp;
    mpz_inits(h, k, a, num, den, tmp, hp, hpp, kp, kpp, nullptr);
    mpz_set(num, mpq_numref(q.raw()));
    mpz_set(den, mpq_denref(q.raw()));
    mpz_set_ui(hp, 1);
    mpz_set_ui(hpp, 0);
    mpz_set_ui(kp, 0);
    mpz_set_ui(kpp, 1);
    std::optional<Rational> best;
    for (int it = 0; it < 256 && mpz_sgn(den) != 0; ++it) {
        mpz_fdiv_qr(a, tmp, num, den);
        mpz_set(num, den);
        mpz_set(den, tmp);
        mpz_mul(h, a, hp);
        mpz_add(h, h, hpp);
        mpz_mul(k, a, kp);
        mpz_add(k, k, kpp);
        if (mpz_cmp_ui(k, den_bound) > 0) break;
        mpz_set(hpp, hp);
        mpz_set(kpp, kp);
        mpz_set(hp, h);
        mpz_set(kp, k);
        Rational cand;
        mpz_set(mpq_numref(cand.raw()), hp);
        mpz_set(mpq_denref(cand.raw()), kp);
        mpq_canonicalize(cand.raw());
        best = cand;
    }
    mpz_clears(h, k, a, num, den, tmp, hp, hpp, kp, kpp, nullptr);
    if (!best) return std::nullopt;
    mpfr_prec_t p = x.prec();
    Real err = abs(x - Real::of(*best, p));
    Real tol(p);
    mpfr_set_ui_2exp(tol.raw(), 1, -(p / 2), MPFR_RNDN);
    if (err > tol) return std::nullopt;
    return best;
}

// Durand-Kerner on a monic square-free polynomial.  Deterministic.
static std::vector<Complex> durand_kerner(const Poly1& p, mpfr_prec_t prec) {
    int deg = p.degree();
    std::vector<Complex> xs;
    xs.reserve(static_cast<size_t>(deg));
    Complex seed = Complex::of(0.4, 0.9, prec);
    Complex cur = Complex::of(1.0, 0.0, prec);
    for (int i = 0; i < deg; ++i) {
        cur = cur * seed;
        xs.push_back(cur);
    }
    Real tol(prec);
    mpfr_set_ui_2exp(tol.raw(), 1, -(prec - 16), MPFR_RNDN);
    for (int it = 0; it < 500; ++it) {
        Real worst(prec);
        for (int i = 0; i < deg; ++i) {
            Complex num = p.eval(xs[static_cast<size_t>(i)]);
            Complex den = Complex::of(1.0, 0.0, prec);
            for (int j = 0; j < deg; ++j)
                if (j != i) den = den * (xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)]);
            Complex delta = num / den;
            xs[static_cast<size_t>(i)] -= delta;
            Real d = delta.abs();
            if (d > worst) worst = d;
        }
        if (worst < tol) break;
    }
    return xs;
}

std::vector<PolyRoot> find_roots(const Poly1& p, mpfr_prec_t prec) {
    std::vector<PolyRoot> out;
    if (p.degree() < 1) return out;

    auto vo = p.vanishing_order();
    Poly1 rest = p;
    if (vo && *vo > 0) {
        PolyRoot zero;
        zero.exact = true;
        zero.exact_value = RationalComplex();
        zero.approx = Complex(prec);
        zero.residual = Real(prec);
        zero.multiplicity = *vo;
        out.push_back(std::move(zero));
        rest = p.shifted(-*vo);
    }
    if (rest.degree() < 1) return out;

    for (const auto& [factor, mult] : squarefree_decomposition(rest)) {
        Poly1 f = factor.monic();
        for (const Complex& x : durand_kerner(f, prec)) {
            PolyRoot r;
            r.multiplicity = mult;
            r.approx = x;
            // Try to upgrade to an exact rational-complex root.
            auto re = reconstruct_rational(x.re, 1000000000000UL);
            auto im = reconstruct_rational(x.im, 1000000000000UL);
            if (re && im) {
                RationalComplex cand(*re, *im);
                if (f.eval(cand).is_zero()) {
                    r.exact = true;
                    r.exact_value = cand;
                    r.approx = Complex::of(cand, prec);
                    r.residual = Real(prec);
                    out.push_back(std::move(r));
                    continue;
                }
            }
            r.residual = f.eval(x).abs();
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace germlab
