#ifndef GERMLAB_TEST_UTIL_HPP
#define GERMLAB_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "germlab/conjugation.hpp"
#include "germlab/germ.hpp"
#include "germlab/series.hpp"

namespace germlab::testutil {

/// Small-rational pool for random exact coefficients.
inline RationalComplex random_coeff(std::mt19937_64& rng, bool allow_zero = true) {
    static const long nums[] = {0, 1, -1, 2, -2, 3, -3, 1, -1, 5};
    static const unsigned long dens[] = {1, 2, 3, 4, 1, 2, 5, 1, 3, 7};
    std::uniform_int_distribution<size_t> pick(0, 9);
    std::uniform_int_distribution<int> coin(0, 3);
    Rational re(nums[pick(rng)], dens[pick(rng)]);
    Rational im = coin(rng) == 0 ? Rational(nums[pick(rng)], dens[pick(rng)]) : Rational(0);
    RationalComplex c(re, im);
    if (!allow_zero && c.is_zero()) return RationalComplex(1);
    return c;
}

inline Series2 random_series(std::mt19937_64& rng, int trunc, int min_deg, int n_terms) {
    Series2 s(trunc);
    std::uniform_int_distribution<int> degd(min_deg, trunc);
    for (int i = 0; i < n_terms; ++i) {
        int d = degd(rng);
        std::uniform_int_distribution<int> zd(0, d);
        int zp = zd(rng);
        s.set_coeff(zp, d - zp, s.coeff(zp, d - zp) + random_coeff(rng));
    }
    return s;
}

/// Random tangent-to-identity map of order >= tau.
inline Map2 random_tangent_map(std::mt19937_64& rng, int trunc, int tau, int n_terms = 6) {
    Map2 id = Map2::identity(trunc);
    Series2 ax = random_series(rng, trunc, tau, n_terms);
    Series2 ay = random_series(rng, trunc, tau, n_terms);
    return Map2(id.first() + ax, id.second() + ay);
}

/// Builds a map from a monomial list {coeff, zp, wp} per coordinate.
struct MonoSpec {
    long num;
    long den;
    int zp, wp;
};

inline Series2 series_of(int trunc, const std::vector<MonoSpec>& terms) {
    Series2 s(trunc);
    for (const MonoSpec& m : terms)
        s.set_coeff(m.zp, m.wp,
                    s.coeff(m.zp, m.wp) +
                        RationalComplex(Rational(m.num, static_cast<unsigned long>(m.den))));
    return s;
}

/// f = (z + zw - z^3/2, w - wz): order 2, k=1, t=1, r=2, s = infinity.
inline Germ germ_one(int trunc = 12) {
    Series2 x = series_of(trunc, {{1, 1, 1, 0}, {1, 1, 1, 1}, {-1, 2, 3, 0}});
    Series2 y = series_of(trunc, {{1, 1, 0, 1}, {-1, 1, 1, 1}});
    return Germ::from_map(Map2(x, y), true);
}

/// f = (z - z^3/2, w(1 - 3z^2 + w) + c z^{s+1}): k=1, t=2, r=2, degree s.
inline Germ germ_s_family(int s, long cnum, long cden, int trunc = 12) {
    Series2 x = series_of(trunc, {{1, 1, 1, 0}, {-1, 2, 3, 0}});
    std::vector<MonoSpec> terms = {{1, 1, 0, 1}, {-3, 1, 2, 1}, {1, 1, 0, 2}};
    if (cnum != 0) terms.push_back({cnum, cden, s + 1, 0});
    Series2 y = series_of(trunc, terms);
    return Germ::from_map(Map2(x, y), true);
}

/// The paper's Fuchsian example f = (z + w^2, w).
inline Germ germ_fuchsian(int trunc = 12) {
    Series2 x = series_of(trunc, {{1, 1, 1, 0}, {1, 1, 0, 2}});
    Series2 y = series_of(trunc, {{1, 1, 0, 1}});
    return Germ::from_map(Map2(x, y), true);
}

/// Random biholomorphism fixing [1:0] through exactly `sigma` (when
/// sigma < trunc): upper-triangular linear part, free higher terms in the
/// first coordinate and in the w-multiples of the second, and a z-only tail
/// in the second coordinate starting exactly at z^{sigma+1}.
inline Biholo random_biholo(std::mt19937_64& rng, int trunc, int sigma,
                            bool identity_linear = false) {
    Series2 x(trunc), y(trunc);
    RationalComplex a1 = identity_linear ? RationalComplex(1) : random_coeff(rng, false);
    RationalComplex a2 = identity_linear ? RationalComplex(1) : random_coeff(rng, false);
    x.set_coeff(1, 0, a1);
    if (!identity_linear) x.set_coeff(0, 1, random_coeff(rng));
    y.set_coeff(0, 1, a2);
    for (int i = 0; i < 4; ++i) {
        int d = 2 + static_cast<int>(rng() % (trunc - 1));
        std::uniform_int_distribution<int> zd(0, d);
        int zp = zd(rng);
        x.set_coeff(zp, d - zp, x.coeff(zp, d - zp) + random_coeff(rng));
        // second coordinate: keep w | terms except the controlled z tail
        int d2 = 2 + static_cast<int>(rng() % (trunc - 1));
        std::uniform_int_distribution<int> zd2(0, d2 - 1);
        int zp2 = zd2(rng);
        y.set_coeff(zp2, d2 - zp2, y.coeff(zp2, d2 - zp2) + random_coeff(rng));
    }
    if (sigma + 1 <= trunc) y.set_coeff(sigma + 1, 0, random_coeff(rng, false));
    return Biholo::from_map(Map2(x, y), true);
}

}  // namespace germlab::testutil

#endif
