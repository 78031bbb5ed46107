#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germlab/series.hpp"
#include "test_util.hpp"

using namespace germlab;
using namespace germlab::testutil;

TEST_CASE("rational parsing and arithmetic") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("7").str() == "7");
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("a"), Error);
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");

    RationalComplex c = RationalComplex::parse("1/2-1/3i");
    CHECK(c.re == Rational(1, 2));
    CHECK(c.im == Rational(-1, 3));
    CHECK(c.str() == "1/2-1/3i");
    CHECK(RationalComplex::parse("-2i").str() == "-2i");
    CHECK(RationalComplex::parse("5").str() == "5");
    CHECK(RationalComplex::parse("i").str() == "1i");
    // exact complex division round-trip
    RationalComplex q = RationalComplex::parse("2+3i");
    CHECK((c * q) / q == c);
}

TEST_CASE("high precision reals and roots") {
    Real x = Real::parse("0.05", 256);
    CHECK(x.str(10) == "5.000000000e-2");
    Real y = Real::of(Rational(1, 3), 256);
    CHECK(y.str(5) == "3.3333e-1");
    auto roots = nth_roots(Complex::of(1.0, 0.0, 128), 2);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].re.to_double() == doctest::Approx(1.0));
    CHECK(roots[1].re.to_double() == doctest::Approx(-1.0));
}

TEST_CASE("ring ops match schoolbook oracle") {
    // (z + w)(z - w) = z^2 - w^2 at N=3
    Series2 zpw = series_of(3, {{1, 1, 1, 0}, {1, 1, 0, 1}});
    Series2 zmw = series_of(3, {{1, 1, 1, 0}, {-1, 1, 0, 1}});
    Series2 want = series_of(3, {{1, 1, 2, 0}, {-1, 1, 0, 2}});
    CHECK(zpw * zmw == want);

    // z * w^N vanishes under truncation closure
    int n = 5;
    Series2 z = Series2::monomial(n, 1, 0, RationalComplex(1));
    Series2 wN = Series2::monomial(n, 0, n, RationalComplex(1));
    CHECK((z * wN).is_zero());

    // (1 + zw)(1 - zw + z^2 w^2) truncates to 1 at N=4: schoolbook product
    // is 1 + z^3 w^3 and the degree-6 term falls away.
    Series2 a = series_of(4, {{1, 1, 0, 0}, {1, 1, 1, 1}});
    Series2 b = series_of(4, {{1, 1, 0, 0}, {-1, 1, 1, 1}, {1, 1, 2, 2}});
    CHECK(a * b == Series2::constant(4, RationalComplex(1)));

    CHECK_THROWS_AS(Series2(3) + Series2(4), Error);
}

TEST_CASE("ring laws on random series") {
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 40; ++it) {
        int n = 3 + static_cast<int>(rng() % 6);  // N <= 8
        Series2 a = random_series(rng, n, 0, 5);
        Series2 b = random_series(rng, n, 0, 5);
        Series2 c = random_series(rng, n, 0, 5);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("homogeneous parts") {
    Germ fuchs = germ_fuchsian(6);
    auto [p2, q2] = fuchs.map().homogeneous_part(2);
    CHECK(p2 == Series2::monomial(6, 0, 2, RationalComplex(1)));
    CHECK(q2.is_zero());

    Map2 id = Map2::identity(6);
    auto [ip, iq] = id.homogeneous_part(2);
    CHECK(ip.is_zero());
    CHECK(iq.is_zero());

    Germ g1 = germ_one(6);
    auto [p3, q3] = g1.map().homogeneous_part(3);
    CHECK(p3 == Series2::monomial(6, 3, 0, RationalComplex(Rational(-1, 2))));
    CHECK(q3.is_zero());
}

TEST_CASE("composition") {
    int n = 8;
    std::mt19937_64 rng(7);
    // compose(f, Id) = f
    for (int it = 0; it < 10; ++it) {
        Map2 f = random_tangent_map(rng, n, 2);
        CHECK(compose(f, Map2::identity(n)) == f);
    }
    // disjoint variables: f=(z+z^2, w), g=(z, w+z^2) -> (z+z^2, w+z^2)
    Map2 f(series_of(n, {{1, 1, 1, 0}, {1, 1, 2, 0}}), series_of(n, {{1, 1, 0, 1}}));
    Map2 g(series_of(n, {{1, 1, 1, 0}}), series_of(n, {{1, 1, 0, 1}, {1, 1, 2, 0}}));
    Map2 want(series_of(n, {{1, 1, 1, 0}, {1, 1, 2, 0}}),
              series_of(n, {{1, 1, 0, 1}, {1, 1, 2, 0}}));
    CHECK(compose(f, g) == want);

    // inner map with constant term is rejected
    Map2 bad(series_of(n, {{1, 1, 0, 0}, {1, 1, 1, 0}}), series_of(n, {{1, 1, 0, 1}}));
    CHECK_THROWS_AS(compose(f, bad), Error);
}

TEST_CASE("map inversion: worked example from the inverse lemma") {
    // Psi = Id + (z^2, zw), tau = 2: B_2 = -A_2 and
    // B_3 = -A_3 + A_2^1 dA_2/dz + A_2^2 dA_2/dw = (2z^3, 2z^2 w).
    int n = 6;
    Map2 psi(series_of(n, {{1, 1, 1, 0}, {1, 1, 2, 0}}),
             series_of(n, {{1, 1, 0, 1}, {1, 1, 1, 1}}));
    Map2 inv = invert_tangent_to_identity(psi);
    auto [b2x, b2y] = inv.homogeneous_part(2);
    CHECK(b2x == Series2::monomial(n, 2, 0, RationalComplex(-1)));
    CHECK(b2y == Series2::monomial(n, 1, 1, RationalComplex(-1)));
    auto [b3x, b3y] = inv.homogeneous_part(3);
    CHECK(b3x == Series2::monomial(n, 3, 0, RationalComplex(2)));
    CHECK(b3y == Series2::monomial(n, 2, 1, RationalComplex(2)));
    CHECK(compose(psi, inv) == Map2::identity(n));
    CHECK(compose(inv, psi) == Map2::identity(n));

    // Psi = (z + z^2, w + z^3): round-trip at N=6
    Map2 psi2(series_of(n, {{1, 1, 1, 0}, {1, 1, 2, 0}}),
              series_of(n, {{1, 1, 0, 1}, {1, 1, 3, 0}}));
    Map2 inv2 = invert_tangent_to_identity(psi2);
    CHECK(compose(psi2, inv2) == Map2::identity(n));

    // germ (z + zw - z^3/2, w - wz): B_2 = -A_2 = (-zw, wz)
    Germ g1 = germ_one(6);
    Map2 ginv = invert_tangent_to_identity(g1.map());
    auto [c2x, c2y] = ginv.homogeneous_part(2);
    CHECK(c2x == Series2::monomial(6, 1, 1, RationalComplex(-1)));
    CHECK(c2y == Series2::monomial(6, 1, 1, RationalComplex(1)));

    CHECK(invert_tangent_to_identity(Map2::identity(n)) == Map2::identity(n));
    CHECK_THROWS_AS(invert_tangent_to_identity(
                        Map2(series_of(n, {{2, 1, 1, 0}}), series_of(n, {{1, 1, 0, 1}}))),
                    Error);
}

TEST_CASE("inverse lemma closed forms for random maps") {
    std::mt19937_64 rng(99);
    for (int tau : {2, 3}) {
        for (int it = 0; it < 15; ++it) {
            int n = 2 * tau + 1 + static_cast<int>(rng() % 3);
            Map2 f = random_tangent_map(rng, n, tau, 5);
            Map2 inv = invert_tangent_to_identity(f);
            CHECK(compose(f, inv) == Map2::identity(n));
            CHECK(compose(inv, f) == Map2::identity(n));
            // B_j = -A_j for j <= 2(tau-1)
            for (int j = tau; j <= std::min(n, 2 * (tau - 1)); ++j) {
                auto [ax, ay] = f.homogeneous_part(j);
                auto [bx, by] = inv.homogeneous_part(j);
                CHECK(bx == -ax);
                CHECK(by == -ay);
            }
            // B_{2tau-1} = -A_{2tau-1} + A_tau . grad A_tau
            if (2 * tau - 1 <= n) {
                auto [atx, aty] = f.homogeneous_part(tau);
                auto [ahx, ahy] = f.homogeneous_part(2 * tau - 1);
                Series2 wx = -ahx + atx * atx.derivative_z() + aty * atx.derivative_w();
                Series2 wy = -ahy + atx * aty.derivative_z() + aty * aty.derivative_w();
                auto [bx, by] = inv.homogeneous_part(2 * tau - 1);
                CHECK(bx == wx);
                CHECK(by == wy);
            }
        }
    }
}

TEST_CASE("univariate series reversion") {
    // z -> z
    Poly1 idp = Poly1::monomial(1, RationalComplex(1));
    CHECK(idp.reverse_series(8) == idp);

    // z + z^2 -> z - z^2 + 2z^3 - 5z^4 (fixed point oracle, checked by composition)
    Poly1 h({RationalComplex(0), RationalComplex(1), RationalComplex(1)});
    Poly1 hinv = h.reverse_series(4);
    CHECK(hinv.coeff(1) == RationalComplex(1));
    CHECK(hinv.coeff(2) == RationalComplex(-1));
    CHECK(hinv.coeff(3) == RationalComplex(2));
    CHECK(hinv.coeff(4) == RationalComplex(-5));
    CHECK(h.compose_truncated(hinv, 4) == Poly1::monomial(1, RationalComplex(1)));

    // 2z -> z/2
    Poly1 twoz({RationalComplex(0), RationalComplex(2)});
    CHECK(twoz.reverse_series(6) ==
          Poly1({RationalComplex(0), RationalComplex(Rational(1, 2))}));

    CHECK_THROWS_AS(Poly1({RationalComplex(0), RationalComplex(0), RationalComplex(1)})
                        .reverse_series(5),
                    Error);

    // round-trips exactly for random series
    std::mt19937_64 rng(400);
    for (int it = 0; it < 20; ++it) {
        int n = 4 + static_cast<int>(rng() % 6);
        std::vector<RationalComplex> cs(static_cast<size_t>(n) + 1);
        cs[1] = random_coeff(rng, false);
        for (int i = 2; i <= n; ++i) cs[static_cast<size_t>(i)] = random_coeff(rng);
        Poly1 f(cs);
        Poly1 g = f.reverse_series(n);
        CHECK(f.compose_truncated(g, n) == Poly1::monomial(1, RationalComplex(1)));
        CHECK(g.compose_truncated(f, n) == Poly1::monomial(1, RationalComplex(1)));
    }
}

TEST_CASE("evaluation at high precision points") {
    Germ fuchs = germ_fuchsian(6);
    auto [z0, w0] = fuchs.map().eval(Complex::of(0.0, 0.0, 128), Complex::of(0.0, 0.0, 128));
    CHECK(z0.is_zero());
    CHECK(w0.is_zero());

    auto [z1, w1] = fuchs.map().eval(Complex::of(0.1, 0.0, 128), Complex::of(0.01, 0.0, 128));
    CHECK(z1.re.to_double() == doctest::Approx(0.1001).epsilon(1e-12));
    CHECK(w1.re.to_double() == doctest::Approx(0.01).epsilon(1e-15));

    // germ one at (0.05, 1e-4): exact decimal arithmetic gives
    // z' = 0.05 + 0.05*1e-4 - 0.5*0.05^3 = 0.0499425, w' = 1e-4*(1 - 0.05) = 9.5e-5.
    Germ g1 = germ_one(6);
    for (mpfr_prec_t p : {mpfr_prec_t(256), mpfr_prec_t(512)}) {
        Complex z(Real::parse("0.05", p), Real(p));
        Complex w(Real::parse("1e-4", p), Real(p));
        auto [zz, ww] = g1.map().eval(z, w);
        CHECK(abs(zz.re - Real::parse("0.0499425", p)).to_double() < 1e-70);
        CHECK(abs(ww.re - Real::parse("9.5e-5", p)).to_double() < 1e-70);
        CHECK(zz.im.is_zero());
        CHECK(ww.im.is_zero());
    }
}

TEST_CASE("truncation closure across operations") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        int n = 3 + static_cast<int>(rng() % 8);
        Series2 a = random_series(rng, n, 0, 6);
        Series2 b = random_series(rng, n, 0, 6);
        for (const Series2* s : {&a, &b}) CHECK(s->max_degree() <= n);
        CHECK((a * b).max_degree() <= n);
        CHECK((a + b).max_degree() <= n);
        Map2 f = random_tangent_map(rng, n, 2);
        Map2 g = random_tangent_map(rng, n, 2);
        Map2 h = compose(f, g);
        CHECK(h.first().max_degree() <= n);
        CHECK(h.second().max_degree() <= n);
    }
}
