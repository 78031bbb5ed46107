#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "germlab/germ.hpp"
#include "test_util.hpp"

using namespace germlab;
using namespace germlab::testutil;

namespace {

/// Dicritical-origin example satisfying the attraction conditions:
/// f = (z + zw - z^3/2, w + w^2 - 3z^2 w).
Germ germ_dicritical(int trunc = 10) {
    Series2 x = series_of(trunc, {{1, 1, 1, 0}, {1, 1, 1, 1}, {-1, 2, 3, 0}});
    Series2 y = series_of(trunc, {{1, 1, 0, 1}, {1, 1, 0, 2}, {-3, 1, 2, 1}});
    return Germ::from_map(Map2(x, y), true);
}

}  // namespace

TEST_CASE("germ order") {
    CHECK(germ_fuchsian().order() == 2);
    CHECK(germ_one().order() == 2);

    Map2 id = Map2::identity(8);
    Map2 deg5(id.first() + Series2::monomial(8, 5, 0, RationalComplex(1)), id.second());
    CHECK(Germ::from_map(deg5, true).order() == 5);

    CHECK_THROWS_WITH_AS(Germ::from_map(id, true), doctest::Contains("order undefined"), Error);
}

TEST_CASE("r polynomial") {
    // (z + w^2, w): r_2 = z q_2 - w p_2 = -w^3
    Germ fuchs = germ_fuchsian(8);
    CHECK(r_poly(fuchs, 2) == Series2::monomial(8, 0, 3, RationalComplex(-1)));

    // P_j = (z^j, 0) gives -w z^j
    Map2 id = Map2::identity(8);
    Map2 f(id.first() + Series2::monomial(8, 4, 0, RationalComplex(1)), id.second());
    CHECK(r_poly(Germ::from_map(f, true), 4) ==
          Series2::monomial(8, 4, 1, RationalComplex(-1)));

    // germ one: P_2 = (zw, -zw) so r_2 = -z^2 w - z w^2
    Series2 want(8);
    want.set_coeff(2, 1, RationalComplex(-1));
    want.set_coeff(1, 2, RationalComplex(-1));
    CHECK(r_poly(germ_one(8), 2) == want);

    CHECK_THROWS_AS(r_poly(fuchs, 1), Error);
    CHECK_THROWS_AS(r_poly(fuchs, 9), Error);
}

TEST_CASE("characteristic directions") {
    // (z + w^2, w): r_2(1,u) = -u^3, triple root at u = 0.
    auto dirs = char_directions(germ_fuchsian(8), 2, 128);
    CHECK_FALSE(dirs.dicritical);
    REQUIRE(dirs.list.size() == 1);
    CHECK(dirs.list[0].exact);
    CHECK(dirs.list[0].dir == Direction::e1());
    CHECK(dirs.list[0].multiplicity == 3);

    // dicritical: r_2 identically zero
    auto ddirs = char_directions(germ_dicritical(), 2, 128);
    CHECK(ddirs.dicritical);
    CHECK(ddirs.list.empty());

    // germ one: r_2(1,u) = -u(1+u) and the w^3 coefficient vanishes, so
    // the directions are [1:0], [1:-1] and [0:1].
    auto gdirs = char_directions(germ_one(), 2, 128);
    REQUIRE(gdirs.list.size() == 3);
    bool saw_e1 = false, saw_minus1 = false, saw_e2 = false;
    for (const auto& d : gdirs.list) {
        REQUIRE(d.exact);
        if (d.dir == Direction::e1()) saw_e1 = true;
        if (d.dir == Direction::of(RationalComplex(1), RationalComplex(-1))) saw_minus1 = true;
        if (d.dir == Direction::e2()) saw_e2 = true;
    }
    CHECK(saw_e1);
    CHECK(saw_minus1);
    CHECK(saw_e2);
}

TEST_CASE("characteristic direction iff r_j vanishes") {
    std::mt19937_64 rng(314);
    for (int it = 0; it < 12; ++it) {
        Map2 m = random_tangent_map(rng, 8, 2, 5);
        Germ f = Germ::from_map(m, true);
        int j = f.order();
        Series2 rj = r_poly(f, j);
        if (rj.is_zero()) continue;
        Poly1 ru = rj.substitute_z1();
        auto dirs = char_directions(f, j, 192);
        for (const auto& d : dirs.list) {
            if (!d.exact) continue;
            if (d.at_infinity)
                CHECK(ru.degree() < j + 1);
            else
                CHECK(ru.eval(d.dir.b).is_zero());
        }
    }
}

TEST_CASE("vanishing orders") {
    VanishingOrders v = vanishing_orders(germ_fuchsian(), 2);
    CHECK(v.m == OrderVal(2));
    CHECK_FALSE(v.l.has_value());
    CHECK(v.n == OrderVal(3));

    v = vanishing_orders(germ_one(), 2);
    CHECK(v.m == OrderVal(1));
    CHECK(v.l == OrderVal(1));
    CHECK(v.n == OrderVal(1));

    v = vanishing_orders(germ_s_family(4, 1, 1), 2);
    CHECK_FALSE(v.m.has_value());
    CHECK(v.l == OrderVal(2));
    CHECK(v.n == OrderVal(2));
}

TEST_CASE("type classification") {
    CHECK(classify_type(germ_fuchsian()) == DirType::Fuchsian);       // 1+2 = 3
    CHECK(classify_type(germ_one()) == DirType::Apparent);            // 1+1 > 1 > 0
    CHECK(classify_type(germ_s_family(4, 1, 1)) == DirType::Apparent);  // m infinite
    CHECK(classify_type(germ_dicritical()) == DirType::DicriticalOrigin);

    // [1:0] not characteristic: f = Id + (0, z^2)
    Map2 id = Map2::identity(6);
    Map2 bad(id.first(), id.second() + Series2::monomial(6, 2, 0, RationalComplex(1)));
    CHECK_THROWS_WITH_AS(classify_type(Germ::from_map(bad, true)),
                         doctest::Contains("not a characteristic direction"), Error);
}

TEST_CASE("degree s") {
    CHECK(degree_s(germ_s_family(4, 1, 1)) == DegreeS::exact(4));
    CHECK(degree_s(germ_one()) == DegreeS::infinite());
    CHECK(degree_s(germ_fuchsian()) == DegreeS::infinite());
    // same map declared as a truncation: only ">= N" can be claimed
    Germ truncated = Germ::from_map(germ_one(10).map(), false);
    CHECK(degree_s(truncated) == DegreeS::at_least(10));
}

TEST_CASE("degree r and degree t") {
    CHECK(degree_r(germ_one()).first == 2);
    CHECK(degree_r(germ_s_family(4, 1, 1)).first == 2);
    auto [r_fuchs, r_def] = degree_r(germ_fuchsian());
    CHECK_FALSE(r_fuchs.has_value());
    CHECK(r_def);  // full polynomial: definitely absent

    CHECK(degree_t(germ_one()).first == 1);
    CHECK(degree_t(germ_s_family(4, 1, 1)).first == 2);
    auto [t_fuchs, t_def] = degree_t(germ_fuchsian());
    CHECK_FALSE(t_fuchs.has_value());
    CHECK(t_def);

    CHECK(degree_r(germ_dicritical()).first == 2);
    CHECK(degree_t(germ_dicritical()).first == 2);
}

TEST_CASE("degree r rejects non-degenerate leading term") {
    // f = Id + (z^2, 2zw): p_2(1,0) = 1 so m = 0.
    Map2 id = Map2::identity(6);
    Map2 f(id.first() + Series2::monomial(6, 2, 0, RationalComplex(1)),
           id.second() + Series2::monomial(6, 1, 1, RationalComplex(2)));
    CHECK_THROWS_WITH_AS(degree_r(Germ::from_map(f, true)),
                         doctest::Contains("non-degenerate"), Error);
}

TEST_CASE("abate index") {
    CHECK(abate_index(germ_fuchsian()) == RationalComplex(-1));
    CHECK(abate_index(germ_one()) == RationalComplex(0));

    // holomorphic quotient: f = Id + (zw^2, z^2 w + w^3) has p_3(1,u) = u^2,
    // r_3(1,u) = u + u^3 - u^3 = u, so p/r = u and the residue vanishes.
    Map2 id = Map2::identity(6);
    Map2 f(id.first() + Series2::monomial(6, 1, 2, RationalComplex(1)),
           id.second() + Series2::monomial(6, 2, 1, RationalComplex(1)) +
               Series2::monomial(6, 0, 3, RationalComplex(1)));
    CHECK(abate_index(Germ::from_map(f, true)) == RationalComplex(0));

    CHECK_THROWS_WITH_AS(abate_index(germ_dicritical()), doctest::Contains("dicritical"),
                         Error);
}

TEST_CASE("director") {
    // k=1, t=1, r=2, a=-1/2, b=-1: -ar = 1, branches {1,-1}, pick Delta = 1.
    DirectorInfo d =
        director(1, 1, 2, RationalComplex(Rational(-1, 2)), RationalComplex(-1), 192);
    CHECK(d.value.re.to_double() == doctest::Approx(1.0));
    CHECK(d.value.im.to_double() == doctest::Approx(0.0));
    REQUIRE(d.branches.size() == 2);
    CHECK(d.branches[1].re.to_double() == doctest::Approx(-1.0));
    CHECK_FALSE(d.exact);

    // k=1, t=2, r=2, a=-1/2, b=-3: Delta = (b/a - 2)/2 = 2 exactly.
    DirectorInfo d2 =
        director(1, 2, 2, RationalComplex(Rational(-1, 2)), RationalComplex(-3), 192);
    CHECK(d2.exact);
    CHECK(d2.exact_value == RationalComplex(2));
    CHECK(d2.branches.size() == 1);

    CHECK_THROWS_AS(director(1, 1, 2, RationalComplex(0), RationalComplex(1), 192), Error);
    CHECK_THROWS_AS(director(1, 1, 2, RationalComplex(1), RationalComplex(0), 192), Error);

    // r not in {t, 2t}: the selected branch always has positive real part.
    std::mt19937_64 rng(555);
    int found = 0;
    while (found < 100) {
        RationalComplex a = random_coeff(rng), b = random_coeff(rng);
        if (a.is_zero() || b.is_zero()) continue;
        ++found;
        DirectorInfo di = director(1, 2, 3, a, b, 192);  // r=3, t=2: 3/gcd=3 > 2
        CHECK(di.branches.size() == 3);
        CHECK(di.value.re.sgn() > 0);
    }
}

TEST_CASE("nondegenerate director falls back to the classical definition") {
    // f = Id + (z^2, 2zw): r_2(1,u) = u, p_2(1,u) = 1, director = (1/k) * 1/1 = 1.
    Map2 id = Map2::identity(6);
    Map2 f(id.first() + Series2::monomial(6, 2, 0, RationalComplex(1)),
           id.second() + Series2::monomial(6, 1, 1, RationalComplex(2)));
    Germ g = Germ::from_map(f, true);
    CHECK(director_nondegenerate(g) == RationalComplex(1));
    DirectionReport rep = classify(g, 192);
    REQUIRE(rep.director.has_value());
    CHECK(rep.director->exact_value == RationalComplex(1));
    CHECK(rep.transversally_attracting == Attracting::Yes);
    CHECK(rep.verdict.status == Verdict::Status::Fails);  // no r > k
}

TEST_CASE("theorem A verdicts on the reference germs") {
    DirectionReport g1 = classify(germ_one(), 256);
    CHECK(g1.k == 1);
    CHECK(g1.t == 1);
    CHECK(g1.r == 2);
    CHECK(g1.s.is_infinite());
    CHECK(g1.type == DirType::Apparent);
    CHECK(g1.verdict.status == Verdict::Status::Applies);
    REQUIRE(g1.director.has_value());
    CHECK(g1.director->value.re.to_double() == doctest::Approx(1.0));

    DirectionReport g2 = classify(germ_s_family(4, 1, 1), 256);
    CHECK(g2.k == 1);
    CHECK(g2.t == 2);
    CHECK(g2.r == 2);
    CHECK(g2.s == DegreeS::exact(4));
    REQUIRE(g2.director.has_value());
    CHECK(g2.director->exact_value == RationalComplex(2));
    CHECK(g2.verdict.status == Verdict::Status::Applies);  // s=4 > r+t-k=3

    // one-term perturbation: s = 3 = r+t-k fails condition (5)
    DirectionReport g3 = classify(germ_s_family(3, 1, 1), 256);
    CHECK(g3.s == DegreeS::exact(3));
    CHECK(g3.verdict.status == Verdict::Status::Fails);
    CHECK(g3.verdict.reason.find("condition (5)") != std::string::npos);

    DirectionReport fuchs = classify(germ_fuchsian(), 256);
    CHECK(fuchs.k == 1);
    CHECK(fuchs.type == DirType::Fuchsian);
    CHECK(fuchs.abate_index == RationalComplex(-1));
    CHECK(fuchs.verdict.status == Verdict::Status::Fails);
    CHECK(fuchs.verdict.reason.find("condition (2)") != std::string::npos);

    DirectionReport dic = classify(germ_dicritical(), 256);
    CHECK(dic.type == DirType::DicriticalOrigin);
    CHECK(dic.t == 2);
    CHECK(dic.r == 2);
    CHECK(dic.s.is_infinite());
    CHECK(dic.verdict.status == Verdict::Status::Applies);
    CHECK_FALSE(dic.abate_index.has_value());
}

TEST_CASE("nondegenerate iff m = 0 < n") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 20; ++it) {
        Map2 m = random_tangent_map(rng, 6, 2, 4);
        Germ f = Germ::from_map(m, true);
        VanishingOrders v = vanishing_orders(f, f.order());
        bool nondeg = v.m && *v.m == 0 && order_ge(v.n, 1);
        // p_{k+1}(1,0) != 0 and r_{k+1}(1,0) == 0 is the direct reading.
        auto [p, q] = f.map().homogeneous_part(f.order());
        bool direct = !p.substitute_z1().coeff(0).is_zero() &&
                      r_poly(f, f.order()).substitute_z1().coeff(0).is_zero();
        CHECK(nondeg == direct);
    }
}

TEST_CASE("type invariant under linear conjugation fixing [1:0]") {
    std::mt19937_64 rng(31337);
    auto nonzero = [&](std::mt19937_64& r) {
        RationalComplex c = random_coeff(r);
        return c.is_zero() ? RationalComplex(1) : c;
    };
    for (const Germ& f : {germ_one(8), germ_fuchsian(8), germ_s_family(4, 1, 1, 8)}) {
        DirType before = classify_type(f);
        for (int it = 0; it < 8; ++it) {
            std::array<std::array<RationalComplex, 2>, 2> L = {
                {{nonzero(rng), random_coeff(rng)}, {RationalComplex(0), nonzero(rng)}}};
            Germ g = Germ::from_map(conjugate_by_linear(f.map(), L), true);
            CHECK(classify_type(g) == before);
        }
    }
}

TEST_CASE("order one in degree t+1 forces characteristic degree >= t+1") {
    for (const Germ& f : {germ_one(), germ_s_family(4, 1, 1), germ_s_family(7, 1, 1000)}) {
        auto [t, t_def] = degree_t(f);
        REQUIRE(t.has_value());
        DegreeS s = degree_s(f);
        auto ge = s.greater_than(*t);  // s >= t+1 <=> s > t
        REQUIRE(ge.has_value());
        CHECK(*ge);
    }
}

TEST_CASE("raising the truncation preserves k, t, r and exact s") {
    for (int n : {8, 10, 12}) {
        DirectionReport rep = classify(germ_s_family(4, 1, 1, n), 192);
        CHECK(rep.k == 1);
        CHECK(rep.t == 2);
        CHECK(rep.r == 2);
        CHECK(rep.s == DegreeS::exact(4));
    }
    for (int n : {8, 10, 12}) {
        DirectionReport rep = classify(germ_one(n), 192);
        CHECK(rep.k == 1);
        CHECK(rep.t == 1);
        CHECK(rep.r == 2);
        CHECK(rep.s.is_infinite());
    }
}
