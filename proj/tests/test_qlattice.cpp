#include "doctest.h"

#include <vector>

#include "conekit/km_surface.hpp"
#include "oracle.hpp"

using namespace conekit;

namespace {

ClassVector cls(const KMSurface& s, const std::string& name) { return s.registry().at(name).cls; }

ClassVector random_vector(std::size_t rank) {
    ClassVector v(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        v[k] = Rat(oracle::uniform(-6, 6), oracle::uniform(1, 4));
    }
    return v;
}

NamedDivisor random_divisor() {
    static const std::vector<std::string> names{"Gamma", "l_1", "lp_2", "E_3", "F", "E_1"};
    NamedDivisor d;
    for (const auto& n : names) {
        if (oracle::uniform(0, 2) != 0) {
            d.add(n, Rat(oracle::uniform(-20, 20), oracle::uniform(1, 7)));
        }
    }
    return d;
}

}  // namespace

TEST_CASE("Rat stays in lowest terms and refuses division by zero") {
    const Rat r(6, -8);
    CHECK(r.str() == "-3/4");
    CHECK(r.denominator() == 4);
    CHECK(Rat(4, 2).is_integer());
    CHECK(Rat(4, 2).str() == "2");
    CHECK(Rat(-7, 2).floor() == Rat(-4));
    CHECK(Rat(-7, 2).ceil() == Rat(-3));
    CHECK(Rat(-7, 2).frac() == Rat(1, 2));
    CHECK(Rat::parse("-5/10") == Rat(-1, 2));
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
    CHECK_THROWS(Rat::parse("1/"));
    CHECK_THROWS(Rat::parse("x"));
    CHECK_THROWS(Rat(1, 2).to_long());
}

TEST_CASE("Rat arithmetic agrees with mpq on random operands") {
    for (int trial = 0; trial < 300; ++trial) {
        const long a = oracle::uniform(-1000, 1000), b = oracle::uniform(1, 50);
        const long c = oracle::uniform(-1000, 1000), e = oracle::uniform(1, 50);
        mpq_class x(a, b), y(c, e);
        x.canonicalize();
        y.canonicalize();
        const Rat rx(a, b), ry(c, e);
        CHECK((rx + ry).raw() == mpq_class(x + y));
        CHECK((rx - ry).raw() == mpq_class(x - y));
        CHECK((rx * ry).raw() == mpq_class(x * y));
        if (c != 0) {
            CHECK((rx / ry).raw() == mpq_class(x / y));
        }
        CHECK((rx < ry) == (x < y));
        CHECK(rx.floor() + rx.frac() == rx);
    }
}

TEST_CASE("intersect on the KM lattice") {
    const KMSurface s = build_km_surface(5);
    const auto& L = s.lattice();
    CHECK(intersect(L, cls(s, "Gamma"), cls(s, "Gamma")) == Rat(-6));
    CHECK(intersect(L, cls(s, "F"), cls(s, "F")) == Rat(0));
    const oracle::Km o{5};
    for (int i = 1; i <= 5; ++i) {
        const std::string n = std::to_string(i);
        CHECK(intersect(L, cls(s, "E_" + n), cls(s, "l_" + n)) == Rat(1));
        CHECK(intersect(L, cls(s, "Gamma"), cls(s, "l_" + n)) == Rat(0));
        CHECK(Rat(mpq_class(o.dot(o.E(i), o.l(i)))) == Rat(1));
    }
    CHECK_THROWS_AS(intersect(L, ClassVector(3), cls(s, "F")), RankMismatch);
}

TEST_CASE("intersect is symmetric and bilinear") {
    const KMSurface s = build_km_surface(4);
    const auto& L = s.lattice();
    for (int trial = 0; trial < 100; ++trial) {
        const ClassVector u = random_vector(L.rank()), v = random_vector(L.rank()), w = random_vector(L.rank());
        const Rat a(oracle::uniform(-5, 5), oracle::uniform(1, 3));
        CHECK(intersect(L, u, v) == intersect(L, v, u));
        CHECK(intersect(L, a * u + v, w) == a * intersect(L, u, w) + intersect(L, v, w));
    }
}

TEST_CASE("named classes match the closed forms") {
    for (int d = 3; d <= 9; ++d) {
        const KMSurface s = build_km_surface(d);
        const oracle::Km o{d};
        for (const auto& e : s.registry().entries()) {
            const oracle::Vec want = o.named(e.name);
            REQUIRE(e.cls.size() == want.size());
            for (std::size_t k = 0; k < want.size(); ++k) {
                CHECK(e.cls[k].raw() == want[k]);
            }
        }
    }
}

TEST_CASE("is_negative_definite") {
    const KMSurface s = build_km_surface(5);
    std::vector<ClassVector> ex;
    for (const auto& n : s.exceptional_curves()) {
        ex.push_back(cls(s, n));
    }
    CHECK(is_negative_definite(s.lattice(), ex));
    const std::vector<ClassVector> f{cls(s, "F")};
    CHECK_FALSE(is_negative_definite(s.lattice(), f));
    const std::vector<ClassVector> e1{cls(s, "E_1")};
    CHECK(is_negative_definite(s.lattice(), e1));
    const std::vector<ClassVector> dep{cls(s, "E_1"), Rat(2) * cls(s, "E_1")};
    CHECK_THROWS_AS(is_negative_definite(s.lattice(), dep), DependentSubset);
    // {E_1, l_1}: Gram [[-1,1],[1,-2]], det 1 > 0.
    const std::vector<ClassVector> pair{cls(s, "E_1"), cls(s, "l_1")};
    CHECK(is_negative_definite(s.lattice(), pair));
    // 2E_1 + l_1 + lp_1 = F and F² = 0.
    const std::vector<ClassVector> three{cls(s, "E_1"), cls(s, "l_1"), cls(s, "lp_1")};
    CHECK_FALSE(is_negative_definite(s.lattice(), three));
}

TEST_CASE("leading-minor test agrees with a direct 2x2 oracle") {
    const KMSurface s = build_km_surface(6);
    const std::vector<std::string> names{"Gamma", "l_1", "lp_1", "E_1", "E_2", "F", "l_2"};
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            const ClassVector x = cls(s, names[a]), y = cls(s, names[b]);
            const Rat p = intersect(s.lattice(), x, x), q = intersect(s.lattice(), x, y),
                      r = intersect(s.lattice(), y, y);
            const std::vector<ClassVector> sub{x, y};
            CHECK(is_negative_definite(s.lattice(), sub) == (p.sign() < 0 && (p * r - q * q).sign() > 0));
        }
    }
}

TEST_CASE("solve_against") {
    for (int d = 3; d <= 10; ++d) {
        const KMSurface s = build_km_surface(d);
        const auto& L = s.lattice();
        for (int i = 1; i <= d; ++i) {
            const std::string n = std::to_string(i);
            const std::vector<ClassVector> sub{cls(s, "Gamma"), cls(s, "l_" + n), cls(s, "lp_" + n)};
            const auto x = solve_against(L, sub, cls(s, "E_" + n));
            CHECK(x[0] == Rat(1, 2L * d - 4));
            CHECK(x[1] == Rat(1, 2));
            CHECK(x[2] == Rat(1, 2));
        }
        const std::vector<ClassVector> l1{cls(s, "l_1")};
        CHECK(solve_against(L, l1, cls(s, "K")).at(0) == Rat(0));
        const std::vector<ClassVector> g{cls(s, "Gamma")};
        // (K_S + xΓ)·Γ = 0 gives x = (2d−6)/(2d−4).
        CHECK(solve_against(L, g, cls(s, "K")).at(0) == Rat(2L * d - 6, 2L * d - 4));
    }
}

TEST_CASE("solve_against residual vanishes on random targets") {
    const KMSurface s = build_km_surface(5);
    const auto& L = s.lattice();
    std::vector<ClassVector> sub;
    for (const auto& n : s.exceptional_curves()) {
        sub.push_back(cls(s, n));
    }
    for (int trial = 0; trial < 40; ++trial) {
        const ClassVector t = random_vector(L.rank());
        const auto x = solve_against(L, sub, t);
        ClassVector v = t;
        for (std::size_t k = 0; k < sub.size(); ++k) {
            v += x[k] * sub[k];
        }
        for (const auto& c : sub) {
            CHECK(intersect(L, v, c).is_zero());
        }
    }
}

TEST_CASE("floor, frac and ceil of named divisors") {
    CHECK(floor_divisor(NamedDivisor::curve("l_1", Rat(-1, 2))) == NamedDivisor::curve("l_1", Rat(-1)));
    const NamedDivisor integral = parse_divisor("2E_1 - 3Gamma");
    CHECK(floor_divisor(integral) == integral);
    CHECK(ceil_divisor(NamedDivisor::curve("E_1", Rat(1, 3))) == NamedDivisor::curve("E_1"));
    for (int trial = 0; trial < 200; ++trial) {
        const NamedDivisor d = random_divisor();
        CHECK(floor_divisor(d) + frac_divisor(d) == d);
        const NamedDivisor fr = frac_divisor(d);
        for (const auto& [name, c] : fr.terms()) {
            CHECK(c.sign() > 0);
            CHECK(c < Rat(1));
        }
        CHECK(ceil_divisor(d) == -floor_divisor(-d));
    }
}

TEST_CASE("class_of and parse_divisor") {
    const KMSurface s = build_km_surface(5);
    for (int i = 1; i <= 5; ++i) {
        const std::string n = std::to_string(i);
        CHECK(s.surface.class_of(parse_divisor("2E_" + n + " + l_" + n + " + lp_" + n)) == cls(s, "F"));
    }
    CHECK(s.surface.class_of(NamedDivisor{}).is_zero());
    CHECK(s.surface.class_of(parse_divisor("Gamma + F")) == -cls(s, "K"));
    CHECK_THROWS_AS(s.surface.class_of(parse_divisor("E_9")), UnknownCurve);

    CHECK(parse_divisor("2E_1-1/2l_3").str() == "2 E_1 - 1/2 l_3");
    CHECK(parse_divisor("1/2*l_3") == NamedDivisor::curve("l_3", Rat(1, 2)));
    CHECK(parse_divisor("E_1^T + E_2^T") == parse_divisor("E_1+E_2"));
    CHECK(parse_divisor("K_T") == NamedDivisor::curve("K"));
    CHECK(parse_divisor("0").empty());
    CHECK(parse_divisor("E_1 - E_1").empty());
    CHECK_THROWS(parse_divisor("2*"));
    CHECK_THROWS(parse_divisor("E_1 +"));
}

TEST_CASE("curve names order numerically") {
    NamedDivisor d;
    d.add("E_10", Rat(1));
    d.add("E_2", Rat(1));
    d.add("E_1", Rat(1));
    CHECK(d.str() == "E_1 + E_2 + E_10");
}
