#include "doctest.h"

#include "conekit/cohomology.hpp"
#include "oracle.hpp"

using namespace conekit;

namespace {

NamedDivisor random_target_divisor(int d) {
    NamedDivisor out;
    for (int i = 1; i <= d; ++i) {
        if (oracle::uniform(0, 1) == 1) {
            out.add(curve::E(i), Rat(oracle::uniform(-4, 4), oracle::uniform(1, 3)));
        }
    }
    if (oracle::uniform(0, 3) == 0) {
        out.add("F", Rat(oracle::uniform(-2, 2)));
    }
    return out;
}

Rat oracle_coeff(const std::map<std::string, mpq_class>& m, const std::string& name) {
    const auto it = m.find(name);
    return it == m.end() ? Rat(0) : Rat(mpq_class(it->second));
}

}  // namespace

TEST_CASE("pullback of E_i^T") {
    for (int d = 3; d <= 12; ++d) {
        const KmTarget t(d);
        for (int i = 1; i <= d; ++i) {
            NamedDivisor want = NamedDivisor::curve(curve::E(i));
            want.add(curve::l(i), Rat(1, 2));
            want.add(curve::lp(i), Rat(1, 2));
            want.add(curve::kGamma, Rat(1, 2L * d - 4));
            CHECK(t.psi().pullback(NamedDivisor::curve(curve::E(i))) == want);
        }
    }
    const KmTarget t5(5);
    CHECK(t5.psi().pullback(NamedDivisor{}).empty());
    CHECK(t5.psi().pullback(parse_divisor("E_1+E_2+E_3-E_4")).coeff("Gamma") == Rat(1, 3));
    CHECK_THROWS_AS(t5.psi().pullback(parse_divisor("Gamma")), std::invalid_argument);
}

TEST_CASE("pullback matches the disjoint-curve oracle and is orthogonal") {
    for (int trial = 0; trial < 60; ++trial) {
        const int d = static_cast<int>(oracle::uniform(3, 9));
        const KmTarget t(d);
        const NamedDivisor D = random_target_divisor(d);
        const NamedDivisor pulled = t.psi().pullback(D);
        std::map<std::string, mpq_class> in;
        for (const auto& [n, c] : D.terms()) {
            in[n] = c.raw();
        }
        const auto want = oracle::pullback(oracle::Km{d}, in);
        for (const auto& c : t.psi().contracted()) {
            CHECK(pulled.coeff(c) == oracle_coeff(want, c));
            CHECK(t.surface().surface.dot(pulled, NamedDivisor::curve(c)).is_zero());
        }
        CHECK(t.psi().pushforward(pulled) == D);
    }
}

TEST_CASE("pushforward drops contracted curves") {
    const KmTarget t(5);
    CHECK(t.psi().pushforward(NamedDivisor::curve("Gamma")).empty());
    const NamedDivisor a = FamilyDescriptor{5, 3, 2}.divisor();
    CHECK(t.psi().pushforward(floor_divisor(t.psi().pullback(a))) == a);
}

TEST_CASE("relative_canonical") {
    for (int d = 3; d <= 20; ++d) {
        const KmTarget t(d);
        const DiscrepancyTable tab = t.psi().relative_canonical();
        CHECK(tab.at("Gamma") == Rat(-(d - 3), d - 2));
        for (int i = 1; i <= d; ++i) {
            CHECK(tab.at(curve::l(i)).is_zero());
            CHECK(tab.at(curve::lp(i)).is_zero());
        }
        CHECK(tab.min() == Rat(-(d - 3), d - 2));
        // (K_S − Σ a_C C)·C' = 0.
        NamedDivisor k = NamedDivisor::curve("K");
        for (const auto& [name, a] : tab.entries) {
            k.add(name, -a);
        }
        for (const auto& c : t.psi().contracted()) {
            CHECK(t.surface().surface.dot(k, NamedDivisor::curve(c)).is_zero());
        }
        const auto cls = t.psi().classify_singularities(NamedDivisor{});
        CHECK(cls.kind == (d == 3 ? SingularityKind::Canonical : SingularityKind::Klt));
        CHECK(cls.certificate == "minimal-resolution criterion");
    }
    CHECK(KmTarget(3).psi().relative_canonical().at("Gamma").is_zero());
}

TEST_CASE("classify_singularities with boundary") {
    const KmTarget t(5);
    const auto c = t.psi().classify_singularities(NamedDivisor::curve("E_5"));
    CHECK(c.discrepancies.at("Gamma") == Rat(-5, 6));
    CHECK(c.discrepancies.at("l_5") == Rat(-1, 2));
    // ⌊boundary⌋ = E_5 ≠ 0, so the pair is plt rather than klt.
    CHECK(c.kind == SingularityKind::Plt);
    const auto half = t.psi().classify_singularities(NamedDivisor::curve("E_5", Rat(1, 2)));
    CHECK(half.kind == SingularityKind::Klt);
    CHECK(half.discrepancies.at("Gamma") == Rat(-2, 3) - Rat(1, 12));
    CHECK_THROWS_AS(t.psi().classify_singularities(NamedDivisor::curve("E_5", Rat(3, 2))), std::invalid_argument);
    CHECK_THROWS_AS(t.psi().classify_singularities(NamedDivisor::curve("E_5", Rat(-1))), std::invalid_argument);
}

TEST_CASE("contracting a single (-1)-curve is terminal") {
    const KMSurface s = build_km_surface(4);
    const Contraction c(s.surface, {"E_1"});
    const auto cls = c.classify_singularities(NamedDivisor{});
    CHECK(cls.kind == SingularityKind::Terminal);
    CHECK(*cls.min_discrepancy == Rat(1));
    CHECK(c.picard_rank_after() == 9);
    CHECK_FALSE(c.target_rho1_anti_ample());
    CHECK_THROWS_AS(c.is_ample_rho1(NamedDivisor::curve("F")), std::logic_error);

    const Contraction none(s.surface, {});
    CHECK(none.picard_rank_after() == 10);
    CHECK(none.classify_singularities(NamedDivisor{}).kind == SingularityKind::Terminal);
    CHECK_THROWS_AS(Contraction(s.surface, {"F"}), std::invalid_argument);
}

TEST_CASE("target intersections") {
    for (int d = 3; d <= 12; ++d) {
        const KmTarget t(d);
        const Contraction& psi = t.psi();
        const NamedDivisor K = NamedDivisor::curve("K");
        CHECK(psi.target_intersect(NamedDivisor::curve("E_1"), NamedDivisor::curve("E_1")) == Rat(1, 2L * d - 4));
        CHECK(t.e_square() == Rat(1, 2L * d - 4));
        CHECK(psi.target_intersect(K, K) == Rat(4, 2L * d - 4));
        CHECK(psi.picard_rank_after() == 1);
        CHECK(psi.target_rho1_anti_ample());
        CHECK(psi.is_ample_rho1(-K));
        for (int q1 = 0; q1 <= d; ++q1) {
            for (int q2 = 0; q1 + q2 <= d; ++q2) {
                const NamedDivisor a = FamilyDescriptor{d, q1, q2}.divisor();
                CHECK(psi.anticanonical_degree(a) == Rat(2L * (q1 - q2), 2L * d - 4));
                CHECK(psi.is_ample_rho1(a) == (q1 > q2));
            }
        }
    }
}

TEST_CASE("target_intersect is symmetric, bilinear and K_T ~ -2E_i numerically") {
    const KmTarget t(6);
    const Contraction& psi = t.psi();
    for (int trial = 0; trial < 40; ++trial) {
        const NamedDivisor x = random_target_divisor(6), y = random_target_divisor(6), z = random_target_divisor(6);
        CHECK(psi.target_intersect(x, y) == psi.target_intersect(y, x));
        CHECK(psi.target_intersect(x + y, z) == psi.target_intersect(x, z) + psi.target_intersect(y, z));
        for (int i = 1; i <= 6; ++i) {
            CHECK(psi.target_intersect(NamedDivisor::curve("K"), x) ==
                  Rat(-2) * psi.target_intersect(NamedDivisor::curve(curve::E(i)), x));
        }
    }
}
