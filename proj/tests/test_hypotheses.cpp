#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgbar/hypotheses.hpp"
#include "test_support.hpp"

using namespace fgbar;

namespace {

const Polynomial f13 = parse_poly("z1^2+z2^2+z2*z3", 3);
const Polynomial g1 = parse_poly("z1*z2+z2^2+z3^2", 3);
const Polynomial g2 = parse_poly("z1^4+z2^4+z2^2*z3^4", 3);

std::vector<IndexSet> sets(int n, std::vector<std::initializer_list<int>> ms) {
    std::vector<IndexSet> out;
    for (auto m : ms) out.emplace_back(n, m);
    return out;
}

Polynomial make_convenient(Rng& rng, Polynomial p) {
    const int n = p.dimension();
    for (int i = 0; i < n; ++i) {
        Exponent e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(1, 4));
        p.add_term(e, GaussRational(1));
    }
    return p;
}

}  // namespace

TEST_CASE("vanishing subspaces of the three-variable family") {
    const auto vf = vanishing_subspaces(f13);
    CHECK(vf.maximal == sets(3, {{3}}));
    CHECK(vf.all == sets(3, {{3}}));
    CHECK(vanishing_subspaces(g1).maximal == sets(3, {{1}}));
    CHECK(vanishing_subspaces(g2).maximal == sets(3, {{3}}));
    CHECK(vanishing_subspaces(parse_poly("z1+z2^3", 2)).all.empty());
    CHECK(vanishing_subspaces(parse_poly("z1*z2*z3", 3)).maximal == sets(3, {{1, 2}, {1, 3}, {2, 3}}));
}

TEST_CASE("vanishing family matches restriction and is downward closed") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 5));
        const Polynomial p = test::random_polynomial(rng, n, 4, 3, false);
        const auto fam = vanishing_subspaces(p);
        for (const auto& I : all_index_sets(n)) CHECK(fam.contains(I) == restrict(p, I).is_zero());
        for (const auto& I : fam.all)
            for (const auto& J : all_index_sets(n))
                if (J.is_subset_of(I)) CHECK(fam.contains(J));
        for (const auto& M : fam.maximal) CHECK(fam.contains(M));
        for (const auto& I : fam.all) {
            bool covered = false;
            for (const auto& M : fam.maximal) covered = covered || I.is_subset_of(M);
            CHECK(covered);
        }
    }
}

TEST_CASE("subset enumeration cap") {
    CHECK(all_index_sets(3).size() == 7);
    CHECK_THROWS_AS(all_index_sets(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(vanishing_subspaces(Polynomial(2)), std::invalid_argument);
}

TEST_CASE("disjointness") {
    CHECK(disjointness(f13, g1).disjoint);
    const auto d = disjointness(f13, g2);
    CHECK_FALSE(d.disjoint);
    REQUIRE(d.witness);
    CHECK(*d.witness == IndexSet(3, {3}));
    CHECK_FALSE(disjointness(f13, f13).disjoint);
    CHECK(disjointness(parse_poly("z1+z2", 2), parse_poly("z1+z2", 2)).disjoint);
}

TEST_CASE("check_sharp examples") {
    const auto a = check_sharp(parse_poly("z1+z2", 2), parse_poly("z1*z2", 2));
    CHECK(a.direction == SharpDirection::GInsideF);
    CHECK(a.holds());
    REQUIRE(a.f_vertex_outside);

    const auto b = check_sharp(f13, f13);
    CHECK(b.direction == SharpDirection::Neither);
    CHECK(b.f_vertex_outside);
    CHECK(b.g_vertex_outside);

    // Linear f against anything supported in degree >= 2 with all pure powers.
    const auto c = check_sharp(parse_poly("z1+z2+z3", 3), parse_poly("z1^2+z2^3+z3^2+z1*z2*z3", 3));
    CHECK(c.direction == SharpDirection::GInsideF);

    const auto d = check_sharp(f13, g1);
    CHECK(d.direction == SharpDirection::Neither);
    CHECK(*d.f_vertex_outside == Exponent{2, 0, 0});
}

TEST_CASE("sharp condition implies a strict weighted degree gap") {
    Rng rng(23);
    int certified = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 3));
        const Polynomial g = make_convenient(rng, test::random_polynomial(rng, n, 4, 3, false));
        Polynomial f = test::random_polynomial(rng, n, 4, 3, false);
        if (trial % 2 == 0) {
            Exponent s(static_cast<std::size_t>(n));
            for (auto& v : s) v = static_cast<int>(rng.integer(1, 2));
            f = g * Polynomial::monomial(n, s);
        }
        const auto v = check_sharp(f, g);
        if (v.direction != SharpDirection::FInsideG && v.direction != SharpDirection::Both) continue;
        ++certified;
        for (int k = 0; k < 200; ++k) {
            const WeightVector P = test::random_weight(rng, n, 1, 9);
            if (weighted_degree(g, P) > 0) CHECK(weighted_degree(f, P) > weighted_degree(g, P));
        }
    }
    CHECK(certified >= 30);
}

TEST_CASE("toric multiplicity table") {
    const Polynomial f = parse_poly("z1+z2", 2);
    const Polynomial g = parse_poly("z1*z2", 2);
    const auto rows = check_toric_multiplicity(f, g, {WeightVector{1, 1}});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].d_f == 1);
    CHECK(rows[0].d_g == 2);
    CHECK_FALSE(rows[0].equal());

    const auto eq = check_toric_multiplicity(parse_poly("z1^2", 2), parse_poly("z2^2", 2), {WeightVector{1, 1}});
    CHECK(eq[0].equal());

    CHECK_THROWS_AS(check_toric_multiplicity(f, g, {}), std::invalid_argument);

    // Default rays: strictly positive facet normals of the product.
    const auto rays = default_rays(f, g);
    REQUIRE(rays.size() == 1);
    CHECK(rays[0] == WeightVector{1, 1});

    // Pulling f back by a large power separates the degrees on all default rays.
    const Polynomial h = parse_poly("z1^2+z2^3", 2);
    const Polynomial k = parse_poly("z1^3+z2^2", 2);
    const Polynomial hm = pullback_power(h, 7);
    for (const auto& row : check_toric_multiplicity(hm, k, default_rays(hm, k))) CHECK_FALSE(row.equal());
}

TEST_CASE("case classification and stratification") {
    CHECK(classify_case(f13, g1, IndexSet(3, {3})) == CaseTag::FVanishes);
    CHECK(classify_case(f13, g2, IndexSet(3, {3})) == CaseTag::BothVanish);
    CHECK(classify_case(f13, g1, IndexSet(3, {1})) == CaseTag::GVanishes);
    CHECK(to_string(CaseTag::GVanishes) == "(b')");

    const auto s = stratify(parse_poly("z1+z2", 2), parse_poly("z1-z2", 2));
    REQUIRE(s.size() == 3);
    CHECK(s[2].I == IndexSet::full(2));
    CHECK(s[2].tag == CaseTag::BothNonzero);
    CHECK(s[2].strata.size() == 4);
    // f^{1} = z1 is a monomial: V*I(f) is empty.
    CHECK(s[0].f_monomial);
    CHECK(s[0].strata[1].empty);

    const auto t = stratify(f13, g1);
    for (const auto& row : t) {
        if (!(row.I == IndexSet(3, {3}))) continue;
        CHECK(row.tag == CaseTag::FVanishes);
        REQUIRE(row.strata.size() == 2);
        CHECK(row.strata[0].kind == "T_I");
        CHECK(row.strata[1].kind == "Vg*_I");
    }
}

TEST_CASE("classification agrees with the vanishing families on random pairs") {
    Rng rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 4));
        const Polynomial f = test::random_polynomial(rng, n, 4, 2, false);
        const Polynomial g = test::random_polynomial(rng, n, 4, 2, false);
        const auto vf = vanishing_subspaces(f);
        const auto vg = vanishing_subspaces(g);
        const auto strat = stratify(f, g);
        CHECK(strat.size() == (std::size_t{1} << n) - 1);
        for (const auto& row : strat) {
            const bool a = vf.contains(row.I), b = vg.contains(row.I);
            const CaseTag expect = a && b ? CaseTag::BothVanish
                                 : a      ? CaseTag::FVanishes
                                 : b      ? CaseTag::GVanishes
                                          : CaseTag::BothNonzero;
            CHECK(row.tag == expect);
            CHECK(classify_case(f, g, row.I) == expect);
            const std::size_t expected_count = expect == CaseTag::BothNonzero ? 4 : expect == CaseTag::BothVanish ? 1 : 2;
            CHECK(row.strata.size() == expected_count);
        }
    }
}
