#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fgbar/lp.hpp"
#include "fgbar/newton.hpp"
#include "test_support.hpp"

using namespace fgbar;
using test::qpoint;

namespace {

Facet facet(std::vector<long long> q, long long c) { return Facet{std::move(q), c}; }

std::set<Facet> facet_set(const NewtonPolyhedron& N) { return {N.facets().begin(), N.facets().end()}; }

std::vector<Exponent> sorted_points(std::vector<Exponent> pts) {
    std::sort(pts.begin(), pts.end(), std::greater<>());
    return pts;
}

// Support points minimizing <P, .>; together with the zero set of P this is
// the face of Gamma_+ cut out by P.
std::vector<Exponent> argmin(const Polynomial& p, const WeightVector& P) {
    const long long d = weighted_degree(p, P);
    std::vector<Exponent> out;
    for (const auto& nu : p.support())
        if (P.pairing(nu) == d) out.push_back(nu);
    return sorted_points(out);
}

// 1 / r_star by linear programming: min t st sum l_k nu_k <= t x, sum l_k = 1.
std::optional<Rational> inverse_r_star(const Polynomial& p, const std::vector<Rational>& x) {
    const auto pts = p.support();
    const auto m = pts.size();
    const auto n = x.size();
    lp::Problem prob;
    prob.num_vars = static_cast<int>(m) + 1;
    prob.objective.assign(m + 1, Rational(0));
    prob.objective[m] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        lp::Constraint c;
        c.coeffs.assign(m + 1, Rational(0));
        for (std::size_t k = 0; k < m; ++k) c.coeffs[k] = pts[k][i];
        c.coeffs[m] = -x[i];
        c.relation = lp::Relation::LessEqual;
        c.rhs = 0;
        prob.constraints.push_back(c);
    }
    lp::Constraint sum;
    sum.coeffs.assign(m + 1, Rational(1));
    sum.coeffs[m] = 0;
    sum.relation = lp::Relation::Equal;
    sum.rhs = 1;
    prob.constraints.push_back(sum);
    const auto sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal) return std::nullopt;
    return sol.value;
}

// y lies on a compact face iff some P >= 1 satisfies <P, y> <= <P, nu> for all nu.
bool on_compact_face_lp(const Polynomial& p, const std::vector<Rational>& y) {
    const auto n = y.size();
    lp::Problem prob;
    prob.num_vars = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        lp::Constraint c;
        c.coeffs.assign(n, Rational(0));
        c.coeffs[i] = 1;
        c.relation = lp::Relation::GreaterEqual;
        c.rhs = 1;
        prob.constraints.push_back(c);
    }
    for (const auto& nu : p.support()) {
        lp::Constraint c;
        c.coeffs.resize(n);
        for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = Rational(nu[i]) - y[i];
        c.relation = lp::Relation::GreaterEqual;
        c.rhs = 0;
        prob.constraints.push_back(c);
    }
    return lp::solve(prob).status == lp::Status::Optimal;
}

std::vector<Rational> midpoint(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = (a[i] + b[i]) / 2;
    return m;
}

bool facet_inequalities_hold(const NewtonPolyhedron& N, const std::vector<Rational>& x) {
    for (const auto& f : N.facets()) {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += Rational(static_cast<long>(f.normal[i])) * x[i];
        if (s < Rational(static_cast<long>(f.offset))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("facets of small examples") {
    CHECK(facet_set(newton_polyhedron(parse_poly("z1+z2", 2))) ==
          std::set<Facet>{facet({1, 1}, 1), facet({1, 0}, 0), facet({0, 1}, 0)});
    CHECK(facet_set(newton_polyhedron(parse_poly("z1*z2", 2))) ==
          std::set<Facet>{facet({1, 0}, 1), facet({0, 1}, 1)});
    const auto F = facet_set(newton_polyhedron(parse_poly("z1^3+z1*z2+z2^3", 2)));
    CHECK(F.count(facet({1, 2}, 3)) == 1);
    CHECK(F.count(facet({2, 1}, 3)) == 1);
    CHECK(F.size() == 4);
    CHECK_THROWS_AS(newton_polyhedron(Polynomial(2)), std::invalid_argument);
}

TEST_CASE("facet structure invariants") {
    const auto N = newton_polyhedron(parse_poly("z1^4*z2 + z1^2*z2^2*z3 + z3^5 + z2^3", 3));
    for (const auto& f : N.facets()) {
        long long g = 0;
        for (long long v : f.normal) {
            CHECK(v >= 0);
            g = std::gcd(g, v);
        }
        CHECK(g == 1);
        bool tight = false;
        for (const auto& nu : N.generators()) {
            long long s = 0;
            for (std::size_t i = 0; i < nu.size(); ++i) s += f.normal[i] * nu[i];
            CHECK(s >= f.offset);
            tight = tight || s == f.offset;
        }
        CHECK(tight);
    }
}

TEST_CASE("facets agree with the brute-force hull oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 4));
        const Polynomial p = test::random_polynomial(rng, n, 12, 4, false);
        CAPTURE(to_string(p));
        CHECK(facet_set(newton_polyhedron(p)) == test::brute_force_facets(p));
    }
}

TEST_CASE("compact faces of small examples") {
    const auto a = compact_faces(newton_polyhedron(parse_poly("z1+z2", 2)));
    REQUIRE(a.size() == 3);
    CHECK(a[0].dim == 0);
    CHECK(a[1].dim == 0);
    CHECK(a[2].dim == 1);
    CHECK(a[2].points.size() == 2);

    const auto b = compact_faces(newton_polyhedron(parse_poly("z1*z2", 2)));
    REQUIRE(b.size() == 1);
    CHECK(b[0].points == std::vector<Exponent>{{1, 1}});
    CHECK(b[0].dim == 0);

    const auto c = compact_faces(newton_polyhedron(parse_poly("z1^3+z1*z2+z2^3", 2)));
    CHECK(c.size() == 5);
    int vertices = 0, edges = 0;
    for (const auto& f : c) (f.dim == 0 ? vertices : edges) += 1;
    CHECK(vertices == 3);
    CHECK(edges == 2);
}

TEST_CASE("compact face witnesses and completeness against weight enumeration") {
    Rng rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 3));
        const Polynomial p = test::random_polynomial(rng, n, 8, 4, false);
        CAPTURE(to_string(p));
        const auto N = newton_polyhedron(p);
        const auto faces = compact_faces(N);
        std::set<std::vector<Exponent>> listed;
        for (const auto& f : faces) {
            CHECK(f.compact());
            CHECK(f.witness.strictly_positive());
            CHECK(argmin(p, f.witness) == f.points);
            // Face/weighted-degree coherence.
            CHECK(face_function(p, f.witness).face.support() == f.points);
            listed.insert(f.points);
        }
        CHECK(listed.size() == faces.size());
        // Every strictly positive weight selects a listed face.
        std::vector<long long> P(static_cast<std::size_t>(n), 1);
        for (;;) {
            CHECK(listed.count(argmin(p, WeightVector(P))) == 1);
            std::size_t k = 0;
            while (k < P.size() && P[k] == 7) P[k++] = 1;
            if (k == P.size()) break;
            ++P[k];
        }
    }
}

TEST_CASE("all faces are exactly the weight-minimizing faces") {
    Rng rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 3));
        const Polynomial p = test::random_polynomial(rng, n, 7, 3, false);
        CAPTURE(to_string(p));
        const auto faces = all_faces(newton_polyhedron(p));
        std::set<std::pair<std::vector<Exponent>, std::uint32_t>> listed;
        for (const auto& f : faces) {
            CHECK(f.witness.zero_set() == f.recession);
            CHECK(argmin(p, f.witness) == f.points);
            listed.insert({f.points, f.recession.mask()});
        }
        std::vector<long long> P(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::size_t k = 0;
            while (k < P.size() && P[k] == 5) P[k++] = 0;
            if (k == P.size()) break;
            ++P[k];
            const WeightVector w(P);
            CHECK(listed.count({argmin(p, w), w.zero_set().mask()}) == 1);
        }
    }
}

TEST_CASE("faces_for_I") {
    const Polynomial f = parse_poly("z1^2+z2^2+z2*z3", 3);
    const auto N = newton_polyhedron(f);
    const auto faces = faces_for_I(N, IndexSet(3, {3}));
    std::set<std::vector<Exponent>> got;
    for (const auto& face : faces) {
        CHECK(face.witness.zero_set() == IndexSet(3, {3}));
        CHECK(argmin(f, face.witness) == face.points);
        got.insert(face.points);
    }
    CHECK(got == std::set<std::vector<Exponent>>{{{0, 1, 1}}, {{2, 0, 0}, {0, 1, 1}}, {{2, 0, 0}}});
    // The documented witnesses select faces from this list.
    CHECK(got.count(argmin(f, {1, 1, 0})) == 1);
    CHECK(got.count(argmin(f, {2, 1, 0})) == 1);
    CHECK(got.count(argmin(f, {1, 2, 0})) == 1);

    CHECK(faces_for_I(N, IndexSet::full(3)).empty());

    const auto g = faces_for_I(newton_polyhedron(parse_poly("z1+z2", 2)), IndexSet(2, {2}));
    REQUIRE(g.size() == 1);
    CHECK(g[0].points == std::vector<Exponent>{{0, 1}});
    CHECK(g[0].witness == WeightVector({1, 0}));
}

TEST_CASE("faces_for_I matches enumeration of weights with the prescribed zero set") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3;
        const Polynomial p = test::random_polynomial(rng, n, 7, 3, false);
        const auto N = newton_polyhedron(p);
        for (std::uint32_t mask = 1; mask < 7; ++mask) {
            const IndexSet I(n, mask);
            std::set<std::vector<Exponent>> listed;
            for (const auto& f : faces_for_I(N, I)) {
                CHECK(f.witness.zero_set() == I);
                CHECK(argmin(p, f.witness) == f.points);
                listed.insert(f.points);
            }
            std::vector<long long> P(3, 0);
            for (long long a = 1; a <= 6; ++a)
                for (long long b = 1; b <= 6; ++b) {
                    std::size_t k = 0;
                    for (int i = 0; i < n; ++i) {
                        if (I.contains(i + 1)) P[static_cast<std::size_t>(i)] = 0;
                        else P[static_cast<std::size_t>(i)] = k++ == 0 ? a : b;
                    }
                    CHECK(listed.count(argmin(p, WeightVector(P))) == 1);
                }
        }
    }
}

TEST_CASE("is_convenient") {
    CHECK(is_convenient(parse_poly("z1+z2", 2)));
    CHECK_FALSE(is_convenient(parse_poly("z1^2+z2^2+z2*z3", 3)));
    CHECK_FALSE(is_convenient(parse_poly("z1*z2", 2)));
    CHECK(is_convenient(parse_poly("z1^3+z2^4+z1*z2", 2)));
}

TEST_CASE("ray_hit examples") {
    const auto A = newton_polyhedron(parse_poly("z1+z2", 2));
    auto h = ray_hit(A, qpoint({1, 1}));
    REQUIRE(h.r_star);
    CHECK(*h.r_star == 2);
    CHECK(h.hits_compact_face);

    h = ray_hit(A, qpoint({2, 0}));
    REQUIRE(h.r_star);
    CHECK(*h.r_star == 2);
    CHECK(h.hits_compact_face);

    const auto B = newton_polyhedron(parse_poly("z1*z2+z1^2", 2));
    CHECK_FALSE(ray_hit(B, qpoint({0, 1})).hits_compact_face);
    CHECK_FALSE(in_gamma_pp(B, qpoint({0, 1}), false));

    CHECK_THROWS(ray_hit(A, qpoint({0, 0})));
    CHECK_THROWS(ray_hit(A, qpoint({-1, 2})));
}

TEST_CASE("in_gamma_pp examples") {
    const auto A = newton_polyhedron(parse_poly("z1+z2", 2));
    CHECK(in_gamma_pp(A, qpoint({1, 1}), true));
    CHECK_FALSE(in_gamma_pp(A, qpoint({Rational(2, 5), Rational(2, 5)}), false));
    CHECK(in_gamma_pp(A, qpoint({1, 0}), false));
    CHECK_FALSE(in_gamma_pp(A, qpoint({1, 0}), true));
}

TEST_CASE("ray_hit agrees with the linear-programming oracle") {
    Rng rng(505);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 4));
        const Polynomial p = test::random_polynomial(rng, n, 8, 4, false);
        const auto N = newton_polyhedron(p);
        for (int s = 0; s < 10; ++s) {
            const auto x = test::random_point(rng, n);
            CAPTURE(to_string(p));
            const auto h = ray_hit(N, x);
            const auto t = inverse_r_star(p, x);
            CHECK(h.r_star.has_value() == t.has_value());
            if (!h.r_star || !t) continue;
            CHECK(*h.r_star * *t == 1);
            std::vector<Rational> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / *h.r_star;
            CHECK(N.contains(y));
            CHECK(h.hits_compact_face == on_compact_face_lp(p, y));
        }
    }
}

TEST_CASE("Gamma_++ lies in Gamma_+ and is convex") {
    Rng rng(606);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 4));
        const Polynomial p = test::random_polynomial(rng, n, 8, 4, false);
        const auto N = newton_polyhedron(p);
        std::vector<std::vector<Rational>> in, in_strict;
        for (int s = 0; s < 40; ++s) {
            const auto x = test::random_point(rng, n);
            if (in_gamma_pp(N, x, false)) {
                CHECK(facet_inequalities_hold(N, x));
                in.push_back(x);
            }
            if (in_gamma_pp(N, x, true)) in_strict.push_back(x);
        }
        for (std::size_t a = 0; a + 1 < in.size(); ++a) CHECK(in_gamma_pp(N, midpoint(in[a], in[a + 1]), false));
        for (std::size_t a = 0; a + 1 < in_strict.size(); ++a)
            CHECK(in_gamma_pp(N, midpoint(in_strict[a], in_strict[a + 1]), true));
    }
}

TEST_CASE("Gamma_++ equals Gamma_+ exactly for convenient polynomials") {
    Rng rng(707);
    int convenient = 0, other = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 3));
        Polynomial p = test::random_polynomial(rng, n, 6, 4, false);
        if (trial % 2 == 0)
            for (int i = 0; i < n; ++i) {
                Exponent e(static_cast<std::size_t>(n), 0);
                e[static_cast<std::size_t>(i)] = static_cast<int>(rng.integer(1, 5));
                p.add_term(e, GaussRational(1));
            }
        const auto N = newton_polyhedron(p);
        bool agree = true;
        for (int s = 0; s < 200; ++s) {
            const auto x = test::random_point(rng, n);
            agree = agree && in_gamma_pp(N, x, false) == N.contains(x);
        }
        CAPTURE(to_string(p));
        CHECK(agree == is_convenient(p));
        (is_convenient(p) ? convenient : other) += 1;
    }
    CHECK(convenient > 10);
    CHECK(other > 10);
}
