#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgbar/search.hpp"
#include "test_support.hpp"

using namespace fgbar;

namespace {

SearchConfig config(int starts = 200) {
    SearchConfig c;
    c.starts = starts;
    return c;
}

const Polynomial f13 = parse_poly("z1^2+z2^2+z2*z3", 3);

std::vector<Complex> act(const WeightVector& P, const std::vector<Complex>& z, double rho) {
    std::vector<Complex> out = z;
    for (std::size_t j = 0; j < z.size(); ++j) out[j] *= std::pow(rho, static_cast<double>(P[j]));
    return out;
}

}  // namespace

TEST_CASE("torus critical points of (z1+z2)^2") {
    const Polynomial q = parse_poly("(z1+z2)^2", 2);
    const auto v = find_torus_critical(q, config());
    REQUIRE(v.violation());
    const auto& c = *v.certificate;
    CHECK(c.kind == CertificateKind::CriticalPoint);
    CHECK(c.residual < 1e-10);
    CHECK(std::abs(c.point[0] + c.point[1]) < 1e-4 * std::abs(c.point[0]));
    CHECK(std::abs(c.point[0]) > std::exp(-20.0));
    // Independent check of the analytic gradient 2(z1+z2)(1,1).
    const auto Z = c.point;
    CHECK(std::abs(2.0 * (Z[0] + Z[1])) < 1e-4 * (std::abs(Z[0]) + std::abs(Z[1])));
}

TEST_CASE("no torus critical points where the gradient cannot vanish") {
    CHECK_FALSE(find_torus_critical(parse_poly("z1^2+z2^2", 2), config()).violation());
    const auto v = find_torus_critical(parse_poly("z2*z3", 3), config());
    CHECK_FALSE(v.violation());
    CHECK(v.faces[0].vacuous);
    CHECK_THROWS_AS(find_torus_critical(parse_poly("5", 2), config()), std::invalid_argument);
    const auto w = find_torus_critical(parse_poly("z1^2+z2^2", 2), config(20));
    CHECK(w.faces[0].best_objective > 1.0);  // 4(|z1|^4+|z2|^4)/(|z1|^2+|z2|^2)^2 >= 2
}

TEST_CASE("complete intersection rank drops") {
    CHECK_FALSE(find_ci_degeneracy(parse_poly("z1+z2", 2), parse_poly("z1-z2", 2), config()).violation());
    const auto v = find_ci_degeneracy(parse_poly("z1+z2", 2), parse_poly("(z1+z2)*z1", 2), config());
    REQUIRE(v.violation());
    CHECK(v.certificate->kind == CertificateKind::CiRankDrop);
    CHECK(v.certificate->residual < 1e-9);
    const auto& z = v.certificate->point;
    CHECK(std::abs(z[0] + z[1]) < 1e-4 * std::abs(z[0]));
    CHECK_FALSE(find_ci_degeneracy(parse_poly("z1*z2-z3^2", 3), parse_poly("z1-z2", 3), config()).violation());
    const auto same = find_ci_degeneracy(parse_poly("z1+z2", 2), parse_poly("z1+z2", 2), config(20));
    CHECK(same.violation());
}

TEST_CASE("non-degeneracy over all compact faces") {
    const auto a = check_nondegenerate(f13, config());
    CHECK_FALSE(a.violation());
    CHECK(a.faces.size() == compact_faces(newton_polyhedron(f13)).size());

    const auto b = check_nondegenerate(parse_poly("(z1+z2)^2+z3^2", 3), config());
    REQUIRE(b.violation());
    CHECK(face_function(parse_poly("(z1+z2)^2+z3^2", 3), b.certificate->face_witness).face ==
          parse_poly("z1^2+2*z1*z2+z2^2", 3));

    const auto c = check_nondegenerate(parse_poly("z1*z2", 2), config());
    CHECK_FALSE(c.violation());
    REQUIRE(c.faces.size() == 1);
    CHECK(c.faces[0].vacuous);
}

TEST_CASE("local tameness on vanishing subspaces") {
    const auto a = check_local_tame(f13, IndexSet(3, {3}), config());
    CHECK_FALSE(a.violation());
    CHECK(a.radii == std::vector<double>{1.0});

    CHECK_FALSE(check_local_tame(parse_poly("z1^2+z1*z3+z2^2*z3", 3), IndexSet(3, {3}), config()).violation());

    const auto c = check_local_tame(parse_poly("(z1+z2)^2*z3", 3), IndexSet(3, {3}), config());
    REQUIRE(c.violation());
    CHECK(c.certificate->fixed == IndexSet(3, {3}));
    CHECK(std::abs(c.certificate->point[2]) <= 1.0);
    CHECK_FALSE(c.radius_sensitive);

    CHECK_THROWS_AS(check_local_tame(f13, IndexSet(3, {1}), config()), std::invalid_argument);
}

TEST_CASE("pair checks on the three-variable family") {
    const Polynomial f = randomize_coefficients(f13, 42);
    const Polynomial g1 = randomize_coefficients(parse_poly("z1*z2+z2^2+z3^2", 3), 43);
    const Polynomial g2 = randomize_coefficients(parse_poly("z1^4+z2^4+z2^2*z3^4", 3), 44);
    const auto a = check_pair(f, g1, config());
    CHECK_FALSE(a.violation_condition1());
    CHECK_FALSE(a.violation_condition2a());
    CHECK(a.ci_fixed.empty());
    CHECK(a.tame_f.size() == 1);
    CHECK(a.tame_g.size() == 1);

    const auto b = check_pair(f, g2, config());
    CHECK_FALSE(b.violation_condition1());
    CHECK_FALSE(b.violation_condition2a());
    REQUIRE(b.ci_fixed.size() == 1);
    CHECK(b.ci_fixed[0].I == IndexSet(3, {3}));
    CHECK_FALSE(b.violation_condition2b());

    const auto c = check_pair(parse_poly("z1+z2", 2), parse_poly("z1+z2", 2), config());
    CHECK(c.violation_condition2a());
    REQUIRE(c.first_certificate());
    CHECK(c.first_certificate()->start <= 1);
}

TEST_CASE("searches are deterministic and monotone in the budget") {
    const Polynomial q = parse_poly("(z1+z2)^2+z3^2", 3);
    const auto a = check_nondegenerate(q, config(30));
    const auto b = check_nondegenerate(q, config(30));
    REQUIRE(a.violation());
    CHECK(a.certificate->point == b.certificate->point);
    CHECK(a.certificate->residual == b.certificate->residual);
    for (std::size_t i = 0; i < a.faces.size(); ++i) CHECK(a.faces[i].best_objective == b.faces[i].best_objective);

    for (int s1 : {1, 2, 5, 10}) {
        const auto small = find_torus_critical(parse_poly("(z1+z2)^2", 2), config(s1));
        if (!small.violation()) continue;
        const auto large = find_torus_critical(parse_poly("(z1+z2)^2", 2), config(4 * s1));
        REQUIRE(large.violation());
        CHECK(large.certificate->start == small.certificate->start);
        CHECK(large.certificate->point == small.certificate->point);
    }
    SearchConfig other = config(30);
    other.seed = 7;
    CHECK(check_nondegenerate(q, other).violation());
}

TEST_CASE("certificates are stable under the weighted torus action") {
    const Polynomial f = parse_poly("(z1+z2)^2*z3^2 + (z1+z2)^2 + z3^6", 3);
    const auto v = check_nondegenerate(f, config(50));
    REQUIRE(v.violation());
    const WeightVector& P = v.certificate->face_witness;
    const Polynomial q = face_function(f, P).face;
    for (double rho : {0.5, 2.0}) {
        const auto z = act(P, v.certificate->point, rho);
        CHECK(critical_residual_exact(q, z, {1, 2, 3}) < 1e-9);
    }
}

TEST_CASE("verdict depends on the face, not on the witness weight") {
    const Polynomial f = parse_poly("(z1+z2)^2+z3^2", 3);
    const Polynomial a = face_function(f, {1, 1, 2}).face;
    const Polynomial b = face_function(f, {2, 2, 5}).face;
    REQUIRE(a == b);
    const auto va = find_torus_critical(a, config(20));
    const auto vb = find_torus_critical(b, config(20));
    CHECK(va.violation() == vb.violation());
}

TEST_CASE("configuration validation") {
    SearchConfig c;
    c.starts = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SearchConfig{};
    c.residual_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SearchConfig{};
    c.ball_radius = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
