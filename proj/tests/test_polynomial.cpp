#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgbar/error.hpp"
#include "fgbar/polynomial.hpp"
#include "fgbar/rng.hpp"
#include "test_support.hpp"

using namespace fgbar;

namespace {

GaussRational gi(long re, long im = 0) { return {Rational(re), Rational(im)}; }

}  // namespace

TEST_CASE("parse: expansion of the three-term example") {
    const Polynomial p = parse_poly("z1^2 + z2^2 + z2*z3", 3);
    REQUIRE(p.term_count() == 3);
    CHECK(p.terms().count(Exponent{2, 0, 0}) == 1);
    CHECK(p.terms().count(Exponent{0, 2, 0}) == 1);
    CHECK(p.terms().count(Exponent{0, 1, 1}) == 1);
}

TEST_CASE("parse: complex literal coefficient") {
    const Polynomial p = parse_poly("(1+i)*z1", 2);
    REQUIRE(p.term_count() == 1);
    CHECK(p.terms().begin()->first == Exponent{1, 0});
    CHECK(p.terms().begin()->second == gi(1, 1));
}

TEST_CASE("parse: errors") {
    CHECK_THROWS_AS(parse_poly("z0 + z1", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z3", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z1 +", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z1 - z1", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z1 / z2", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z1^0", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("", 2), ParseError);
    CHECK(parse_poly(" 0 ", 2).is_zero());

    try {
        parse_poly("z1 + z2 $", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
}

TEST_CASE("parse: rationals, powers of sums, whitespace") {
    const Polynomial p = parse_poly(" 1/2 * z1 - 3/4*z2 ", 2);
    CHECK(p.terms().at(Exponent{1, 0}) == GaussRational(make_rational(1, 2)));
    CHECK(p.terms().at(Exponent{0, 1}) == GaussRational(make_rational(-3, 4)));
    const Polynomial sq = parse_poly("(z1+z2)^2", 2);
    CHECK(to_string(sq) == "z1^2+2*z1*z2+z2^2");
    CHECK(parse_poly("(1/2-3/4*i)*z1*z2^3", 2).terms().begin()->second ==
          GaussRational(make_rational(1, 2), make_rational(-3, 4)));
}

TEST_CASE("printer emits the parse grammar in descending lexicographic order") {
    CHECK(to_string(parse_poly("z2*z3 + z2^2 + z1^2", 3)) == "z1^2+z2^2+z2*z3");
    CHECK(to_string(parse_poly("-z1 + (2*i)*z2 - 5", 2)) == "-z1+(2*i)*z2-5");
    CHECK(to_string(parse_poly("i*z1 - i*z2", 2)) == "(i)*z1+(-i)*z2");
    CHECK(to_string(parse_poly("(1-i)*z1^2*z2", 2)) == "(1-i)*z1^2*z2");
}

TEST_CASE("print/parse is idempotent on random polynomials") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 5));
        const Polynomial p = test::random_polynomial(rng, n, 8, 4, true);
        const std::string once = to_string(p);
        const Polynomial q = parse_poly(once, n);
        CHECK(q == p);
        CHECK(to_string(q) == once);
    }
}

TEST_CASE("evaluate") {
    const std::vector<GaussRational> a{gi(1), gi(2)};
    CHECK(evaluate(parse_poly("z1+z2", 2), std::span<const GaussRational>(a)) == gi(3));
    const std::vector<GaussRational> b{gi(0, 1), gi(1)};
    CHECK(evaluate(parse_poly("z1*z2", 2), std::span<const GaussRational>(b)) == gi(0, 1));
    const std::vector<GaussRational> c{gi(1), gi(1), gi(1)};
    CHECK(evaluate(parse_poly("z1^2+z2^2+z2*z3", 3), std::span<const GaussRational>(c)) == gi(3));

    const std::vector<std::complex<double>> zc{{0.0, 1.0}, {1.0, 0.0}};
    const auto v = evaluate(parse_poly("z1*z2", 2), std::span<const std::complex<double>>(zc));
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(1.0));

    CHECK_THROWS_AS(evaluate(parse_poly("z1", 2), std::span<const GaussRational>(c)),
                    std::invalid_argument);
}

TEST_CASE("partial derivatives") {
    const Polynomial p = parse_poly("z1^2+z2*z3", 3);
    CHECK(partial_derivative(p, 1) == parse_poly("2*z1", 3));
    CHECK(partial_derivative(p, 3) == parse_poly("z2", 3));
    CHECK(partial_derivative(parse_poly("5", 1), 1).is_zero());
    CHECK_THROWS_AS(partial_derivative(p, 0), std::out_of_range);
    CHECK_THROWS_AS(partial_derivative(p, 4), std::out_of_range);
}

TEST_CASE("restriction to coordinate subspaces") {
    const Polynomial f = parse_poly("z1^2+z2^2+z2*z3", 3);
    CHECK(restrict(f, IndexSet(3, {3})).is_zero());
    CHECK(restrict(f, IndexSet(3, {1, 2})) == parse_poly("z1^2+z2^2", 3));
    const Polynomial g1 = parse_poly("z1*z2+z2^2+z3^2", 3);
    CHECK(restrict(g1, IndexSet(3, {1})).is_zero());
    CHECK_THROWS(restrict(f, IndexSet(3, 0U)));
}

TEST_CASE("weighted degree and face functions") {
    const Polynomial f = parse_poly("z1^2+z2^2+z2*z3", 3);
    CHECK(weighted_degree(f, {1, 1, 1}) == 2);
    CHECK(weighted_degree(f, {1, 1, 0}) == 1);
    CHECK(weighted_degree(f, {0, 0, 1}) == 0);

    FaceData a = face_function(f, {1, 1, 0});
    CHECK(a.face == parse_poly("z2*z3", 3));
    CHECK(a.degree == 1);
    FaceData b = face_function(f, {2, 1, 1});
    CHECK(b.face == parse_poly("z2^2+z2*z3", 3));
    CHECK(b.degree == 2);

    const Polynomial h = parse_poly("z1^3 + 2*z1*z2^2 - z3^3", 3);
    FaceData c = face_function(h, {1, 1, 1});
    CHECK(c.face == h);
    CHECK(c.degree == 3);

    CHECK_THROWS_AS(weighted_degree(Polynomial(2), {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({1, -1}), std::invalid_argument);
}

TEST_CASE("pullback by the power map") {
    CHECK(pullback_power(parse_poly("z1+z2", 2), 3) == parse_poly("z1^3+z2^3", 2));
    CHECK(pullback_power(parse_poly("z1*z2^2", 2), 2) == parse_poly("z1^2*z2^4", 2));
    const Polynomial f = parse_poly("z1+z2", 2);
    CHECK(weighted_degree(pullback_power(f, 3), {1, 2}) == 3 * weighted_degree(f, {1, 2}));
    CHECK_THROWS_AS(pullback_power(f, 0), std::invalid_argument);
}

TEST_CASE("face properties on random polynomials") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng.integer(1, 4));
        const Polynomial p = test::random_polynomial(rng, n, 7, 5, false);
        const WeightVector P = test::random_weight(rng, n, 0, 6);
        const FaceData fd = face_function(p, P);

        // idempotence
        const FaceData again = face_function(fd.face, P);
        CHECK(again.face == fd.face);
        CHECK(again.degree == fd.degree);

        // support split
        std::size_t above = 0;
        for (const auto& [e, c] : p.terms()) {
            const long long d = P.pairing(e);
            CHECK(d >= fd.degree);
            if (d > fd.degree) ++above;
            else CHECK(fd.face.terms().count(e) == 1);
        }
        CHECK(above + fd.face.term_count() == p.term_count());

        // scaling
        const long long c = rng.integer(1, 5);
        CHECK(weighted_degree(p, P.scaled(c)) == c * fd.degree);
        CHECK(face_function(p, P.scaled(c)).face == fd.face);

        // pullback law
        for (int m : {1, 2, 3, 5}) CHECK(weighted_degree(pullback_power(p, m), P) == m * fd.degree);

        // Euler identity, exactly as polynomials
        Polynomial euler(n);
        for (int j = 1; j <= n; ++j) {
            Exponent e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(j - 1)] = 1;
            euler += Polynomial::monomial(n, e, GaussRational(make_rational(P[static_cast<std::size_t>(j - 1)]))) *
                     partial_derivative(fd.face, j);
        }
        CHECK(euler == fd.face.scaled(GaussRational(make_rational(fd.degree))));
    }
}

TEST_CASE("restriction vanishing is inherited by subsets") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 5));
        const Polynomial p = test::random_polynomial(rng, n, 6, 3, false);
        const auto full = IndexSet::full(n).mask();
        for (std::uint32_t m = 1; m <= full; ++m) {
            if (!restrict(p, IndexSet(n, m)).is_zero()) continue;
            for (std::uint32_t s = (m - 1) & m; s != 0; s = (s - 1) & m)
                CHECK(restrict(p, IndexSet(n, s)).is_zero());
        }
    }
}

TEST_CASE("substitution of fixed coordinates") {
    const Polynomial f = parse_poly("z1^2 + 3*z1*z3 + z2*z3^2", 3);
    std::vector<GaussRational> vals(3);
    vals[2] = gi(2);
    const Polynomial s = substitute(f, IndexSet(3, {3}), vals);
    CHECK(s == parse_poly("z1^2 + 6*z1 + 4*z2", 3));
}

TEST_CASE("randomized coefficients keep the support and are reproducible") {
    const Polynomial f = parse_poly("z1^2+z2^2+z2*z3", 3);
    const Polynomial a = randomize_coefficients(f, 42);
    const Polynomial b = randomize_coefficients(f, 42);
    CHECK(a == b);
    CHECK(a.support() == f.support());
    CHECK(randomize_coefficients(f, 43) != a);
}
