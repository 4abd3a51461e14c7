#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fgbar/polynomial.hpp"
#include "fgbar/rational.hpp"

namespace fgbar {

// Valid inequality <normal, x> >= offset of the Newton polyhedron.
struct Facet {
    std::vector<long long> normal;  // primitive, componentwise >= 0
    long long offset = 0;

    bool strictly_positive() const;
    // x_i >= 0
    bool is_coordinate() const;
    friend bool operator==(const Facet&, const Facet&) = default;
    friend auto operator<=>(const Facet&, const Facet&) = default;
};

// Gamma_+(h) = conv(supp h) + R_+^n with its irredundant facet description.
class NewtonPolyhedron {
public:
    NewtonPolyhedron(int n, std::vector<Exponent> generators, std::vector<Facet> facets);

    int dimension() const { return n_; }
    // Support points, in descending lexicographic order.
    const std::vector<Exponent>& generators() const { return generators_; }
    // Sorted by (normal, offset).
    const std::vector<Facet>& facets() const { return facets_; }

    // Membership in Gamma_+ via the facet inequalities.
    bool contains(std::span<const Rational> x) const;

private:
    int n_;
    std::vector<Exponent> generators_;
    std::vector<Facet> facets_;
};

NewtonPolyhedron newton_polyhedron(const Polynomial& p);

// A nonempty face of Gamma_+: conv(points) + cone(e_i : i in recession).
struct PolyhedronFace {
    std::vector<Exponent> points;  // support points lying on the face
    IndexSet recession;            // empty <=> compact
    int dim = 0;
    WeightVector witness;          // integer weight whose minimizing face is exactly this one

    bool compact() const { return recession.empty(); }
};
using CompactFace = PolyhedronFace;

// Every nonempty proper face, in deterministic order (by dimension, then points).
std::vector<PolyhedronFace> all_faces(const NewtonPolyhedron& N);

// Faces with a strictly positive supporting weight (the Newton boundary).
std::vector<CompactFace> compact_faces(const NewtonPolyhedron& N);

// Faces whose normal cone contains a weight P with I(P) = I exactly.
std::vector<PolyhedronFace> faces_for_I(const NewtonPolyhedron& N, const IndexSet& I);

bool is_convenient(const Polynomial& p);

struct RayHit {
    std::optional<Rational> r_star;  // x / r_star lies on the boundary of Gamma_+
    bool hits_compact_face = false;
};

RayHit ray_hit(const NewtonPolyhedron& N, std::span<const Rational> x);

// Gamma_++ (strict = false) or Int Gamma_++ (strict = true) membership.
bool in_gamma_pp(const NewtonPolyhedron& N, std::span<const Rational> x, bool strict);

std::vector<Rational> to_rational_point(std::span<const int> nu);

}  // namespace fgbar
