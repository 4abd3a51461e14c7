#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgbar/newton.hpp"
#include "fgbar/polynomial.hpp"

namespace fgbar {

// Default cap on n for the 2^n subset enumerations.
inline constexpr int kDefaultMaxN = 16;

// Index sets I with p^I == 0. `all` is downward closed; `maximal` holds its
// inclusion-maximal members. Both are ordered by (size, members).
struct VanishingFamily {
    std::vector<IndexSet> all;
    std::vector<IndexSet> maximal;

    bool contains(const IndexSet& I) const;
};

VanishingFamily vanishing_subspaces(const Polynomial& p, int max_n = kDefaultMaxN);

struct Disjointness {
    bool disjoint = true;
    std::optional<IndexSet> witness;  // a shared vanishing I (the first in order)
};

Disjointness disjointness(const Polynomial& f, const Polynomial& g, int max_n = kDefaultMaxN);

enum class SharpDirection { FInsideG, GInsideF, Both, Neither };
std::string to_string(SharpDirection d);

struct SharpVerdict {
    SharpDirection direction = SharpDirection::Neither;
    // First vertex of Gamma(f) outside Int Gamma_++(g), and symmetrically.
    std::optional<Exponent> f_vertex_outside;
    std::optional<Exponent> g_vertex_outside;

    bool holds() const { return direction != SharpDirection::Neither; }
};

SharpVerdict check_sharp(const Polynomial& f, const Polynomial& g);

struct MultiplicityRow {
    WeightVector P;
    long long d_f = 0;
    long long d_g = 0;
    bool user_supplied = false;

    bool equal() const { return d_f == d_g; }
};

// Strictly positive primitive facet normals of Gamma_+(f*g).
std::vector<WeightVector> default_rays(const Polynomial& f, const Polynomial& g);

std::vector<MultiplicityRow> check_toric_multiplicity(const Polynomial& f, const Polynomial& g,
                                                      const std::vector<WeightVector>& rays);

enum class CaseTag { BothNonzero, FVanishes, GVanishes, BothVanish };
// "(a)", "(b)", "(b')", "(c)"
std::string to_string(CaseTag t);

CaseTag classify_case(const Polynomial& f, const Polynomial& g, const IndexSet& I);

struct Stratum {
    std::string kind;    // "T_I", "Vf*_I", "Vg*_I", "Vf∩Vg*_I"
    bool empty = false;  // forced empty because a restriction is a monomial
};

struct StratumRow {
    IndexSet I;
    CaseTag tag = CaseTag::BothNonzero;
    std::vector<Stratum> strata;
    bool f_monomial = false;  // f^I is a monomial, so V*I(f) is empty
    bool g_monomial = false;
};

using Stratification = std::vector<StratumRow>;

// One row per nonempty I, ordered by (size, members).
Stratification stratify(const Polynomial& f, const Polynomial& g, int max_n = kDefaultMaxN);

// Nonempty subsets of {1..n} ordered by (size, members).
std::vector<IndexSet> all_index_sets(int n, int max_n = kDefaultMaxN);

}  // namespace fgbar
