#include "fgbar/hypotheses.hpp"

#include <algorithm>
#include <stdexcept>

namespace fgbar {
namespace {

void check_pair(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("f and g must be nonzero");
    if (f.dimension() != g.dimension()) throw std::invalid_argument("f and g have different dimensions");
}

std::uint32_t support_mask(const Exponent& e) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) m |= 1U << i;
    return m;
}

std::vector<Exponent> vertices_of_boundary(const Polynomial& p) {
    std::vector<Exponent> out;
    for (const auto& face : compact_faces(newton_polyhedron(p)))
        if (face.dim == 0) out.push_back(face.points.front());
    return out;
}

std::optional<Exponent> first_outside(const std::vector<Exponent>& vertices, const NewtonPolyhedron& N) {
    for (const auto& v : vertices)
        if (!in_gamma_pp(N, to_rational_point(v), true)) return v;
    return std::nullopt;
}

}  // namespace

std::vector<IndexSet> all_index_sets(int n, int max_n) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (n > max_n || n > IndexSet::kMaxDimension)
        throw std::invalid_argument("subset enumeration needs n <= " + std::to_string(std::min(max_n, IndexSet::kMaxDimension)) +
                                    " (got n = " + std::to_string(n) + "); raise --max-n");
    std::vector<IndexSet> out;
    const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1U);
    for (std::uint32_t m = 1; m <= full && m != 0; ++m) out.emplace_back(n, m);
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members() < b.members();
    });
    return out;
}

bool VanishingFamily::contains(const IndexSet& I) const {
    return std::find(all.begin(), all.end(), I) != all.end();
}

VanishingFamily vanishing_subspaces(const Polynomial& p, int max_n) {
    if (p.is_zero()) throw std::invalid_argument("vanishing subspaces of the zero polynomial are undefined");
    std::vector<std::uint32_t> supports;
    for (const auto& [e, c] : p.terms()) supports.push_back(support_mask(e));
    VanishingFamily fam;
    for (const auto& I : all_index_sets(p.dimension(), max_n)) {
        const bool vanishes = std::all_of(supports.begin(), supports.end(),
                                          [&](std::uint32_t s) { return (s & ~I.mask()) != 0; });
        if (vanishes) fam.all.push_back(I);
    }
    for (const auto& I : fam.all) {
        const bool maximal = std::none_of(fam.all.begin(), fam.all.end(), [&](const IndexSet& J) {
            return !(J == I) && I.is_subset_of(J);
        });
        if (maximal) fam.maximal.push_back(I);
    }
    return fam;
}

Disjointness disjointness(const Polynomial& f, const Polynomial& g, int max_n) {
    check_pair(f, g);
    const auto vf = vanishing_subspaces(f, max_n);
    const auto vg = vanishing_subspaces(g, max_n);
    Disjointness d;
    for (const auto& I : vf.all) {
        if (vg.contains(I)) {
            d.disjoint = false;
            d.witness = I;
            break;
        }
    }
    return d;
}

std::string to_string(SharpDirection d) {
    switch (d) {
        case SharpDirection::FInsideG: return "Gamma(f) in Int Gamma_++(g)";
        case SharpDirection::GInsideF: return "Gamma(g) in Int Gamma_++(f)";
        case SharpDirection::Both: return "both";
        case SharpDirection::Neither: return "neither";
    }
    return "neither";
}

SharpVerdict check_sharp(const Polynomial& f, const Polynomial& g) {
    check_pair(f, g);
    const auto Nf = newton_polyhedron(f);
    const auto Ng = newton_polyhedron(g);
    // Int Gamma_++ is convex, so testing the vertices of Gamma is enough.
    SharpVerdict v;
    v.f_vertex_outside = first_outside(vertices_of_boundary(f), Ng);
    v.g_vertex_outside = first_outside(vertices_of_boundary(g), Nf);
    const bool fg = !v.f_vertex_outside;
    const bool gf = !v.g_vertex_outside;
    v.direction = fg && gf ? SharpDirection::Both
                : fg       ? SharpDirection::FInsideG
                : gf       ? SharpDirection::GInsideF
                           : SharpDirection::Neither;
    return v;
}

std::vector<WeightVector> default_rays(const Polynomial& f, const Polynomial& g) {
    check_pair(f, g);
    std::vector<WeightVector> rays;
    const auto N = newton_polyhedron(f * g);
    for (const auto& facet : N.facets())
        if (facet.strictly_positive()) rays.emplace_back(facet.normal);
    return rays;
}

std::vector<MultiplicityRow> check_toric_multiplicity(const Polynomial& f, const Polynomial& g,
                                                      const std::vector<WeightVector>& rays) {
    check_pair(f, g);
    if (rays.empty()) throw std::invalid_argument("toric multiplicity check needs at least one ray");
    std::vector<MultiplicityRow> rows;
    for (const auto& P : rays) {
        if (P.dimension() != f.dimension()) throw std::invalid_argument("ray " + P.to_string() + " has the wrong dimension");
        rows.push_back({P, weighted_degree(f, P), weighted_degree(g, P), false});
    }
    return rows;
}

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::BothNonzero: return "(a)";
        case CaseTag::FVanishes: return "(b)";
        case CaseTag::GVanishes: return "(b')";
        case CaseTag::BothVanish: return "(c)";
    }
    return "(a)";
}

CaseTag classify_case(const Polynomial& f, const Polynomial& g, const IndexSet& I) {
    check_pair(f, g);
    const bool fz = restrict(f, I).is_zero();
    const bool gz = restrict(g, I).is_zero();
    if (fz && gz) return CaseTag::BothVanish;
    if (fz) return CaseTag::FVanishes;
    if (gz) return CaseTag::GVanishes;
    return CaseTag::BothNonzero;
}

Stratification stratify(const Polynomial& f, const Polynomial& g, int max_n) {
    check_pair(f, g);
    Stratification out;
    for (const auto& I : all_index_sets(f.dimension(), max_n)) {
        StratumRow row;
        row.I = I;
        row.tag = classify_case(f, g, I);
        const Polynomial fI = restrict(f, I);
        const Polynomial gI = restrict(g, I);
        row.f_monomial = fI.is_monomial();
        row.g_monomial = gI.is_monomial();
        switch (row.tag) {
            case CaseTag::BothNonzero:
                row.strata = {{"T_I", false},
                              {"Vf*_I", row.f_monomial},
                              {"Vg*_I", row.g_monomial},
                              {"Vf∩Vg*_I", row.f_monomial || row.g_monomial}};
                break;
            case CaseTag::FVanishes: row.strata = {{"T_I", false}, {"Vg*_I", row.g_monomial}}; break;
            case CaseTag::GVanishes: row.strata = {{"T_I", false}, {"Vf*_I", row.f_monomial}}; break;
            case CaseTag::BothVanish: row.strata = {{"T_I", false}}; break;
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace fgbar
