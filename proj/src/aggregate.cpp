#include "fgbar/aggregate.hpp"

#include <stdexcept>

namespace fgbar {

std::string to_string(Route r) {
    switch (r) {
    case Route::Sharp: return "(i)";
    case Route::Disjoint: return "(ii)";
    case Route::NotEstablished: return "none";
    case Route::Violation: return "violation";
    }
    return "?";
}

bool Aggregate::critical_value_caveat() const {
    for (const auto& r : critical_values)
        if (r.certificate) return true;
    return false;
}

Aggregate aggregate_hypotheses(const Polynomial& f, const Polynomial& g, const AggregateConfig& cfg) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("f and g must be nonzero");
    if (f.dimension() != g.dimension()) throw std::invalid_argument("f and g must have the same dimension");
    cfg.search.validate();
    const int max_n = cfg.search.max_n;

    Aggregate a;
    a.vanishing_f = vanishing_subspaces(f, max_n);
    a.vanishing_g = vanishing_subspaces(g, max_n);
    a.disjoint = disjointness(f, g, max_n);
    a.sharp = check_sharp(f, g);

    std::vector<WeightVector> rays = default_rays(f, g);
    for (const auto& P : cfg.extra_rays) {
        if (P.dimension() != f.dimension()) throw std::invalid_argument("ray " + P.to_string() + " has wrong dimension");
        rays.push_back(P);
    }
    if (!rays.empty()) {
        a.multiplicity = check_toric_multiplicity(f, g, rays);
        for (std::size_t k = default_rays(f, g).size(); k < a.multiplicity.size(); ++k)
            a.multiplicity[k].user_supplied = true;
    }
    a.strata = stratify(f, g, max_n);
    a.search = check_pair(f, g, cfg.search);

    const bool violation = a.search.first_certificate().has_value();
    if (violation) {
        a.route = Route::Violation;
        a.verdict = "hypotheses not established: violation certificate found";
        a.exit_code = 2;
    } else if (a.sharp.holds()) {
        a.route = Route::Sharp;
        a.verdict = "(i) satisfied";
        a.exit_code = 0;
    } else if (a.disjoint.disjoint) {
        a.route = Route::Disjoint;
        a.verdict = "(ii) satisfied (up to falsification budget)";
        a.exit_code = 0;
        for (double r : cfg.critical_value_radii)
            a.critical_values.push_back(nonzero_critical_value_search(f, g, r, cfg.sphere));
    } else {
        a.route = Route::NotEstablished;
        a.verdict = "hypotheses not established";
        a.exit_code = 1;
    }
    return a;
}

}  // namespace fgbar
