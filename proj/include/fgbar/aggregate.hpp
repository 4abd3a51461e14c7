#pragma once

#include <string>
#include <vector>

#include "fgbar/hypotheses.hpp"
#include "fgbar/milnor.hpp"
#include "fgbar/search.hpp"

namespace fgbar {

struct AggregateConfig {
    SearchConfig search;
    std::vector<WeightVector> extra_rays;  // appended to the default rays
    // Route (ii) also assumes 0 is the only critical value of H near 0;
    // checked numerically on these spheres.
    std::vector<double> critical_value_radii{0.01, 0.1};
    SphereSearchConfig sphere;
};

enum class Route { Sharp, Disjoint, NotEstablished, Violation };
// "(i)", "(ii)", "none", "violation"
std::string to_string(Route r);

struct Aggregate {
    VanishingFamily vanishing_f;
    VanishingFamily vanishing_g;
    Disjointness disjoint;
    SharpVerdict sharp;
    std::vector<MultiplicityRow> multiplicity;
    Stratification strata;
    PairSearch search;
    // Only filled for route (ii).
    std::vector<SphereSearchReport> critical_values;

    Route route = Route::NotEstablished;
    std::string verdict;
    // 0 established, 1 not established, 2 violation certificate found.
    int exit_code = 1;

    bool critical_value_caveat() const;
};

Aggregate aggregate_hypotheses(const Polynomial& f, const Polynomial& g, const AggregateConfig& cfg);

}  // namespace fgbar
