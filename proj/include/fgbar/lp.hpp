#pragma once

#include <vector>

#include "fgbar/rational.hpp"

namespace fgbar::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::GreaterEqual;
    Rational rhs;
};

// minimize <objective, x> subject to constraints, x >= 0.
struct Problem {
    int num_vars = 0;
    std::vector<Rational> objective;  // empty means pure feasibility
    std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    std::vector<Rational> x;
    Rational value;
};

// Two-phase dense simplex over exact rationals with Bland's rule
// (terminates without cycling).
Solution solve(const Problem& problem);

}  // namespace fgbar::lp
