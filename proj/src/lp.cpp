#include "fgbar/lp.hpp"

#include <optional>
#include <stdexcept>

namespace fgbar::lp {
namespace {

class Tableau {
public:
    // rows_[i] has cols_ + 1 entries; the last is the right-hand side.
    std::vector<std::vector<Rational>> rows;
    std::vector<int> basis;
    int cols = 0;

    void pivot(int r, int c) {
        auto& pr = rows[static_cast<std::size_t>(r)];
        const Rational inv = 1 / pr[static_cast<std::size_t>(c)];
        for (auto& v : pr) v *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            const Rational f = rows[i][static_cast<std::size_t>(c)];
            if (sgn(f) == 0) continue;
            for (std::size_t k = 0; k < pr.size(); ++k)
                if (sgn(pr[k]) != 0) rows[i][k] -= f * pr[k];
        }
        basis[static_cast<std::size_t>(r)] = c;
    }

    // Minimizes cost over columns allowed[c]; returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // Reduced costs: c_j - sum_i c_B(i) a_ij.
            std::optional<int> entering;
            for (int c = 0; c < cols && !entering; ++c) {
                if (!allowed[static_cast<std::size_t>(c)] || is_basic(c)) continue;
                Rational red = cost[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < rows.size(); ++i)
                    red -= cost[static_cast<std::size_t>(basis[i])] * rows[i][static_cast<std::size_t>(c)];
                if (sgn(red) < 0) entering = c;  // Bland: lowest index
            }
            if (!entering) return true;
            const auto c = static_cast<std::size_t>(*entering);
            std::optional<int> leaving;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (sgn(rows[i][c]) <= 0) continue;
                Rational ratio = rows[i].back() / rows[i][c];
                if (!leaving || ratio < best ||
                    (ratio == best && basis[i] < basis[static_cast<std::size_t>(*leaving)])) {
                    leaving = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }

    bool is_basic(int c) const {
        for (int b : basis)
            if (b == c) return true;
        return false;
    }
};

}  // namespace

Solution solve(const Problem& problem) {
    const int nv = problem.num_vars;
    if (nv < 0) throw std::invalid_argument("lp: negative variable count");
    if (!problem.objective.empty() && static_cast<int>(problem.objective.size()) != nv)
        throw std::invalid_argument("lp: objective size mismatch");

    // Normalize to rhs >= 0.
    std::vector<Constraint> cons = problem.constraints;
    for (auto& c : cons) {
        if (static_cast<int>(c.coeffs.size()) != nv) throw std::invalid_argument("lp: row size mismatch");
        if (sgn(c.rhs) < 0) {
            for (auto& v : c.coeffs) v = -v;
            c.rhs = -c.rhs;
            if (c.relation == Relation::LessEqual) {
                c.relation = Relation::GreaterEqual;
            } else if (c.relation == Relation::GreaterEqual) {
                c.relation = Relation::LessEqual;
            }
        }
    }

    // Column layout: original | slack/surplus | artificial.
    int n_slack = 0;
    int n_art = 0;
    for (const auto& c : cons) {
        if (c.relation != Relation::Equal) ++n_slack;
        if (c.relation != Relation::LessEqual) ++n_art;
    }
    Tableau t;
    t.cols = nv + n_slack + n_art;
    int slack = nv;
    int art = nv + n_slack;
    for (const auto& c : cons) {
        std::vector<Rational> row(static_cast<std::size_t>(t.cols + 1));
        for (int j = 0; j < nv; ++j) row[static_cast<std::size_t>(j)] = c.coeffs[static_cast<std::size_t>(j)];
        row.back() = c.rhs;
        int basic = -1;
        if (c.relation == Relation::LessEqual) {
            row[static_cast<std::size_t>(slack)] = 1;
            basic = slack++;
        } else {
            if (c.relation == Relation::GreaterEqual) row[static_cast<std::size_t>(slack++)] = -1;
            row[static_cast<std::size_t>(art)] = 1;
            basic = art++;
        }
        t.rows.push_back(std::move(row));
        t.basis.push_back(basic);
    }

    // Phase 1.
    std::vector<Rational> cost1(static_cast<std::size_t>(t.cols));
    for (int c = nv + n_slack; c < t.cols; ++c) cost1[static_cast<std::size_t>(c)] = 1;
    std::vector<bool> all(static_cast<std::size_t>(t.cols), true);
    t.optimize(cost1, all);
    Rational infeas = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] >= nv + n_slack) infeas += t.rows[i].back();
    Solution sol;
    if (sgn(infeas) > 0) {
        sol.status = Status::Infeasible;
        return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < nv + n_slack) {
            ++i;
            continue;
        }
        int col = -1;
        for (int c = 0; c < nv + n_slack && col < 0; ++c)
            if (sgn(t.rows[i][static_cast<std::size_t>(c)]) != 0) col = c;
        if (col >= 0) {
            t.pivot(static_cast<int>(i), col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2.
    std::vector<Rational> cost2(static_cast<std::size_t>(t.cols));
    for (int j = 0; j < nv && !problem.objective.empty(); ++j)
        cost2[static_cast<std::size_t>(j)] = problem.objective[static_cast<std::size_t>(j)];
    std::vector<bool> allowed(static_cast<std::size_t>(t.cols), false);
    for (int c = 0; c < nv + n_slack; ++c) allowed[static_cast<std::size_t>(c)] = true;
    if (!t.optimize(cost2, allowed)) {
        sol.status = Status::Unbounded;
        return sol;
    }
    sol.status = Status::Optimal;
    sol.x.assign(static_cast<std::size_t>(nv), Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < nv) sol.x[static_cast<std::size_t>(t.basis[i])] = t.rows[i].back();
    sol.value = 0;
    for (int j = 0; j < nv && !problem.objective.empty(); ++j)
        sol.value += problem.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
    return sol;
}

}  // namespace fgbar::lp
