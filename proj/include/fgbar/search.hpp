#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgbar/hypotheses.hpp"
#include "fgbar/numeric_poly.hpp"
#include "fgbar/polynomial.hpp"

namespace fgbar {

struct SearchConfig {
    std::uint64_t seed = 42;
    int starts = 200;
    int max_iters = 100;
    double residual_tol = 1e-10;  // on the normalized squared objective
    double ball_radius = 1.0;     // bound on |z_I| for fixed coordinates
    int sample_count_fixed = 16;
    double log_box = 20.0;        // |Re log z_j| <= log_box, so |z_j| >= exp(-log_box)
    int max_n = kDefaultMaxN;

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

enum class CertificateKind { CriticalPoint, CiRankDrop };
std::string to_string(CertificateKind k);

struct Certificate {
    CertificateKind kind = CertificateKind::CriticalPoint;
    std::vector<Complex> point;  // full point in C*^n, fixed coordinates included
    double residual = 0.0;       // re-evaluated exactly at the rational point
    WeightVector face_witness;
    std::optional<IndexSet> fixed;  // coordinates held fixed (local tameness)
    int start = -1;
};

struct FaceReport {
    WeightVector witness;
    std::string face_f;
    std::string face_g;  // empty for single-function checks
    bool vacuous = false;
    std::string note;
    double best_objective = -1.0;  // lowest objective seen; -1 when not searched
    std::optional<Certificate> certificate;
};

struct Verdict {
    std::optional<Certificate> certificate;  // set iff a violation was found
    std::vector<FaceReport> faces;
    int starts = 0;
    std::uint64_t seed = 0;
    // Local tameness only: radii actually tested, and whether a violation
    // at the configured radius disappeared at a tenth of it.
    std::vector<double> radii;
    bool radius_sensitive = false;
    std::optional<Certificate> large_radius_certificate;

    bool violation() const { return certificate.has_value(); }
};

// Normalized objective sum_j |z_j dq/dz_j|^2 / (sum_k |a_k z^nu_k|)^2, exact
// at the dyadic rational point nearest to z (componentwise). Only the
// variables in `active` (1-based) enter the sum.
double critical_residual_exact(const Polynomial& q, const std::vector<Complex>& z, const std::vector<int>& active);
// |qf/Sf|^2 + |qg/Sg|^2 + sigma_min^2 of the normalized 2 x |active| log-Jacobian.
double ci_residual_exact(const Polynomial& qf, const Polynomial& qg, const std::vector<Complex>& z,
                         const std::vector<int>& active);

Verdict find_torus_critical(const Polynomial& q, const SearchConfig& cfg);
Verdict find_ci_degeneracy(const Polynomial& qf, const Polynomial& qg, const SearchConfig& cfg);

Verdict check_nondegenerate(const Polynomial& f, const SearchConfig& cfg);
// Requires I to be a vanishing subspace of f.
Verdict check_local_tame(const Polynomial& f, const IndexSet& I, const SearchConfig& cfg);
// Condition (2-a): f_P, g_P over the compact faces of Gamma_+(f g).
Verdict check_ci_faces(const Polynomial& f, const Polynomial& g, const SearchConfig& cfg);
// Condition (2-b) for one common vanishing subspace I.
Verdict check_ci_fixed(const Polynomial& f, const Polynomial& g, const IndexSet& I, const SearchConfig& cfg);

struct IndexedVerdict {
    IndexSet I;
    Verdict verdict;
};

struct PairSearch {
    Verdict nondegenerate_f;
    Verdict nondegenerate_g;
    std::vector<IndexedVerdict> tame_f;
    std::vector<IndexedVerdict> tame_g;
    Verdict ci_faces;                    // (2-a)
    std::vector<IndexedVerdict> ci_fixed;  // (2-b), one per common vanishing I

    bool violation_condition1() const;
    bool violation_condition2a() const { return ci_faces.violation(); }
    bool violation_condition2b() const;
    // First certificate in report order, if any.
    std::optional<Certificate> first_certificate() const;
};

PairSearch check_pair(const Polynomial& f, const Polynomial& g, const SearchConfig& cfg);

}  // namespace fgbar
