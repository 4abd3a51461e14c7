#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fgbar/numeric_poly.hpp"
#include "fgbar/polynomial.hpp"

namespace fgbar {

// Gradient fields of log|H| and arg H for H = f * conj(g), on the complement
// of V(fg). With a = conj(df)/conj(f), b = conj(dg)/conj(g):
//   v1 = a + b,  v2 = i (a - b).
struct GradientPair {
    CVector v1;
    CVector v2;
    Point z;
    Complex f;
    Complex g;
};

// Throws DomainError when f(z) = 0 or g(z) = 0.
GradientPair gradient_fields(const Polynomial& f, const Polynomial& g, const Point& z);

// Real inner product on C^n = R^2n: Re sum a_j conj(b_j).
double real_inner(const CVector& a, const CVector& b);

// |FD - (Re<w,v1> + i Re<w,v2>)| for the central difference of log H(z + t w)
// at step 1e-6. w is normalized internally.
double logH_derivative_residual(const Polynomial& f, const Polynomial& g, const Point& z, const Point& w);

// Residuals of dbar(Re f) = conj(df)/2 and dbar(Im f) = (i/2) conj(df),
// finite differences against the holomorphic gradient, scaled by 1 + |df|.
struct SublemmaResidual {
    double real_part = 0.0;
    double imag_part = 0.0;
};
SublemmaResidual sublemma_residual(const Polynomial& f, const Point& z);

// |d q(z) - sum_j p_j z_j dq/dz_j(z)| / (1 + |q(z)|).
double euler_residual(const FaceData& q, const Point& z);

struct PolarDegrees {
    long long d_f = 0;
    long long d_g = 0;
    long long d_r = 0;  // d_f + d_g
    long long d_p = 0;  // d_f - d_g
};
PolarDegrees polar_degrees(const Polynomial& f, const Polynomial& g, const WeightVector& P);

// Relative residual of H_P(rho e^{i theta} o z) = rho^{d_r} e^{i d_p theta} H_P(z)
// with H_P = f_P conj(g_P). Throws DomainError when H_P(z) = 0.
double polar_action_residual(const Polynomial& f, const Polynomial& g, const WeightVector& P, const Point& z,
                             double rho, double theta);

enum class Dependence { Independent, Dependent, Borderline, Anomaly };
std::string to_string(Dependence d);

constexpr double kDefaultDepTol = 1e-8;

struct DependenceWitness {
    Dependence status = Dependence::Independent;
    double gram_det = 0.0;   // of the normalized {z, v1, v2}
    double lambda = 0.0;     // least-squares z ~ lambda v1 + mu v2 (not set if Independent)
    double mu = 0.0;
    double residual = 0.0;   // |z - lambda v1 - mu v2| / |z|
    // lambda re-solved at the projection of z onto span(v1, v2).
    double lambda_refined = 0.0;
};

// Dependent iff residual <= dep_tol, Independent iff gram_det > dep_tol,
// Borderline otherwise. Anomaly when v1 = v2 = 0.
DependenceWitness dependence_witness(const Polynomial& f, const Polynomial& g, const Point& z,
                                     double dep_tol = kDefaultDepTol);

struct LemmaSampleConfig {
    double radius = 0.1;
    int samples = 200;       // uniform samples in the punctured ball
    int locus_starts = 100;  // Gauss-Newton runs onto the dependence locus on |z| = radius
    double dep_tol = kDefaultDepTol;
    std::uint64_t seed = 42;
    // Off-variety floor: |f(z)|, |g(z)| > floor * (sum of |coefficients|).
    double floor = 1e-8;
};

struct LemmaSample {
    Point z;
    DependenceWitness witness;
    bool from_locus = false;
};

struct LemmaPositiveReport {
    double radius = 0.0;
    int sampled = 0;
    int rejected = 0;  // too close to V(H)
    int independent = 0;
    int borderline = 0;
    std::vector<LemmaSample> dependent;
    std::optional<double> min_lambda;
    std::optional<LemmaSample> violation;  // first dependent sample with lambda <= 0
    int unstable = 0;                      // lambda moved by >= 1% under refinement
    // Re<v1, v2> / (|v1| |v2|) over all accepted samples; logged only.
    double cos_v1v2_min = 0.0;
    double cos_v1v2_max = 0.0;
    double cos_v1v2_mean_abs = 0.0;
};

LemmaPositiveReport sample_lemma_positive(const Polynomial& f, const Polynomial& g, const LemmaSampleConfig& cfg);

struct SphereSearchConfig {
    std::uint64_t seed = 42;
    int starts = 200;
    int max_iters = 100;
    double tol = 1e-10;   // on the normalized squared objective
    double floor = 1e-8;  // as in LemmaSampleConfig
};

struct SphereSearchReport {
    double radius = 0.0;
    int starts = 0;
    int rejected = 0;
    double min_objective = -1.0;  // -1 when no start was usable
    std::optional<Point> certificate;
    double certificate_objective = 0.0;
    int certificate_start = -1;
    Complex value;  // H at the certificate
};

// Objective |v2 - (v2 . zhat) zhat|^2 / (|v1|^2 + |v2|^2) on the sphere |z| = r;
// zero exactly at critical points of H/|H| restricted to the sphere.
double sphere_phi_objective(const Polynomial& f, const Polynomial& g, const Point& z);

// Throws std::invalid_argument for r <= 0.
SphereSearchReport sphere_phi_critical_search(const Polynomial& f, const Polynomial& g, double r,
                                              const SphereSearchConfig& cfg);

// Critical points of H itself off V(H): v1 and v2 R-dependent, objective
// |v2 - (v2 . v1hat) v1hat|^2 / (|v1|^2 + |v2|^2) (roles swapped when
// |v2| > |v1|), searched on |z| = r. A certificate carries a nonzero
// critical value H(z).
SphereSearchReport nonzero_critical_value_search(const Polynomial& f, const Polynomial& g, double r,
                                                 const SphereSearchConfig& cfg);

// Max residuals of the identities over random samples, for reports.
struct IdentitySummary {
    int samples = 0;
    double euler_max = 0.0;
    double polar_max = 0.0;
    double logH_max = 0.0;
    double sublemma_max = 0.0;
    int euler_samples = 0;
    int polar_samples = 0;
};
IdentitySummary identity_summary(const Polynomial& f, const Polynomial& g, int samples, std::uint64_t seed);

}  // namespace fgbar
