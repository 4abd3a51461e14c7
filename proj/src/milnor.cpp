#include "fgbar/milnor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fgbar/error.hpp"
#include "fgbar/newton.hpp"
#include "fgbar/rng.hpp"

namespace fgbar {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// Tags for Rng::stream, distinct from the search module's.
enum : std::uint64_t { kTagBall = 101, kTagLocus = 102, kTagSphere = 103, kTagIdentity = 104, kTagCritical = 105 };

double coefficient_scale(const Polynomial& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s += std::abs(c.to_complex());
    return s;
}

double term_scale(const Polynomial& p, const Point& z) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s += std::abs(evaluate(Polynomial::monomial(p.dimension(), e, c), z));
    return s;
}

CVector as_vector(const Point& z) {
    CVector v(static_cast<Eigen::Index>(z.size()));
    for (std::size_t j = 0; j < z.size(); ++j) v[static_cast<Eigen::Index>(j)] = z[j];
    return v;
}

Point as_point(const CVector& v) { return Point(v.data(), v.data() + v.size()); }

CVector random_direction(Rng& rng, int n) {
    CVector v(n);
    for (int j = 0; j < n; ++j) v[j] = Complex(rng.normal(), rng.normal());
    return v / v.norm();
}

// Uniform in the ball of radius r in C^n = R^2n.
CVector ball_point(Rng& rng, int n, double r) {
    return random_direction(rng, n) * (r * std::pow(rng.uniform(), 1.0 / (2.0 * n)));
}

struct Fields {
    ComplexPolynomial f, g;
    double floor_f = 0.0, floor_g = 0.0;

    Fields(const Polynomial& pf, const Polynomial& pg, double floor)
        : f(pf), g(pg), floor_f(floor * coefficient_scale(pf)), floor_g(floor * coefficient_scale(pg)) {}

    bool off_variety(const Point& z) const {
        return std::abs(f.value(z)) > floor_f && std::abs(g.value(z)) > floor_g;
    }

    // v1, v2 without domain checks; callers test off_variety first.
    std::pair<CVector, CVector> eval(const Point& z) const {
        const CVector a = f.gradient(z).conjugate() / std::conj(f.value(z));
        const CVector b = g.gradient(z).conjugate() / std::conj(g.value(z));
        return {a + b, kI * (a - b)};
    }
};

// Least squares z ~ lambda v1 + mu v2 over R; minimum-norm when v1, v2 are
// R-dependent.
std::pair<double, double> solve_real(const CVector& z, const CVector& v1, const CVector& v2) {
    const Eigen::Index n = z.size();
    Eigen::MatrixXd A(2 * n, 2);
    Eigen::VectorXd b(2 * n);
    A.col(0) << v1.real(), v1.imag();
    A.col(1) << v2.real(), v2.imag();
    b << z.real(), z.imag();
    const Eigen::Vector2d x = A.completeOrthogonalDecomposition().solve(b);
    return {x[0], x[1]};
}

// z is normalized on its own, v1 and v2 by a common factor, so that a
// vanishing v2 is not blown up to a unit vector.
double gram_det_normalized(const CVector& z, const CVector& v1, const CVector& v2) {
    const double sv = std::sqrt(v1.squaredNorm() + v2.squaredNorm());
    const CVector u[3] = {z / z.norm(), v1 / sv, v2 / sv};
    Eigen::Matrix3d G;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) G(a, b) = real_inner(u[a], u[b]);
    return std::max(G.determinant(), 0.0);
}

// Tangential part of v2 on the sphere through z, normalized.
CVector sphere_residual(const Fields& F, const Point& z) {
    const auto [v1, v2] = F.eval(z);
    const CVector Z = as_vector(z);
    const CVector zh = Z / Z.norm();
    const CVector t = v2 - real_inner(v2, zh) * zh;
    const double s = std::sqrt(v1.squaredNorm() + v2.squaredNorm());
    return t / s;
}

Eigen::VectorXd realify(const CVector& v) {
    Eigen::VectorXd r(2 * v.size());
    r << v.real(), v.imag();
    return r;
}

CVector complexify(const Eigen::VectorXd& r) {
    const Eigen::Index n = r.size() / 2;
    CVector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = Complex(r[j], r[n + j]);
    return v;
}

// Newton steps onto {u : u = a w1(u) + b w2(u), |u| = 1} where w = s v(s u).
// Returns the point s u when the residual drops below 1e-13.
std::optional<CVector> locus_newton(const Fields& F, CVector u, double s) {
    const Eigen::Index n = u.size();
    auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) -> bool {
        const CVector uu = complexify(x.head(2 * n));
        const Point z = as_point(uu * s);
        if (!F.off_variety(z)) return false;
        const auto [v1, v2] = F.eval(z);
        out.resize(2 * n + 1);
        out.head(2 * n) = realify(uu - x[2 * n] * s * v1 - x[2 * n + 1] * s * v2);
        out[2 * n] = uu.squaredNorm() - 1.0;
        return out.allFinite();
    };
    Eigen::VectorXd x(2 * n + 2);
    {
        const Point z = as_point(u * s);
        if (!F.off_variety(z)) return std::nullopt;
        const auto [v1, v2] = F.eval(z);
        const auto [a, b] = solve_real(u, s * v1, s * v2);
        x << realify(u), a, b;
    }
    Eigen::VectorXd r;
    if (!residual(x, r)) return std::nullopt;
    for (int it = 0; it < 60 && r.norm() > 1e-13; ++it) {
        Eigen::MatrixXd J(2 * n + 1, 2 * n + 2);
        for (Eigen::Index k = 0; k < 2 * n + 2; ++k) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
            Eigen::VectorXd xp = x, xm = x, rp, rm;
            xp[k] += h;
            xm[k] -= h;
            if (!residual(xp, rp) || !residual(xm, rm)) return std::nullopt;
            J.col(k) = (rp - rm) / (2.0 * h);
        }
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
        // Backtrack on the residual norm.
        double t = 1.0;
        bool moved = false;
        for (int k = 0; k < 20; ++k, t *= 0.5) {
            Eigen::VectorXd rn;
            const Eigen::VectorXd xn = x + t * step;
            if (residual(xn, rn) && rn.norm() < r.norm()) {
                x = xn;
                r = rn;
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
    }
    if (r.norm() > 1e-13) return std::nullopt;
    return complexify(x.head(2 * n)) * s;
}

}  // namespace

double real_inner(const CVector& a, const CVector& b) { return (a.array() * b.conjugate().array()).sum().real(); }

GradientPair gradient_fields(const Polynomial& f, const Polynomial& g, const Point& z) {
    if (static_cast<int>(z.size()) != f.dimension() || f.dimension() != g.dimension())
        throw std::invalid_argument("point dimension mismatch");
    const ComplexPolynomial cf(f), cg(g);
    GradientPair out;
    out.z = z;
    out.f = cf.value(z);
    out.g = cg.value(z);
    if (out.f == 0.0 || out.g == 0.0) throw DomainError("point lies on V(f g)");
    const CVector a = cf.gradient(z).conjugate() / std::conj(out.f);
    const CVector b = cg.gradient(z).conjugate() / std::conj(out.g);
    out.v1 = a + b;
    out.v2 = kI * (a - b);
    return out;
}

double logH_derivative_residual(const Polynomial& f, const Polynomial& g, const Point& z, const Point& w) {
    const auto gp = gradient_fields(f, g, z);
    CVector W = as_vector(w);
    if (W.norm() == 0.0) throw std::invalid_argument("zero direction");
    W /= W.norm();
    constexpr double h = 1e-6;
    const CVector Z = as_vector(z);
    auto H = [&](double t) {
        const Point p = as_point(Z + t * W);
        const Complex v = evaluate(f, p) * std::conj(evaluate(g, p));
        if (v == 0.0) throw DomainError("finite-difference stencil meets V(f g)");
        return v;
    };
    const Complex hp = H(h), hm = H(-h);
    const double dlog_abs = (std::log(std::abs(hp)) - std::log(std::abs(hm))) / (2.0 * h);
    // Continuous branch: the stencil is short, so the arg jump is the
    // principal value of the quotient.
    const double darg = std::arg(hp / hm) / (2.0 * h);
    const Complex fd(dlog_abs, darg);
    const Complex exact(real_inner(W, gp.v1), real_inner(W, gp.v2));
    return std::abs(fd - exact);
}

SublemmaResidual sublemma_residual(const Polynomial& f, const Point& z) {
    const ComplexPolynomial cf(f);
    const CVector df = cf.gradient(z);
    constexpr double h = 1e-6;
    SublemmaResidual out;
    for (std::size_t j = 0; j < z.size(); ++j) {
        auto shifted = [&](Complex d) {
            Point p = z;
            p[j] += d;
            return cf.value(p);
        };
        const Complex dx = (shifted(h) - shifted(-h)) / (2.0 * h);
        const Complex dy = (shifted(Complex(0, h)) - shifted(Complex(0, -h))) / (2.0 * h);
        // dbar u = (u_x + i u_y) / 2 for real u.
        const Complex dbar_k = 0.5 * Complex(dx.real(), dy.real());
        const Complex dbar_l = 0.5 * Complex(dx.imag(), dy.imag());
        const Complex c = std::conj(df[static_cast<Eigen::Index>(j)]);
        const double scale = 1.0 + std::abs(c);
        out.real_part = std::max(out.real_part, std::abs(dbar_k - 0.5 * c) / scale);
        out.imag_part = std::max(out.imag_part, std::abs(dbar_l - 0.5 * kI * c) / scale);
    }
    return out;
}

double euler_residual(const FaceData& q, const Point& z) {
    if (q.face.is_zero()) throw std::invalid_argument("zero face function");
    const ComplexPolynomial c(q.face);
    const Complex v = c.value(z);
    const CVector grad = c.gradient(z);
    Complex s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        s += static_cast<double>(q.weight[j]) * z[j] * grad[static_cast<Eigen::Index>(j)];
    return std::abs(static_cast<double>(q.degree) * v - s) / (1.0 + std::abs(v));
}

PolarDegrees polar_degrees(const Polynomial& f, const Polynomial& g, const WeightVector& P) {
    PolarDegrees d;
    d.d_f = weighted_degree(f, P);
    d.d_g = weighted_degree(g, P);
    d.d_r = d.d_f + d.d_g;
    d.d_p = d.d_f - d.d_g;
    return d;
}

double polar_action_residual(const Polynomial& f, const Polynomial& g, const WeightVector& P, const Point& z,
                             double rho, double theta) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    const Polynomial fP = face_function(f, P).face, gP = face_function(g, P).face;
    const PolarDegrees d = polar_degrees(f, g, P);
    const Complex H = evaluate(fP, z) * std::conj(evaluate(gP, z));
    if (H == 0.0) throw DomainError("point lies on V(H_P)");
    Point moved = z;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double p = static_cast<double>(P[j]);
        moved[j] *= std::pow(rho, p) * std::exp(kI * (p * theta));
    }
    const Complex lhs = evaluate(fP, moved) * std::conj(evaluate(gP, moved));
    const double amp = std::pow(rho, static_cast<double>(d.d_r));
    const Complex rhs = amp * std::exp(kI * (static_cast<double>(d.d_p) * theta)) * H;
    // Relative to the size of the terms, so cancellation in H_P(z) does not
    // inflate roundoff.
    const double scale = amp * term_scale(fP, z) * term_scale(gP, z);
    return std::abs(lhs - rhs) / std::max(scale, std::abs(rhs));
}

std::string to_string(Dependence d) {
    switch (d) {
    case Dependence::Independent: return "independent";
    case Dependence::Dependent: return "dependent";
    case Dependence::Borderline: return "borderline";
    case Dependence::Anomaly: return "anomaly";
    }
    return "?";
}

DependenceWitness dependence_witness(const Polynomial& f, const Polynomial& g, const Point& z, double dep_tol) {
    const auto gp = gradient_fields(f, g, z);
    const CVector Z = as_vector(z);
    DependenceWitness w;
    if (gp.v1.norm() == 0.0 && gp.v2.norm() == 0.0) {
        w.status = Dependence::Anomaly;
        return w;
    }
    w.gram_det = gram_det_normalized(Z, gp.v1, gp.v2);
    const auto [lambda, mu] = solve_real(Z, gp.v1, gp.v2);
    w.residual = (Z - lambda * gp.v1 - mu * gp.v2).norm() / Z.norm();
    if (w.residual <= dep_tol) {
        w.status = Dependence::Dependent;
    } else if (w.gram_det > dep_tol) {
        w.status = Dependence::Independent;
        return w;
    } else {
        w.status = Dependence::Borderline;
    }
    w.lambda = lambda;
    w.mu = mu;
    const Point zp = as_point(lambda * gp.v1 + mu * gp.v2);
    try {
        const auto gq = gradient_fields(f, g, zp);
        w.lambda_refined = solve_real(as_vector(zp), gq.v1, gq.v2).first;
    } catch (const DomainError&) {
        w.lambda_refined = lambda;
    }
    return w;
}

LemmaPositiveReport sample_lemma_positive(const Polynomial& f, const Polynomial& g, const LemmaSampleConfig& cfg) {
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("radius must be positive");
    const int n = f.dimension();
    const Fields F(f, g, cfg.floor);
    LemmaPositiveReport rep;
    rep.radius = cfg.radius;
    double cos_sum = 0.0;
    int cos_count = 0;
    rep.cos_v1v2_min = 1.0;
    rep.cos_v1v2_max = -1.0;

    auto record = [&](const Point& z, bool locus) {
        ++rep.sampled;
        if (!F.off_variety(z)) {
            ++rep.rejected;
            return;
        }
        const auto [v1, v2] = F.eval(z);
        if (v1.norm() > 0.0 && v2.norm() > 0.0) {
            const double c = real_inner(v1, v2) / (v1.norm() * v2.norm());
            rep.cos_v1v2_min = std::min(rep.cos_v1v2_min, c);
            rep.cos_v1v2_max = std::max(rep.cos_v1v2_max, c);
            cos_sum += std::abs(c);
            ++cos_count;
        }
        LemmaSample s{z, dependence_witness(f, g, z, cfg.dep_tol), locus};
        switch (s.witness.status) {
        case Dependence::Independent: ++rep.independent; return;
        case Dependence::Borderline:
        case Dependence::Anomaly: ++rep.borderline; return;
        case Dependence::Dependent: break;
        }
        const double l = s.witness.lambda;
        rep.min_lambda = rep.min_lambda ? std::min(*rep.min_lambda, l) : l;
        if (std::abs(s.witness.lambda_refined - l) >= 0.01 * std::abs(l)) ++rep.unstable;
        if (l <= 0.0 && !rep.violation) rep.violation = s;
        rep.dependent.push_back(std::move(s));
    };

    for (int k = 0; k < cfg.samples; ++k) {
        Rng rng = Rng::stream(cfg.seed, {kTagBall, static_cast<std::uint64_t>(k)});
        const CVector z = ball_point(rng, n, cfg.radius);
        if (z.norm() == 0.0) continue;
        record(as_point(z), false);
    }
    for (int k = 0; k < cfg.locus_starts; ++k) {
        Rng rng = Rng::stream(cfg.seed, {kTagLocus, static_cast<std::uint64_t>(k)});
        const auto z = locus_newton(F, random_direction(rng, n), cfg.radius);
        if (z) record(as_point(*z), true);
    }
    if (cos_count > 0) {
        rep.cos_v1v2_mean_abs = cos_sum / cos_count;
    } else {
        rep.cos_v1v2_min = rep.cos_v1v2_max = 0.0;
    }
    return rep;
}

double sphere_phi_objective(const Polynomial& f, const Polynomial& g, const Point& z) {
    const auto gp = gradient_fields(f, g, z);
    const CVector Z = as_vector(z);
    const CVector zh = Z / Z.norm();
    const CVector t = gp.v2 - real_inner(gp.v2, zh) * zh;
    return t.squaredNorm() / (gp.v1.squaredNorm() + gp.v2.squaredNorm());
}

namespace {

using SphereResidual = CVector (*)(const Fields&, const Point&);

// v1 and v2 R-dependent: the part of v2 orthogonal to v1 (or v1 itself when
// it is the shorter one), normalized.
CVector dependence_residual(const Fields& F, const Point& z) {
    const auto [v1, v2] = F.eval(z);
    const double s = std::sqrt(v1.squaredNorm() + v2.squaredNorm());
    const CVector& a = v1.norm() >= v2.norm() ? v1 : v2;
    const CVector& b = v1.norm() >= v2.norm() ? v2 : v1;
    const CVector ah = a / a.norm();
    return (b - real_inner(b, ah) * ah) / s;
}

// Multistart Levenberg-Marquardt on |residual|^2 over the sphere |z| = r,
// finite-difference Jacobian in R^2n.
SphereSearchReport sphere_search(const Fields& F, SphereResidual residual_fn, double r, const SphereSearchConfig& cfg,
                                 std::uint64_t tag) {
    if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    if (cfg.starts < 1) throw std::invalid_argument("starts must be >= 1");
    const int n = F.f.dimension();
    SphereSearchReport rep;
    rep.radius = r;
    rep.starts = cfg.starts;

    auto point_of = [&](const Eigen::VectorXd& x) { return as_point(complexify(x) * (r / x.norm())); };
    auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) -> bool {
        const Point z = point_of(x);
        if (!F.off_variety(z)) return false;
        out = realify(residual_fn(F, z));
        return out.allFinite();
    };

    for (int start = 0; start < cfg.starts; ++start) {
        Rng rng = Rng::stream(cfg.seed, {tag, static_cast<std::uint64_t>(start)});
        Eigen::VectorXd x = realify(random_direction(rng, n));
        Eigen::VectorXd res;
        if (!residual(x, res)) {
            ++rep.rejected;
            continue;
        }
        double merit = res.squaredNorm();
        double mu = 1e-3;
        for (int it = 0; it < cfg.max_iters && merit > cfg.tol; ++it) {
            Eigen::MatrixXd J(res.size(), x.size());
            bool ok = true;
            for (Eigen::Index k = 0; k < x.size() && ok; ++k) {
                const double h = 1e-7;
                Eigen::VectorXd xp = x, xm = x, rp, rm;
                xp[k] += h;
                xm[k] -= h;
                ok = residual(xp, rp) && residual(xm, rm);
                if (ok) J.col(k) = (rp - rm) / (2.0 * h);
            }
            if (!ok) break;
            const Eigen::MatrixXd A = J.transpose() * J;
            Eigen::MatrixXd M = A;
            for (Eigen::Index k = 0; k < M.rows(); ++k) M(k, k) += mu * std::max(A(k, k), 1e-12);
            const Eigen::VectorXd step = M.ldlt().solve(-J.transpose() * res);
            Eigen::VectorXd xn = x + step, rn;
            if (step.allFinite() && residual(xn, rn) && rn.squaredNorm() < merit) {
                x = xn / xn.norm();
                residual(x, res);
                merit = res.squaredNorm();
                mu = std::max(mu / 3.0, 1e-15);
            } else {
                mu *= 4.0;
                if (mu > 1e12) break;
            }
        }
        const Point z = point_of(x);
        if (!F.off_variety(z)) continue;
        const double obj = residual_fn(F, z).squaredNorm();
        if (rep.min_objective < 0.0 || obj < rep.min_objective) rep.min_objective = obj;
        if (obj < cfg.tol) {
            rep.certificate = z;
            rep.certificate_objective = obj;
            rep.certificate_start = start;
            rep.value = F.f.value(z) * std::conj(F.g.value(z));
            break;
        }
    }
    return rep;
}

}  // namespace

SphereSearchReport sphere_phi_critical_search(const Polynomial& f, const Polynomial& g, double r,
                                              const SphereSearchConfig& cfg) {
    return sphere_search(Fields(f, g, cfg.floor), &sphere_residual, r, cfg, kTagSphere);
}

SphereSearchReport nonzero_critical_value_search(const Polynomial& f, const Polynomial& g, double r,
                                                 const SphereSearchConfig& cfg) {
    return sphere_search(Fields(f, g, cfg.floor), &dependence_residual, r, cfg, kTagCritical);
}

IdentitySummary identity_summary(const Polynomial& f, const Polynomial& g, int samples, std::uint64_t seed) {
    const int n = f.dimension();
    IdentitySummary out;
    out.samples = samples;
    std::vector<FaceData> faces;
    for (const Polynomial* p : {&f, &g})
        if (!p->is_constant())
            for (const auto& face : compact_faces(newton_polyhedron(*p)))
                faces.push_back(face_function(*p, face.witness));
    const Fields F(f, g, 1e-3);
    for (int k = 0; k < samples; ++k) {
        Rng rng = Rng::stream(seed, {kTagIdentity, static_cast<std::uint64_t>(k)});
        Point z(static_cast<std::size_t>(n));
        for (auto& zj : z) zj = std::polar(rng.uniform(0.3, 1.5), rng.uniform(0.0, 2.0 * kPi));
        if (!faces.empty()) {
            const auto& q = faces[static_cast<std::size_t>(k) % faces.size()];
            out.euler_max = std::max(out.euler_max, euler_residual(q, z));
            ++out.euler_samples;
        }
        std::vector<long long> p(static_cast<std::size_t>(n));
        for (auto& pj : p) pj = rng.integer(1, 5);
        try {
            const double r = polar_action_residual(f, g, WeightVector(p), z, rng.uniform(0.5, 2.0),
                                                   rng.uniform(0.0, 2.0 * kPi));
            out.polar_max = std::max(out.polar_max, r);
            ++out.polar_samples;
        } catch (const DomainError&) {
        }
        const auto sub = sublemma_residual(f, z);
        out.sublemma_max = std::max({out.sublemma_max, sub.real_part, sub.imag_part});
        if (F.off_variety(z)) {
            Point w(static_cast<std::size_t>(n));
            for (auto& wj : w) wj = Complex(rng.normal(), rng.normal());
            try {
                out.logH_max = std::max(out.logH_max, logH_derivative_residual(f, g, z, w));
            } catch (const DomainError&) {
            }
        }
    }
    return out;
}

}  // namespace fgbar
