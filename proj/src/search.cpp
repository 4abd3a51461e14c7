#include "fgbar/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fgbar/newton.hpp"
#include "fgbar/rng.hpp"

namespace fgbar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream tags: {check, index set mask, face, fiber sample}.
struct Tags {
    std::uint64_t check = 0, mask = 0, face = 0, sample = 0;
};

Rng start_rng(const SearchConfig& cfg, const Tags& t, int start) {
    return Rng::stream(cfg.seed, {t.check, t.mask, t.face, t.sample, static_cast<std::uint64_t>(start)});
}

// 0-based indices of the variables that occur in any of the polynomials.
std::vector<int> occurring(std::initializer_list<const Polynomial*> ps) {
    std::uint32_t used = 0;
    int n = 0;
    for (const auto* p : ps) {
        n = p->dimension();
        for (const auto& [e, c] : p->terms())
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) used |= 1U << i;
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (((used >> i) & 1U) != 0) out.push_back(i);
    return out;
}

std::vector<int> one_based(const std::vector<int>& idx) {
    std::vector<int> out;
    for (int i : idx) out.push_back(i + 1);
    return out;
}

// Exact term values t_k = a_k z^nu_k.
struct ExactTerms {
    std::vector<Exponent> exps;
    std::vector<GaussRational> t;
    double scale = 0.0;  // sum |t_k|
};

ExactTerms exact_terms(const Polynomial& q, const std::vector<GaussRational>& Z) {
    ExactTerms out;
    for (const auto& [e, c] : q.terms()) {
        GaussRational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= pow(Z[i], static_cast<unsigned>(e[i]));
        out.scale += std::sqrt(t.norm().get_d());
        out.exps.push_back(e);
        out.t.push_back(std::move(t));
    }
    return out;
}

GaussRational exact_value(const ExactTerms& et) {
    GaussRational v;
    for (const auto& t : et.t) v += t;
    return v;
}

// z_j dq/dz_j for j in active.
std::vector<GaussRational> exact_log_gradient(const ExactTerms& et, const std::vector<int>& active0) {
    std::vector<GaussRational> out;
    for (int j : active0) {
        GaussRational s;
        for (std::size_t k = 0; k < et.t.size(); ++k) {
            const int nu = et.exps[k][static_cast<std::size_t>(j)];
            if (nu != 0) s += et.t[k] * GaussRational(static_cast<long>(nu));
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GaussRational> to_exact(const std::vector<Complex>& z) {
    std::vector<GaussRational> Z;
    for (const auto& v : z) Z.push_back(gauss_from_complex(v));
    return Z;
}

std::vector<int> zero_based(const std::vector<int>& active) {
    std::vector<int> out;
    for (int j : active) out.push_back(j - 1);
    return out;
}

// ---- numerical kernels -----------------------------------------------------

struct Problem {
    int n = 0;
    std::vector<int> active;        // 0-based
    std::vector<Complex> base;      // full point; inactive coordinates kept
};

CVector full_log(const Problem& pb, const CVector& w) {
    CVector full = CVector::Zero(pb.n);
    for (std::size_t k = 0; k < pb.active.size(); ++k) full[pb.active[k]] = w[static_cast<Eigen::Index>(k)];
    return full;
}

std::vector<Complex> full_point(const Problem& pb, const CVector& w) {
    std::vector<Complex> z = pb.base;
    for (std::size_t k = 0; k < pb.active.size(); ++k) z[static_cast<std::size_t>(pb.active[k])] = std::exp(w[static_cast<Eigen::Index>(k)]);
    return z;
}

void clamp_box(CVector& w, double box) {
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double re = std::clamp(w[k].real(), -box, box);
        double im = std::remainder(w[k].imag(), 2.0 * std::numbers::pi);
        w[k] = Complex(re, im);
    }
}

// Residual vector of the normalized system. The residual is holomorphic in
// the unknowns except through the scales, which depend on Re w only: the
// derivative along Re x_l is Jh(:,l) + Jc(:,l), along Im x_l it is i Jh(:,l).
struct System {
    CVector r;
    CMatrix Jh;
    CMatrix Jc;
    double objective = kInf;  // quantity compared against the tolerance
};

// Levenberg-Marquardt over the real and imaginary parts of x; the first
// n_log unknowns are log coordinates and are kept inside the box.
template <class Eval>
CVector levenberg_marquardt(Eval&& eval, CVector x, int max_iters, double stop_below, double box,
                            Eigen::Index n_log, double& best_merit) {
    System cur = eval(x);
    double merit = cur.r.squaredNorm();
    if (!std::isfinite(merit)) {
        best_merit = kInf;
        return x;
    }
    const Eigen::Index p = cur.r.size(), q = x.size();
    double mu = 1e-3;
    double checkpoint = merit;
    for (int it = 0; it < max_iters && merit > stop_below; ++it) {
        Eigen::MatrixXd JR(2 * p, 2 * q);
        const CMatrix Jre = cur.Jh + cur.Jc;
        JR.topLeftCorner(p, q) = Jre.real();
        JR.bottomLeftCorner(p, q) = Jre.imag();
        JR.topRightCorner(p, q) = -cur.Jh.imag();
        JR.bottomRightCorner(p, q) = cur.Jh.real();
        Eigen::VectorXd rR(2 * p);
        rR.head(p) = cur.r.real();
        rR.tail(p) = cur.r.imag();
        const Eigen::MatrixXd A = JR.transpose() * JR;
        const Eigen::VectorXd g = JR.transpose() * rR;
        Eigen::MatrixXd M = A;
        for (Eigen::Index k = 0; k < M.rows(); ++k) M(k, k) += mu * std::max(A(k, k), 1e-12);
        const Eigen::VectorXd step = M.ldlt().solve(-g);
        if (!step.allFinite()) {
            mu *= 10.0;
            if (mu > 1e12) break;
            continue;
        }
        CVector trial = x;
        for (Eigen::Index l = 0; l < q; ++l) trial[l] += Complex(step[l], step[q + l]);
        CVector head = trial.head(n_log);
        clamp_box(head, box);
        trial.head(n_log) = head;
        System next = eval(trial);
        const double m2 = next.r.squaredNorm();
        if (std::isfinite(m2) && m2 < merit) {
            x = trial;
            cur = std::move(next);
            merit = m2;
            mu = std::max(mu / 3.0, 1e-15);
        } else {
            mu *= 4.0;
            if (mu > 1e12) break;
        }
        if (it % 10 == 9) {
            if (merit > 0.999 * checkpoint && cur.objective > stop_below) break;
            checkpoint = merit;
        }
    }
    best_merit = merit;
    return x;
}

// -- torus critical points --

struct CriticalRun {
    std::optional<Certificate> certificate;
    double best = kInf;
};

CriticalRun critical_core(const Polynomial& q, const Problem& pb, const SearchConfig& cfg, const Tags& tags) {
    const ComplexPolynomial cq(q);
    const auto m = static_cast<Eigen::Index>(pb.active.size());
    auto eval = [&](const CVector& w) {
        const auto le = cq.log_eval(full_log(pb, w), true);
        System s;
        s.r.resize(m);
        s.Jh.resize(m, m);
        s.Jc.resize(m, m);
        const double S = le.scale > 0.0 ? le.scale : kInf;
        for (Eigen::Index a = 0; a < m; ++a) {
            const int ja = pb.active[static_cast<std::size_t>(a)];
            s.r[a] = le.log_gradient[ja] / S;
            for (Eigen::Index b = 0; b < m; ++b) {
                const int jb = pb.active[static_cast<std::size_t>(b)];
                s.Jh(a, b) = le.log_hessian(ja, jb) / S;
                s.Jc(a, b) = -le.log_gradient[ja] * le.scale_gradient[jb] / (S * S);
            }
        }
        s.objective = s.r.squaredNorm();
        return s;
    };
    const auto active1 = one_based(pb.active);
    CriticalRun run;
    for (int start = 0; start < cfg.starts; ++start) {
        Rng rng = start_rng(cfg, tags, start);
        CVector w(m);
        for (Eigen::Index k = 0; k < m; ++k)
            w[k] = Complex(rng.uniform(-1.5, 1.5), rng.uniform(-std::numbers::pi, std::numbers::pi));
        double merit = kInf;
        w = levenberg_marquardt(eval, w, cfg.max_iters, cfg.residual_tol * 1e-6, cfg.log_box, m, merit);
        run.best = std::min(run.best, merit);
        if (!(merit < cfg.residual_tol)) continue;
        // One polishing step, then exact re-evaluation.
        double polished = kInf;
        w = levenberg_marquardt(eval, w, 1, 0.0, cfg.log_box, m, polished);
        Certificate c;
        c.kind = CertificateKind::CriticalPoint;
        c.point = full_point(pb, w);
        c.residual = critical_residual_exact(q, c.point, active1);
        c.start = start;
        if (c.residual < 10.0 * cfg.residual_tol) {
            run.certificate = std::move(c);
            return run;
        }
    }
    return run;
}

// -- complete intersection rank drop --

double ci_objective(const ComplexPolynomial::LogEval& a, const ComplexPolynomial::LogEval& b, const std::vector<int>& active) {
    const double Sa = a.scale, Sb = b.scale;
    if (!(Sa > 0.0) || !(Sb > 0.0)) return kInf;
    double na = 0.0, nb = 0.0;
    Complex ab = 0.0;
    for (int j : active) {
        const Complex x = a.log_gradient[j] / Sa, y = b.log_gradient[j] / Sb;
        na += std::norm(x);
        nb += std::norm(y);
        ab += std::conj(x) * y;
    }
    const double det = std::max(0.0, na * nb - std::norm(ab));
    const double tr = na + nb;
    const double lmax = 0.5 * (tr + std::sqrt(std::max(0.0, (na - nb) * (na - nb) + 4.0 * std::norm(ab))));
    const double lmin = lmax > 0.0 ? det / lmax : 0.0;
    return std::norm(a.value / Sa) + std::norm(b.value / Sb) + lmin;
}

CriticalRun ci_core(const Polynomial& qf, const Polynomial& qg, const Problem& pb, const SearchConfig& cfg,
                    const Tags& tags) {
    const ComplexPolynomial cf(qf), cg(qg);
    const auto m = static_cast<Eigen::Index>(pb.active.size());
    const auto act = [&](Eigen::Index a) { return pb.active[static_cast<std::size_t>(a)]; };
    int chart = 0;
    auto eval = [&](const CVector& x) {
        const CVector w = x.head(m);
        const Complex alpha = x[m];
        const auto ef = cf.log_eval(full_log(pb, w), true);
        const auto eg = cg.log_eval(full_log(pb, w), true);
        System s;
        s.r.resize(m + 2);
        s.Jh = CMatrix::Zero(m + 2, m + 1);
        s.Jc = CMatrix::Zero(m + 2, m + 1);
        const double Sf = ef.scale > 0.0 ? ef.scale : kInf;
        const double Sg = eg.scale > 0.0 ? eg.scale : kInf;
        // d(u/S) = du/S - u dS/S^2
        s.r[0] = ef.value / Sf;
        s.r[1] = eg.value / Sg;
        for (Eigen::Index l = 0; l < m; ++l) {
            s.Jh(0, l) = ef.log_gradient[act(l)] / Sf;
            s.Jh(1, l) = eg.log_gradient[act(l)] / Sg;
            s.Jc(0, l) = -ef.value * ef.scale_gradient[act(l)] / (Sf * Sf);
            s.Jc(1, l) = -eg.value * eg.scale_gradient[act(l)] / (Sg * Sg);
        }
        const Complex af = chart == 0 ? alpha : Complex(1.0);
        const Complex ag = chart == 0 ? Complex(1.0) : alpha;
        for (Eigen::Index j = 0; j < m; ++j) {
            const Complex lf = ef.log_gradient[act(j)] / Sf, lg = eg.log_gradient[act(j)] / Sg;
            s.r[2 + j] = af * lf + ag * lg;
            s.Jh(2 + j, m) = chart == 0 ? lf : lg;
            for (Eigen::Index l = 0; l < m; ++l) {
                const Complex hf = ef.log_hessian(act(j), act(l)) / Sf, hg = eg.log_hessian(act(j), act(l)) / Sg;
                s.Jh(2 + j, l) = af * hf + ag * hg;
                s.Jc(2 + j, l) = -af * lf * ef.scale_gradient[act(l)] / Sf - ag * lg * eg.scale_gradient[act(l)] / Sg;
            }
        }
        s.objective = ci_objective(ef, eg, pb.active);
        return s;
    };
    const auto active1 = one_based(pb.active);
    CriticalRun run;
    for (int start = 0; start < cfg.starts; ++start) {
        chart = start % 2;
        Rng rng = start_rng(cfg, tags, start);
        CVector x(m + 1);
        for (Eigen::Index k = 0; k < m; ++k)
            x[k] = Complex(rng.uniform(-1.5, 1.5), rng.uniform(-std::numbers::pi, std::numbers::pi));
        {
            // Best multiplier at the starting point.
            const auto ef = cf.log_eval(full_log(pb, x.head(m)), false);
            const auto eg = cg.log_eval(full_log(pb, x.head(m)), false);
            Complex num = 0.0;
            double den = 0.0;
            for (int j : pb.active) {
                const Complex lf = ef.log_gradient[j] / ef.scale, lg = eg.log_gradient[j] / eg.scale;
                num += chart == 0 ? std::conj(lf) * lg : std::conj(lg) * lf;
                den += chart == 0 ? std::norm(lf) : std::norm(lg);
            }
            x[m] = den > 0.0 ? -num / den : Complex(0.0);
            if (!std::isfinite(x[m].real()) || !std::isfinite(x[m].imag())) x[m] = 0.0;
        }
        double merit = kInf;
        x = levenberg_marquardt(eval, x, cfg.max_iters, cfg.residual_tol * 1e-6, cfg.log_box, m, merit);
        const double obj = eval(x).objective;
        run.best = std::min(run.best, obj);
        if (!(obj < cfg.residual_tol)) continue;
        double polished = kInf;
        x = levenberg_marquardt(eval, x, 1, 0.0, cfg.log_box, m, polished);
        Certificate c;
        c.kind = CertificateKind::CiRankDrop;
        c.point = full_point(pb, x.head(m));
        c.residual = ci_residual_exact(qf, qg, c.point, active1);
        c.start = start;
        if (c.residual < 10.0 * cfg.residual_tol) {
            run.certificate = std::move(c);
            return run;
        }
    }
    return run;
}

// ---- fixed-coordinate sampling ----------------------------------------------

// Uniform point of the ball |z_I| <= radius in C^I with every coordinate
// nonzero; other coordinates are 1.
std::vector<Complex> sample_fixed(const SearchConfig& cfg, const IndexSet& I, const Tags& tags, double radius) {
    Rng rng = Rng::stream(cfg.seed, {tags.check, tags.mask, tags.face, tags.sample, 0xf1edULL});
    const auto members = I.members();
    const auto k = members.size();
    for (;;) {
        std::vector<Complex> v(k);
        double norm2 = 0.0;
        for (auto& c : v) {
            c = Complex(rng.normal(), rng.normal());
            norm2 += std::norm(c);
        }
        const double rad = radius * std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(k))) / std::sqrt(norm2);
        bool ok = std::isfinite(rad);
        for (auto& c : v) {
            c *= rad;
            ok = ok && std::abs(c) > 1e-6 * radius;
        }
        if (!ok) continue;
        std::vector<Complex> z(static_cast<std::size_t>(I.dimension()), Complex(1.0));
        for (std::size_t t = 0; t < k; ++t) z[static_cast<std::size_t>(members[t] - 1)] = v[t];
        return z;
    }
}

Polynomial substitute_point(const Polynomial& q, const IndexSet& I, const std::vector<Complex>& z) {
    return substitute(q, I, to_exact(z));
}

bool trivially_regular(const Polynomial& q) { return q.is_monomial() || q.is_constant(); }

// Runs `body(radius)` at the configured radius; when it reports a violation,
// re-runs at a tenth of the radius and marks the result radius-sensitive if
// the violation disappears.
template <class Body>
Verdict with_radius_retry(const SearchConfig& cfg, Body&& body) {
    Verdict v = body(cfg.ball_radius);
    v.radii = {cfg.ball_radius};
    if (!v.violation()) return v;
    Verdict small = body(cfg.ball_radius / 10.0);
    small.radii = {cfg.ball_radius, cfg.ball_radius / 10.0};
    if (small.violation()) return small;
    small.radius_sensitive = true;
    small.large_radius_certificate = v.certificate;
    return small;
}

Verdict empty_verdict(const SearchConfig& cfg) {
    Verdict v;
    v.starts = cfg.starts;
    v.seed = cfg.seed;
    return v;
}

void take_first(Verdict& v, const FaceReport& face) {
    if (!v.certificate && face.certificate) v.certificate = face.certificate;
}

}  // namespace

void SearchConfig::validate() const {
    if (starts < 1) throw std::invalid_argument("starts must be at least 1");
    if (max_iters < 1) throw std::invalid_argument("max iterations must be at least 1");
    if (!(residual_tol > 0.0)) throw std::invalid_argument("residual tolerance must be positive");
    if (!(ball_radius > 0.0) || !std::isfinite(ball_radius)) throw std::invalid_argument("ball radius must be positive");
    if (sample_count_fixed < 1) throw std::invalid_argument("fixed-coordinate sample count must be at least 1");
    if (!(log_box > 0.0)) throw std::invalid_argument("log box must be positive");
}

std::string to_string(CertificateKind k) {
    return k == CertificateKind::CriticalPoint ? "critical-point" : "ci-rank-drop";
}

double critical_residual_exact(const Polynomial& q, const std::vector<Complex>& z, const std::vector<int>& active) {
    const auto et = exact_terms(q, to_exact(z));
    if (!(et.scale > 0.0)) return kInf;
    Rational num = 0;
    for (const auto& v : exact_log_gradient(et, zero_based(active))) num += v.norm();
    return num.get_d() / (et.scale * et.scale);
}

double ci_residual_exact(const Polynomial& qf, const Polynomial& qg, const std::vector<Complex>& z,
                         const std::vector<int>& active) {
    const auto Z = to_exact(z);
    const auto ef = exact_terms(qf, Z);
    const auto eg = exact_terms(qg, Z);
    if (!(ef.scale > 0.0) || !(eg.scale > 0.0)) return kInf;
    const auto a0 = zero_based(active);
    const auto lf = exact_log_gradient(ef, a0);
    const auto lg = exact_log_gradient(eg, a0);
    Rational na = 0, nb = 0;
    GaussRational ab;
    for (std::size_t j = 0; j < lf.size(); ++j) {
        na += lf[j].norm();
        nb += lg[j].norm();
        ab += lf[j].conj() * lg[j];
    }
    const double Sf2 = ef.scale * ef.scale, Sg2 = eg.scale * eg.scale;
    // Gram matrix of the normalized rows; det is exact up to the scales.
    const double det = Rational(na * nb - ab.norm()).get_d() / (Sf2 * Sg2);
    const double a = na.get_d() / Sf2, c = nb.get_d() / Sg2, b2 = ab.norm().get_d() / (Sf2 * Sg2);
    const double lmax = 0.5 * (a + c + std::sqrt((a - c) * (a - c) + 4.0 * b2));
    const double lmin = lmax > 0.0 ? std::max(0.0, det) / lmax : 0.0;
    return exact_value(ef).norm().get_d() / Sf2 + exact_value(eg).norm().get_d() / Sg2 + lmin;
}

Verdict find_torus_critical(const Polynomial& q, const SearchConfig& cfg) {
    cfg.validate();
    if (q.is_zero() || q.is_constant()) throw std::invalid_argument("torus critical search needs a non-constant polynomial");
    Verdict v = empty_verdict(cfg);
    FaceReport face;
    face.face_f = to_string(q);
    if (q.is_monomial()) {
        face.vacuous = true;
        face.note = "monomial: gradient never vanishes on the torus";
    } else {
        Problem pb{q.dimension(), occurring({&q}), std::vector<Complex>(static_cast<std::size_t>(q.dimension()), Complex(1.0))};
        auto run = critical_core(q, pb, cfg, Tags{1, 0, 0, 0});
        face.best_objective = run.best;
        face.certificate = std::move(run.certificate);
    }
    take_first(v, face);
    v.faces.push_back(std::move(face));
    return v;
}

Verdict find_ci_degeneracy(const Polynomial& qf, const Polynomial& qg, const SearchConfig& cfg) {
    cfg.validate();
    if (qf.is_zero() || qg.is_zero()) throw std::invalid_argument("complete intersection search needs nonzero polynomials");
    if (qf.dimension() != qg.dimension()) throw std::invalid_argument("dimension mismatch");
    Verdict v = empty_verdict(cfg);
    FaceReport face;
    face.face_f = to_string(qf);
    face.face_g = to_string(qg);
    if (trivially_regular(qf) || trivially_regular(qg)) {
        face.vacuous = true;
        face.note = "monomial or constant: no common zeros on the torus";
    } else {
        Problem pb{qf.dimension(), occurring({&qf, &qg}), std::vector<Complex>(static_cast<std::size_t>(qf.dimension()), Complex(1.0))};
        auto run = ci_core(qf, qg, pb, cfg, Tags{5, 0, 0, 0});
        face.best_objective = run.best;
        face.certificate = std::move(run.certificate);
    }
    take_first(v, face);
    v.faces.push_back(std::move(face));
    return v;
}

Verdict check_nondegenerate(const Polynomial& f, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero()) throw std::invalid_argument("non-degeneracy of the zero polynomial is undefined");
    Verdict v = empty_verdict(cfg);
    const auto N = newton_polyhedron(f);
    const auto faces = compact_faces(N);
    for (std::size_t idx = 0; idx < faces.size(); ++idx) {
        FaceReport face;
        face.witness = faces[idx].witness;
        const Polynomial q = face_function(f, face.witness).face;
        face.face_f = to_string(q);
        if (q.is_constant()) {
            face.vacuous = true;
            face.note = "constant face: f does not vanish at the origin";
        } else if (q.is_monomial()) {
            face.vacuous = true;
            face.note = "monomial: gradient never vanishes on the torus";
        } else {
            Problem pb{f.dimension(), occurring({&q}), std::vector<Complex>(static_cast<std::size_t>(f.dimension()), Complex(1.0))};
            auto run = critical_core(q, pb, cfg, Tags{2, 0, idx, 0});
            face.best_objective = run.best;
            face.certificate = std::move(run.certificate);
            if (face.certificate) face.certificate->face_witness = face.witness;
        }
        take_first(v, face);
        v.faces.push_back(std::move(face));
    }
    return v;
}

Verdict check_local_tame(const Polynomial& f, const IndexSet& I, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero()) throw std::invalid_argument("local tameness of the zero polynomial is undefined");
    if (I.empty() || I.dimension() != f.dimension()) throw std::invalid_argument("invalid index set");
    if (!restrict(f, I).is_zero())
        throw std::invalid_argument("local tameness is checked on vanishing subspaces only; " + I.to_string() + " is not one");
    const auto N = newton_polyhedron(f);
    const auto faces = faces_for_I(N, I);
    return with_radius_retry(cfg, [&](double radius) {
        Verdict v = empty_verdict(cfg);
        for (std::size_t idx = 0; idx < faces.size(); ++idx) {
            FaceReport face;
            face.witness = faces[idx].witness;
            const Polynomial q = face_function(f, face.witness).face;
            face.face_f = to_string(q);
            if (q.is_monomial()) {
                face.vacuous = true;
                face.note = "monomial: gradient never vanishes on the torus";
                v.faces.push_back(std::move(face));
                continue;
            }
            int vacuous = 0;
            double best = kInf;
            for (int s = 0; s < cfg.sample_count_fixed && !face.certificate; ++s) {
                const Tags tags{3, I.mask(), idx, static_cast<std::uint64_t>(s)};
                const auto z = sample_fixed(cfg, I, tags, radius);
                const Polynomial qs = substitute_point(q, I, z);
                if (qs.is_zero() || trivially_regular(qs)) {
                    ++vacuous;
                    continue;
                }
                Problem pb{f.dimension(), occurring({&qs}), z};
                auto run = critical_core(qs, pb, cfg, tags);
                best = std::min(best, run.best);
                if (run.certificate) {
                    run.certificate->face_witness = face.witness;
                    run.certificate->fixed = I;
                    face.certificate = std::move(run.certificate);
                }
            }
            face.best_objective = std::isfinite(best) ? best : -1.0;
            if (vacuous == cfg.sample_count_fixed) {
                face.vacuous = true;
                face.note = "monomial on every fiber";
            }
            take_first(v, face);
            v.faces.push_back(std::move(face));
        }
        return v;
    });
}

Verdict check_ci_faces(const Polynomial& f, const Polynomial& g, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("f and g must be nonzero");
    Verdict v = empty_verdict(cfg);
    const auto N = newton_polyhedron(f * g);
    const auto faces = compact_faces(N);
    for (std::size_t idx = 0; idx < faces.size(); ++idx) {
        FaceReport face;
        face.witness = faces[idx].witness;
        const Polynomial qf = face_function(f, face.witness).face;
        const Polynomial qg = face_function(g, face.witness).face;
        face.face_f = to_string(qf);
        face.face_g = to_string(qg);
        if (trivially_regular(qf) || trivially_regular(qg)) {
            face.vacuous = true;
            face.note = "monomial or constant: no common zeros on the torus";
        } else {
            Problem pb{f.dimension(), occurring({&qf, &qg}), std::vector<Complex>(static_cast<std::size_t>(f.dimension()), Complex(1.0))};
            auto run = ci_core(qf, qg, pb, cfg, Tags{4, 0, idx, 0});
            face.best_objective = run.best;
            face.certificate = std::move(run.certificate);
            if (face.certificate) face.certificate->face_witness = face.witness;
        }
        take_first(v, face);
        v.faces.push_back(std::move(face));
    }
    return v;
}

Verdict check_ci_fixed(const Polynomial& f, const Polynomial& g, const IndexSet& I, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("f and g must be nonzero");
    if (I.empty() || I.dimension() != f.dimension()) throw std::invalid_argument("invalid index set");
    if (!restrict(f, I).is_zero() || !restrict(g, I).is_zero())
        throw std::invalid_argument(I.to_string() + " is not a common vanishing subspace");
    const auto N = newton_polyhedron(f * g);
    const auto faces = faces_for_I(N, I);
    return with_radius_retry(cfg, [&](double radius) {
        Verdict v = empty_verdict(cfg);
        for (std::size_t idx = 0; idx < faces.size(); ++idx) {
            FaceReport face;
            face.witness = faces[idx].witness;
            const Polynomial qf = face_function(f, face.witness).face;
            const Polynomial qg = face_function(g, face.witness).face;
            face.face_f = to_string(qf);
            face.face_g = to_string(qg);
            int vacuous = 0;
            double best = kInf;
            for (int s = 0; s < cfg.sample_count_fixed && !face.certificate; ++s) {
                const Tags tags{6, I.mask(), idx, static_cast<std::uint64_t>(s)};
                const auto z = sample_fixed(cfg, I, tags, radius);
                const Polynomial sf = substitute_point(qf, I, z);
                const Polynomial sg = substitute_point(qg, I, z);
                if (sf.is_zero() || sg.is_zero() || trivially_regular(sf) || trivially_regular(sg)) {
                    ++vacuous;
                    continue;
                }
                Problem pb{f.dimension(), occurring({&sf, &sg}), z};
                auto run = ci_core(sf, sg, pb, cfg, tags);
                best = std::min(best, run.best);
                if (run.certificate) {
                    run.certificate->face_witness = face.witness;
                    run.certificate->fixed = I;
                    face.certificate = std::move(run.certificate);
                }
            }
            face.best_objective = std::isfinite(best) ? best : -1.0;
            if (vacuous == cfg.sample_count_fixed) {
                face.vacuous = true;
                face.note = "monomial on every fiber";
            }
            take_first(v, face);
            v.faces.push_back(std::move(face));
        }
        return v;
    });
}

bool PairSearch::violation_condition1() const {
    if (nondegenerate_f.violation() || nondegenerate_g.violation()) return true;
    for (const auto* list : {&tame_f, &tame_g})
        for (const auto& t : *list)
            if (t.verdict.violation()) return true;
    return false;
}

bool PairSearch::violation_condition2b() const {
    return std::any_of(ci_fixed.begin(), ci_fixed.end(), [](const IndexedVerdict& t) { return t.verdict.violation(); });
}

std::optional<Certificate> PairSearch::first_certificate() const {
    if (nondegenerate_f.certificate) return nondegenerate_f.certificate;
    if (nondegenerate_g.certificate) return nondegenerate_g.certificate;
    for (const auto* list : {&tame_f, &tame_g})
        for (const auto& t : *list)
            if (t.verdict.certificate) return t.verdict.certificate;
    if (ci_faces.certificate) return ci_faces.certificate;
    for (const auto& t : ci_fixed)
        if (t.verdict.certificate) return t.verdict.certificate;
    return std::nullopt;
}

PairSearch check_pair(const Polynomial& f, const Polynomial& g, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("f and g must be nonzero");
    if (f.dimension() != g.dimension()) throw std::invalid_argument("f and g have different dimensions");
    PairSearch out;
    out.nondegenerate_f = check_nondegenerate(f, cfg);
    out.nondegenerate_g = check_nondegenerate(g, cfg);
    const auto vf = vanishing_subspaces(f, cfg.max_n);
    const auto vg = vanishing_subspaces(g, cfg.max_n);
    for (const auto& I : vf.all) out.tame_f.push_back({I, check_local_tame(f, I, cfg)});
    for (const auto& I : vg.all) out.tame_g.push_back({I, check_local_tame(g, I, cfg)});
    out.ci_faces = check_ci_faces(f, g, cfg);
    for (const auto& I : vf.all)
        if (vg.contains(I)) out.ci_fixed.push_back({I, check_ci_fixed(f, g, I, cfg)});
    return out;
}

}  // namespace fgbar
