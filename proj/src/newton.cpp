#include "fgbar/newton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fgbar/lp.hpp"

namespace fgbar {
namespace {

using IntVec = std::vector<Integer>;

// Fixed-width bitset over constraint indices for the adjacency test.
class Bits {
public:
    explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i / 64] |= 1ULL << (i % 64); }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
        return r;
    }
    bool contains(const Bits& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if ((o.w_[k] & ~w_[k]) != 0) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto v : w_) c += static_cast<std::size_t>(__builtin_popcountll(v));
        return c;
    }

private:
    std::vector<std::uint64_t> w_;
};

struct Ray {
    IntVec y;  // (Q_1, ..., Q_n, c)
    Bits zeros;
};

void make_primitive(IntVec& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

long long to_ll(const Integer& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("facet coefficient exceeds 64 bits");
    return v.get_si();
}

// Double description on the cone of valid inequalities
//   { (Q, c) : Q >= 0, <Q, nu> - c >= 0 for every generator nu }.
// Its extreme rays are the facets of Gamma_+ and the trivial ray (0, -1).
std::vector<Facet> facets_by_double_description(int n, const std::vector<Exponent>& gens) {
    const auto d = static_cast<std::size_t>(n) + 1;
    const std::size_t total = static_cast<std::size_t>(n) + gens.size();
    std::vector<IntVec> rows;
    for (int i = 0; i < n; ++i) {
        IntVec a(d, 0);
        a[static_cast<std::size_t>(i)] = 1;
        rows.push_back(std::move(a));
    }
    for (const auto& nu : gens) {
        IntVec a(d, 0);
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = nu[static_cast<std::size_t>(i)];
        a[d - 1] = -1;
        rows.push_back(std::move(a));
    }

    auto zero_set = [&](const IntVec& y, std::size_t processed) {
        Bits z(total);
        for (std::size_t k = 0; k < processed; ++k)
            if (sgn(dot(rows[k], y)) == 0) z.set(k);
        return z;
    };

    // Initial cone {Q >= 0, c <= <Q, nu_0>}: rays (e_i, nu_0_i) and (0, -1).
    std::size_t processed = static_cast<std::size_t>(n) + 1;
    std::vector<Ray> rays;
    for (int i = 0; i < n; ++i) {
        IntVec y(d, 0);
        y[static_cast<std::size_t>(i)] = 1;
        y[d - 1] = gens[0][static_cast<std::size_t>(i)];
        rays.push_back({y, zero_set(y, processed)});
    }
    {
        IntVec y(d, 0);
        y[d - 1] = -1;
        rays.push_back({y, zero_set(y, processed)});
    }

    for (std::size_t k = processed; k < total; ++k) {
        const IntVec& a = rows[k];
        std::vector<Integer> s(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(a, rays[r].y);
            if (sgn(s[r]) > 0) pos.push_back(r);
            if (sgn(s[r]) < 0) neg.push_back(r);
            if (sgn(s[r]) >= 0) next.push_back(rays[r]);
        }
        for (std::size_t ip : pos) {
            for (std::size_t in : neg) {
                const Bits common = rays[ip].zeros & rays[in].zeros;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != ip && r != in && rays[r].zeros.contains(common)) adjacent = false;
                if (!adjacent) continue;
                IntVec y(d);
                for (std::size_t i = 0; i < d; ++i) y[i] = s[ip] * rays[in].y[i] - s[in] * rays[ip].y[i];
                make_primitive(y);
                next.push_back({y, Bits(total)});
            }
        }
        // Refresh zero sets including constraint k.
        for (auto& r : next) r.zeros = zero_set(r.y, k + 1);
        rays = std::move(next);
    }

    std::vector<Facet> facets;
    for (auto& r : rays) {
        bool trivial = true;
        for (int i = 0; i < n; ++i) trivial = trivial && sgn(r.y[static_cast<std::size_t>(i)]) == 0;
        if (trivial) continue;
        make_primitive(r.y);
        Facet f;
        for (int i = 0; i < n; ++i) f.normal.push_back(to_ll(r.y[static_cast<std::size_t>(i)]));
        f.offset = to_ll(r.y[d - 1]);
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return facets;
}

long long pair_ll(const std::vector<long long>& q, const Exponent& nu) {
    long long s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * nu[i];
    return s;
}

Rational pair_q(const std::vector<long long>& q, std::span<const Rational> x) {
    Rational s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += make_rational(q[i]) * x[i];
    return s;
}

// Affine dimension of conv(points) + cone(e_i, i in rec).
int face_dimension(int n, const std::vector<Exponent>& pts, const IndexSet& rec) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        std::vector<Rational> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            row[static_cast<std::size_t>(i)] = pts[k][static_cast<std::size_t>(i)] - pts[0][static_cast<std::size_t>(i)];
        m.push_back(std::move(row));
    }
    for (int i : rec.members()) {
        std::vector<Rational> row(static_cast<std::size_t>(n));
        row[static_cast<std::size_t>(i - 1)] = 1;
        m.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
        auto piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && sgn(m[piv][static_cast<std::size_t>(col)]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        const auto& pr = m[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || sgn(m[r][static_cast<std::size_t>(col)]) == 0) continue;
            const Rational f = m[r][static_cast<std::size_t>(col)] / pr[static_cast<std::size_t>(col)];
            for (int c = col; c < n; ++c) m[r][static_cast<std::size_t>(c)] -= f * pr[static_cast<std::size_t>(c)];
        }
        ++rank;
    }
    return rank;
}

// Combinatorial face: generator indices and recession coordinates.
struct FaceKey {
    std::vector<int> gens;
    std::uint32_t rec = 0;
    auto operator<=>(const FaceKey&) const = default;
};

struct FaceInfo {
    FaceKey key;
    std::vector<int> tight;  // facet indices containing the face
};

FaceInfo closure(const NewtonPolyhedron& N, const FaceKey& k) {
    FaceInfo out;
    const auto& F = N.facets();
    const auto& G = N.generators();
    for (std::size_t f = 0; f < F.size(); ++f) {
        bool ok = true;
        for (int g : k.gens) ok = ok && pair_ll(F[f].normal, G[static_cast<std::size_t>(g)]) == F[f].offset;
        for (int i = 0; i < N.dimension() && ok; ++i)
            if (((k.rec >> i) & 1U) != 0) ok = F[f].normal[static_cast<std::size_t>(i)] == 0;
        if (ok) out.tight.push_back(static_cast<int>(f));
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
        bool ok = true;
        for (int f : out.tight)
            ok = ok && pair_ll(F[static_cast<std::size_t>(f)].normal, G[g]) == F[static_cast<std::size_t>(f)].offset;
        if (ok) out.key.gens.push_back(static_cast<int>(g));
    }
    for (int i = 0; i < N.dimension(); ++i) {
        bool ok = true;
        for (int f : out.tight) ok = ok && F[static_cast<std::size_t>(f)].normal[static_cast<std::size_t>(i)] == 0;
        if (ok) out.key.rec |= 1U << i;
    }
    return out;
}

std::vector<FaceInfo> enumerate_faces(const NewtonPolyhedron& N) {
    std::map<FaceKey, FaceInfo> seen;
    std::vector<FaceKey> frontier;
    for (std::size_t f = 0; f < N.facets().size(); ++f) {
        FaceKey k;
        const auto& facet = N.facets()[f];
        for (std::size_t g = 0; g < N.generators().size(); ++g)
            if (pair_ll(facet.normal, N.generators()[g]) == facet.offset) k.gens.push_back(static_cast<int>(g));
        for (int i = 0; i < N.dimension(); ++i)
            if (facet.normal[static_cast<std::size_t>(i)] == 0) k.rec |= 1U << i;
        FaceInfo info = closure(N, k);
        if (seen.emplace(info.key, info).second) frontier.push_back(info.key);
    }
    std::vector<FaceKey> facets_keys = frontier;
    // Close under intersection with facets.
    while (!frontier.empty()) {
        std::vector<FaceKey> next;
        for (const auto& a : frontier) {
            for (const auto& b : facets_keys) {
                FaceKey k;
                std::set_intersection(a.gens.begin(), a.gens.end(), b.gens.begin(), b.gens.end(),
                                      std::back_inserter(k.gens));
                if (k.gens.empty()) continue;
                k.rec = a.rec & b.rec;
                FaceInfo info = closure(N, k);
                if (seen.emplace(info.key, info).second) next.push_back(info.key);
            }
        }
        frontier = std::move(next);
    }
    std::vector<FaceInfo> out;
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

// Integer weight with p_i = 0 on `zero`, p_j >= 1 elsewhere, minimizing
// exactly the face's generators; minimal infinity norm, ties broken
// lexicographically. `fallback` is a valid (relative-interior) solution.
WeightVector find_witness(const NewtonPolyhedron& N, const FaceInfo& face, const IndexSet& zero,
                          const std::vector<long long>& fallback) {
    const int n = N.dimension();
    const auto& G = N.generators();
    std::vector<int> free_idx;
    for (int i = 1; i <= n; ++i)
        if (!zero.contains(i)) free_idx.push_back(i - 1);
    const auto m = free_idx.size();
    std::vector<bool> on_face(G.size(), false);
    for (int g : face.key.gens) on_face[static_cast<std::size_t>(g)] = true;
    const Exponent& base = G[static_cast<std::size_t>(face.key.gens.front())];

    // LP lower bound: minimize t with 1 <= p_j <= t.
    lp::Problem prob;
    prob.num_vars = static_cast<int>(m) + 1;
    prob.objective.assign(m + 1, Rational(0));
    prob.objective[m] = 1;
    for (std::size_t j = 0; j < m; ++j) {
        lp::Constraint lo;
        lo.coeffs.assign(m + 1, Rational(0));
        lo.coeffs[j] = 1;
        lo.relation = lp::Relation::GreaterEqual;
        lo.rhs = 1;
        prob.constraints.push_back(lo);
        lp::Constraint hi;
        hi.coeffs.assign(m + 1, Rational(0));
        hi.coeffs[j] = 1;
        hi.coeffs[m] = -1;
        hi.relation = lp::Relation::LessEqual;
        hi.rhs = 0;
        prob.constraints.push_back(hi);
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
        lp::Constraint c;
        c.coeffs.assign(m + 1, Rational(0));
        for (std::size_t j = 0; j < m; ++j) {
            const auto i = static_cast<std::size_t>(free_idx[j]);
            c.coeffs[j] = G[g][i] - base[i];
        }
        c.relation = on_face[g] ? lp::Relation::Equal : lp::Relation::GreaterEqual;
        c.rhs = on_face[g] ? 0 : 1;
        prob.constraints.push_back(c);
    }
    const lp::Solution sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal) throw std::logic_error("face witness system infeasible");
    Integer lb_int = sol.value.get_num() / sol.value.get_den();
    if (lb_int * sol.value.get_den() != sol.value.get_num()) lb_int += 1;
    long long k0 = std::max<long long>(1, lb_int.get_si());
    long long kmax = 1;
    for (long long v : fallback) kmax = std::max(kmax, v);

    auto valid = [&](const std::vector<long long>& p) {
        long long d0 = 0;
        for (std::size_t j = 0; j < m; ++j) d0 += p[j] * base[static_cast<std::size_t>(free_idx[j])];
        for (std::size_t g = 0; g < G.size(); ++g) {
            long long d = 0;
            for (std::size_t j = 0; j < m; ++j) d += p[j] * G[g][static_cast<std::size_t>(free_idx[j])];
            if (on_face[g] ? d != d0 : d <= d0) return false;
        }
        return true;
    };

    constexpr long long kBudget = 4'000'000;
    long long spent = 0;
    for (long long k = k0; k <= kmax && spent < kBudget; ++k) {
        std::vector<long long> p(m, 1);
        for (;;) {
            ++spent;
            if (*std::max_element(p.begin(), p.end()) == k && valid(p)) {
                std::vector<long long> full(static_cast<std::size_t>(n), 0);
                for (std::size_t j = 0; j < m; ++j) full[static_cast<std::size_t>(free_idx[j])] = p[j];
                return WeightVector(std::move(full));
            }
            // Lexicographic successor in [1, k]^m.
            std::size_t pos = m;
            while (pos > 0 && p[pos - 1] == k) p[--pos] = 1;
            if (pos == 0) break;
            ++p[pos - 1];
            if (spent >= kBudget) break;
        }
    }
    return WeightVector(fallback);
}

std::vector<long long> relint_normal(const NewtonPolyhedron& N, const FaceInfo& face) {
    std::vector<long long> s(static_cast<std::size_t>(N.dimension()), 0);
    for (int f : face.tight)
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += N.facets()[static_cast<std::size_t>(f)].normal[i];
    long long g = 0;
    for (long long v : s) g = std::gcd(g, v);
    if (g > 1)
        for (auto& v : s) v /= g;
    return s;
}

PolyhedronFace make_face(const NewtonPolyhedron& N, const FaceInfo& info, const IndexSet& zero) {
    PolyhedronFace face;
    for (int g : info.key.gens) face.points.push_back(N.generators()[static_cast<std::size_t>(g)]);
    face.recession = IndexSet(N.dimension(), info.key.rec);
    face.dim = face_dimension(N.dimension(), face.points, face.recession);
    face.witness = find_witness(N, info, zero, relint_normal(N, info));
    return face;
}

void sort_faces(std::vector<PolyhedronFace>& faces) {
    std::sort(faces.begin(), faces.end(), [](const PolyhedronFace& a, const PolyhedronFace& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.points != b.points) return std::greater<>()(a.points, b.points);
        return a.recession < b.recession;
    });
}

}  // namespace

bool Facet::strictly_positive() const {
    return std::all_of(normal.begin(), normal.end(), [](long long v) { return v > 0; });
}

bool Facet::is_coordinate() const {
    int nonzero = 0;
    for (long long v : normal) nonzero += v != 0 ? 1 : 0;
    return nonzero == 1 && offset == 0;
}

NewtonPolyhedron::NewtonPolyhedron(int n, std::vector<Exponent> generators, std::vector<Facet> facets)
    : n_(n), generators_(std::move(generators)), facets_(std::move(facets)) {}

bool NewtonPolyhedron::contains(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
    for (const auto& v : x)
        if (sgn(v) < 0) return false;
    for (const auto& f : facets_)
        if (pair_q(f.normal, x) < make_rational(f.offset)) return false;
    return true;
}

NewtonPolyhedron newton_polyhedron(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("Newton polyhedron of the zero polynomial is undefined");
    std::vector<Exponent> gens = p.support();
    return {p.dimension(), gens, facets_by_double_description(p.dimension(), gens)};
}

std::vector<PolyhedronFace> all_faces(const NewtonPolyhedron& N) {
    std::vector<PolyhedronFace> out;
    for (const auto& info : enumerate_faces(N))
        out.push_back(make_face(N, info, IndexSet(N.dimension(), info.key.rec)));
    sort_faces(out);
    return out;
}

std::vector<CompactFace> compact_faces(const NewtonPolyhedron& N) {
    std::vector<CompactFace> out;
    for (const auto& info : enumerate_faces(N))
        if (info.key.rec == 0) out.push_back(make_face(N, info, IndexSet(N.dimension(), 0)));
    sort_faces(out);
    return out;
}

std::vector<PolyhedronFace> faces_for_I(const NewtonPolyhedron& N, const IndexSet& I) {
    if (I.dimension() != N.dimension()) throw std::invalid_argument("index set dimension mismatch");
    std::vector<PolyhedronFace> out;
    if (I == IndexSet::full(N.dimension())) return out;
    const std::uint32_t J = I.complement().mask();
    for (const auto& info : enumerate_faces(N)) {
        // The relative interior of the normal cone meets {I(P) = I} iff every
        // tight normal vanishes on I and together they cover the complement.
        std::uint32_t cover = 0;
        bool inside = !info.tight.empty();
        for (int f : info.tight) {
            std::uint32_t supp = 0;
            const auto& q = N.facets()[static_cast<std::size_t>(f)].normal;
            for (std::size_t i = 0; i < q.size(); ++i)
                if (q[i] != 0) supp |= 1U << i;
            inside = inside && (supp & ~J) == 0;
            cover |= supp;
        }
        if (inside && cover == J) out.push_back(make_face(N, info, I));
    }
    sort_faces(out);
    return out;
}

bool is_convenient(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("convenience of the zero polynomial is undefined");
    const int n = p.dimension();
    for (int i = 0; i < n; ++i) {
        bool found = false;
        for (const auto& [e, c] : p.terms()) {
            bool pure = e[static_cast<std::size_t>(i)] > 0;
            for (int j = 0; j < n && pure; ++j) pure = j == i || e[static_cast<std::size_t>(j)] == 0;
            found = found || pure;
        }
        if (!found) return false;
    }
    return true;
}

RayHit ray_hit(const NewtonPolyhedron& N, std::span<const Rational> x) {
    if (static_cast<int>(x.size()) != N.dimension()) throw std::invalid_argument("point dimension mismatch");
    bool nonzero = false;
    for (const auto& v : x) {
        if (sgn(v) < 0) throw std::invalid_argument("ray_hit: point must be non-negative");
        nonzero = nonzero || sgn(v) != 0;
    }
    if (!nonzero) throw std::invalid_argument("ray_hit: point must be nonzero");

    RayHit hit;
    std::optional<Rational> r;
    for (const auto& f : N.facets()) {
        if (f.offset <= 0) continue;
        const Rational qx = pair_q(f.normal, x);
        if (sgn(qx) == 0) return hit;  // the ray never enters Gamma_+
        const Rational cand = qx / make_rational(f.offset);
        if (!r || cand < *r) r = cand;
    }
    if (!r) return hit;  // only possible when the support contains the origin
    hit.r_star = r;
    std::uint32_t cover = 0;
    for (const auto& f : N.facets()) {
        if (pair_q(f.normal, x) != make_rational(f.offset) * *r) continue;
        for (std::size_t i = 0; i < f.normal.size(); ++i)
            if (f.normal[i] != 0) cover |= 1U << i;
    }
    hit.hits_compact_face = cover == IndexSet::full(N.dimension()).mask();
    return hit;
}

bool in_gamma_pp(const NewtonPolyhedron& N, std::span<const Rational> x, bool strict) {
    const RayHit hit = ray_hit(N, x);
    if (!hit.r_star || !hit.hits_compact_face) return false;
    return strict ? *hit.r_star > 1 : *hit.r_star >= 1;
}

std::vector<Rational> to_rational_point(std::span<const int> nu) {
    std::vector<Rational> x;
    x.reserve(nu.size());
    for (int v : nu) x.emplace_back(v);
    return x;
}

}  // namespace fgbar
