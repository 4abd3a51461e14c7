#include "fgbar/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fgbar/rng.hpp"

namespace fgbar {

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(int n, std::uint32_t mask) : n_(n), mask_(mask) {
    if (n < 1 || n > kMaxDimension) throw std::invalid_argument("IndexSet: dimension out of range");
    if (n < 32 && (mask >> n) != 0) throw std::out_of_range("IndexSet: index exceeds dimension");
}

IndexSet::IndexSet(int n, std::initializer_list<int> members)
    : IndexSet(from_members(n, std::span<const int>(members.begin(), members.size()))) {}

IndexSet IndexSet::from_members(int n, std::span<const int> members) {
    std::uint32_t mask = 0;
    for (int i : members) {
        if (i < 1 || i > n) throw std::out_of_range("IndexSet: index " + std::to_string(i) +
                                                    " outside [1, " + std::to_string(n) + "]");
        mask |= 1U << (i - 1);
    }
    return {n, mask};
}

IndexSet IndexSet::full(int n) {
    return {n, n == 32 ? ~0U : ((1U << n) - 1U)};
}

int IndexSet::size() const { return std::popcount(mask_); }

bool IndexSet::contains(int index) const {
    return index >= 1 && index <= n_ && ((mask_ >> (index - 1)) & 1U) != 0;
}

std::vector<int> IndexSet::members() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

IndexSet IndexSet::complement() const { return {n_, full(n_).mask_ & ~mask_}; }

std::string IndexSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : members()) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

// ------------------------------------------------------------ WeightVector

WeightVector::WeightVector(std::vector<long long> entries) : p_(std::move(entries)) {
    if (p_.empty()) throw std::invalid_argument("weight vector must be nonempty");
    bool nonzero = false;
    for (long long v : p_) {
        if (v < 0) throw std::invalid_argument("weight vector entries must be >= 0");
        nonzero = nonzero || v != 0;
    }
    if (!nonzero) throw std::invalid_argument("weight vector must not be zero");
}

IndexSet WeightVector::zero_set() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < p_.size(); ++i)
        if (p_[i] == 0) mask |= 1U << i;
    return {dimension(), mask};
}

long long WeightVector::pairing(std::span<const int> nu) const {
    if (nu.size() != p_.size()) throw std::invalid_argument("weight/exponent dimension mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] * nu[i];
    return s;
}

WeightVector WeightVector::scaled(long long c) const {
    if (c <= 0) throw std::invalid_argument("scale factor must be positive");
    std::vector<long long> q = p_;
    for (auto& v : q) v *= c;
    return WeightVector(std::move(q));
}

std::string WeightVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (i != 0) s += ",";
        s += std::to_string(p_[i]);
    }
    return s + ")";
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(int dimension) : n_(dimension) {
    if (dimension < 1 || dimension > IndexSet::kMaxDimension)
        throw std::invalid_argument("polynomial dimension out of range");
}

Polynomial::Polynomial(int dimension, TermMap terms) : Polynomial(dimension) {
    for (auto& [e, c] : terms) add_term(e, c);
}

Polynomial Polynomial::constant(int dimension, GaussRational c) {
    Polynomial p(dimension);
    p.add_term(Exponent(static_cast<std::size_t>(dimension), 0), c);
    return p;
}

Polynomial Polynomial::monomial(int dimension, Exponent e, GaussRational c) {
    Polynomial p(dimension);
    p.add_term(e, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

std::vector<Exponent> Polynomial::support() const {
    std::vector<Exponent> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
}

void Polynomial::check_exponent(const Exponent& e) const {
    if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent dimension mismatch");
    for (int v : e)
        if (v < 0) throw std::invalid_argument("negative exponent");
}

void Polynomial::add_term(const Exponent& e, const GaussRational& c) {
    check_exponent(e);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
    Polynomial out(a.n_);
    Exponent e(static_cast<std::size_t>(a.n_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial operator-(const Polynomial& a) { return a.scaled(GaussRational(-1)); }

Polynomial Polynomial::scaled(const GaussRational& c) const {
    Polynomial out(n_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(n_, GaussRational(1));
    Polynomial b = *this;
    while (e != 0) {
        if ((e & 1U) != 0) result = result * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return result;
}

// -------------------------------------------------------------- evaluation

GaussRational evaluate(const Polynomial& p, std::span<const GaussRational> z) {
    if (static_cast<int>(z.size()) != p.dimension())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    GaussRational sum;
    for (const auto& [e, c] : p.terms()) {
        GaussRational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= pow(z[i], static_cast<unsigned>(e[i]));
        sum += t;
    }
    return sum;
}

std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> z) {
    if (static_cast<int>(z.size()) != p.dimension())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> t = c.to_complex();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= std::pow(z[i], e[i]);
        sum += t;
    }
    return sum;
}

// ----------------------------------------------------------------- calculus

Polynomial partial_derivative(const Polynomial& p, int j) {
    if (j < 1 || j > p.dimension())
        throw std::out_of_range("partial_derivative: index " + std::to_string(j) + " out of range");
    Polynomial out(p.dimension());
    const auto k = static_cast<std::size_t>(j - 1);
    for (const auto& [e, c] : p.terms()) {
        if (e[k] == 0) continue;
        Exponent d = e;
        d[k] -= 1;
        out.add_term(d, c * GaussRational(make_rational(e[k])));
    }
    return out;
}

Polynomial restrict(const Polynomial& p, const IndexSet& I) {
    if (I.dimension() != p.dimension()) throw std::invalid_argument("restrict: dimension mismatch");
    if (I.empty()) throw std::invalid_argument("restrict: index set must be nonempty");
    Polynomial out(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        bool inside = true;
        for (int i = 1; i <= p.dimension() && inside; ++i)
            inside = e[static_cast<std::size_t>(i - 1)] == 0 || I.contains(i);
        if (inside) out.add_term(e, c);
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const IndexSet& I,
                      std::span<const GaussRational> values) {
    if (I.dimension() != p.dimension() || static_cast<int>(values.size()) != p.dimension())
        throw std::invalid_argument("substitute: dimension mismatch");
    Polynomial out(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        GaussRational coeff = c;
        Exponent rest = e;
        for (int i = 1; i <= p.dimension(); ++i) {
            const auto k = static_cast<std::size_t>(i - 1);
            if (!I.contains(i) || e[k] == 0) continue;
            coeff *= pow(values[k], static_cast<unsigned>(e[k]));
            rest[k] = 0;
        }
        out.add_term(rest, coeff);
    }
    return out;
}

long long weighted_degree(const Polynomial& p, const WeightVector& P) {
    if (p.is_zero()) throw std::invalid_argument("weighted degree of the zero polynomial is undefined");
    if (P.dimension() != p.dimension()) throw std::invalid_argument("weight dimension mismatch");
    long long best = std::numeric_limits<long long>::max();
    for (const auto& [e, c] : p.terms()) best = std::min(best, P.pairing(e));
    return best;
}

FaceData face_function(const Polynomial& p, const WeightVector& P) {
    const long long d = weighted_degree(p, P);
    Polynomial face(p.dimension());
    for (const auto& [e, c] : p.terms())
        if (P.pairing(e) == d) face.add_term(e, c);
    return {std::move(face), d, P};
}

Polynomial pullback_power(const Polynomial& p, int m) {
    if (m < 1) throw std::invalid_argument("pullback_power: m must be >= 1");
    Polynomial out(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        Exponent f = e;
        for (int& v : f) v *= m;
        out.add_term(f, c);
    }
    return out;
}

Polynomial randomize_coefficients(const Polynomial& p, std::uint64_t seed,
                                  const CoefficientRange& range) {
    if (range.range < 1 || range.max_denominator < 1)
        throw std::invalid_argument("coefficient range must be positive");
    Rng rng(seed);
    Polynomial out(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        long long a = 0;
        while (a == 0) a = rng.integer(range.allow_negative ? -range.range : 1, range.range);
        const long long b = rng.integer(1, range.max_denominator);
        out.add_term(e, c * GaussRational(make_rational(a, b)));
    }
    return out;
}

}  // namespace fgbar
