#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgbar/rational.hpp"

namespace fgbar {

using Exponent = std::vector<int>;
using Point = std::vector<std::complex<double>>;

// Terms are kept in descending lexicographic order of exponents
// (z1 > z2 > ... > zn), which is also the print and summation order.
using TermMap = std::map<Exponent, GaussRational, std::greater<>>;

// Subset of {1, ..., n}, stored as a bit mask (bit i-1 <-> index i).
class IndexSet {
public:
    static constexpr int kMaxDimension = 30;

    IndexSet() = default;
    IndexSet(int n, std::uint32_t mask);
    IndexSet(int n, std::initializer_list<int> members);
    static IndexSet from_members(int n, std::span<const int> members);
    static IndexSet full(int n);

    int dimension() const { return n_; }
    std::uint32_t mask() const { return mask_; }
    bool empty() const { return mask_ == 0; }
    int size() const;
    // 1-based membership test.
    bool contains(int index) const;
    std::vector<int> members() const;
    IndexSet complement() const;
    bool is_subset_of(const IndexSet& other) const { return (mask_ & ~other.mask_) == 0; }

    // "{1,3}"
    std::string to_string() const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
    friend bool operator<(const IndexSet& a, const IndexSet& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.mask_ < b.mask_;
    }

private:
    int n_ = 0;
    std::uint32_t mask_ = 0;
};

// Semi-positive integer weight vector P; zero set I(P) = {i | p_i = 0}.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<long long> entries);
    WeightVector(std::initializer_list<long long> entries)
        : WeightVector(std::vector<long long>(entries)) {}

    int dimension() const { return static_cast<int>(p_.size()); }
    const std::vector<long long>& entries() const { return p_; }
    long long operator[](std::size_t i) const { return p_[i]; }
    IndexSet zero_set() const;
    bool strictly_positive() const { return zero_set().empty(); }
    long long pairing(std::span<const int> nu) const;
    WeightVector scaled(long long c) const;

    std::string to_string() const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend bool operator<(const WeightVector& a, const WeightVector& b) { return a.p_ < b.p_; }

private:
    std::vector<long long> p_;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int dimension);
    Polynomial(int dimension, TermMap terms);

    static Polynomial constant(int dimension, GaussRational c);
    static Polynomial monomial(int dimension, Exponent e, GaussRational c = GaussRational(1));

    int dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    std::vector<Exponent> support() const;

    // Adds c*z^e, dropping the term when the sum cancels.
    void add_term(const Exponent& e, const GaussRational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a);
    Polynomial scaled(const GaussRational& c) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void check_exponent(const Exponent& e) const;

    int n_ = 0;
    TermMap terms_;
};

// Text form: canonical grammar (see README). Dimension is never inferred.
Polynomial parse_poly(std::string_view text, int n);
std::string to_string(const Polynomial& p);

GaussRational evaluate(const Polynomial& p, std::span<const GaussRational> z);
std::complex<double> evaluate(const Polynomial& p, std::span<const std::complex<double>> z);

// d/dz_j, j is 1-based.
Polynomial partial_derivative(const Polynomial& p, int j);
// Keeps the terms supported inside I (sets z_j = 0 for j not in I).
Polynomial restrict(const Polynomial& p, const IndexSet& I);
// Substitutes z_i = values[i] for i in I; the result keeps dimension n
// with those variables absent.
Polynomial substitute(const Polynomial& p, const IndexSet& I,
                      std::span<const GaussRational> values);

struct FaceData {
    Polynomial face;
    long long degree = 0;
    WeightVector weight;
};

// d(P;p) = min over the support of <P, nu>.
long long weighted_degree(const Polynomial& p, const WeightVector& P);
FaceData face_function(const Polynomial& p, const WeightVector& P);

// Pullback by (z1, ..., zn) -> (z1^m, ..., zn^m).
Polynomial pullback_power(const Polynomial& p, int m);

// Random rational coefficients for "generic" instances: each coefficient is
// multiplied by a nonzero rational a/b, |a| <= range, 1 <= b <= max_denominator.
struct CoefficientRange {
    int range = 9;
    int max_denominator = 4;
    bool allow_negative = true;
};
Polynomial randomize_coefficients(const Polynomial& p, std::uint64_t seed,
                                  const CoefficientRange& range = {});

}  // namespace fgbar
