#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fgbar/polynomial.hpp"

namespace fgbar {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Floating-point copy of a Polynomial for the numerical searches. Term order
// matches the exact polynomial, so summation order is deterministic.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(const Polynomial& p);

    int dimension() const { return n_; }
    std::size_t term_count() const { return coeffs_.size(); }

    Complex value(std::span<const Complex> z) const;
    // Holomorphic gradient (dq/dz_1, ..., dq/dz_n).
    CVector gradient(std::span<const Complex> z) const;

    // Evaluation in logarithmic coordinates z_j = exp(w_j). With
    // t_k = a_k exp(<nu_k, w>):
    //   value = sum t_k, log_gradient_j = sum nu_kj t_k (= z_j dq/dz_j),
    //   log_hessian_jl = sum nu_kj nu_kl t_k, scale = sum |t_k|,
    //   scale_gradient_j = sum nu_kj |t_k| (d scale / d Re w_j).
    struct LogEval {
        Complex value;
        CVector log_gradient;
        CMatrix log_hessian;
        double scale = 0.0;
        Eigen::VectorXd scale_gradient;
    };
    LogEval log_eval(const CVector& w, bool with_hessian) const;

private:
    int n_ = 0;
    std::vector<Exponent> exps_;
    std::vector<Complex> coeffs_;
};

}  // namespace fgbar
