#include "fgbar/numeric_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace fgbar {

ComplexPolynomial::ComplexPolynomial(const Polynomial& p) : n_(p.dimension()) {
    exps_.reserve(p.term_count());
    coeffs_.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) {
        exps_.push_back(e);
        coeffs_.push_back(c.to_complex());
    }
}

Complex ComplexPolynomial::value(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point dimension mismatch");
    Complex sum = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        Complex t = coeffs_[k];
        for (int i = 0; i < n_; ++i)
            if (exps_[k][i] != 0) t *= std::pow(z[i], exps_[k][i]);
        sum += t;
    }
    return sum;
}

CVector ComplexPolynomial::gradient(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point dimension mismatch");
    CVector g = CVector::Zero(n_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        for (int j = 0; j < n_; ++j) {
            if (exps_[k][j] == 0) continue;
            Complex t = coeffs_[k] * static_cast<double>(exps_[k][j]);
            for (int i = 0; i < n_; ++i) {
                const int e = exps_[k][i] - (i == j ? 1 : 0);
                if (e != 0) t *= std::pow(z[i], e);
            }
            g[j] += t;
        }
    }
    return g;
}

ComplexPolynomial::LogEval ComplexPolynomial::log_eval(const CVector& w, bool with_hessian) const {
    if (w.size() != n_) throw std::invalid_argument("point dimension mismatch");
    LogEval out;
    out.value = 0.0;
    out.log_gradient = CVector::Zero(n_);
    out.scale_gradient = Eigen::VectorXd::Zero(n_);
    if (with_hessian) out.log_hessian = CMatrix::Zero(n_, n_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        Complex arg = 0.0;
        for (int i = 0; i < n_; ++i)
            if (exps_[k][i] != 0) arg += static_cast<double>(exps_[k][i]) * w[i];
        const Complex t = coeffs_[k] * std::exp(arg);
        out.value += t;
        const double mag = std::abs(t);
        out.scale += mag;
        for (int j = 0; j < n_; ++j) {
            if (exps_[k][j] == 0) continue;
            out.scale_gradient[j] += static_cast<double>(exps_[k][j]) * mag;
            const Complex tj = static_cast<double>(exps_[k][j]) * t;
            out.log_gradient[j] += tj;
            if (!with_hessian) continue;
            for (int l = 0; l < n_; ++l)
                if (exps_[k][l] != 0) out.log_hessian(j, l) += static_cast<double>(exps_[k][l]) * tj;
        }
    }
    return out;
}

}  // namespace fgbar
