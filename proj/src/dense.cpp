#include "ssqw/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace ssqw {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& x) const {
    if (x.size() != n_) throw std::invalid_argument("matrix/vector size mismatch");
    std::vector<cplx> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cplx s = 0.0;
        const cplx* r = row(i);
        for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<cplx> CMatrix::column(std::size_t j) const {
    std::vector<cplx> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

CMatrix CMatrix::multiply(const CMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    CMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            const cplx* rk = rhs.row(k);
            cplx* ri = out.row(i);
            for (std::size_t j = 0; j < n_; ++j) ri[j] += aik * rk[j];
        }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double CMatrix::fro_norm() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::hermitian_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

double CMatrix::unitary_defect() const {
    const CMatrix g = adjoint().multiply(*this);
    double d = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const cplx want = i == j ? cplx(1.0) : cplx(0.0);
            d = std::max(d, std::abs(g(i, j) - want));
        }
    return d;
}

} // namespace ssqw
