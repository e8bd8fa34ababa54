#pragma once

#include <cstddef>
#include <vector>

#include "ssqw/types.hpp"

namespace ssqw {

/// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}
    static CMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    cplx* row(std::size_t i) { return a_.data() + i * n_; }
    const cplx* row(std::size_t i) const { return a_.data() + i * n_; }

    std::vector<cplx> apply(const std::vector<cplx>& x) const;
    std::vector<cplx> column(std::size_t j) const;
    CMatrix multiply(const CMatrix& rhs) const;
    CMatrix adjoint() const;

    double fro_norm() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermitian_defect() const;
    /// max_ij |(A* A - I)_ij|
    double unitary_defect() const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

} // namespace ssqw
