#pragma once

#include <array>
#include <complex>

namespace ssqw {

using cplx = std::complex<double>;

/// One lattice site of a two-component wavefunction.
using Spinor = std::array<cplx, 2>;

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> m{};

    cplx& at(int i, int j) { return m[static_cast<std::size_t>(2 * i + j)]; }
    const cplx& at(int i, int j) const { return m[static_cast<std::size_t>(2 * i + j)]; }

    Spinor apply(const Spinor& s) const {
        return {m[0] * s[0] + m[1] * s[1], m[2] * s[0] + m[3] * s[1]};
    }

    Mat2 times(const Mat2& o) const {
        Mat2 r;
        r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
        r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
        r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
        r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
        return r;
    }

    double max_abs_diff(const Mat2& o) const {
        double d = 0.0;
        for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
        return d;
    }
};

inline double norm2(const Spinor& s) { return std::norm(s[0]) + std::norm(s[1]); }

/// Which of the two flat eigenspaces of the shift a computation targets:
/// plus selects ker(S + 1), minus selects ker(S - 1).
enum class BirthSign { plus, minus };

inline double sign_value(BirthSign s) { return s == BirthSign::plus ? 1.0 : -1.0; }

} // namespace ssqw
