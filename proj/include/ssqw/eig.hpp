#pragma once

#include <vector>

#include "ssqw/dense.hpp"

namespace ssqw {

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm falls below tol times the
    /// Frobenius norm of the input.
    double tol = 1e-14;
    int max_sweeps = 60;
};

struct HermitianEig {
    std::vector<double> values; // ascending
    CMatrix vectors;            // column j belongs to values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi with one plane rotation at a time.  Reference implementation.
HermitianEig jacobi_eigh_serial(CMatrix a, const JacobiOptions& opt = {});

/// Jacobi with a round-robin ordering: each round rotates a maximal set of
/// disjoint planes, and within a round the column/row updates run in parallel.
/// The result is identical for any thread count (every entry of the updated
/// matrix is a fixed function of the round's snapshot).
HermitianEig jacobi_eigh(CMatrix a, const JacobiOptions& opt = {});

struct UnitaryEig {
    std::vector<cplx> values; // sorted by principal argument
    CMatrix vectors;
};

/// Eigendecomposition of a unitary matrix by joint diagonalization of its
/// Hermitian and anti-Hermitian parts: diagonalize H = (U+U*)/2, then split
/// each degenerate H-cluster with K = (U-U*)/(2i) restricted to the cluster.
UnitaryEig unitary_eig(const CMatrix& u, const JacobiOptions& opt = {});

/// Per-column residuals ||M v_j - lambda_j v_j||_2.
std::vector<double> eig_residuals(const CMatrix& m, const CMatrix& vectors,
                                  const std::vector<cplx>& values);
std::vector<double> eig_residuals(const CMatrix& m, const CMatrix& vectors,
                                  const std::vector<double>& values);

} // namespace ssqw
