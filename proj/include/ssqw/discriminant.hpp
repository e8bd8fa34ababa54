#pragma once

#include "ssqw/eig.hpp"
#include "ssqw/lattice.hpp"

namespace ssqw {

enum class Boundary { dirichlet, periodic };
enum class OperatorKind { discriminant, evolution };

/// A finite section of an operator over the window [x_min, x_max].  The
/// discriminant acts on one component per site, the evolution operator on two
/// (index 2*(x - x_min) + component).
struct TruncatedOperator {
    int x_min = 0;
    int x_max = 0;
    Boundary boundary = Boundary::dirichlet;
    OperatorKind kind = OperatorKind::discriminant;
    CMatrix matrix;

    int sites() const { return x_max - x_min + 1; }
};

/// Diagonal of the discriminant: V(x) = p (|chi_1(x)|^2 - |chi_2(x)|^2).
double v_of(const ShiftParams& shift, const CoinSite& coin);

/// sup_x |V(x)| over the tabulated sites and any declared limit coins.
double v_sup(const ShiftParams& shift, const CoinField& coins);

/// |q| + sup|V|.  Energies E with |E| above this value cannot be eigenvalues
/// of the discriminant, truncated or not.
double exclusion_bound(const ShiftParams& shift, const CoinField& coins);

/// Tridiagonal section of the discriminant T = d S d*:
/// T[x, x+1] = q conj(chi_1(x)) chi_2(x+1), T[x, x] = V(x).
TruncatedOperator build_T(const ShiftParams& shift, const CoinField& coins,
                          int x_min, int x_max, Boundary boundary = Boundary::dirichlet);

/// Section of the evolution operator U = S C.  Hard truncation is not
/// unitary, so only the periodic variant is accepted.
TruncatedOperator build_U(const ShiftParams& shift, const CoinField& coins,
                          int x_min, int x_max, Boundary boundary = Boundary::periodic);

/// K_E = (E -/+ V)^{-1/2} (T - V) (E -/+ V)^{-1/2} for sign plus/minus.
/// ||K_E|| < 1 certifies that +/-E is not an eigenvalue of the discriminant.
/// Requires E > sup|V| by a safe margin.
TruncatedOperator build_K_E(const ShiftParams& shift, const CoinField& coins,
                            double energy, BirthSign sign, int x_min, int x_max,
                            Boundary boundary = Boundary::dirichlet);

struct SpectrumReport {
    OperatorKind kind = OperatorKind::discriminant;
    Boundary boundary = Boundary::dirichlet;
    int x_min = 0;
    int x_max = 0;
    std::vector<double> values_real; // discriminant spectrum, ascending
    std::vector<cplx> values;        // evolution spectrum, sorted by argument
    CMatrix vectors;
    std::vector<double> residuals;
    /// Eigenvectors with more than half their mass within five sites of the
    /// window ends; their eigenvalues are artifacts of the truncation.
    std::vector<bool> boundary_localized;
    /// Filled by spectral_mapping_check: distance of Re(lambda) to the
    /// nearest discriminant eigenvalue, per evolution eigenvalue.
    std::vector<double> mapping_defects;
};

SpectrumReport eig_hermitian(const TruncatedOperator& op, const JacobiOptions& opt = {});
SpectrumReport eig_unitary(const TruncatedOperator& op, const JacobiOptions& opt = {});

struct MappingReport {
    SpectrumReport t_spectrum;
    SpectrumReport u_spectrum;
    double max_defect = 0.0;
    double max_interior_defect = 0.0;
    /// Worst gap |Re(lambda) - t| when hunting, for each discriminant
    /// eigenvalue t, an evolution eigenvalue on each half of the unit circle
    /// (the two preimages of t under phi).  Measured through phi rather than
    /// arccos: the preimage coordinates are ill-conditioned at t = +/-1,
    /// where an ulp of eigenvalue error inflates to ~1e-8 in the plane.
    double max_inverse_defect = 0.0;
    bool seam = false; // the coin field is not constant across the wrap
};

/// Builds the periodic T and U on a ring of `sites` sites centred at the
/// origin and checks sigma(U) against the preimages of sigma(T) under
/// phi(z) = (z + 1/z) / 2.
MappingReport spectral_mapping_check(const ShiftParams& shift, const CoinField& coins,
                                     int sites, const JacobiOptions& opt = {});

} // namespace ssqw
