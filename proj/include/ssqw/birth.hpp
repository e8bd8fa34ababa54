#pragma once

#include <optional>
#include <utility>

#include "ssqw/walk.hpp"

namespace ssqw {

/// limsup / liminf of the one-sided ratio whose geometric series decides
/// whether the flat eigenvector is square-summable on that side:
///   minus side: |q chi_1(x) / ((p +/- 1) chi_2(x))|^2     as x -> -inf
///   plus  side: |(p +/- 1) chi_2(x) / (q chi_1(x))|^2     as x -> +inf
struct RatioPair {
    double sup = 0.0;
    double inf = 0.0;
};

struct SideRatios {
    BirthSign sign = BirthSign::plus;
    RatioPair minus; // behaviour towards -infinity
    RatioPair plus;  // behaviour towards +infinity
    /// True when both ratios came from declared limit coins (sup == inf).
    bool exact_limits = false;
};

enum class Verdict { nontrivial_dim1, trivial, inconclusive };

/// B < 1 certifies a one-dimensional eigenspace; a one-sided liminf > 1 forces
/// the candidate to blow up on that side, so the space is zero.
Verdict classify(const SideRatios& ratios, double margin = 1e-9);

/// Ratios from declared limit coins when present, otherwise the max/min of the
/// site ratio over |x| in [scan_tail, scan_tail + 64] on each side.
SideRatios side_ratios(const ShiftParams& shift, const CoinField& coins, BirthSign sign,
                       int scan_tail, double min_chi = 1e-12);

/// Exact asymptotic ratios from a pair of limit coins.
SideRatios beta_constants(const ShiftParams& shift, const CoinSite& c_minus,
                          const CoinSite& c_plus, BirthSign sign);

/// The unique (up to phase) candidate for ker(d) and ker(S -/+ 1) on
/// [x_min, x_max], built by the site-by-site recursion
///   psi(x+1) = (p +/- 1) conj(chi_2(x)) / (q conj(chi_1(x))) psi(x)
/// seeded at psi(0) = 1, with Psi(x) = ( -q/(p +/- 1) psi(x+1), psi(x) ).
/// The result is normalized and its phase fixed (second component at 0 is
/// real positive).  Throws TrivialBirthSpace unless classification says
/// nontrivial, HypothesisViolation on a vanishing chi component, and
/// std::runtime_error when the window cuts off non-negligible mass.
State construct_eigenvector(const ShiftParams& shift, const CoinField& coins,
                            BirthSign sign, int x_min, int x_max,
                            double tail_mass_tol = 1e-10, double classify_margin = 1e-9,
                            double min_chi = 1e-12);

struct VerifyResult {
    double residual = 0.0; // max of the three relative residual norms below
    double d_residual = 0.0;
    double shift_residual = 0.0; // ||(S +/- 1) psi|| on the interior
    double evolve_residual = 0.0; // ||U psi -/+ psi|| on the interior
    bool zero_input = false;
};

/// Relative residuals of the defining equations, with two sites at each end of
/// the window excluded (the shift couples across the cut).  A zero input
/// returns an infinite residual with zero_input set.
VerifyResult verify_eigenvector(const ShiftParams& shift, const CoinField& coins,
                                BirthSign sign, const State& psi);

struct DecayFit {
    double slope_plus = 0.0;  // d log ||Psi(x)||^2 / dx on the right tail
    double slope_minus = 0.0; // same on the left tail (positive when decaying)
    double r2_plus = 0.0;
    double r2_minus = 0.0;
    int points_plus = 0;
    int points_minus = 0;

    bool operator==(const DecayFit&) const = default;
};

/// Least-squares line through (x, log ||Psi(x)||^2) on both tails:
/// right tail x in [tail_start, x_max - 5], left tail x in [x_min + 5,
/// -tail_start].  Needs at least 8 points and positive mass on each tail.
DecayFit decay_fit(const State& psi, int tail_start);

struct BirthReport {
    BirthSign sign = BirthSign::plus;
    SideRatios ratios;
    double ratio_bound = 0.0;  // max of the two limsups
    double lower_bound = 0.0;  // min of the two liminfs; the verdict itself
                               // already fires on one-sided divergence
    Verdict verdict = Verdict::inconclusive;
    std::optional<State> eigenvector;
    std::optional<VerifyResult> residuals;
    std::optional<DecayFit> decay;
};

/// Full pipeline: ratios, classification and, when nontrivial, the vector
/// with its residuals and tail fit.
BirthReport birth_report(const ShiftParams& shift, const CoinField& coins, BirthSign sign,
                         int x_min, int x_max, int tail_start,
                         double tail_mass_tol = 1e-10, double classify_margin = 1e-9,
                         double min_chi = 1e-12);

/// Runs the pipeline on two coin fields that share the same declared limits
/// (the perturbation must vanish at infinity, otherwise this refuses).  The
/// verdicts are forced equal by the shared limits; the reports let the caller
/// compare decay slopes.
std::pair<BirthReport, BirthReport> robustness_compare(
    const ShiftParams& shift, const CoinField& base, const CoinField& perturbed,
    BirthSign sign, int x_min, int x_max, int tail_start);

} // namespace ssqw
