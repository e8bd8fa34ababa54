#pragma once

#include <utility>
#include <vector>

#include "ssqw/birth.hpp"

namespace ssqw {

/// Two-phase anisotropic coin controlled by one parameter eps in (0, 1):
///   right coin  [[1 - 2 eps^2, 2 eps sqrt(1-eps^2)], [ ... , 2 eps^2 - 1]]
///   left coin   the same with the diagonal swapped,
/// so chi is (sqrt(1-eps^2), eps) on the right and (eps, sqrt(1-eps^2)) on
/// the left.  `smooth` replaces the sharp jump at the origin by a linear
/// interpolation of the chi angle over |x| <= ramp; the limits are unchanged.
struct AnisotropicSpec {
    double epsilon = 0.5;
    bool smooth = false;
    int ramp = 20;
};

CoinField anisotropic_coin(const AnisotropicSpec& spec);

/// Threshold eps_0(p) = sqrt(m / (1 + m)), m = min((1-p)/(1+p), (1+p)/(1-p)).
/// Below it both flat eigenspaces are nontrivial, above it both are zero.
double epsilon0(double p);

std::pair<Verdict, Verdict> predict_anisotropic(double epsilon, double p);

/// Two-angle split-step family: the shift comes from theta2 via
/// p = sin(theta2/2), q = cos(theta2/2), and the coin at x from theta1(x) via
/// a = -sin(theta1(x)/2), b = cos(theta1(x)/2).  theta1 is a table on
/// [table_min, ...] plus optional limit angles.
struct KitagawaSpec {
    double theta2 = 0.0;
    int table_min = 0;
    std::vector<double> theta1;
    std::optional<double> theta1_minus;
    std::optional<double> theta1_plus;

    static KitagawaSpec constant(double theta1, double theta2);
    /// theta1(x) = theta_minus for x <= 0 and theta_plus for x >= 1.
    static KitagawaSpec two_phase(double theta_minus, double theta_plus, double theta2);
};

std::pair<ShiftParams, CoinField> kitagawa_coin(const KitagawaSpec& spec);

/// Verdicts for the two-phase angle model from the closed-form criterion: with
/// s_- = sin(theta_minus/2), s_+ = sin(theta_plus/2), t = sin(theta2/2),
/// the plus (resp. minus) eigenspace is nontrivial iff -t (resp. +t) lies in
/// the open interval (s_+, s_-); it requires s_- > s_+, otherwise both spaces
/// are zero.  Refuses inputs within 1e-6 of the interval endpoints or of
/// s_- = s_+, where the criterion degenerates.
std::pair<Verdict, Verdict> predict_two_phase_angles(double theta_minus,
                                                     double theta_plus, double theta2);

} // namespace ssqw
