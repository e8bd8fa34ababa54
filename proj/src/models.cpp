#include "ssqw/models.hpp"

#include <cmath>
#include <numbers>

namespace ssqw {

namespace {

// Coin whose chi vector is exactly (sin eta, cos eta) for eta in (0, pi/2).
CoinSite coin_from_chi_angle(double eta) {
    return CoinSite(-std::cos(2.0 * eta), std::sin(2.0 * eta));
}

void check_theta1(double theta, int site) {
    if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi))
        throw std::invalid_argument("coin angle must lie in [0, 2*pi)");
    if (std::abs(std::cos(theta / 2.0)) <= 1e-9)
        throw HypothesisViolation(site,
                                  "coin angle pi gives b = 0 and a degenerate chi");
}

} // namespace

CoinField anisotropic_coin(const AnisotropicSpec& spec) {
    const double eps = spec.epsilon;
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("anisotropy parameter must lie in (0, 1)");
    const double root = std::sqrt(1.0 - eps * eps);
    const CoinSite right(1.0 - 2.0 * eps * eps, 2.0 * eps * root);
    const CoinSite left(2.0 * eps * eps - 1.0, 2.0 * eps * root);
    if (!spec.smooth)
        return CoinField(0, {left, right}, left, right);

    if (spec.ramp < 1) throw std::invalid_argument("interpolation ramp must be positive");
    const double eta_minus = std::asin(eps);        // chi = (eps, sqrt(1-eps^2))
    const double eta_plus = std::numbers::pi / 2.0 - eta_minus; // chi = (sqrt(1-eps^2), eps)
    std::vector<CoinSite> table;
    table.reserve(static_cast<std::size_t>(2 * spec.ramp + 1));
    for (int x = -spec.ramp; x <= spec.ramp; ++x) {
        const double f = static_cast<double>(x + spec.ramp) / (2.0 * spec.ramp);
        table.push_back(coin_from_chi_angle(eta_minus + f * (eta_plus - eta_minus)));
    }
    return CoinField(-spec.ramp, std::move(table), left, right);
}

double epsilon0(double p) {
    if (!(std::abs(p) < 1.0))
        throw std::invalid_argument("epsilon0 needs |p| < 1");
    const double m = std::min((1.0 - p) / (1.0 + p), (1.0 + p) / (1.0 - p));
    return std::sqrt(m / (1.0 + m));
}

std::pair<Verdict, Verdict> predict_anisotropic(double epsilon, double p) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("anisotropy parameter must lie in (0, 1)");
    const double e0 = epsilon0(p);
    if (std::abs(epsilon - e0) <= 1e-12)
        throw std::domain_error("anisotropy parameter sits on the threshold");
    const Verdict v = epsilon < e0 ? Verdict::nontrivial_dim1 : Verdict::trivial;
    return {v, v};
}

KitagawaSpec KitagawaSpec::constant(double theta1, double theta2) {
    KitagawaSpec s;
    s.theta2 = theta2;
    s.table_min = 0;
    s.theta1 = {theta1};
    s.theta1_minus = theta1;
    s.theta1_plus = theta1;
    return s;
}

KitagawaSpec KitagawaSpec::two_phase(double theta_minus, double theta_plus,
                                     double theta2) {
    KitagawaSpec s;
    s.theta2 = theta2;
    s.table_min = 0;
    s.theta1 = {theta_minus, theta_plus};
    s.theta1_minus = theta_minus;
    s.theta1_plus = theta_plus;
    return s;
}

std::pair<ShiftParams, CoinField> kitagawa_coin(const KitagawaSpec& spec) {
    if (!(spec.theta2 >= -2.0 * std::numbers::pi && spec.theta2 <= 2.0 * std::numbers::pi))
        throw std::invalid_argument("shift angle must lie in [-2*pi, 2*pi]");
    const double p = std::sin(spec.theta2 / 2.0);
    const double q = std::cos(spec.theta2 / 2.0);
    if (std::abs(p) >= 1.0 - 1e-12)
        throw std::invalid_argument("shift angle +/-pi decouples the walk (|p| = 1)");
    if (spec.theta1.empty()) throw std::invalid_argument("empty coin angle table");

    auto coin_of = [](double theta) {
        return CoinSite(-std::sin(theta / 2.0), std::cos(theta / 2.0));
    };
    std::vector<CoinSite> table;
    table.reserve(spec.theta1.size());
    for (std::size_t i = 0; i < spec.theta1.size(); ++i) {
        check_theta1(spec.theta1[i], spec.table_min + static_cast<int>(i));
        table.push_back(coin_of(spec.theta1[i]));
    }
    std::optional<CoinSite> lim_minus, lim_plus;
    if (spec.theta1_minus) {
        check_theta1(*spec.theta1_minus, spec.table_min - 1);
        lim_minus = coin_of(*spec.theta1_minus);
    }
    if (spec.theta1_plus) {
        check_theta1(*spec.theta1_plus,
                     spec.table_min + static_cast<int>(spec.theta1.size()));
        lim_plus = coin_of(*spec.theta1_plus);
    }
    return {ShiftParams(p, q),
            CoinField(spec.table_min, std::move(table), lim_minus, lim_plus)};
}

std::pair<Verdict, Verdict> predict_two_phase_angles(double theta_minus,
                                                     double theta_plus, double theta2) {
    const double sm = std::sin(theta_minus / 2.0);
    const double sp = std::sin(theta_plus / 2.0);
    const double t = std::sin(theta2 / 2.0);
    if (std::abs(t) >= 1.0 - 1e-9)
        throw std::domain_error("shift angle +/-pi decouples the walk");
    if (std::abs(sm - sp) <= 1e-6)
        throw std::domain_error("equal limit sines: the two-phase criterion degenerates");
    auto one = [&](double target) {
        if (std::abs(target - sm) <= 1e-6 || std::abs(target - sp) <= 1e-6)
            throw std::domain_error(
                "shift sine within 1e-6 of an interval endpoint; refusing to predict");
        const bool inside = sp < target && target < sm;
        return inside ? Verdict::nontrivial_dim1 : Verdict::trivial;
    };
    return {one(-t), one(+t)};
}

} // namespace ssqw
