#include "ssqw/birth.hpp"

#include <cmath>
#include <limits>

namespace ssqw {

namespace {

// |q chi_1|^2 / |(p + s) chi_2|^2 at one site; its reciprocal is the
// one-step growth of |psi|^2 under the forward recursion.
double left_ratio(const ShiftParams& shift, const CoinSite& coin, double s) {
    const Spinor chi = chi_of(coin);
    const double num = std::norm(shift.q()) * std::norm(chi[0]);
    const double den = (shift.p() + s) * (shift.p() + s) * std::norm(chi[1]);
    return num / den;
}

void check_chi_window(const CoinField& coins, int lo, int hi, double min_chi) {
    for (int x = lo; x <= hi; ++x) {
        const Spinor chi = chi_of(coins.at(x));
        if (std::abs(chi[0]) <= min_chi || std::abs(chi[1]) <= min_chi)
            throw HypothesisViolation(
                x, "coin at site " + std::to_string(x) +
                       " has a vanishing chi component; the site-by-site recursion "
                       "divides by it");
    }
}

int default_scan_tail(const CoinField& coins) {
    return std::max({std::abs(coins.table_min()), std::abs(coins.table_max()), 1});
}

struct LineFit {
    double slope = 0.0;
    double r2 = 0.0;
    int points = 0;
};

LineFit fit_log_mass(const State& psi, int lo, int hi, const char* side) {
    LineFit fit;
    fit.points = hi - lo + 1;
    if (fit.points < 8)
        throw std::invalid_argument(std::string(side) +
                                    " tail has fewer than 8 points; enlarge the window "
                                    "or lower tail_start");
    double sx = 0.0, sy = 0.0;
    std::vector<double> ys(static_cast<std::size_t>(fit.points));
    for (int x = lo; x <= hi; ++x) {
        const double m = psi.site_norm2(x);
        if (!(m > 0.0))
            throw std::domain_error("zero mass inside the fitted tail at site " +
                                    std::to_string(x));
        ys[static_cast<std::size_t>(x - lo)] = std::log(m);
        sx += x;
        sy += ys[static_cast<std::size_t>(x - lo)];
    }
    const double mx = sx / fit.points, my = sy / fit.points;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int x = lo; x <= hi; ++x) {
        const double dx = x - mx;
        const double dy = ys[static_cast<std::size_t>(x - lo)] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    fit.slope = sxy / sxx;
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

} // namespace

Verdict classify(const SideRatios& ratios, double margin) {
    const double upper = std::max(ratios.minus.sup, ratios.plus.sup);
    const double lower = std::max(ratios.minus.inf, ratios.plus.inf);
    if (upper < 1.0 - margin) return Verdict::nontrivial_dim1;
    if (lower > 1.0 + margin) return Verdict::trivial;
    return Verdict::inconclusive;
}

SideRatios side_ratios(const ShiftParams& shift, const CoinField& coins, BirthSign sign,
                       int scan_tail, double min_chi) {
    if (scan_tail < 0) throw std::invalid_argument("scan_tail must be nonnegative");
    const double s = sign_value(sign);
    SideRatios out;
    out.sign = sign;
    out.exact_limits = coins.has_limits();

    auto limit_checked = [&](const CoinSite& c, int pseudo_site) {
        const Spinor chi = chi_of(c);
        if (std::abs(chi[0]) <= min_chi || std::abs(chi[1]) <= min_chi)
            throw HypothesisViolation(pseudo_site,
                                      "limit coin has a vanishing chi component");
        return c;
    };

    if (coins.limit_minus()) {
        const double r = left_ratio(
            shift, limit_checked(*coins.limit_minus(), coins.table_min() - 1), s);
        out.minus = {r, r};
    } else {
        check_chi_window(coins, -scan_tail - 64, -scan_tail, min_chi);
        double sup = 0.0, inf = std::numeric_limits<double>::infinity();
        for (int x = -scan_tail - 64; x <= -scan_tail; ++x) {
            const double r = left_ratio(shift, coins.at(x), s);
            sup = std::max(sup, r);
            inf = std::min(inf, r);
        }
        out.minus = {sup, inf};
    }

    if (coins.limit_plus()) {
        const double r = 1.0 / left_ratio(
            shift, limit_checked(*coins.limit_plus(), coins.table_max() + 1), s);
        out.plus = {r, r};
    } else {
        check_chi_window(coins, scan_tail, scan_tail + 64, min_chi);
        double sup = 0.0, inf = std::numeric_limits<double>::infinity();
        for (int x = scan_tail; x <= scan_tail + 64; ++x) {
            const double r = 1.0 / left_ratio(shift, coins.at(x), s);
            sup = std::max(sup, r);
            inf = std::min(inf, r);
        }
        out.plus = {sup, inf};
    }
    return out;
}

SideRatios beta_constants(const ShiftParams& shift, const CoinSite& c_minus,
                          const CoinSite& c_plus, BirthSign sign) {
    const CoinField field(0, {c_minus, c_plus}, c_minus, c_plus);
    return side_ratios(shift, field, sign, 1);
}

State construct_eigenvector(const ShiftParams& shift, const CoinField& coins,
                            BirthSign sign, int x_min, int x_max, double tail_mass_tol,
                            double classify_margin, double min_chi) {
    if (!(x_min < 0 && 0 < x_max))
        throw std::invalid_argument("the construction window must contain the origin");
    const SideRatios ratios =
        side_ratios(shift, coins, sign, default_scan_tail(coins), min_chi);
    switch (classify(ratios, classify_margin)) {
        case Verdict::nontrivial_dim1:
            break;
        case Verdict::trivial:
            throw TrivialBirthSpace("the requested flat eigenspace is zero");
        case Verdict::inconclusive:
            throw TrivialBirthSpace(
                "the side ratios straddle 1; cannot certify a nonzero flat eigenspace");
    }
    check_chi_window(coins, x_min, x_max, min_chi);

    const double s = sign_value(sign);
    const cplx q = shift.q();
    const double ps = shift.p() + s;
    // psi lives on [x_min, x_max + 1]; Psi(x) = ( -q/(p+s) psi(x+1), psi(x) ).
    std::vector<cplx> psi(static_cast<std::size_t>(x_max - x_min + 2));
    auto pv = [&](int x) -> cplx& { return psi[static_cast<std::size_t>(x - x_min)]; };
    pv(0) = 1.0;
    for (int x = 0; x < x_max + 1; ++x) {
        const Spinor chi = chi_of(coins.at(x));
        pv(x + 1) = pv(x) * (ps * std::conj(chi[1])) / (q * std::conj(chi[0]));
    }
    for (int x = 0; x > x_min; --x) {
        const Spinor chi = chi_of(coins.at(x - 1));
        pv(x - 1) = pv(x) * (q * std::conj(chi[0])) / (ps * std::conj(chi[1]));
    }

    State out = State::zero(x_min, x_max);
    const cplx head = -q / ps;
    for (int x = x_min; x <= x_max; ++x) out.ref(x) = {head * pv(x + 1), pv(x)};

    const double total = out.norm2();
    if (!(total > 0.0)) throw std::runtime_error("flat eigenvector candidate underflowed to zero");
    const double edge = out.site_norm2(x_min) + out.site_norm2(x_max);
    if (edge / total > tail_mass_tol)
        throw std::runtime_error(
            "window too small: the flat eigenvector still carries mass at the window "
            "ends; enlarge [x_min, x_max]");
    // Seeding psi(0) = 1 and dividing by the (positive) norm leaves the second
    // component at the origin real positive, which pins the free phase.
    return out.normalized();
}

VerifyResult verify_eigenvector(const ShiftParams& shift, const CoinField& coins,
                                BirthSign sign, const State& psi) {
    VerifyResult res;
    const double n = psi.norm();
    if (!(n > 0.0)) {
        res.zero_input = true;
        res.residual = std::numeric_limits<double>::infinity();
        res.d_residual = res.shift_residual = res.evolve_residual = res.residual;
        return res;
    }
    const double s = sign_value(sign);
    const int ilo = psi.x_min() + 2;
    const int ihi = psi.x_max() - 2;

    const ScalarField df = d_apply(coins, psi);
    const State spsi = apply_S(shift, psi);
    const State upsi = step_serial(shift, coins, psi);

    double d2 = 0.0, s2 = 0.0, u2 = 0.0;
    for (int x = ilo; x <= ihi; ++x) {
        d2 += std::norm(df.at(x));
        const Spinor a = spsi.at(x), b = psi.at(x), c = upsi.at(x);
        s2 += std::norm(a[0] + s * b[0]) + std::norm(a[1] + s * b[1]);
        u2 += std::norm(c[0] - s * b[0]) + std::norm(c[1] - s * b[1]);
    }
    res.d_residual = std::sqrt(d2) / n;
    res.shift_residual = std::sqrt(s2) / n;
    res.evolve_residual = std::sqrt(u2) / n;
    res.residual = std::max({res.d_residual, res.shift_residual, res.evolve_residual});
    return res;
}

DecayFit decay_fit(const State& psi, int tail_start) {
    if (tail_start < 0) throw std::invalid_argument("tail_start must be nonnegative");
    const LineFit right = fit_log_mass(psi, tail_start, psi.x_max() - 5, "right");
    const LineFit left = fit_log_mass(psi, psi.x_min() + 5, -tail_start, "left");
    DecayFit fit;
    fit.slope_plus = right.slope;
    fit.r2_plus = right.r2;
    fit.points_plus = right.points;
    fit.slope_minus = left.slope; // positive when the mass decays towards -infinity
    fit.r2_minus = left.r2;
    fit.points_minus = left.points;
    return fit;
}

BirthReport birth_report(const ShiftParams& shift, const CoinField& coins, BirthSign sign,
                         int x_min, int x_max, int tail_start, double tail_mass_tol,
                         double classify_margin, double min_chi) {
    BirthReport rep;
    rep.sign = sign;
    rep.ratios = side_ratios(shift, coins, sign, default_scan_tail(coins), min_chi);
    rep.ratio_bound = std::max(rep.ratios.minus.sup, rep.ratios.plus.sup);
    rep.lower_bound = std::min(rep.ratios.minus.inf, rep.ratios.plus.inf);
    rep.verdict = classify(rep.ratios, classify_margin);
    if (rep.verdict == Verdict::nontrivial_dim1) {
        rep.eigenvector = construct_eigenvector(shift, coins, sign, x_min, x_max,
                                                tail_mass_tol, classify_margin, min_chi);
        rep.residuals = verify_eigenvector(shift, coins, sign, *rep.eigenvector);
        rep.decay = decay_fit(*rep.eigenvector, tail_start);
    }
    return rep;
}

std::pair<BirthReport, BirthReport> robustness_compare(
    const ShiftParams& shift, const CoinField& base, const CoinField& perturbed,
    BirthSign sign, int x_min, int x_max, int tail_start) {
    if (!base.has_limits() || !perturbed.has_limits())
        throw std::invalid_argument(
            "robustness comparison needs declared limit coins on both fields");
    const double dm = base.limit_minus()->matrix().max_abs_diff(
        perturbed.limit_minus()->matrix());
    const double dp = base.limit_plus()->matrix().max_abs_diff(
        perturbed.limit_plus()->matrix());
    if (dm > 1e-12 || dp > 1e-12)
        throw std::invalid_argument(
            "perturbation does not vanish at infinity: the limit coins differ");
    BirthReport a = birth_report(shift, base, sign, x_min, x_max, tail_start);
    BirthReport b = birth_report(shift, perturbed, sign, x_min, x_max, tail_start);
    if (a.verdict != b.verdict)
        throw std::logic_error("equal limit coins produced different verdicts");
    return {std::move(a), std::move(b)};
}

} // namespace ssqw
