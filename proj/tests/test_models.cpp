#include <doctest.h>

#include <numbers>
#include <random>

#include "ssqw/models.hpp"

using namespace ssqw;

TEST_CASE("two-phase coin tables carry the advertised coins and chi vectors") {
    const double eps = 0.35;
    const double root = std::sqrt(1.0 - eps * eps);
    const CoinField coins = anisotropic_coin({.epsilon = eps});
    REQUIRE(coins.has_limits());

    const CoinSite& left = *coins.limit_minus();
    const CoinSite& right = *coins.limit_plus();
    CHECK(left.a() == doctest::Approx(2.0 * eps * eps - 1.0).epsilon(1e-15));
    CHECK(right.a() == doctest::Approx(1.0 - 2.0 * eps * eps).epsilon(1e-15));
    CHECK(left.b().real() == doctest::Approx(2.0 * eps * root).epsilon(1e-15));
    CHECK(right.b().real() == left.b().real());

    const Spinor chi_l = chi_of(left);
    const Spinor chi_r = chi_of(right);
    CHECK(std::abs(chi_l[0] - cplx(eps)) <= 1e-15);
    CHECK(std::abs(chi_l[1] - cplx(root)) <= 1e-15);
    CHECK(std::abs(chi_r[0] - cplx(root)) <= 1e-15);
    CHECK(std::abs(chi_r[1] - cplx(eps)) <= 1e-15);

    // the sharp table is the two limit coins around the origin
    CHECK(coins.at(-7).matrix().max_abs_diff(left.matrix()) == 0.0);
    CHECK(coins.at(0).matrix().max_abs_diff(left.matrix()) == 0.0);
    CHECK(coins.at(1).matrix().max_abs_diff(right.matrix()) == 0.0);
    CHECK(coins.at(9).matrix().max_abs_diff(right.matrix()) == 0.0);

    CHECK_THROWS_AS(anisotropic_coin({.epsilon = 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(anisotropic_coin({.epsilon = 1.0}), std::invalid_argument);
}

TEST_CASE("the smooth variant interpolates the chi angle linearly") {
    const double eps = 0.35;
    const int ramp = 12;
    const CoinField coins = anisotropic_coin({.epsilon = eps, .smooth = true, .ramp = ramp});
    const double eta_minus = std::asin(eps);
    const double eta_plus = std::numbers::pi / 2.0 - eta_minus;

    CHECK(coins.at(-ramp).matrix().max_abs_diff(coins.limit_minus()->matrix()) <= 1e-15);
    CHECK(coins.at(ramp).matrix().max_abs_diff(coins.limit_plus()->matrix()) <= 1e-15);
    for (int x = -ramp; x <= ramp; ++x) {
        const Spinor chi = chi_of(coins.at(x));
        const double eta = std::asin(std::abs(chi[0]));
        const double f = static_cast<double>(x + ramp) / (2.0 * ramp);
        CHECK(eta == doctest::Approx(eta_minus + f * (eta_plus - eta_minus)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(anisotropic_coin({.epsilon = eps, .smooth = true, .ramp = 0}),
                    std::invalid_argument);
}

TEST_CASE("the anisotropy threshold has its closed-form values") {
    CHECK(epsilon0(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(epsilon0(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(epsilon0(-0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(epsilon0(0.3) == epsilon0(-0.3));
    CHECK_THROWS_AS(epsilon0(1.0), std::invalid_argument);
}

TEST_CASE("the threshold is where the worst asymptotic ratio crosses 1") {
    // independent oracle: bisect the ratio bound computed from the limit coins
    const double p = 0.3;
    const ShiftParams shift(p, std::sqrt(1.0 - p * p));
    auto bound = [&](double eps) {
        const double root = std::sqrt(1.0 - eps * eps);
        const CoinSite right(1.0 - 2.0 * eps * eps, 2.0 * eps * root);
        const CoinSite left(2.0 * eps * eps - 1.0, 2.0 * eps * root);
        const SideRatios r = beta_constants(shift, left, right, BirthSign::plus);
        return std::max(r.minus.sup, r.plus.sup);
    };
    double lo = 0.05, hi = 0.95;
    REQUIRE(bound(lo) < 1.0);
    REQUIRE(bound(hi) > 1.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) < 1.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(epsilon0(p)).epsilon(1e-10));
}

TEST_CASE("threshold predictions agree with the ratio classification") {
    for (const double p : {-0.6, 0.0, 0.6}) {
        const ShiftParams shift(p, std::sqrt(1.0 - p * p));
        for (const double eps : {0.2, 0.4, 0.6, 0.8}) {
            const auto [vp, vm] = predict_anisotropic(eps, p);
            const CoinField coins = anisotropic_coin({.epsilon = eps});
            CHECK(vp == classify(side_ratios(shift, coins, BirthSign::plus, 1)));
            CHECK(vm == classify(side_ratios(shift, coins, BirthSign::minus, 1)));
        }
    }
    CHECK_THROWS_AS(predict_anisotropic(epsilon0(0.3), 0.3), std::domain_error);
    CHECK_THROWS_AS(predict_anisotropic(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("two-angle specs produce the advertised shift and coins") {
    const double theta1 = 2.0 * std::numbers::pi / 5.0;
    const double theta2 = std::numbers::pi / 3.0;
    auto [shift, coins] = kitagawa_coin(KitagawaSpec::constant(theta1, theta2));
    CHECK(shift.p() == doctest::Approx(std::sin(theta2 / 2.0)).epsilon(1e-15));
    CHECK(shift.q().real() == doctest::Approx(std::cos(theta2 / 2.0)).epsilon(1e-15));
    CHECK(shift.q().imag() == 0.0);
    CHECK(coins.at(17).a() == doctest::Approx(-std::sin(theta1 / 2.0)).epsilon(1e-15));
    CHECK(coins.at(17).b().real() == doctest::Approx(std::cos(theta1 / 2.0)).epsilon(1e-15));
    REQUIRE(coins.has_limits());

    // theta1 = pi is the forbidden b = 0 coin
    CHECK_THROWS_AS(kitagawa_coin(KitagawaSpec::constant(std::numbers::pi, theta2)),
                    HypothesisViolation);
    // theta2 = pi gives |p| = 1 and the walk decouples
    CHECK_THROWS_AS(kitagawa_coin(KitagawaSpec::constant(theta1, std::numbers::pi)),
                    std::invalid_argument);
    // angle ranges are enforced
    CHECK_THROWS_AS(kitagawa_coin(KitagawaSpec::constant(-0.1, theta2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(kitagawa_coin(KitagawaSpec::constant(theta1, 7.0)),
                    std::invalid_argument);
}

TEST_CASE("the two-angle worked example is predicted correctly") {
    const auto [plus, minus] = predict_two_phase_angles(
        3.0 * std::numbers::pi / 2.0, 0.0, -std::numbers::pi / 3.0);
    CHECK(plus == Verdict::nontrivial_dim1);
    CHECK(minus == Verdict::trivial);
}

TEST_CASE("degenerate two-angle inputs are refused") {
    const double pi = std::numbers::pi;
    // equal limit sines
    CHECK_THROWS_AS(predict_two_phase_angles(pi / 3.0, pi / 3.0, 0.4),
                    std::domain_error);
    // -t exactly at the lower endpoint s_+
    CHECK_THROWS_AS(predict_two_phase_angles(pi, pi / 3.0, -pi / 3.0),
                    std::domain_error);
    // shift angle at +/-pi
    CHECK_THROWS_AS(predict_two_phase_angles(pi / 2.0, 0.0, pi), std::domain_error);
}

TEST_CASE("predictions match the ratio classification on random admissible angles") {
    std::mt19937 gen(777);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> shift_angle(-2.5, 2.5);
    int tested = 0;
    while (tested < 50) {
        const double tm = angle(gen);
        const double tp = angle(gen);
        const double t2 = shift_angle(gen);
        if (std::abs(tm - std::numbers::pi) < 0.1) continue;
        if (std::abs(tp - std::numbers::pi) < 0.1) continue;
        const double sm = std::sin(tm / 2.0);
        const double sp = std::sin(tp / 2.0);
        const double t = std::sin(t2 / 2.0);
        if (std::abs(sm - sp) < 1e-3) continue;
        if (std::abs(-t - sm) < 1e-3 || std::abs(-t - sp) < 1e-3) continue;
        if (std::abs(t - sm) < 1e-3 || std::abs(t - sp) < 1e-3) continue;

        const auto [pred_plus, pred_minus] = predict_two_phase_angles(tm, tp, t2);
        auto [shift, coins] = kitagawa_coin(KitagawaSpec::two_phase(tm, tp, t2));
        CHECK(pred_plus == classify(side_ratios(shift, coins, BirthSign::plus, 1)));
        CHECK(pred_minus == classify(side_ratios(shift, coins, BirthSign::minus, 1)));
        ++tested;
    }
}
