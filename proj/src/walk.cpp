#include "ssqw/walk.hpp"

#include <cstdint>

namespace ssqw {

namespace {

// Output spinor at site x.  Reading the three neighbours through State::at
// keeps the zero-outside-window convention in one place.
inline Spinor step_site(const ShiftParams& shift, const CoinField& coins,
                        const State& psi, int x) {
    const LocalMatrices right = local_matrices(shift, coins.at(x + 1));
    const LocalMatrices left = local_matrices(shift, coins.at(x - 1));
    const LocalMatrices here = local_matrices(shift, coins.at(x));
    const Spinor a = right.P.apply(psi.at(x + 1));
    const Spinor b = left.Q.apply(psi.at(x - 1));
    const Spinor c = here.R.apply(psi.at(x));
    return {a[0] + b[0] + c[0], a[1] + b[1] + c[1]};
}

} // namespace

LocalMatrices local_matrices(const ShiftParams& shift, const CoinSite& coin) {
    const double p = shift.p();
    const cplx q = shift.q();
    const double a = coin.a();
    const cplx b = coin.b();
    LocalMatrices lm;
    lm.P.m = {q * std::conj(b), q * cplx(-a), cplx(0.0), cplx(0.0)};
    lm.Q.m = {cplx(0.0), cplx(0.0), std::conj(q) * a, std::conj(q) * b};
    lm.R.m = {p * a, p * b, -p * std::conj(b), p * cplx(a)};
    return lm;
}

State step(const ShiftParams& shift, const CoinField& coins, const State& psi,
           double compaction_threshold) {
    State out = State::zero(psi.x_min() - 1, psi.x_max() + 1);
    const std::int64_t n = static_cast<std::int64_t>(out.sites());
    const int lo = out.x_min();
#pragma omp parallel for schedule(static) if (n > 2048)
    for (std::int64_t i = 0; i < n; ++i)
        out.by_index(static_cast<std::size_t>(i)) =
            step_site(shift, coins, psi, lo + static_cast<int>(i));
    return out.compacted(compaction_threshold);
}

State step_serial(const ShiftParams& shift, const CoinField& coins, const State& psi,
                  double compaction_threshold) {
    State out = State::zero(psi.x_min() - 1, psi.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x)
        out.ref(x) = step_site(shift, coins, psi, x);
    return out.compacted(compaction_threshold);
}

State evolve(const ShiftParams& shift, const CoinField& coins, State psi, int t,
             double compaction_threshold) {
    if (t < 0) throw std::invalid_argument("cannot evolve backwards in time");
    for (int i = 0; i < t; ++i) psi = step(shift, coins, psi, compaction_threshold);
    return psi;
}

std::map<int, double> position_distribution(const State& psi) {
    std::map<int, double> dist;
    for (int x = psi.x_min(); x <= psi.x_max(); ++x) {
        const double m = psi.site_norm2(x);
        if (m > 0.0) dist[x] = m;
    }
    return dist;
}

} // namespace ssqw
