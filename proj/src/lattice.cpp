#include "ssqw/lattice.hpp"

#include <cmath>

namespace ssqw {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ShiftParams::ShiftParams(double p, cplx q) : p_(p), q_(q) {
    if (!std::isfinite(p) || !finite(q))
        throw std::invalid_argument("shift parameters must be finite");
    const double r = p * p + std::norm(q);
    if (std::abs(r - 1.0) > 1e-6)
        throw std::invalid_argument("shift parameters must satisfy p^2 + |q|^2 = 1");
    // Renormalize the last few bits so downstream identities hold to machine precision.
    const double s = 1.0 / std::sqrt(r);
    p_ *= s;
    q_ *= s;
    if (std::abs(p_) >= 1.0 - 1e-12)
        throw std::invalid_argument("|p| must be strictly below 1 (the walk decouples at |p| = 1)");
}

CoinSite::CoinSite(double a, cplx b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !finite(b))
        throw std::invalid_argument("coin entries must be finite");
    const double r = a * a + std::norm(b);
    if (std::abs(r - 1.0) > 1e-6)
        throw std::invalid_argument("coin entries must satisfy a^2 + |b|^2 = 1");
    const double s = 1.0 / std::sqrt(r);
    a_ *= s;
    b_ *= s;
}

Mat2 CoinSite::matrix() const {
    Mat2 c;
    c.m = {cplx(a_), b_, std::conj(b_), cplx(-a_)};
    return c;
}

Spinor chi_of(const CoinSite& coin) {
    const double a = coin.a();
    if (1.0 - a < 1e-15) return {cplx(1.0), cplx(0.0)};
    const double s = 1.0 / std::sqrt(2.0 * (1.0 - a));
    return {coin.b() * s, cplx((1.0 - a) * s)};
}

CoinField::CoinField(int table_min, std::vector<CoinSite> table,
                     std::optional<CoinSite> limit_minus,
                     std::optional<CoinSite> limit_plus)
    : table_min_(table_min),
      table_(std::move(table)),
      limit_minus_(std::move(limit_minus)),
      limit_plus_(std::move(limit_plus)) {
    if (table_.empty()) throw std::invalid_argument("coin table must not be empty");
}

CoinField CoinField::constant(const CoinSite& c) {
    return CoinField(0, {c}, c, c);
}

const CoinSite& CoinField::at(int x) const {
    if (x <= table_min_) return table_.front();
    const int off = x - table_min_;
    if (off >= static_cast<int>(table_.size())) return table_.back();
    return table_[static_cast<std::size_t>(off)];
}

void CoinField::require_nonvanishing_chi(double min_chi) const {
    auto check = [&](const CoinSite& c, int site) {
        const Spinor chi = chi_of(c);
        if (std::abs(chi[0]) <= min_chi || std::abs(chi[1]) <= min_chi)
            throw HypothesisViolation(
                site, "coin at site " + std::to_string(site) +
                          " has a vanishing chi component; the site-by-site recursion "
                          "divides by it");
    };
    for (std::size_t i = 0; i < table_.size(); ++i)
        check(table_[i], table_min_ + static_cast<int>(i));
    if (limit_minus_) check(*limit_minus_, table_min_ - 1);
    if (limit_plus_) check(*limit_plus_, table_max() + 1);
}

State::State(int x_min, std::vector<Spinor> values)
    : x_min_(x_min), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("state window must not be empty");
}

State State::zero(int x_min, int x_max) {
    if (x_max < x_min) throw std::invalid_argument("state window must not be empty");
    return State(x_min, std::vector<Spinor>(static_cast<std::size_t>(x_max - x_min + 1)));
}

State State::delta(int x, const Spinor& s) {
    return State(x, {s});
}

Spinor State::at(int x) const {
    if (x < x_min_ || x > x_max()) return {cplx(0.0), cplx(0.0)};
    return values_[static_cast<std::size_t>(x - x_min_)];
}

Spinor& State::ref(int x) {
    if (x < x_min_ || x > x_max()) throw std::out_of_range("site outside state window");
    return values_[static_cast<std::size_t>(x - x_min_)];
}

double State::norm2() const {
    double s = 0.0;
    for (const Spinor& v : values_) s += ssqw::norm2(v);
    return s;
}

double State::norm() const { return std::sqrt(norm2()); }

State State::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw std::domain_error("cannot normalize the zero state");
    State out = *this;
    for (Spinor& v : out.values_) {
        v[0] /= n;
        v[1] /= n;
    }
    return out;
}

State State::compacted(double threshold) const {
    auto negligible = [&](const Spinor& v) {
        return std::abs(v[0]) < threshold && std::abs(v[1]) < threshold;
    };
    std::size_t lo = 0, hi = values_.size();
    while (lo + 1 < hi && negligible(values_[lo])) ++lo;
    while (hi > lo + 1 && negligible(values_[hi - 1])) --hi;
    return State(x_min_ + static_cast<int>(lo),
                 std::vector<Spinor>(values_.begin() + static_cast<std::ptrdiff_t>(lo),
                                     values_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

ScalarField::ScalarField(int x_min, std::vector<cplx> values)
    : x_min_(x_min), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("field window must not be empty");
}

ScalarField ScalarField::delta(int x, cplx v) { return ScalarField(x, {v}); }

cplx ScalarField::at(int x) const {
    if (x < x_min_ || x > x_max()) return cplx(0.0);
    return values_[static_cast<std::size_t>(x - x_min_)];
}

cplx& ScalarField::ref(int x) {
    if (x < x_min_ || x > x_max()) throw std::out_of_range("site outside field window");
    return values_[static_cast<std::size_t>(x - x_min_)];
}

double ScalarField::norm2() const {
    double s = 0.0;
    for (cplx v : values_) s += std::norm(v);
    return s;
}

double ScalarField::norm() const { return std::sqrt(norm2()); }

State apply_S(const ShiftParams& shift, const State& psi) {
    const double p = shift.p();
    const cplx q = shift.q();
    const cplx qc = std::conj(q);
    State out = State::zero(psi.x_min() - 1, psi.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x) {
        const Spinor here = psi.at(x);
        out.ref(x) = {p * here[0] + q * psi.at(x + 1)[1],
                      qc * psi.at(x - 1)[0] - p * here[1]};
    }
    return out;
}

State apply_C(const CoinField& coins, const State& psi) {
    State out = State::zero(psi.x_min(), psi.x_max());
    for (int x = out.x_min(); x <= out.x_max(); ++x)
        out.ref(x) = coins.at(x).matrix().apply(psi.at(x));
    return out;
}

ScalarField d_apply(const CoinField& coins, const State& psi) {
    ScalarField out(psi.x_min(), std::vector<cplx>(psi.sites()));
    for (int x = psi.x_min(); x <= psi.x_max(); ++x) {
        const Spinor chi = chi_of(coins.at(x));
        const Spinor v = psi.at(x);
        out.ref(x) = std::conj(chi[0]) * v[0] + std::conj(chi[1]) * v[1];
    }
    return out;
}

State d_star_apply(const CoinField& coins, const ScalarField& f) {
    State out = State::zero(f.x_min(), f.x_max());
    for (int x = f.x_min(); x <= f.x_max(); ++x) {
        const Spinor chi = chi_of(coins.at(x));
        const cplx v = f.at(x);
        out.ref(x) = {v * chi[0], v * chi[1]};
    }
    return out;
}

State combine(cplx ca, const State& a, cplx cb, const State& b) {
    const int lo = std::min(a.x_min(), b.x_min());
    const int hi = std::max(a.x_max(), b.x_max());
    State out = State::zero(lo, hi);
    for (int x = lo; x <= hi; ++x) {
        const Spinor va = a.at(x), vb = b.at(x);
        out.ref(x) = {ca * va[0] + cb * vb[0], ca * va[1] + cb * vb[1]};
    }
    return out;
}

cplx overlap(const State& a, const State& b) {
    const int lo = std::max(a.x_min(), b.x_min());
    const int hi = std::min(a.x_max(), b.x_max());
    cplx s = 0.0;
    for (int x = lo; x <= hi; ++x) {
        const Spinor va = a.at(x), vb = b.at(x);
        s += std::conj(va[0]) * vb[0] + std::conj(va[1]) * vb[1];
    }
    return s;
}

double max_pointwise_diff(const State& a, const State& b) {
    const int lo = std::min(a.x_min(), b.x_min());
    const int hi = std::max(a.x_max(), b.x_max());
    double d = 0.0;
    for (int x = lo; x <= hi; ++x) {
        const Spinor va = a.at(x), vb = b.at(x);
        d = std::max(d, std::abs(va[0] - vb[0]));
        d = std::max(d, std::abs(va[1] - vb[1]));
    }
    return d;
}

double max_pointwise_diff(const ScalarField& a, const ScalarField& b) {
    const int lo = std::min(a.x_min(), b.x_min());
    const int hi = std::max(a.x_max(), b.x_max());
    double d = 0.0;
    for (int x = lo; x <= hi; ++x) d = std::max(d, std::abs(a.at(x) - b.at(x)));
    return d;
}

} // namespace ssqw
