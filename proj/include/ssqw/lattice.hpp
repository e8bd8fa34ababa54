#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssqw/types.hpp"

namespace ssqw {

/// Thrown when a coin has a vanishing chi component at a site where the
/// algorithms divide by it (birth-space recursions, side ratios).
class HypothesisViolation : public std::runtime_error {
public:
    HypothesisViolation(int site, const std::string& what)
        : std::runtime_error(what), site_(site) {}
    int site() const { return site_; }

private:
    int site_;
};

/// Thrown when a birth eigenvector is requested but the classification of the
/// side ratios says the space is zero (or cannot be confirmed nontrivial).
class TrivialBirthSpace : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shift parameters (p, q) with p real and p^2 + |q|^2 = 1, |p| < 1.
class ShiftParams {
public:
    ShiftParams(double p, cplx q);
    double p() const { return p_; }
    cplx q() const { return q_; }

private:
    double p_;
    cplx q_;
};

/// One coin site: a real, a^2 + |b|^2 = 1.  The coin matrix is
/// [[a, b], [conj(b), -a]], self-adjoint and unitary.
class CoinSite {
public:
    CoinSite(double a, cplx b);
    double a() const { return a_; }
    cplx b() const { return b_; }
    Mat2 matrix() const;

private:
    double a_;
    cplx b_;
};

/// Unit vector spanning the +1 eigenspace of the coin matrix, with the phase
/// fixed by chi = (b, 1-a) / sqrt(2(1-a)) for a != 1 and chi = (1, 0) at a = 1.
Spinor chi_of(const CoinSite& coin);

/// Coin assignment x -> C(x): an explicit table on [table_min, table_max],
/// extended outside by the nearest tabulated coin.  Limit coins may be
/// declared separately; they stand for the coins at -infinity / +infinity and
/// let asymptotic quantities be computed exactly instead of read off the fill.
class CoinField {
public:
    CoinField(int table_min, std::vector<CoinSite> table,
              std::optional<CoinSite> limit_minus = std::nullopt,
              std::optional<CoinSite> limit_plus = std::nullopt);

    static CoinField constant(const CoinSite& c);

    const CoinSite& at(int x) const;
    int table_min() const { return table_min_; }
    int table_max() const { return table_min_ + static_cast<int>(table_.size()) - 1; }
    const std::optional<CoinSite>& limit_minus() const { return limit_minus_; }
    const std::optional<CoinSite>& limit_plus() const { return limit_plus_; }
    bool has_limits() const { return limit_minus_.has_value() && limit_plus_.has_value(); }

    /// Requires |chi_1(x)|, |chi_2(x)| > min_chi on every tabulated site and on
    /// declared limit coins.  Throws HypothesisViolation naming the site
    /// (table_min - 1 / table_max + 1 stand in for the limit coins).
    void require_nonvanishing_chi(double min_chi = 1e-12) const;

private:
    int table_min_;
    std::vector<CoinSite> table_;
    std::optional<CoinSite> limit_minus_;
    std::optional<CoinSite> limit_plus_;
};

/// Finitely supported two-component wavefunction.  Sites outside the stored
/// window read as zero.
class State {
public:
    State(int x_min, std::vector<Spinor> values);
    static State zero(int x_min, int x_max);
    static State delta(int x, const Spinor& s);

    int x_min() const { return x_min_; }
    int x_max() const { return x_min_ + static_cast<int>(values_.size()) - 1; }
    std::size_t sites() const { return values_.size(); }

    Spinor at(int x) const;
    Spinor& ref(int x);
    const Spinor& by_index(std::size_t i) const { return values_[i]; }
    Spinor& by_index(std::size_t i) { return values_[i]; }

    double site_norm2(int x) const { return ssqw::norm2(at(x)); }
    double norm2() const;
    double norm() const;
    State normalized() const;

    /// Drops leading/trailing sites whose components are all below the
    /// threshold in absolute value.  Keeps at least one site.
    State compacted(double threshold = 1e-300) const;

private:
    int x_min_;
    std::vector<Spinor> values_;
};

/// Finitely supported scalar (one-component) function on the lattice.
class ScalarField {
public:
    ScalarField(int x_min, std::vector<cplx> values);
    static ScalarField delta(int x, cplx v);

    int x_min() const { return x_min_; }
    int x_max() const { return x_min_ + static_cast<int>(values_.size()) - 1; }
    std::size_t sites() const { return values_.size(); }

    cplx at(int x) const;
    cplx& ref(int x);
    double norm2() const;
    double norm() const;

private:
    int x_min_;
    std::vector<cplx> values_;
};

/// Shift operator: (S psi)(x) = ( p psi_1(x) + q psi_2(x+1),
///                                conj(q) psi_1(x-1) - p psi_2(x) ).
/// The output window is the input window grown by one site on each side.
State apply_S(const ShiftParams& shift, const State& psi);

/// Coin operator: (C psi)(x) = C(x) psi(x), same window.
State apply_C(const CoinField& coins, const State& psi);

/// Boundary map: (d psi)(x) = <chi(x), psi(x)>, conjugate-linear in chi.
ScalarField d_apply(const CoinField& coins, const State& psi);

/// Its adjoint: (d* f)(x) = f(x) chi(x).
State d_star_apply(const CoinField& coins, const ScalarField& f);

/// ca * a + cb * b on the union window.
State combine(cplx ca, const State& a, cplx cb, const State& b);

/// Inner product <a, b>, conjugate-linear in the first argument.
cplx overlap(const State& a, const State& b);

/// max over sites and components of |a - b|, zero-filled outside windows.
double max_pointwise_diff(const State& a, const State& b);
double max_pointwise_diff(const ScalarField& a, const ScalarField& b);

} // namespace ssqw
