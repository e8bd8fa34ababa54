#include "ssqw/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssqw {

namespace {

void check_window(int x_min, int x_max, Boundary boundary) {
    if (x_max < x_min) throw std::invalid_argument("empty truncation window");
    if (boundary == Boundary::periodic && x_max - x_min + 1 < 3)
        throw std::invalid_argument("periodic truncation needs at least 3 sites");
}

// Fraction of the vector's mass within `band` sites of either window end.
// `per_site` is the number of vector entries per lattice site.
std::vector<bool> boundary_flags(const CMatrix& vectors, int sites, int per_site) {
    const int band = std::min(5, sites);
    std::vector<bool> flags(vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        double total = 0.0, edge = 0.0;
        for (int s = 0; s < sites; ++s) {
            double m = 0.0;
            for (int c = 0; c < per_site; ++c)
                m += std::norm(vectors(static_cast<std::size_t>(s * per_site + c), j));
            total += m;
            if (s < band || s >= sites - band) edge += m;
        }
        flags[j] = total > 0.0 && edge > 0.5 * total;
    }
    return flags;
}

} // namespace

double v_of(const ShiftParams& shift, const CoinSite& coin) {
    const Spinor chi = chi_of(coin);
    return shift.p() * (std::norm(chi[0]) - std::norm(chi[1]));
}

double v_sup(const ShiftParams& shift, const CoinField& coins) {
    double m = 0.0;
    for (int x = coins.table_min(); x <= coins.table_max(); ++x)
        m = std::max(m, std::abs(v_of(shift, coins.at(x))));
    if (coins.limit_minus()) m = std::max(m, std::abs(v_of(shift, *coins.limit_minus())));
    if (coins.limit_plus()) m = std::max(m, std::abs(v_of(shift, *coins.limit_plus())));
    return m;
}

double exclusion_bound(const ShiftParams& shift, const CoinField& coins) {
    return std::abs(shift.q()) + v_sup(shift, coins);
}

TruncatedOperator build_T(const ShiftParams& shift, const CoinField& coins,
                          int x_min, int x_max, Boundary boundary) {
    check_window(x_min, x_max, boundary);
    const int n = x_max - x_min + 1;
    TruncatedOperator op;
    op.x_min = x_min;
    op.x_max = x_max;
    op.boundary = boundary;
    op.kind = OperatorKind::discriminant;
    op.matrix = CMatrix(static_cast<std::size_t>(n));
    const cplx q = shift.q();

    std::vector<Spinor> chi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) chi[static_cast<std::size_t>(i)] = chi_of(coins.at(x_min + i));

    auto hop = [&](int i, int j) { // coupling from site index i to its right neighbour j
        return q * std::conj(chi[static_cast<std::size_t>(i)][0]) * chi[static_cast<std::size_t>(j)][1];
    };
    for (int i = 0; i < n; ++i) {
        op.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
            v_of(shift, coins.at(x_min + i));
        if (i + 1 < n) {
            const cplx t = hop(i, i + 1);
            op.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = t;
            op.matrix(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = std::conj(t);
        }
    }
    if (boundary == Boundary::periodic) {
        const cplx t = hop(n - 1, 0);
        op.matrix(static_cast<std::size_t>(n - 1), 0) = t;
        op.matrix(0, static_cast<std::size_t>(n - 1)) = std::conj(t);
    }
    return op;
}

TruncatedOperator build_U(const ShiftParams& shift, const CoinField& coins,
                          int x_min, int x_max, Boundary boundary) {
    if (boundary != Boundary::periodic)
        throw std::invalid_argument("hard truncation of the evolution operator is not "
                                    "unitary; use the periodic variant");
    check_window(x_min, x_max, boundary);
    const int n = x_max - x_min + 1;
    TruncatedOperator op;
    op.x_min = x_min;
    op.x_max = x_max;
    op.boundary = boundary;
    op.kind = OperatorKind::evolution;
    op.matrix = CMatrix(static_cast<std::size_t>(2 * n));
    const double p = shift.p();
    const cplx q = shift.q();
    const cplx qc = std::conj(q);

    auto idx = [&](int site, int comp) {
        return static_cast<std::size_t>(2 * ((site % n + n) % n) + comp);
    };
    // Row (x, 0):  p a(x), p b(x) at x and q conj(b(x+1)), -q a(x+1) at x+1.
    // Row (x, 1):  qc a(x-1), qc b(x-1) at x-1 and -p conj(b(x)), p a(x) at x.
    for (int i = 0; i < n; ++i) {
        const int x = x_min + i;
        const CoinSite& here = coins.at(x);
        const CoinSite& right = coins.at(x_min + ((i + 1) % n));
        const CoinSite& left = coins.at(x_min + ((i - 1 + n) % n));
        op.matrix(idx(i, 0), idx(i, 0)) = p * here.a();
        op.matrix(idx(i, 0), idx(i, 1)) = p * here.b();
        op.matrix(idx(i, 0), idx(i + 1, 0)) = q * std::conj(right.b());
        op.matrix(idx(i, 0), idx(i + 1, 1)) = -q * right.a();
        op.matrix(idx(i, 1), idx(i - 1, 0)) = qc * left.a();
        op.matrix(idx(i, 1), idx(i - 1, 1)) = qc * left.b();
        op.matrix(idx(i, 1), idx(i, 0)) = -p * std::conj(here.b());
        op.matrix(idx(i, 1), idx(i, 1)) = p * here.a();
    }
    return op;
}

TruncatedOperator build_K_E(const ShiftParams& shift, const CoinField& coins,
                            double energy, BirthSign sign, int x_min, int x_max,
                            Boundary boundary) {
    check_window(x_min, x_max, boundary);
    const double vmax = v_sup(shift, coins);
    if (!(energy > vmax + 1e-9))
        throw std::domain_error("energy inside the diagonal range: square root of a "
                                "nonpositive weight");
    TruncatedOperator op = build_T(shift, coins, x_min, x_max, boundary);
    const int n = op.sites();
    const double s = sign_value(sign);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v = v_of(shift, coins.at(x_min + i));
        w[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(energy - s * v);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx& e = op.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (i == j) {
                e = 0.0; // K_E keeps only the off-diagonal part of T
            } else {
                e *= w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
            }
        }
    return op;
}

SpectrumReport eig_hermitian(const TruncatedOperator& op, const JacobiOptions& opt) {
    if (op.kind != OperatorKind::discriminant)
        throw std::invalid_argument("eig_hermitian expects a discriminant-type section");
    const HermitianEig he = jacobi_eigh(op.matrix, opt);
    SpectrumReport rep;
    rep.kind = op.kind;
    rep.boundary = op.boundary;
    rep.x_min = op.x_min;
    rep.x_max = op.x_max;
    rep.values_real = he.values;
    rep.values.assign(he.values.begin(), he.values.end());
    rep.vectors = he.vectors;
    rep.residuals = eig_residuals(op.matrix, rep.vectors, rep.values);
    rep.boundary_localized = boundary_flags(rep.vectors, op.sites(), 1);
    return rep;
}

SpectrumReport eig_unitary(const TruncatedOperator& op, const JacobiOptions& opt) {
    if (op.kind != OperatorKind::evolution)
        throw std::invalid_argument("eig_unitary expects an evolution-type section");
    const double scale = std::max(1.0, op.matrix.max_abs());
    if (op.matrix.unitary_defect() > 1e-12 * scale)
        throw std::invalid_argument("eig_unitary expects a unitary matrix");
    const UnitaryEig ue = unitary_eig(op.matrix, opt);
    SpectrumReport rep;
    rep.kind = op.kind;
    rep.boundary = op.boundary;
    rep.x_min = op.x_min;
    rep.x_max = op.x_max;
    rep.values = ue.values;
    rep.vectors = ue.vectors;
    rep.residuals = eig_residuals(op.matrix, rep.vectors, rep.values);
    rep.boundary_localized = boundary_flags(rep.vectors, op.sites(), 2);
    return rep;
}

MappingReport spectral_mapping_check(const ShiftParams& shift, const CoinField& coins,
                                     int sites, const JacobiOptions& opt) {
    if (sites < 4) throw std::invalid_argument("spectral mapping check needs at least 4 sites");
    const int lo = -sites / 2;
    const int hi = lo + sites - 1;
    MappingReport rep;
    rep.t_spectrum = eig_hermitian(build_T(shift, coins, lo, hi, Boundary::periodic), opt);
    rep.u_spectrum = eig_unitary(build_U(shift, coins, lo, hi, Boundary::periodic), opt);
    // The wrap makes site hi the left neighbour of site lo; that bond lies on a
    // seam whenever it disagrees with the infinite field around either end.
    rep.seam = coins.at(hi + 1).matrix().max_abs_diff(coins.at(lo).matrix()) > 1e-12 ||
               coins.at(lo - 1).matrix().max_abs_diff(coins.at(hi).matrix()) > 1e-12;

    const std::vector<double>& tv = rep.t_spectrum.values_real;
    rep.u_spectrum.mapping_defects.resize(rep.u_spectrum.values.size());
    for (std::size_t j = 0; j < rep.u_spectrum.values.size(); ++j) {
        const double re = rep.u_spectrum.values[j].real();
        double best = std::numeric_limits<double>::infinity();
        for (double t : tv) best = std::min(best, std::abs(re - t));
        rep.u_spectrum.mapping_defects[j] = best;
        rep.max_defect = std::max(rep.max_defect, best);
        if (!rep.u_spectrum.boundary_localized[j])
            rep.max_interior_defect = std::max(rep.max_interior_defect, best);
    }
    // Each t must be hit by an evolution eigenvalue on both half-circles (its
    // two preimages).  Real eigenvalues sit on both halves, which also covers
    // the degenerate preimage at t = +/-1.
    for (double t : tv) {
        const double tc = std::clamp(t, -1.0, 1.0);
        for (double sgn : {1.0, -1.0}) {
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& lam : rep.u_spectrum.values) {
                if (sgn * lam.imag() < -1e-12) continue;
                best = std::min(best, std::abs(lam.real() - tc));
            }
            rep.max_inverse_defect = std::max(rep.max_inverse_defect, best);
        }
    }
    return rep;
}

} // namespace ssqw
