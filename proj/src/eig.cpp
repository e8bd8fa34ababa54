#include "ssqw/eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace ssqw {

namespace {

double off_norm(const CMatrix& a) {
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Plane rotation R = [[c, w], [-conj(w), c]] with w = s * phase acting on the
// (p, q) plane, chosen to zero a_pq.  With tau = (a_qq - a_pp) / (2 |a_pq|) the
// tangent solves t^2 + 2 tau t - 1 = 0; the smaller root keeps |t| <= 1, which
// bounds the rotation angle and makes the sweep monotone.
struct Rotation {
    std::size_t p = 0, q = 0;
    double c = 1.0, s = 0.0;
    cplx phase{1.0};
    double app = 0.0, aqq = 0.0, g = 0.0; // snapshot used to settle the plane
    bool active = false;
};

Rotation plane_rotation(const CMatrix& a, std::size_t p, std::size_t q) {
    Rotation r;
    r.p = p;
    r.q = q;
    const cplx apq = a(p, q);
    r.g = std::abs(apq);
    r.app = a(p, p).real();
    r.aqq = a(q, q).real();
    if (!(r.g > 0.0)) return r;
    const double tau = (r.aqq - r.app) / (2.0 * r.g);
    const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::hypot(1.0, tau));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    r.phase = apq / r.g;
    r.active = true;
    return r;
}

// M <- M R touches only columns p and q.
void apply_columns(CMatrix& m, const Rotation& r) {
    const std::size_t n = m.size();
    const cplx w = r.s * r.phase;
    const cplx wc = std::conj(w);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx mp = m(k, r.p), mq = m(k, r.q);
        m(k, r.p) = r.c * mp - wc * mq;
        m(k, r.q) = w * mp + r.c * mq;
    }
}

// M <- R* M touches only rows p and q.
void apply_rows(CMatrix& m, const Rotation& r) {
    const std::size_t n = m.size();
    const cplx w = r.s * r.phase;
    const cplx wc = std::conj(w);
    cplx* rp = m.row(r.p);
    cplx* rq = m.row(r.q);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vp = rp[k], vq = rq[k];
        rp[k] = r.c * vp - w * vq;
        rq[k] = wc * vp + r.c * vq;
    }
}

// Write the rotated plane entries in closed form from the snapshot values;
// this keeps the diagonal exactly real and the zeroed pair exactly zero.
void settle_plane(CMatrix& a, const Rotation& r) {
    const double cc = r.c * r.c, ss = r.s * r.s, cs = r.c * r.s;
    a(r.p, r.p) = cc * r.app - 2.0 * cs * r.g + ss * r.aqq;
    a(r.q, r.q) = ss * r.app + 2.0 * cs * r.g + cc * r.aqq;
    a(r.p, r.q) = 0.0;
    a(r.q, r.p) = 0.0;
}

HermitianEig finish(const CMatrix& a, const CMatrix& v, int sweeps) {
    const std::size_t n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    HermitianEig out;
    out.values.resize(n);
    out.vectors = CMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    out.sweeps = sweeps;
    return out;
}

void require_hermitian(const CMatrix& a) {
    const double scale = std::max(1.0, a.max_abs());
    if (a.hermitian_defect() > 1e-12 * scale)
        throw std::invalid_argument("Jacobi eigensolver needs a Hermitian matrix");
}

} // namespace

HermitianEig jacobi_eigh_serial(CMatrix a, const JacobiOptions& opt) {
    require_hermitian(a);
    const std::size_t n = a.size();
    CMatrix v = CMatrix::identity(n);
    if (n < 2) return finish(a, v, 0);
    const double fro0 = a.fro_norm();
    const double threshold = opt.tol * fro0;
    for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
        if (off_norm(a) <= threshold) return finish(a, v, sweep - 1);
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Rotation r = plane_rotation(a, p, q);
                if (!r.active) continue;
                apply_columns(a, r);
                apply_rows(a, r);
                settle_plane(a, r);
                apply_columns(v, r);
            }
    }
    if (off_norm(a) <= threshold) return finish(a, v, opt.max_sweeps);
    throw std::runtime_error("Jacobi iteration did not converge");
}

HermitianEig jacobi_eigh(CMatrix a, const JacobiOptions& opt) {
    require_hermitian(a);
    const std::size_t n = a.size();
    CMatrix v = CMatrix::identity(n);
    if (n < 2) return finish(a, v, 0);
    const double fro0 = a.fro_norm();
    const double threshold = opt.tol * fro0;

    // Round-robin tournament on seats 0..m-1 (one bye seat when n is odd):
    // round r pairs seat[i] with seat[m-1-i], then the seats other than
    // seat[0] rotate by one.  Every unordered pair appears once per m-1 rounds.
    const std::size_t m = n + (n % 2);
    std::vector<std::size_t> seat(m);
    std::iota(seat.begin(), seat.end(), std::size_t{0});
    std::vector<Rotation> round(m / 2);

    for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
        if (off_norm(a) <= threshold) return finish(a, v, sweep - 1);
        for (std::size_t rd = 0; rd + 1 < m; ++rd) {
            std::int64_t live = 0;
            for (std::size_t i = 0; i < m / 2; ++i) {
                std::size_t p = seat[i], q = seat[m - 1 - i];
                if (p > q) std::swap(p, q);
                if (q >= n) continue; // bye
                const Rotation r = plane_rotation(a, p, q);
                if (r.active) round[static_cast<std::size_t>(live++)] = r;
            }
            // The planes in a round are disjoint, so the column updates below
            // commute with one another, as do the row updates.
#pragma omp parallel for schedule(static) if (n >= 128)
            for (std::int64_t i = 0; i < live; ++i)
                apply_columns(a, round[static_cast<std::size_t>(i)]);
#pragma omp parallel for schedule(static) if (n >= 128)
            for (std::int64_t i = 0; i < live; ++i)
                apply_rows(a, round[static_cast<std::size_t>(i)]);
#pragma omp parallel for schedule(static) if (n >= 128)
            for (std::int64_t i = 0; i < live; ++i)
                apply_columns(v, round[static_cast<std::size_t>(i)]);
            for (std::int64_t i = 0; i < live; ++i)
                settle_plane(a, round[static_cast<std::size_t>(i)]);
            std::rotate(seat.begin() + 1, seat.end() - 1, seat.end());
        }
    }
    if (off_norm(a) <= threshold) return finish(a, v, opt.max_sweeps);
    throw std::runtime_error("Jacobi iteration did not converge");
}

UnitaryEig unitary_eig(const CMatrix& u, const JacobiOptions& opt) {
    const std::size_t n = u.size();
    CMatrix h(n), k(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx uij = u(i, j);
            const cplx uji = std::conj(u(j, i));
            h(i, j) = 0.5 * (uij + uji);
            k(i, j) = cplx(0.0, -0.5) * (uij - uji);
        }
    HermitianEig he = jacobi_eigh(h, opt);
    CMatrix vec = he.vectors;

    // H = Re-part has degenerate eigenvalues wherever U has a conjugate pair
    // of eigenvalues; split those clusters with the Im-part.
    const double cluster_gap = 1e-8;
    std::size_t b = 0;
    while (b < n) {
        std::size_t e = b + 1;
        while (e < n && he.values[e] - he.values[e - 1] <= cluster_gap) ++e;
        const std::size_t w = e - b;
        if (w > 1) {
            std::vector<cplx> kv(n * w);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t c = 0; c < w; ++c) {
                    cplx s = 0.0;
                    for (std::size_t j = 0; j < n; ++j) s += k(i, j) * vec(j, b + c);
                    kv[i * w + c] = s;
                }
            CMatrix wm(w);
            for (std::size_t r = 0; r < w; ++r)
                for (std::size_t c = 0; c < w; ++c) {
                    cplx s = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        s += std::conj(vec(i, b + r)) * kv[i * w + c];
                    wm(r, c) = s;
                }
            // Symmetrize away the last-bit drift before the inner solve.
            for (std::size_t r = 0; r < w; ++r)
                for (std::size_t c = 0; c < r; ++c) {
                    const cplx avg = 0.5 * (wm(r, c) + std::conj(wm(c, r)));
                    wm(r, c) = avg;
                    wm(c, r) = std::conj(avg);
                }
            HermitianEig we = jacobi_eigh_serial(wm, opt);
            std::vector<cplx> rotated(n * w);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t c = 0; c < w; ++c) {
                    cplx s = 0.0;
                    for (std::size_t r = 0; r < w; ++r)
                        s += vec(i, b + r) * we.vectors(r, c);
                    rotated[i * w + c] = s;
                }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t c = 0; c < w; ++c) vec(i, b + c) = rotated[i * w + c];
        }
        b = e;
    }

    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::vector<cplx> col = vec.column(j);
        const std::vector<cplx> ucol = u.apply(col);
        cplx lam = 0.0;
        for (std::size_t i = 0; i < n; ++i) lam += std::conj(col[i]) * ucol[i];
        values[j] = lam;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::arg(values[i]) < std::arg(values[j]);
    });
    UnitaryEig out;
    out.values.resize(n);
    out.vectors = CMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vec(i, order[j]);
    }
    return out;
}

std::vector<double> eig_residuals(const CMatrix& m, const CMatrix& vectors,
                                  const std::vector<cplx>& values) {
    const std::size_t n = m.size();
    std::vector<double> res(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const std::vector<cplx> col = vectors.column(j);
        const std::vector<cplx> mv = m.apply(col);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(mv[i] - values[j] * col[i]);
        res[j] = std::sqrt(s);
    }
    return res;
}

std::vector<double> eig_residuals(const CMatrix& m, const CMatrix& vectors,
                                  const std::vector<double>& values) {
    std::vector<cplx> cv(values.begin(), values.end());
    return eig_residuals(m, vectors, cv);
}

} // namespace ssqw
