#include <doctest.h>

#include <numbers>
#include <random>

#include "ssqw/eig.hpp"

using namespace ssqw;

namespace {

CMatrix random_hermitian(std::mt19937& gen, std::size_t n) {
    std::normal_distribution<double> dist;
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = dist(gen);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v(dist(gen), dist(gen));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    return a;
}

// Unitary with a prescribed spectrum: V diag(e^{i phi}) V* with V the
// orthonormal eigenbasis of a random Hermitian matrix.
CMatrix unitary_with_phases(std::mt19937& gen, const std::vector<double>& phases) {
    const std::size_t n = phases.size();
    const HermitianEig basis = jacobi_eigh_serial(random_hermitian(gen, n));
    CMatrix u(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += basis.vectors(i, k) * std::polar(1.0, phases[k]) *
                     std::conj(basis.vectors(j, k));
            u(i, j) = s;
        }
    return u;
}

double ortho_defect(const CMatrix& v) {
    const std::size_t n = v.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += std::conj(v(k, i)) * v(k, j);
            worst = std::max(worst, std::abs(s - (i == j ? cplx(1.0) : cplx(0.0))));
        }
    return worst;
}

} // namespace

TEST_CASE("tiny Hermitian cases") {
    CMatrix one(1);
    one(0, 0) = -2.5;
    const HermitianEig e1 = jacobi_eigh(one);
    CHECK(e1.values[0] == -2.5);

    CMatrix two(2);
    two(0, 1) = cplx(0.3, -0.4);
    two(1, 0) = cplx(0.3, 0.4);
    for (const auto& solve : {jacobi_eigh_serial, jacobi_eigh}) {
        const HermitianEig e2 = solve(two, JacobiOptions{});
        CHECK(e2.values[0] == doctest::Approx(-0.5).epsilon(1e-14));
        CHECK(e2.values[1] == doctest::Approx(0.5).epsilon(1e-14));
        const auto res = eig_residuals(two, e2.vectors, e2.values);
        CHECK(*std::max_element(res.begin(), res.end()) <= 1e-14);
    }
}

TEST_CASE("free Jacobi chain has the cosine spectrum") {
    // (L + L*)/2 with Dirichlet ends on M sites: eigenvalues cos(j pi / (M+1))
    const std::size_t m = 10;
    CMatrix a(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        a(i, i + 1) = 0.5;
        a(i + 1, i) = 0.5;
    }
    std::vector<double> expect;
    for (std::size_t j = m; j >= 1; --j)
        expect.push_back(std::cos(static_cast<double>(j) * std::numbers::pi / (m + 1)));
    for (const auto& solve : {jacobi_eigh_serial, jacobi_eigh}) {
        const HermitianEig e = solve(a, JacobiOptions{});
        for (std::size_t j = 0; j < m; ++j)
            CHECK(std::abs(e.values[j] - expect[j]) <= 1e-12);
    }
}

TEST_CASE("random Hermitian: residuals, orthonormality, serial vs parallel") {
    std::mt19937 gen(808);
    const CMatrix a = random_hermitian(gen, 50);
    const HermitianEig serial = jacobi_eigh_serial(a);
    const HermitianEig parallel = jacobi_eigh(a);
    const double scale = a.fro_norm();
    for (const HermitianEig* e : {&serial, &parallel}) {
        const auto res = eig_residuals(a, e->vectors, e->values);
        CHECK(*std::max_element(res.begin(), res.end()) <= 1e-9 * scale);
        CHECK(ortho_defect(e->vectors) <= 1e-10);
    }
    for (std::size_t j = 0; j < 50; ++j)
        CHECK(std::abs(serial.values[j] - parallel.values[j]) <= 1e-10 * scale);
}

TEST_CASE("the parallel ordering is deterministic") {
    std::mt19937 gen(909);
    const CMatrix a = random_hermitian(gen, 33); // odd size exercises the bye seat
    const HermitianEig e1 = jacobi_eigh(a);
    const HermitianEig e2 = jacobi_eigh(a);
    for (std::size_t j = 0; j < 33; ++j) CHECK(e1.values[j] == e2.values[j]);
}

TEST_CASE("non-Hermitian input is rejected") {
    CMatrix bad(3);
    bad(0, 1) = 1.0; // missing the conjugate partner
    CHECK_THROWS_AS(jacobi_eigh(bad), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_eigh_serial(bad), std::invalid_argument);
}

TEST_CASE("unitary eigendecomposition") {
    SUBCASE("identity") {
        const UnitaryEig e = unitary_eig(CMatrix::identity(8));
        for (const cplx& v : e.values) CHECK(std::abs(v - cplx(1.0)) <= 1e-13);
    }
    SUBCASE("cyclic shift on 8 sites") {
        // eigenvalues are the 8th roots of unity
        CMatrix shift(8);
        for (std::size_t i = 0; i < 8; ++i) shift((i + 1) % 8, i) = 1.0;
        const UnitaryEig e = unitary_eig(shift);
        const auto res = eig_residuals(shift, e.vectors, e.values);
        CHECK(*std::max_element(res.begin(), res.end()) <= 1e-12);
        for (std::size_t k = 0; k < 8; ++k) {
            const cplx root = std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0);
            double best = 1e9;
            for (const cplx& v : e.values) best = std::min(best, std::abs(v - root));
            CHECK(best <= 1e-12);
        }
        for (const cplx& v : e.values) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
    }
    SUBCASE("prescribed spectrum") {
        std::mt19937 gen(111);
        std::vector<double> phases;
        std::uniform_real_distribution<double> pd(-std::numbers::pi + 0.01,
                                                  std::numbers::pi - 0.01);
        for (int k = 0; k < 24; ++k) phases.push_back(pd(gen));
        const CMatrix u = unitary_with_phases(gen, phases);
        const UnitaryEig e = unitary_eig(u);
        const auto res = eig_residuals(u, e.vectors, e.values);
        CHECK(*std::max_element(res.begin(), res.end()) <= 1e-10);
        std::vector<double> got, want = phases;
        for (const cplx& v : e.values) got.push_back(std::arg(v));
        std::sort(want.begin(), want.end());
        for (std::size_t j = 0; j < phases.size(); ++j)
            CHECK(std::abs(got[j] - want[j]) <= 1e-10);
        CHECK(ortho_defect(e.vectors) <= 1e-9);
    }
}
