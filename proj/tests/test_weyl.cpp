#include "doctest.h"

#include <cmath>
#include <random>

#include "absorbing/eig.hpp"
#include "absorbing/weyl.hpp"
#include "test_support.hpp"

using namespace absorbing;
using namespace testsupport;

namespace {

// Component of t*xi0 orthogonal to xi0, for checking overlap guarantees.
ComplexMatrix orth_component(const ComplexMatrix& t, const ComplexMatrix& xi0) {
    const ComplexMatrix img = t * xi0;
    cplx along = 0.0;
    for (int i = 0; i < img.rows(); ++i) along += std::conj(xi0(i, 0)) * img(i, 0);
    return img - xi0 * along;
}

} // namespace

TEST_SUITE("weyl") {

TEST_CASE("admissible basis for a diagonal operator") {
    const ComplexMatrix t = ComplexMatrix::diagonal({2.0 / 3.0, 1.0 / 3.0});
    const ComplexMatrix b = admissible_basis(t);
    // standard vectors are eigenvectors, so the uniform superposition wins
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b(0, 0) - inv) < 1e-12);
    CHECK(std::abs(b(1, 0) - inv) < 1e-12);
    CHECK(std::abs(b(0, 1) - inv) < 1e-12);
    CHECK(std::abs(b(1, 1) + inv) < 1e-12);

    const ComplexMatrix img = t * b.column(0);
    cplx overlap = 0.0;
    for (int i = 0; i < 2; ++i) overlap += std::conj(b(i, 1)) * img(i, 0);
    CHECK(std::abs(overlap - cplx(1.0 / 6.0)) < 1e-12);
}

TEST_CASE("admissible basis for a skew operator") {
    const ComplexMatrix t = ComplexMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}});
    const ComplexMatrix b = admissible_basis(t);
    // first standard vector is not an eigenvector, so it is taken as is
    CHECK(std::abs(b(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(b(1, 0)) < 1e-12);
    // the partner is the second standard vector up to the phase that makes
    // the overlap real positive
    CHECK(std::abs(std::abs(b(1, 1)) - 1.0) < 1e-12);
    const ComplexMatrix img = t * b.column(0);
    cplx overlap = 0.0;
    for (int i = 0; i < 2; ++i) overlap += std::conj(b(i, 1)) * img(i, 0);
    CHECK(std::abs(overlap - cplx(1.0)) < 1e-12);
}

TEST_CASE("scalar input is rejected") {
    CHECK_THROWS_AS(admissible_basis(ComplexMatrix::identity(3)), ScalarInput);
    CHECK_THROWS_AS(admissible_basis(3.7 * ComplexMatrix::identity(2)), ScalarInput);
    ComplexMatrix nearly = ComplexMatrix::identity(2);
    nearly(0, 1) = 1e-13;
    CHECK_THROWS_AS(admissible_basis(nearly), ScalarInput);
}

TEST_CASE("overlaps have equal moduli at the guaranteed level") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix t = rand_matrix(rng, r, r);
        const ComplexMatrix b = admissible_basis(t, trial);
        CHECK((b.adjoint() * b - ComplexMatrix::identity(r)).frobenius_norm() < 1e-11);

        const ComplexMatrix zeta = orth_component(t, b.column(0));
        const double c = zeta.frobenius_norm() / std::sqrt(static_cast<double>(r - 1));
        REQUIRE(c > 0.0);
        const ComplexMatrix img = t * b.column(0);
        for (int k = 1; k < r; ++k) {
            cplx overlap = 0.0;
            for (int i = 0; i < r; ++i) overlap += std::conj(b(i, k)) * img(i, 0);
            CHECK(std::abs(overlap) >= c * (1.0 - 1e-9));
            CHECK(std::abs(std::abs(overlap) - c) < 1e-10 * (1.0 + c));
            // phase convention: overlaps are real positive
            CHECK(std::abs(overlap.imag()) < 1e-10 * (1.0 + c));
        }
    }
}

TEST_CASE("clock and shift for r = 2") {
    WeylPair p = clock_shift(2, ComplexMatrix::identity(2));
    CHECK(std::abs(p.lambda - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(p.u(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(p.u(1, 1) + 1.0) < 1e-14);
    CHECK(std::abs(p.v(0, 1) - 1.0) < 1e-14);
    CHECK(std::abs(p.v(1, 0) - 1.0) < 1e-14);
    CHECK((p.v * p.u - p.lambda * (p.u * p.v)).frobenius_norm() < 1e-12);
}

TEST_CASE("clock and shift for r = 3 on the standard basis") {
    WeylPair p = clock_shift(3, ComplexMatrix::identity(3));
    const cplx lam = std::polar(1.0, 2.0 * M_PI / 3.0);
    CHECK(std::abs(p.u(1, 1) - std::conj(lam)) < 1e-14);
    CHECK(std::abs(p.u(2, 2) - std::conj(lam) * std::conj(lam)) < 1e-13);
    CHECK(std::abs(p.v(1, 0) - 1.0) < 1e-14);
    CHECK(std::abs(p.v(2, 1) - 1.0) < 1e-14);
    CHECK(std::abs(p.v(0, 2) - 1.0) < 1e-14);
    const ComplexMatrix v3 = p.v * p.v * p.v;
    CHECK((v3 - ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);
}

TEST_CASE("unitary word relations for r up to 12") {
    std::mt19937_64 rng(42);
    for (int r = 2; r <= 12; ++r) {
        WeylPair p = clock_shift(r, rand_unitary(rng, r));
        ComplexMatrix upow = ComplexMatrix::identity(r);
        ComplexMatrix vpow = ComplexMatrix::identity(r);
        for (int k = 0; k < r; ++k) {
            upow = upow * p.u;
            vpow = vpow * p.v;
        }
        CHECK((upow - ComplexMatrix::identity(r)).frobenius_norm() <= 1e-11);
        CHECK((vpow - ComplexMatrix::identity(r)).frobenius_norm() <= 1e-11);
        CHECK((p.v * p.u - p.lambda * (p.u * p.v)).frobenius_norm() <= 1e-11);
    }
}

TEST_CASE("basis must be orthonormal") {
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(clock_shift(2, bad), NotOrthonormal);
}

TEST_CASE("word family relations, adjoints, and traces") {
    std::mt19937_64 rng(43);
    for (int r : {2, 3, 5, 8, 12}) {
        WeylPair p = clock_shift(r, rand_unitary(rng, r));
        const auto w = weyl_family(p);
        REQUIRE(static_cast<int>(w.size()) == r * r);
        CHECK((w[0] - ComplexMatrix::identity(r)).frobenius_norm() < 1e-12);

        auto lam_pow = [&](long e) {
            long m = ((e % r) + r) % r;
            return std::polar(1.0, 2.0 * M_PI * m / r);
        };
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const ComplexMatrix& wij = w[i * r + j];
                if (i != 0 || j != 0) CHECK(std::abs(wij.trace()) <= 1e-10);
                // adjoint relation
                const ComplexMatrix rhs =
                    lam_pow(static_cast<long>(i) * j) * w[((r - i) % r) * r + (r - j) % r];
                CHECK((wij.adjoint() - rhs).frobenius_norm() <= 1e-10);
                // product relation against a few partners
                for (int s = 0; s < 3; ++s) {
                    const int pi = static_cast<int>(rng() % r), qj = static_cast<int>(rng() % r);
                    const ComplexMatrix prod = wij * w[pi * r + qj];
                    const ComplexMatrix want =
                        lam_pow(static_cast<long>(j) * pi) *
                        w[((i + pi) % r) * r + (j + qj) % r];
                    CHECK((prod - want).frobenius_norm() <= 1e-10);
                }
            }

        // orthonormal in the normalized trace inner product, hence full rank
        for (int a = 0; a < r * r; ++a)
            for (int b = 0; b <= a; ++b) {
                const cplx g = hs_inner(w[a], w[b]) / static_cast<double>(r);
                const double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(g - want) <= 1e-10);
            }
        CHECK(gram_rank(w, 1e-9) == r * r);
    }
}

TEST_CASE("irreducibility of operator pairs") {
    const ComplexMatrix t = ComplexMatrix::diagonal({2.0 / 3.0, 1.0 / 3.0});
    const ComplexMatrix flip = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(check_irreducible_pair(t, flip, 1e-8));
    CHECK_FALSE(check_irreducible_pair(ComplexMatrix::identity(2), flip, 1e-8));
    CHECK_FALSE(check_irreducible_pair(ComplexMatrix::diagonal({1.0, 2.0}),
                                       ComplexMatrix::diagonal({3.0, 4.0}), 1e-8));
}

TEST_CASE("admissible clock pair is always irreducible") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 40; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 5);
        ComplexMatrix t = rand_matrix(rng, r, r);
        if (trial % 3 == 0) t = rand_hermitian(rng, r);       // Hermitian inputs too
        if (trial % 5 == 0) t = ComplexMatrix::diagonal([&] { // diagonal inputs
                std::vector<double> d(r);
                for (double& x : d) x = std::uniform_real_distribution<>(0.2, 2.0)(rng);
                return d;
            }());
        WeylPair p = clock_shift(r, admissible_basis(t, trial));
        CHECK(check_irreducible_pair(t, p.u, 1e-8));
    }
}

} // suite weyl
