#include "doctest.h"

#include <cmath>
#include <random>

#include "absorbing/eig.hpp"
#include "absorbing/generator.hpp"
#include "test_support.hpp"

using namespace absorbing;
using namespace testsupport;

namespace {

Superoperator cp_super(const std::vector<ComplexMatrix>& kraus) {
    const int r = kraus.front().rows();
    Superoperator q{r, ComplexMatrix(r * r, r * r)};
    for (const ComplexMatrix& v : kraus) q.mat += kron(v, v.conjugate());
    return q;
}

Superoperator sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
    return {a.rows(), kron(a, b.transpose())};
}

Superoperator transpose_map(int r) {
    Superoperator s{r, ComplexMatrix(r * r, r * r)};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s.mat(i * r + j, j * r + i) = 1.0;
    return s;
}

// x -> trace(d x) I as a superoperator.
Superoperator rank_one_map(const ComplexMatrix& d) {
    const int r = d.rows();
    Superoperator s{r, ComplexMatrix(r * r, r * r)};
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) s.mat(i * r + i, k * r + l) = d(l, k);
    return s;
}

std::vector<ComplexMatrix> rand_kraus(std::mt19937_64& rng, int r, int n) {
    std::vector<ComplexMatrix> out;
    for (int j = 0; j < n; ++j) out.push_back(rand_matrix(rng, r, r));
    return out;
}

} // namespace

TEST_SUITE("generator") {

TEST_CASE("superoperator matrix reproduces direct application") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 4);
        LindbladGenerator gen{r, rand_kraus(rng, r, 1 + static_cast<int>(rng() % 3)),
                              rand_matrix(rng, r, r)};
        const Superoperator s = as_superoperator(gen);
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix x = rand_matrix(rng, r, r);
            const ComplexMatrix via_mat = unvec(s.mat * vec(x), r, r);
            CHECK((via_mat - gen.apply(x)).frobenius_norm() <=
                  1e-11 * (1.0 + gen.apply(x).frobenius_norm()));
        }
        // generators preserve self-adjointness
        const ComplexMatrix h = rand_hermitian(rng, r);
        CHECK(gen.apply(h).hermiticity_defect() <= 1e-11 * (1.0 + h.frobenius_norm()));
    }
}

TEST_CASE("identity generator has the identity matrix") {
    LindbladGenerator gen{3, {}, 0.5 * ComplexMatrix::identity(3)};
    const Superoperator s = as_superoperator(gen);
    CHECK((s.mat - ComplexMatrix::identity(9)).frobenius_norm() < 1e-14);
}

TEST_CASE("conjugation by a unitary gives a unitary superoperator") {
    std::mt19937_64 rng(52);
    const ComplexMatrix u = rand_unitary(rng, 3);
    const Superoperator s = cp_super({u});
    CHECK((s.mat.adjoint() * s.mat - ComplexMatrix::identity(9)).frobenius_norm() < 1e-12);
}

TEST_CASE("equilibrium projection generator has a one-dimensional kernel") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const LindbladGenerator gen = depolarizing_generator(st);
    const Superoperator s = as_superoperator(gen);

    CHECK(gen.apply(ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    const auto kernel = null_space(s.mat, 1e-10);
    CHECK(kernel.size() == 1);

    // mean-zero operators are eigenvectors with eigenvalue -1
    std::mt19937_64 rng(53);
    ComplexMatrix x = rand_matrix(rng, 2, 2);
    x -= st.expect(x) * ComplexMatrix::identity(2);
    CHECK((gen.apply(x) + x).frobenius_norm() < 1e-12 * (1.0 + x.frobenius_norm()));
}

TEST_CASE("trace duality") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 4);
        Superoperator s{r, rand_matrix(rng, r * r, r * r)};
        const Superoperator sd = dual(s);
        for (int k = 0; k < 5; ++k) {
            const ComplexMatrix x = rand_matrix(rng, r, r);
            const ComplexMatrix y = rand_matrix(rng, r, r);
            const cplx lhs = (sd.apply(y) * x).trace();
            const cplx rhs = (y * s.apply(x)).trace();
            CHECK(std::abs(lhs - rhs) <=
                  1e-10 * (1.0 + x.frobenius_norm() * y.frobenius_norm() *
                                     s.mat.frobenius_norm()));
        }
        // involution holds exactly: the entries are merely rearranged
        CHECK((dual(sd).mat - s.mat).frobenius_norm() == 0.0);
    }
}

TEST_CASE("dual of a sandwich map swaps the factors") {
    std::mt19937_64 rng(55);
    const ComplexMatrix a = rand_matrix(rng, 3, 3);
    const ComplexMatrix b = rand_matrix(rng, 3, 3);
    const Superoperator sd = dual(sandwich(a, b));
    for (int k = 0; k < 5; ++k) {
        const ComplexMatrix y = rand_matrix(rng, 3, 3);
        CHECK((sd.apply(y) - b * y * a).frobenius_norm() <=
              1e-12 * (1.0 + y.frobenius_norm()));
    }
    CHECK((dual(Superoperator::identity(3)).mat - ComplexMatrix::identity(9))
              .frobenius_norm() == 0.0);
}

TEST_CASE("state-adapted involution is an involution and fixes the identity map") {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 4);
        FaithfulState st = rand_state(rng, r);
        Superoperator s{r, rand_matrix(rng, r * r, r * r)};
        CHECK((sharp(sharp(s, st), st).mat - s.mat).frobenius_norm() <=
              1e-10 * (1.0 + s.mat.frobenius_norm()));
        const Superoperator id_sharp = sharp(Superoperator::identity(r), st);
        CHECK((id_sharp.mat - ComplexMatrix::identity(r * r)).frobenius_norm() <= 1e-11);
    }
}

TEST_CASE("tracial state reduces the involution to the dual") {
    std::mt19937_64 rng(57);
    FaithfulState st = make_state({1.0 / 3, 1.0 / 3, 1.0 / 3}, rand_unitary(rng, 3));
    Superoperator s{3, rand_matrix(rng, 9, 9)};
    CHECK((sharp(s, st).mat - dual(s).mat).frobenius_norm() <=
          1e-12 * (1.0 + s.mat.frobenius_norm()));
}

TEST_CASE("involution preserves complete positivity") {
    std::mt19937_64 rng(58);
    for (int trial = 0; trial < 15; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        FaithfulState st = rand_state(rng, r);
        const Superoperator q = cp_super(rand_kraus(rng, r, 1 + static_cast<int>(rng() % 3)));
        REQUIRE(choi_positive(q).positive);
        const ChoiReport rep = choi_positive(sharp(q, st));
        CHECK(rep.positive);
        CHECK(rep.min_eigenvalue >= -1e-9 * (1.0 + q.mat.frobenius_norm()));
    }
}

TEST_CASE("scaled flip conjugation fixes its unit image under the involution") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix flip = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const Superoperator q = cp_super({st.inv_sqrt_density * flip});
    const ComplexMatrix q1 = q.apply(ComplexMatrix::identity(2));
    const ComplexMatrix q1s = sharp(q, st).apply(ComplexMatrix::identity(2));
    ComplexMatrix inv_density = st.inv_sqrt_density * st.inv_sqrt_density;
    CHECK((q1 - inv_density).frobenius_norm() < 1e-12);
    CHECK((q1s - inv_density).frobenius_norm() < 1e-11);
    CHECK(admits_preserving_drift(q, st).holds);
}

TEST_CASE("choi matrix detects the transpose map") {
    const Superoperator t = transpose_map(2);
    const ChoiReport rep = choi_positive(t);
    CHECK_FALSE(rep.positive);
    CHECK(rep.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rep.hermiticity_defect < 1e-14);
    CHECK_THROWS_AS(unperturbed(t), NotCompletelyPositive);
    CHECK_THROWS_AS(admits_preserving_drift(
                        t, make_state({0.5, 0.5}, ComplexMatrix::identity(2))),
                    NotCompletelyPositive);
}

TEST_CASE("choi matrix of completely positive maps is positive") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        const ChoiReport rep =
            choi_positive(cp_super(rand_kraus(rng, r, 1 + static_cast<int>(rng() % 4))));
        CHECK(rep.positive);
    }
}

TEST_CASE("normalized completely positive part is unital") {
    std::mt19937_64 rng(60);
    // identity map: nothing to correct
    const Superoperator l0_id = unperturbed(Superoperator::identity(3));
    CHECK(l0_id.mat.frobenius_norm() < 1e-12);

    // conjugation: unit image is the identity, so only the -x term remains
    const ComplexMatrix u = rand_unitary(rng, 3);
    const Superoperator l0_u = unperturbed(cp_super({u}));
    for (int k = 0; k < 5; ++k) {
        const ComplexMatrix x = rand_matrix(rng, 3, 3);
        CHECK((l0_u.apply(x) - (u * x * u.adjoint() - x)).frobenius_norm() <=
              1e-11 * (1.0 + x.frobenius_norm()));
    }

    // rank-one absorption
    const ComplexMatrix d = rand_density(rng, 3);
    const Superoperator l0_r = unperturbed(rank_one_map(d));
    for (int k = 0; k < 5; ++k) {
        const ComplexMatrix x = rand_matrix(rng, 3, 3);
        const ComplexMatrix want = (d * x).trace() * ComplexMatrix::identity(3) - x;
        CHECK((l0_r.apply(x) - want).frobenius_norm() <= 1e-11 * (1.0 + x.frobenius_norm()));
    }

    // arbitrary completely positive input: unit in the kernel
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        const Superoperator l0 =
            unperturbed(cp_super(rand_kraus(rng, r, 1 + static_cast<int>(rng() % 3))));
        CHECK(l0.apply(ComplexMatrix::identity(r)).frobenius_norm() <= 1e-11);
    }
}

TEST_CASE("invariance defect vanishes exactly where expected") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    CHECK(invariance_defect(depolarizing_generator(st), st) < 1e-13);

    // commutator with an operator commuting with the density
    ComplexMatrix ell(2, 2);
    ell(0, 0) = cplx(0.0, 1.3);
    ell(1, 1) = cplx(0.0, -0.4);
    LindbladGenerator comm{2, {}, ell};
    CHECK(unitality_defect(comm) < 1e-14);
    CHECK(invariance_defect(comm, st) < 1e-14);
}

TEST_CASE("drift criterion for balanced and unbalanced maps") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix e01 = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    const ComplexMatrix e10 = e01.adjoint();

    // balanced pair: criterion holds
    const Superoperator q_bal =
        cp_super({st.inv_sqrt_density * e01, st.inv_sqrt_density * e10});
    const CriterionResult good = admits_preserving_drift(q_bal, st);
    CHECK(good.holds);
    CHECK(good.residual < 1e-10);

    // identity map: trivially true
    CHECK(admits_preserving_drift(Superoperator::identity(2), st).holds);

    // tracial state with a single shift: unit images differ by a flip
    FaithfulState tr = make_state({0.5, 0.5}, ComplexMatrix::identity(2));
    const CriterionResult bad = admits_preserving_drift(cp_super({e01}), tr);
    CHECK_FALSE(bad.holds);
    CHECK(bad.residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("commutator equation solver on the running example") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix flip = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const ComplexMatrix ell = solve_commutator_equation(st, flip);
    CHECK(std::abs(ell(0, 0)) < 1e-13);
    CHECK(std::abs(ell(0, 1) - cplx(-3.0)) < 1e-12);
    CHECK(std::abs(ell(1, 0) - cplx(3.0)) < 1e-12);
    CHECK(std::abs(ell(1, 1)) < 1e-13);
    CHECK((ell * st.density - st.density * ell - flip).frobenius_norm() < 1e-12);
}

TEST_CASE("commutator equation edge cases") {
    FaithfulState st = make_state({0.5, 0.3, 0.2}, ComplexMatrix::identity(3));
    CHECK(solve_commutator_equation(st, ComplexMatrix(3, 3)).frobenius_norm() == 0.0);
    // centralizer inputs are unreachable and solve to zero
    CHECK(solve_commutator_equation(st, ComplexMatrix::diagonal({1.0, -2.0, 1.0}))
              .frobenius_norm() < 1e-14);

    FaithfulState tr = make_state({0.5, 0.5}, ComplexMatrix::identity(2));
    CHECK(solve_commutator_equation(tr, ComplexMatrix(2, 2)).frobenius_norm() == 0.0);
    const ComplexMatrix flip = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(solve_commutator_equation(tr, flip), DegenerateState);

    const ComplexMatrix nonherm =
        ComplexMatrix::from_rows({{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    CHECK_THROWS_AS(solve_commutator_equation(st, nonherm), NotHermitian);
}

TEST_CASE("commutator equation solver on random inputs") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 5);
        FaithfulState st = rand_state(rng, r);
        const ComplexMatrix t = rand_hermitian(rng, r);
        const ComplexMatrix ell = solve_commutator_equation(st, t);
        CHECK((ell + ell.adjoint()).frobenius_norm() <= 1e-11 * (1.0 + ell.frobenius_norm()));
        const ComplexMatrix target = t - centralizer_expectation(st, t);
        CHECK((ell * st.density - st.density * ell - target).frobenius_norm() <=
              1e-10 * (1.0 + t.frobenius_norm()));
    }
}

TEST_CASE("perturbation solver restores invariance iff the criterion holds") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        FaithfulState st = rand_state(rng, r);

        // positive instance: balanced Kraus family {a, a*}
        const ComplexMatrix a = rand_matrix(rng, r, r);
        const Superoperator q =
            cp_super({st.inv_sqrt_density * a, st.inv_sqrt_density * a.adjoint()});
        REQUIRE(admits_preserving_drift(q, st).holds);
        const Superoperator l0 = unperturbed(q);
        const ComplexMatrix ell = solve_perturbation(l0, st);
        Superoperator fixed = l0;
        fixed.mat += kron(ell, ComplexMatrix::identity(r)) -
                     kron(ComplexMatrix::identity(r), ell.transpose());
        CHECK(invariance_defect(fixed, st) <= 1e-9 * (1.0 + q.mat.frobenius_norm()));
    }

    // negative instance: one-sided shift on a non-tracial state
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix e01 = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    const Superoperator q = cp_super({st.inv_sqrt_density * e01});
    CHECK_FALSE(admits_preserving_drift(q, st).holds);
    const Superoperator l0 = unperturbed(q);
    const ComplexMatrix ell = solve_perturbation(l0, st);
    Superoperator fixed = l0;
    fixed.mat += kron(ell, ComplexMatrix::identity(2)) -
                 kron(ComplexMatrix::identity(2), ell.transpose());
    CHECK(invariance_defect(fixed, st) > 1e-3);
}

TEST_CASE("state-preserving builder on the running example") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix flip = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const LindbladGenerator gen = build_preserving(st, {flip});
    CHECK(unitality_defect(gen) <= 1e-10);
    CHECK(invariance_defect(gen, st) <= 1e-10);

    // identity Kraus operator also works
    const LindbladGenerator gen_id = build_preserving(st, {ComplexMatrix::identity(2)});
    CHECK(unitality_defect(gen_id) <= 1e-10);
    CHECK(invariance_defect(gen_id, st) <= 1e-9);
}

TEST_CASE("tracial builder needs no perturbation") {
    std::mt19937_64 rng(63);
    const int r = 3, n = 2;
    FaithfulState st = make_state({1.0 / 3, 1.0 / 3, 1.0 / 3}, ComplexMatrix::identity(3));
    std::vector<ComplexMatrix> vs;
    for (int j = 0; j < n; ++j) vs.push_back(rand_unitary(rng, r));
    const LindbladGenerator gen = build_preserving(st, vs);
    // drift = -(1/2) Q(1) with Q(1) = r n I: no skew part appears
    const ComplexMatrix want = (-0.5 * r * n) * ComplexMatrix::identity(r);
    CHECK((gen.drift - want).frobenius_norm() < 1e-10);
    CHECK(unitality_defect(gen) <= 1e-10);
    CHECK(invariance_defect(gen, st) <= 1e-9);
}

TEST_CASE("builder rejects unbalanced families") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const ComplexMatrix e01 = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(build_preserving(st, {e01}), UnbalancedKraus);
}

TEST_CASE("builder output is always unital and invariant") {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 4);
        FaithfulState st = rand_state(rng, r);
        std::vector<ComplexMatrix> vs;
        const int n = 1 + static_cast<int>(rng() % 2);
        if (trial % 2 == 0) {
            for (int j = 0; j < n; ++j) vs.push_back(rand_unitary(rng, r));
        } else {
            const ComplexMatrix a = rand_matrix(rng, r, r);
            vs = {a, a.adjoint()};
        }
        const LindbladGenerator gen = build_preserving(st, vs);
        CHECK(unitality_defect(gen) <= 1e-10);
        CHECK(invariance_defect(gen, st) <= 1e-9);
        // Hermitian drift part carries exactly minus half the unit image
        const ComplexMatrix q1 = gen.drift + gen.drift.adjoint();
        ComplexMatrix direct(r, r);
        for (const ComplexMatrix& v : gen.kraus) direct += v * v.adjoint();
        CHECK((q1 + direct).frobenius_norm() <= 1e-10 * (1.0 + direct.frobenius_norm()));
    }
}

TEST_CASE("invariance-breaking demo on the running example") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const PerturbationDemo demo = perturbation_demo(st, 0.1);
    CHECK(demo.defect_before == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(demo.defect_after <= 1e-9);
    CHECK((demo.after.drift - demo.before.drift - demo.ell).frobenius_norm() == 0.0);
    CHECK(unitality_defect(demo.before) <= 1e-10);
    CHECK(unitality_defect(demo.after) <= 1e-10);
    CHECK((demo.ell + demo.ell.adjoint()).frobenius_norm() < 1e-11);
}

TEST_CASE("demo edge cases") {
    FaithfulState st = make_state({2.0 / 3.0, 1.0 / 3.0}, ComplexMatrix::identity(2));
    const PerturbationDemo zero = perturbation_demo(st, 0.0);
    CHECK(zero.defect_before <= 1e-13);
    CHECK(zero.defect_after <= 1e-13);
    CHECK(zero.ell.frobenius_norm() <= 1e-12);

    // positivity threshold: det(Omega') = 2/9 - eps^2
    CHECK_THROWS_AS(perturbation_demo(st, 0.48), EpsilonTooLarge);
    CHECK_NOTHROW(perturbation_demo(st, 0.45));
    // sign of eps only flips the direction of the defect
    const PerturbationDemo neg = perturbation_demo(st, -0.1);
    CHECK(neg.defect_before == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(neg.defect_after <= 1e-9);

    FaithfulState tr = make_state({0.5, 0.5}, ComplexMatrix::identity(2));
    CHECK_THROWS_AS(perturbation_demo(tr, 0.1), TracialState);
}

TEST_CASE("dissipation form of the generated flows") {
    // L(x x*) - x L(x)* - L(x) x* + x L(1) x* equals the sum of commutator
    // squares; it certifies complete dissipativity of the construction.
    std::mt19937_64 rng(65);
    for (int trial = 0; trial < 15; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        FaithfulState st = rand_state(rng, r);
        const ComplexMatrix a = rand_matrix(rng, r, r);
        const LindbladGenerator gen = build_preserving(st, {a, a.adjoint()});
        const ComplexMatrix x = rand_matrix(rng, r, r);
        const ComplexMatrix lhs = gen.apply(x * x.adjoint()) - x * gen.apply(x).adjoint() -
                                  gen.apply(x) * x.adjoint() +
                                  x * gen.apply(ComplexMatrix::identity(r)) * x.adjoint();
        ComplexMatrix rhs(r, r);
        for (const ComplexMatrix& v : gen.kraus) {
            const ComplexMatrix c = commutator(v, x);
            rhs += c * c.adjoint();
        }
        CHECK((lhs - rhs).frobenius_norm() <= 1e-9 * (1.0 + rhs.frobenius_norm()));
    }
}

} // suite generator
