#pragma once

#include <vector>

#include "absorbing/matrix.hpp"
#include "absorbing/state.hpp"

namespace absorbing {

// Linear map on M_r stored as its r^2 x r^2 matrix in the row-major
// vectorization (matrix units ordered lexicographically).
struct Superoperator {
    int r = 0;
    ComplexMatrix mat;

    ComplexMatrix apply(const ComplexMatrix& x) const;
    static Superoperator identity(int r);
};

// L(x) = sum_j v_j x v_j* + k x + x k*.
struct LindbladGenerator {
    int r = 0;
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix drift;

    ComplexMatrix apply(const ComplexMatrix& x) const;
};

Superoperator as_superoperator(const LindbladGenerator& gen);

// Adjoint for the bilinear pairing trace(y S(x)); acts on the density side.
// dual(dual(s)) == s holds exactly (pure reindexing).
Superoperator dual(const Superoperator& s);

// State-twisted involution x -> W^{-1/2} dual(s)(W^{1/2} x W^{1/2}) W^{-1/2}
// for the density W; an involution on superoperators that preserves
// complete positivity.
Superoperator sharp(const Superoperator& s, const FaithfulState& state);

// Choi matrix sum_ij E_ij (x) s(E_ij).
ComplexMatrix choi_matrix(const Superoperator& s);

struct ChoiReport {
    bool positive = false;
    double min_eigenvalue = 0.0;
    double hermiticity_defect = 0.0;
};

// Complete positivity test: Choi matrix Hermitian with smallest eigenvalue
// >= -tol.
ChoiReport choi_positive(const Superoperator& s, double tol = 1e-9);

// L0(x) = q(x) - (q(1) x + x q(1))/2 for a completely positive q. Unital by
// construction. Throws NotCompletelyPositive.
Superoperator unperturbed(const Superoperator& q);

double unitality_defect(const LindbladGenerator& gen);

// trace norm of dual(L)(W): how far the state is from being invariant.
double invariance_defect(const Superoperator& l, const FaithfulState& state);
double invariance_defect(const LindbladGenerator& gen, const FaithfulState& state);

struct CriterionResult {
    bool holds = false;
    double residual = 0.0;
};

// Solvability test for a state-preserving unital extension of the
// completely positive part q: the centralizer expectations of q(1) and of
// sharp(q)(1) must agree.
CriterionResult admits_preserving_drift(const Superoperator& q, const FaithfulState& state);

// Skew-adjoint ell with ell W - W ell = t - E(t), where E is the
// centralizer expectation; the component of ell inside the centralizer is
// fixed to zero. Input t must be Hermitian.
ComplexMatrix solve_commutator_equation(const FaithfulState& state, const ComplexMatrix& t);

// The drift correction for L: ell solving the above with t = dual(L)(W).
ComplexMatrix solve_perturbation(const Superoperator& l, const FaithfulState& state);

// Unital generator with kraus part {W^{-1/2} v_j} and drift
// -q(1)/2 + ell chosen so the given state is invariant. Requires the
// balance condition sum v v* = sum v* v. Throws UnbalancedKraus.
LindbladGenerator build_preserving(const FaithfulState& state,
                                   const std::vector<ComplexMatrix>& kraus);

struct PerturbationDemo {
    LindbladGenerator before;
    LindbladGenerator after;
    ComplexMatrix ell;
    double defect_before = 0.0;
    double defect_after = 0.0;
};

// Rank-one generator L = phi(.)1 - id whose defining state phi is the
// density perturbed off the centralizer by eps; the solver then restores
// invariance exactly. Throws TracialState / EpsilonTooLarge.
PerturbationDemo perturbation_demo(const FaithfulState& state, double eps);

// Kraus form of x -> phi(x) 1 with drift -1/2; fixes the state and is pure.
LindbladGenerator depolarizing_generator(const FaithfulState& state);

} // namespace absorbing
