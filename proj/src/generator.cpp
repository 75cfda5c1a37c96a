#include "absorbing/generator.hpp"

#include <cmath>

#include "absorbing/eig.hpp"

namespace absorbing {

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    if (x.rows() != r || x.cols() != r)
        throw DimensionMismatch("superoperator apply: operator shape mismatch");
    return unvec(mat * vec(x), r, r);
}

Superoperator Superoperator::identity(int r) {
    return {r, ComplexMatrix::identity(r * r)};
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& x) const {
    if (x.rows() != r || x.cols() != r)
        throw DimensionMismatch("generator apply: operator shape mismatch");
    ComplexMatrix out = drift * x + x * drift.adjoint();
    for (const ComplexMatrix& v : kraus) out += v * x * v.adjoint();
    return out;
}

Superoperator as_superoperator(const LindbladGenerator& gen) {
    const int r = gen.r;
    const ComplexMatrix id = ComplexMatrix::identity(r);
    ComplexMatrix m = kron(gen.drift, id) + kron(id, gen.drift.conjugate());
    for (const ComplexMatrix& v : gen.kraus) m += kron(v, v.conjugate());
    return {r, m};
}

Superoperator dual(const Superoperator& s) {
    const int r = s.r;
    ComplexMatrix m(r * r, r * r);
    // trace(dual(s)(y) x) = trace(y s(x)) forces the pure reindexing
    // m[(i,j),(k,l)] = s.mat[(l,k),(j,i)].
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l)
                    m(i * r + j, k * r + l) = s.mat(l * r + k, j * r + i);
    return {r, m};
}

Superoperator sharp(const Superoperator& s, const FaithfulState& state) {
    if (s.r != state.r) throw DimensionMismatch("sharp: dimension mismatch");
    const ComplexMatrix& w_half = state.sqrt_density;
    const ComplexMatrix& w_mhalf = state.inv_sqrt_density;
    const ComplexMatrix left = kron(w_mhalf, w_mhalf.conjugate());
    const ComplexMatrix right = kron(w_half, w_half.conjugate());
    return {s.r, left * dual(s).mat * right};
}

ComplexMatrix choi_matrix(const Superoperator& s) {
    const int r = s.r;
    ComplexMatrix c(r * r, r * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            ComplexMatrix eij(r, r);
            eij(i, j) = 1.0;
            const ComplexMatrix l = s.apply(eij);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) c(i * r + a, j * r + b) = l(a, b);
        }
    return c;
}

ChoiReport choi_positive(const Superoperator& s, double tol) {
    const ComplexMatrix c = choi_matrix(s);
    ChoiReport rep;
    rep.hermiticity_defect = c.hermiticity_defect();
    HermEig e = herm_eig(hermitian_part(c));
    rep.min_eigenvalue = e.eigenvalues.front();
    const double scale = std::max(c.frobenius_norm(), 1.0);
    rep.positive = rep.hermiticity_defect <= 1e-8 * scale && rep.min_eigenvalue >= -tol;
    return rep;
}

Superoperator unperturbed(const Superoperator& q) {
    const ChoiReport rep = choi_positive(q);
    if (!rep.positive)
        throw NotCompletelyPositive("unperturbed: map is not completely positive");
    const int r = q.r;
    const ComplexMatrix q1 = hermitian_part(q.apply(ComplexMatrix::identity(r)));
    const ComplexMatrix id = ComplexMatrix::identity(r);
    ComplexMatrix m = q.mat - 0.5 * (kron(q1, id) + kron(id, q1.transpose()));
    return {r, m};
}

double unitality_defect(const LindbladGenerator& gen) {
    return gen.apply(ComplexMatrix::identity(gen.r)).frobenius_norm();
}

double invariance_defect(const Superoperator& l, const FaithfulState& state) {
    if (l.r != state.r) throw DimensionMismatch("invariance_defect: dimension mismatch");
    return trace_norm(hermitian_part(dual(l).apply(state.density)));
}

double invariance_defect(const LindbladGenerator& gen, const FaithfulState& state) {
    return invariance_defect(as_superoperator(gen), state);
}

CriterionResult admits_preserving_drift(const Superoperator& q, const FaithfulState& state) {
    const ChoiReport rep = choi_positive(q);
    if (!rep.positive)
        throw NotCompletelyPositive("admits_preserving_drift: map is not completely positive");
    const ComplexMatrix one = ComplexMatrix::identity(q.r);
    const ComplexMatrix q1 = hermitian_part(q.apply(one));
    const ComplexMatrix qs1 = hermitian_part(sharp(q, state).apply(one));
    const ComplexMatrix delta =
        centralizer_expectation(state, q1) - centralizer_expectation(state, qs1);
    CriterionResult res;
    res.residual = delta.frobenius_norm();
    res.holds = res.residual <= 1e-9 * (1.0 + q1.frobenius_norm());
    return res;
}

ComplexMatrix solve_commutator_equation(const FaithfulState& state, const ComplexMatrix& t) {
    if (t.rows() != state.r || t.cols() != state.r)
        throw DimensionMismatch("solve_commutator_equation: shape mismatch");
    if (t.hermiticity_defect() > 1e-10 * std::max(t.frobenius_norm(), 1.0))
        throw NotHermitian("solve_commutator_equation: right-hand side is not Hermitian");

    const ComplexMatrix th = hermitian_part(t);
    if (state.tracial()) {
        // ell Omega - Omega ell vanishes identically here, so only the zero
        // right-hand side is consistent.
        if (th.frobenius_norm() > 1e-12 * (1.0 + t.frobenius_norm()))
            throw DegenerateState(
                "solve_commutator_equation: tracial state admits only a zero right-hand side");
        return ComplexMatrix(state.r, state.r);
    }
    // A centralizer component is unreachable by any commutator with the
    // density, so solve against the off-centralizer part.
    const ComplexMatrix off = th - centralizer_expectation(state, th);

    const int m = static_cast<int>(state.distinct_eigenvalues.size());
    ComplexMatrix ell(state.r, state.r);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const double gap = state.distinct_eigenvalues[j] - state.distinct_eigenvalues[i];
            ell += (1.0 / gap) * (state.projections[i] * off * state.projections[j]);
        }
    return ell;
}

ComplexMatrix solve_perturbation(const Superoperator& l, const FaithfulState& state) {
    if (l.r != state.r) throw DimensionMismatch("solve_perturbation: dimension mismatch");
    const ComplexMatrix target = hermitian_part(dual(l).apply(state.density));
    // Only the off-centralizer part of the invariance defect can be repaired
    // by a commutator perturbation; what remains on the centralizer is the
    // obstruction measured by the drift criterion.
    return solve_commutator_equation(state,
                                     target - centralizer_expectation(state, target));
}

LindbladGenerator build_preserving(const FaithfulState& state,
                                   const std::vector<ComplexMatrix>& kraus) {
    const int r = state.r;
    ComplexMatrix fwd(r, r), bwd(r, r);
    for (const ComplexMatrix& v : kraus) {
        if (v.rows() != r || v.cols() != r)
            throw DimensionMismatch("build_preserving: kraus shape mismatch");
        fwd += v * v.adjoint();
        bwd += v.adjoint() * v;
    }
    if ((fwd - bwd).frobenius_norm() > 1e-10 * std::max(fwd.frobenius_norm(), 1.0))
        throw UnbalancedKraus("build_preserving: sum v v* != sum v* v");

    LindbladGenerator gen;
    gen.r = r;
    for (const ComplexMatrix& v : kraus) gen.kraus.push_back(state.inv_sqrt_density * v);

    ComplexMatrix q1(r, r);
    for (const ComplexMatrix& v : gen.kraus) q1 += v * v.adjoint();
    q1 = hermitian_part(q1);

    LindbladGenerator cp_only;
    cp_only.r = r;
    cp_only.kraus = gen.kraus;
    cp_only.drift = ComplexMatrix(r, r);
    const Superoperator l0 = unperturbed(as_superoperator(cp_only));
    const ComplexMatrix ell = solve_perturbation(l0, state);

    gen.drift = (-0.5) * q1 + ell;
    return gen;
}

PerturbationDemo perturbation_demo(const FaithfulState& state, double eps) {
    if (state.tracial())
        throw TracialState("perturbation_demo: state must have at least two distinct eigenvalues");
    const int r = state.r;

    // Partial isometry between the eigenvectors of the two smallest
    // distinct eigenvalues; it has no component in the centralizer.
    const ComplexMatrix xi_min = state.basis.column(state.groups[0].front());
    const ComplexMatrix xi_next = state.basis.column(state.groups[1].front());
    const ComplexMatrix v = xi_min * xi_next.adjoint();

    const ComplexMatrix w_prime = state.density + eps * (v + v.adjoint());
    HermEig e = herm_eig(w_prime);
    if (e.eigenvalues.front() <= 0.0)
        throw EpsilonTooLarge("perturbation_demo: perturbed density loses positivity");

    // Kraus form of x -> trace(w_prime x) 1.
    std::vector<ComplexMatrix> kraus;
    for (int j = 0; j < r; ++j) {
        const ComplexMatrix col = e.vectors.column(j);
        const double root = std::sqrt(e.eigenvalues[j]);
        for (int m = 0; m < r; ++m) {
            ComplexMatrix em(r, 1);
            em(m, 0) = 1.0;
            kraus.push_back(root * (em * col.adjoint()));
        }
    }

    PerturbationDemo demo;
    demo.before.r = r;
    demo.before.kraus = kraus;
    demo.before.drift = (-0.5) * ComplexMatrix::identity(r);
    demo.defect_before = invariance_defect(demo.before, state);

    demo.ell = solve_perturbation(as_superoperator(demo.before), state);

    demo.after.r = r;
    demo.after.kraus = kraus;
    demo.after.drift = demo.before.drift + demo.ell;
    demo.defect_after = invariance_defect(demo.after, state);
    return demo;
}

LindbladGenerator depolarizing_generator(const FaithfulState& state) {
    const int r = state.r;
    LindbladGenerator gen;
    gen.r = r;
    for (int j = 0; j < r; ++j) {
        const ComplexMatrix col = state.basis.column(j);
        const double root = std::sqrt(state.eigenvalue_list[j]);
        for (int m = 0; m < r; ++m) {
            ComplexMatrix em(r, 1);
            em(m, 0) = 1.0;
            gen.kraus.push_back(root * (em * col.adjoint()));
        }
    }
    gen.drift = (-0.5) * ComplexMatrix::identity(r);
    return gen;
}

} // namespace absorbing
