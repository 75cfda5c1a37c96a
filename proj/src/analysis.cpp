#include "absorbing/analysis.hpp"

#include <cmath>
#include <sstream>

#include "absorbing/eig.hpp"
#include "absorbing/weyl.hpp"

namespace absorbing {

namespace {

cplx l2_inner(const FaithfulState& state, const ComplexMatrix& x, const ComplexMatrix& y) {
    return (state.density * y.adjoint() * x).trace();
}

// Matrix of a superoperator compressed to the span of an L^2-orthonormal
// family: a[i][j] = <s(basis_j), basis_i>.
ComplexMatrix compress(const Superoperator& s, const FaithfulState& state,
                       const std::vector<ComplexMatrix>& basis) {
    const int d = static_cast<int>(basis.size());
    ComplexMatrix a(d, d);
    for (int j = 0; j < d; ++j) {
        const ComplexMatrix image = s.apply(basis[j]);
        for (int i = 0; i < d; ++i) a(i, j) = l2_inner(state, image, basis[i]);
    }
    return a;
}

} // namespace

std::vector<ComplexMatrix> fixed_point_algebra(const Superoperator& l, double tol) {
    std::vector<ComplexMatrix> out;
    for (const ComplexMatrix& v : null_space(l.mat, tol)) out.push_back(unvec(v, l.r, l.r));
    return out;
}

std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& ops, double tol) {
    if (ops.empty()) throw EmptyInput("commutant: no operators given");
    const int r = ops.front().rows();
    const int rr = r * r;
    ComplexMatrix stacked(static_cast<int>(ops.size()) * rr, rr);
    for (size_t k = 0; k < ops.size(); ++k) {
        if (!ops[k].is_square() || ops[k].rows() != r)
            throw DimensionMismatch("commutant: operators of mixed shape");
        const ComplexMatrix ck = commutation_map(ops[k]);
        for (int i = 0; i < rr; ++i)
            for (int j = 0; j < rr; ++j) stacked(static_cast<int>(k) * rr + i, j) = ck(i, j);
    }
    std::vector<ComplexMatrix> out;
    for (const ComplexMatrix& v : null_space(stacked, tol)) out.push_back(unvec(v, r, r));
    return out;
}

std::vector<ComplexMatrix> l2_basis(const FaithfulState& state, bool mean_zero) {
    const int r = state.r;
    const ComplexMatrix id = ComplexMatrix::identity(r);
    std::vector<ComplexMatrix> basis;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            ComplexMatrix g(r, r);
            g(i, j) = 1.0;
            if (mean_zero) g -= state.expect(g) * id;
            for (int pass = 0; pass < 2; ++pass)
                for (const ComplexMatrix& f : basis) g -= l2_inner(state, g, f) * f;
            const double nrm = std::sqrt(std::abs(l2_inner(state, g, g).real()));
            if (nrm > 1e-9) basis.push_back(g * cplx(1.0 / nrm));
        }
    const int expected = mean_zero ? r * r - 1 : r * r;
    if (static_cast<int>(basis.size()) != expected)
        throw Error("l2_basis: unexpected dimension after orthonormalization");
    return basis;
}

Superoperator evolve(const Superoperator& l, double t) {
    return {l.r, expm(l.mat * cplx(t))};
}

SpectralGap spectral_gap(const Superoperator& l, const FaithfulState& state, int m_max) {
    if (l.r != state.r) throw DimensionMismatch("spectral_gap: dimension mismatch");
    if (invariance_defect(l, state) > 1e-8)
        throw NotInvariant("spectral_gap: state is not invariant under the generator");
    if (m_max < 1) throw Error("spectral_gap: m_max must be positive");

    const std::vector<ComplexMatrix> basis = l2_basis(state, true);
    SpectralGap gap;
    if (basis.empty()) {
        // One-dimensional algebra: the mean-zero space is trivial and every
        // density already equals the invariant state.
        gap.epsilon = kMaxGapRate;
        gap.constant = 1.0;
        return gap;
    }
    const Superoperator p1{l.r, expm(l.mat)};
    const ComplexMatrix a = compress(p1, state, basis);

    // Norms of A^m for m = 1, 2, 4, ... <= m_max by repeated squaring; the
    // spectral radius is approached from above by ||A^m||^(1/m). The running
    // power is renormalized each step and only the log norm accumulated, so
    // strongly dissipative generators do not underflow the estimate.
    double nrm = spectral_norm(a);
    std::vector<std::pair<int, double>> log_samples;
    log_samples.emplace_back(1, nrm > 0.0 ? std::log(nrm) : -kMaxGapRate);
    if (nrm > 0.0) {
        ComplexMatrix power = a * cplx(1.0 / nrm);
        double log_scale = std::log(nrm);
        int m = 1;
        while (2 * m <= m_max) {
            power = power * power;
            m *= 2;
            log_scale *= 2.0;
            const double step = spectral_norm(power);
            if (step <= 0.0) {
                log_samples.emplace_back(m, -kMaxGapRate * m);
                break;
            }
            log_samples.emplace_back(m, std::log(step) + log_scale);
            power = power * cplx(1.0 / step);
            log_scale += std::log(step);
        }
    }

    double log_rho = 0.0;
    for (const auto& [mm, log_nrm] : log_samples)
        log_rho = std::min(log_rho, log_nrm / mm);
    gap.epsilon = std::min(std::max(0.0, -log_rho), kMaxGapRate);
    double log_c = 0.0;
    for (const auto& [mm, log_nrm] : log_samples)
        log_c = std::max(log_c, log_nrm + gap.epsilon * mm);
    gap.constant = std::exp(std::min(log_c, kMaxGapRate));
    return gap;
}

PurityCertificate purity_verdict(const LindbladGenerator& gen, const FaithfulState& state,
                                 double tol, int m_max) {
    if (gen.r != state.r) throw DimensionMismatch("purity_verdict: dimension mismatch");
    if (unitality_defect(gen) > 1e-8)
        throw NoInvariantState("purity_verdict: generator is not unital");
    if (invariance_defect(gen, state) > 1e-8)
        throw NoInvariantState("purity_verdict: state is not invariant");

    std::vector<ComplexMatrix> ops{gen.drift, gen.drift.adjoint()};
    for (const ComplexMatrix& v : gen.kraus) {
        ops.push_back(v);
        ops.push_back(v.adjoint());
    }
    const std::vector<ComplexMatrix> comm = commutant(ops, tol);
    const Superoperator l = as_superoperator(gen);
    const std::vector<ComplexMatrix> fixed = fixed_point_algebra(l, tol);

    PurityCertificate cert;
    cert.commutant_dim = static_cast<int>(comm.size());
    cert.fixed_point_dim = static_cast<int>(fixed.size());
    cert.ergodic = cert.fixed_point_dim == 1;
    cert.irreducible = cert.commutant_dim == 1;
    if (cert.ergodic != cert.irreducible)
        throw ConstructionFailed(
            "purity_verdict: ergodicity and irreducibility verdicts disagree");

    const SpectralGap gap = spectral_gap(l, state, m_max);
    cert.spectral_gap_estimate = gap.epsilon;
    cert.gap_constant = gap.constant;

    std::ostringstream notes;
    notes << "fixed points from the generator kernel, commutant from stacked "
          << "commutation maps, both at tol " << tol << "; gap from norms of squared "
          << "powers of exp(L) on the mean-zero subspace up to m=" << m_max
          << ", growth constant " << gap.constant;
    cert.method_notes = notes.str();
    return cert;
}

ConvergenceReport trajectory(const LindbladGenerator& gen, const FaithfulState& state,
                             const ComplexMatrix& rho0, const std::vector<double>& times,
                             std::optional<SpectralGap> gap) {
    const int r = gen.r;
    if (rho0.rows() != r || rho0.cols() != r)
        throw DimensionMismatch("trajectory: density shape mismatch");
    if (rho0.hermiticity_defect() > 1e-10 * std::max(rho0.frobenius_norm(), 1.0))
        throw NotADensity("trajectory: initial density is not Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-10 || std::abs(rho0.trace().imag()) > 1e-10)
        throw NotADensity("trajectory: initial density must have trace 1");
    {
        HermEig e = herm_eig(hermitian_part(rho0));
        if (e.eigenvalues.front() < -1e-10)
            throw NotADensity("trajectory: initial density is not positive");
    }
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw Error("trajectory: times must be nonnegative");
        if (i > 0 && times[i] <= times[i - 1])
            throw Error("trajectory: times must be strictly increasing");
    }

    const Superoperator l = as_superoperator(gen);
    if (!gap) gap = spectral_gap(l, state, 64);

    ConvergenceReport rep;
    rep.epsilon = gap->epsilon;
    rep.rate = (1.0 - kGapSlack) * gap->epsilon;
    rep.times.push_back(0.0);
    rep.distances.push_back(trace_norm(hermitian_part(rho0 - state.density)));
    rep.initial_distance = rep.distances.front();

    const ComplexMatrix ldual = dual(l).mat;
    const ComplexMatrix v0 = vec(rho0);
    for (double t : times) {
        if (t == 0.0) continue;
        const ComplexMatrix rho_t = unvec(expm(ldual * cplx(t)) * v0, r, r);
        rep.times.push_back(t);
        rep.distances.push_back(trace_norm(hermitian_part(rho_t - state.density)));
    }

    // Fit the smallest constant with distances <= C' exp(-rate t), skipping
    // samples at the rounding floor of the matrix exponential: multiplying
    // noise of size ~1e-13 by exp(rate t) would swamp the fit without saying
    // anything about the actual transient.
    double c = 0.0;
    for (size_t i = 0; i < rep.times.size(); ++i)
        if (rep.distances[i] > kDistanceFloor)
            c = std::max(c, rep.distances[i] * std::exp(rep.rate * rep.times[i]));
    if (c == 0.0) c = rep.initial_distance;
    rep.fitted_constant = c;
    for (double t : rep.times) rep.gap_bound.push_back(c * std::exp(-rep.rate * t));
    return rep;
}

ContractionReport contraction_check(const Superoperator& l, const FaithfulState& state,
                                    const std::vector<double>& t_samples) {
    if (invariance_defect(l, state) > 1e-8)
        throw NotInvariant("contraction_check: state is not invariant under the generator");
    const std::vector<ComplexMatrix> basis = l2_basis(state, false);
    ContractionReport rep;
    for (double t : t_samples) {
        if (t < 0.0) throw Error("contraction_check: times must be nonnegative");
        const Superoperator pt = evolve(l, t);
        rep.max_norm = std::max(rep.max_norm, spectral_norm(compress(pt, state, basis)));
    }
    rep.contractive = rep.max_norm <= 1.0 + 1e-9;
    return rep;
}

std::vector<double> default_time_grid(double t_end, int steps, bool log_spaced) {
    if (!(t_end > 0.0)) throw Error("time grid: t_end must be positive");
    if (steps < 2) throw Error("time grid: need at least two steps");
    std::vector<double> grid;
    if (log_spaced) {
        const double t0 = std::min(1e-2, t_end / 2.0);
        for (int i = 0; i < steps; ++i)
            grid.push_back(t0 * std::pow(t_end / t0, static_cast<double>(i) / (steps - 1)));
    } else {
        for (int i = 1; i <= steps; ++i) grid.push_back(t_end * i / steps);
    }
    grid.back() = t_end;
    return grid;
}

bool eventually_nonincreasing(const ConvergenceReport& report, double burn_in, double slack) {
    for (size_t i = 1; i < report.times.size(); ++i) {
        if (report.times[i] <= burn_in) continue;
        if (report.distances[i] > report.distances[i - 1] + slack) return false;
    }
    return true;
}

} // namespace absorbing
