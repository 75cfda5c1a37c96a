#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absorbing/generator.hpp"
#include "absorbing/matrix.hpp"
#include "absorbing/state.hpp"

namespace absorbing {

// Slack applied to the estimated decay rate when fitting bound curves.
inline constexpr double kGapSlack = 0.05;

// Decay rates are reported no larger than this; beyond it a semigroup mixes
// faster than double precision can distinguish from instantaneous.
inline constexpr double kMaxGapRate = 700.0;

// Measured trace distances below this are exponential-of-matrix rounding
// noise (long-horizon plateaus reach ~8e-12); they are excluded when fitting
// decay constants and tolerated as slack in envelope comparisons.
inline constexpr double kDistanceFloor = 1e-10;

struct PurityCertificate {
    bool ergodic = false;
    bool irreducible = false;
    int fixed_point_dim = 0;
    int commutant_dim = 0;
    double spectral_gap_estimate = 0.0;
    double gap_constant = 1.0;
    std::string method_notes;

    bool pure() const { return ergodic && irreducible; }
};

struct SpectralGap {
    double epsilon = 0.0;   // decay rate; 0 when the compressed map does not contract
    double constant = 1.0;  // growth envelope: ||A^m|| <= constant * exp(-epsilon m)
};

struct ConvergenceReport {
    std::vector<double> times;
    std::vector<double> distances;   // trace-norm distance to the invariant density
    std::vector<double> gap_bound;   // fitted_constant * exp(-rate * t)
    double epsilon = 0.0;            // gap estimate used for the bound
    double rate = 0.0;               // (1 - kGapSlack) * epsilon
    double fitted_constant = 0.0;
    double initial_distance = 0.0;
};

// Hilbert-Schmidt-orthonormal basis of the kernel of l, unvectorized.
std::vector<ComplexMatrix> fixed_point_algebra(const Superoperator& l, double tol = 1e-8);

// Orthonormal basis of {x : [x, op] = 0 for all ops}; pass a self-adjoint
// family (include adjoints) to get a *-algebra.
std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& ops, double tol = 1e-8);

// Certificate for absorption: ergodicity (trivial fixed points), joint
// irreducibility of drift and kraus operators, and the L^2 spectral gap.
// The two verdicts must agree; disagreement throws ConstructionFailed.
PurityCertificate purity_verdict(const LindbladGenerator& gen, const FaithfulState& state,
                                 double tol = 1e-8, int m_max = 64);

Superoperator evolve(const Superoperator& l, double t);

// Decay rate of exp(l) compressed to the mean-zero subspace of the state's
// L^2 space, from norms of repeatedly squared powers up to m_max.
SpectralGap spectral_gap(const Superoperator& l, const FaithfulState& state, int m_max = 64);

// Orthonormalize the matrix units (less their state mean when mean_zero)
// in the inner product trace(W y* x); deterministic order.
std::vector<ComplexMatrix> l2_basis(const FaithfulState& state, bool mean_zero);

ConvergenceReport trajectory(const LindbladGenerator& gen, const FaithfulState& state,
                             const ComplexMatrix& rho0, const std::vector<double>& times,
                             std::optional<SpectralGap> gap = std::nullopt);

struct ContractionReport {
    bool contractive = false;
    double max_norm = 0.0;
};

// Operator norm of exp(t l) on the state's L^2 space at each sample;
// contractive when all norms stay below 1 + 1e-9.
ContractionReport contraction_check(const Superoperator& l, const FaithfulState& state,
                                    const std::vector<double>& t_samples);

// Log-spaced grid on [1e-2, t_end] (or linear on (0, t_end]), never empty.
std::vector<double> default_time_grid(double t_end, int steps, bool log_spaced);

// True when the distances never rise by more than slack past the burn-in.
bool eventually_nonincreasing(const ConvergenceReport& report, double burn_in = 0.0,
                              double slack = 1e-8);

} // namespace absorbing
