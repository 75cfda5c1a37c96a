#pragma once

#include <vector>

#include "absorbing/eig.hpp"
#include "absorbing/matrix.hpp"

namespace absorbing {

// Faithful state on M_r given by its density with spectral data attached.
// eigenvalue_list is kept in decreasing order with repeats; the distinct
// eigenvalues are merged at relative gap 1e-9 and stored increasing, each
// with its spectral projection.
struct FaithfulState {
    int r = 0;
    std::vector<double> eigenvalue_list;        // decreasing, length r
    ComplexMatrix basis;                        // unitary; column k pairs with eigenvalue_list[k]
    std::vector<double> distinct_eigenvalues;   // strictly increasing
    std::vector<ComplexMatrix> projections;     // aligned with distinct_eigenvalues
    std::vector<std::vector<int>> groups;       // basis-column indices per distinct eigenvalue
    ComplexMatrix density;                      // r x r
    ComplexMatrix sqrt_density;
    ComplexMatrix inv_sqrt_density;

    bool tracial() const { return distinct_eigenvalues.size() == 1; }
    cplx expect(const ComplexMatrix& x) const { return (density * x).trace(); }
};

// Relative gap under which neighbouring eigenvalues share a projection.
inline constexpr double kEigenvalueGroupTol = 1e-9;

FaithfulState make_state(const std::vector<double>& eigenvalue_list, const ComplexMatrix& basis);
FaithfulState state_from_density(const ComplexMatrix& density);

// Conditional expectation onto the commutant of the density:
// sum_k e_k x e_k over the spectral projections.
ComplexMatrix centralizer_expectation(const FaithfulState& state, const ComplexMatrix& x);

// Bilinear pairing trace(d x) between a density-side element and an observable.
cplx trace_pair(const ComplexMatrix& d, const ComplexMatrix& x);

} // namespace absorbing
