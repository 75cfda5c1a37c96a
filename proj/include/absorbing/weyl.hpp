#pragma once

#include <cstdint>
#include <vector>

#include "absorbing/matrix.hpp"

namespace absorbing {

// Discrete Weyl pair on C^r: u diagonal in the given basis with powers of
// the r-th root of unity, v the cyclic shift of the same basis.
struct WeylPair {
    int r = 0;
    cplx lambda;          // exp(2*pi*i/r)
    ComplexMatrix u;
    ComplexMatrix v;
    ComplexMatrix basis;  // columns xi_0..xi_{r-1}
};

// Orthonormal basis xi_0..xi_{r-1} (columns of the result) such that
// T xi_0 has equal positive overlap ||zeta||/sqrt(r-1) with every xi_k,
// k >= 1, where zeta is the component of T xi_0 orthogonal to xi_0.
// Candidates for xi_0 are scanned in a fixed order: standard basis
// vectors, the uniform superposition, then seeded pseudo-random unit
// vectors; the first with ||zeta|| >= 1e-8 ||T||_F wins.
ComplexMatrix admissible_basis(const ComplexMatrix& t, std::uint64_t seed = 0);

WeylPair clock_shift(int r, const ComplexMatrix& basis);

// All r^2 words u^i v^j, flat index i*r + j.
std::vector<ComplexMatrix> weyl_family(const WeylPair& pair);

// True iff only scalars commute with both a and b.
bool check_irreducible_pair(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-8);

// Superoperator matrix of x -> s x - x s in row-major vectorization.
ComplexMatrix commutation_map(const ComplexMatrix& s);

} // namespace absorbing
