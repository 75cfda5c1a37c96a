#pragma once

#include <vector>

#include "absorbing/matrix.hpp"

namespace absorbing {

struct HermEig {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix vectors;           // unitary, k-th column pairs with eigenvalues[k]
};

// Cyclic Jacobi for Hermitian input. Sweep cap 100, off-diagonal
// threshold 1e-14 * ||a||_F. Throws NotHermitian / NoConvergence.
HermEig herm_eig(const ComplexMatrix& a, int max_sweeps = 100);

// Scaling and squaring with a fixed-order Taylor kernel; the input is
// halved until its Frobenius norm is <= 0.5.
ComplexMatrix expm(const ComplexMatrix& a);

// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& a);

// Largest singular value; rectangular inputs allowed.
double spectral_norm(const ComplexMatrix& a);

// f applied to the eigenvalues of a Hermitian matrix.
ComplexMatrix hermitian_function(const ComplexMatrix& a, double (*f)(double));

// Orthonormal basis of {x : ||a x|| <= tol * ||a|| * ||x||}, each entry an
// n x 1 column. Computed from the eigenvectors of a* a, kept when the
// direct residual passes; rectangular (e.g. stacked) inputs allowed.
std::vector<ComplexMatrix> null_space(const ComplexMatrix& a, double tol);

// Rank of the span of ops under the Hilbert-Schmidt form: eigenvalues of the
// Gram matrix above tol * (largest eigenvalue). Throws EmptyInput.
int gram_rank(const std::vector<ComplexMatrix>& ops, double tol);

} // namespace absorbing
