#include "absorbing/state.hpp"

#include <cmath>

namespace absorbing {

namespace {

void attach_spectral_data(FaithfulState& st) {
    const int r = st.r;
    st.density = ComplexMatrix(r, r);
    for (int k = 0; k < r; ++k) {
        const ComplexMatrix col = st.basis.column(k);
        st.density += st.eigenvalue_list[k] * (col * col.adjoint());
    }

    // Group basis columns whose eigenvalues sit within the relative gap.
    const double lam_max = st.eigenvalue_list.front();
    std::vector<int> ascending(r);
    for (int k = 0; k < r; ++k) ascending[k] = r - 1 - k;
    st.groups.clear();
    st.distinct_eigenvalues.clear();
    st.projections.clear();
    for (int idx : ascending) {
        const double lam = st.eigenvalue_list[idx];
        if (!st.groups.empty()) {
            const double prev = st.eigenvalue_list[st.groups.back().back()];
            if (lam - prev <= kEigenvalueGroupTol * lam_max) {
                st.groups.back().push_back(idx);
                continue;
            }
        }
        st.groups.push_back({idx});
    }
    for (const auto& group : st.groups) {
        double mean = 0.0;
        ComplexMatrix proj(r, r);
        for (int idx : group) {
            mean += st.eigenvalue_list[idx];
            const ComplexMatrix col = st.basis.column(idx);
            proj += col * col.adjoint();
        }
        st.distinct_eigenvalues.push_back(mean / static_cast<double>(group.size()));
        st.projections.push_back(proj);
    }

    st.sqrt_density = ComplexMatrix(r, r);
    st.inv_sqrt_density = ComplexMatrix(r, r);
    for (int k = 0; k < r; ++k) {
        const ComplexMatrix col = st.basis.column(k);
        const ComplexMatrix outer = col * col.adjoint();
        st.sqrt_density += std::sqrt(st.eigenvalue_list[k]) * outer;
        st.inv_sqrt_density += (1.0 / std::sqrt(st.eigenvalue_list[k])) * outer;
    }
}

} // namespace

FaithfulState make_state(const std::vector<double>& eigenvalue_list, const ComplexMatrix& basis) {
    const int r = static_cast<int>(eigenvalue_list.size());
    if (r < 2) throw NotAState("make_state: need dimension at least 2");
    if (basis.rows() != r || basis.cols() != r)
        throw DimensionMismatch("make_state: basis shape does not match eigenvalue count");

    double sum = 0.0;
    for (int k = 0; k < r; ++k) {
        if (!(eigenvalue_list[k] > 0.0))
            throw NotAState("make_state: eigenvalues must be strictly positive");
        if (k > 0 && eigenvalue_list[k] > eigenvalue_list[k - 1])
            throw NotAState("make_state: eigenvalue list must be non-increasing");
        sum += eigenvalue_list[k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw NotAState("make_state: eigenvalues must sum to 1");

    const ComplexMatrix gram = basis.adjoint() * basis;
    if ((gram - ComplexMatrix::identity(r)).frobenius_norm() > 1e-10)
        throw NotUnitary("make_state: basis is not unitary");

    FaithfulState st;
    st.r = r;
    st.eigenvalue_list = eigenvalue_list;
    st.basis = basis;
    attach_spectral_data(st);
    return st;
}

FaithfulState state_from_density(const ComplexMatrix& density) {
    if (!density.is_square()) throw DimensionMismatch("state_from_density: matrix not square");
    const int r = density.rows();
    if (r < 2) throw NotAState("state_from_density: need dimension at least 2");
    if (density.hermiticity_defect() > 1e-10 * std::max(density.frobenius_norm(), 1.0))
        throw NotAState("state_from_density: density is not Hermitian");
    HermEig e = herm_eig(density);

    FaithfulState st;
    st.r = r;
    st.eigenvalue_list.resize(r);
    st.basis = ComplexMatrix(r, r);
    double sum = 0.0;
    const double lam_top = e.eigenvalues.back();
    for (int k = 0; k < r; ++k) {
        const double lam = e.eigenvalues[r - 1 - k];
        if (!(lam > 1e-13 * lam_top))
            throw NotAState("state_from_density: density is not faithful");
        st.eigenvalue_list[k] = lam;
        sum += lam;
        for (int i = 0; i < r; ++i) st.basis(i, k) = e.vectors(i, r - 1 - k);
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw NotAState("state_from_density: trace must be 1");
    attach_spectral_data(st);
    return st;
}

ComplexMatrix centralizer_expectation(const FaithfulState& state, const ComplexMatrix& x) {
    if (x.rows() != state.r || x.cols() != state.r)
        throw DimensionMismatch("centralizer_expectation: operator shape mismatch");
    ComplexMatrix out(state.r, state.r);
    for (const ComplexMatrix& e : state.projections) out += e * x * e;
    return out;
}

cplx trace_pair(const ComplexMatrix& d, const ComplexMatrix& x) {
    if (!d.same_shape(x) || !d.is_square())
        throw DimensionMismatch("trace_pair: shape mismatch");
    return (d * x).trace();
}

} // namespace absorbing
