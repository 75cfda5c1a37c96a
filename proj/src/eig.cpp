#include "absorbing/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace absorbing {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

HermEig herm_eig(const ComplexMatrix& a, int max_sweeps) {
    if (!a.is_square()) throw DimensionMismatch("herm_eig: matrix not square");
    const int n = a.rows();
    const double scale = a.frobenius_norm();
    if (a.hermiticity_defect() > 1e-12 * std::max(scale, 1.0))
        throw NotHermitian("herm_eig: input is not Hermitian");

    ComplexMatrix m = hermitian_part(a);
    ComplexMatrix v = ComplexMatrix::identity(n);
    HermEig out;
    out.eigenvalues.assign(n, 0.0);

    const double thresh = 1e-14 * scale;
    // |m_pq| below elem_skip for every pair forces the off-diagonal norm
    // under thresh, so skipping those rotations cannot stall convergence.
    const double elem_skip = n > 1 ? thresh / n : 0.0;

    bool converged = scale == 0.0 || n == 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_diagonal_norm(m) <= thresh) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx beta = m(p, q);
                const double babs = std::abs(beta);
                if (babs <= elem_skip) continue;
                const cplx phase = beta / babs;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * babs);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary pair rotation J: J_pp = c, J_pq = s*phase,
                // J_qp = -s*conj(phase), J_qq = c; m <- J* m J, v <- v J.
                for (int k = 0; k < n; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * std::conj(phase) * mkq;
                    m(k, q) = s * phase * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * phase * mqk;
                    m(q, k) = s * std::conj(phase) * mpk + c * mqk;
                }
                m(p, p) = app - t * babs;
                m(q, q) = aqq + t * babs;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    v(k, q) = s * phase * vkp + c * vkq;
                }
            }
        }
        if (off_diagonal_norm(m) <= thresh) converged = true;
    }
    if (!converged) throw NoConvergence("herm_eig: Jacobi sweep cap exceeded");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&m](int i, int j) { return m(i, i).real() < m(j, j).real(); });

    out.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("expm: matrix not square");
    const int n = a.rows();
    const double norm = a.frobenius_norm();

    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

    ComplexMatrix b = a * cplx(std::ldexp(1.0, -squarings));
    const ComplexMatrix id = ComplexMatrix::identity(n);

    // Horner form of the order-20 Taylor polynomial; at ||b|| <= 0.5 the
    // truncation error is far below double rounding.
    constexpr int kOrder = 20;
    ComplexMatrix p = id;
    for (int k = kOrder; k >= 1; --k) p = id + (b * p) * cplx(1.0 / k);

    for (int s = 0; s < squarings; ++s) p = p * p;
    return p;
}

double trace_norm(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("trace_norm: matrix not square");
    if (a.hermiticity_defect() > 1e-10 * std::max(a.frobenius_norm(), 1.0))
        throw NotHermitian("trace_norm: input is not Hermitian");
    HermEig e = herm_eig(a);
    double s = 0.0;
    for (double lam : e.eigenvalues) s += std::abs(lam);
    return s;
}

double spectral_norm(const ComplexMatrix& a) {
    HermEig e = herm_eig(a.adjoint() * a);
    const double top = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
    return std::sqrt(std::max(top, 0.0));
}

ComplexMatrix hermitian_function(const ComplexMatrix& a, double (*f)(double)) {
    HermEig e = herm_eig(a);
    const int n = a.rows();
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double fk = f(e.eigenvalues[k]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += fk * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return out;
}

std::vector<ComplexMatrix> null_space(const ComplexMatrix& a, double tol) {
    const int n = a.cols();
    HermEig e = herm_eig(a.adjoint() * a);
    const double sigma_max = std::sqrt(std::max(e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back(), 0.0));
    std::vector<ComplexMatrix> basis;
    for (int k = 0; k < n; ++k) {
        ComplexMatrix v = e.vectors.column(k);
        if ((a * v).frobenius_norm() <= tol * sigma_max) basis.push_back(v);
    }
    return basis;
}

int gram_rank(const std::vector<ComplexMatrix>& ops, double tol) {
    if (ops.empty()) throw EmptyInput("gram_rank: no operators given");
    const int k = static_cast<int>(ops.size());
    for (const auto& op : ops)
        if (!op.same_shape(ops.front()))
            throw DimensionMismatch("gram_rank: operators of mixed shape");
    ComplexMatrix g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = hs_inner(ops[i], ops[j]);
    HermEig e = herm_eig(g);
    const double top = e.eigenvalues.back();
    if (top <= 0.0) return 0;
    int rank = 0;
    for (double lam : e.eigenvalues)
        if (lam > tol * top) ++rank;
    return rank;
}

} // namespace absorbing
