#include "absorbing/weyl.hpp"

#include <cmath>
#include <random>

#include "absorbing/eig.hpp"

namespace absorbing {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Candidate {
    ComplexMatrix xi0;   // r x 1 unit vector
    ComplexMatrix zeta;  // component of T xi0 orthogonal to xi0
    double zeta_norm = -1.0;
};

Candidate evaluate(const ComplexMatrix& t, const ComplexMatrix& xi0) {
    Candidate c;
    c.xi0 = xi0;
    const ComplexMatrix w = t * xi0;
    cplx a = 0.0;
    for (int i = 0; i < w.rows(); ++i) a += w(i, 0) * std::conj(xi0(i, 0));
    c.zeta = w - a * xi0;
    c.zeta_norm = c.zeta.frobenius_norm();
    return c;
}

// Unitary reflection sending x to a multiple of e_0 (applied as rx * v).
ComplexMatrix reflection_to_e0(const ComplexMatrix& x, cplx& mu) {
    const int n = x.rows();
    const double nrm = x.frobenius_norm();
    cplx phase = 1.0;
    if (std::abs(x(0, 0)) > 0.0) phase = x(0, 0) / std::abs(x(0, 0));
    mu = -phase * nrm;
    ComplexMatrix v = x;
    v(0, 0) -= mu;
    const double vn2 = v.frobenius_norm() * v.frobenius_norm();
    ComplexMatrix refl = ComplexMatrix::identity(n);
    if (vn2 > 0.0) refl -= (2.0 / vn2) * (v * v.adjoint());
    else mu = x(0, 0);
    return refl;
}

} // namespace

ComplexMatrix commutation_map(const ComplexMatrix& s) {
    const int r = s.rows();
    const ComplexMatrix id = ComplexMatrix::identity(r);
    return kron(s, id) - kron(id, s.transpose());
}

ComplexMatrix admissible_basis(const ComplexMatrix& t, std::uint64_t seed) {
    if (!t.is_square()) throw DimensionMismatch("admissible_basis: matrix not square");
    const int r = t.rows();
    if (r < 2) throw DimensionMismatch("admissible_basis: need r >= 2");

    const double tnorm = t.frobenius_norm();
    const ComplexMatrix centered = t - (t.trace() / cplx(r)) * ComplexMatrix::identity(r);
    if (centered.frobenius_norm() <= 1e-10 * std::max(tnorm, 1.0))
        throw ScalarInput("admissible_basis: operator is numerically scalar");

    // Candidate scan for xi_0.
    std::vector<ComplexMatrix> candidates;
    for (int k = 0; k < r; ++k) {
        ComplexMatrix e(r, 1);
        e(k, 0) = 1.0;
        candidates.push_back(e);
    }
    {
        ComplexMatrix s(r, 1);
        for (int k = 0; k < r; ++k) s(k, 0) = 1.0 / std::sqrt(static_cast<double>(r));
        candidates.push_back(s);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 64; ++trial) {
        ComplexMatrix g(r, 1);
        for (int k = 0; k < r; ++k) g(k, 0) = cplx(gauss(rng), gauss(rng));
        const double nrm = g.frobenius_norm();
        if (nrm == 0.0) continue;
        candidates.push_back(g * cplx(1.0 / nrm));
    }

    Candidate best;
    bool accepted = false;
    for (const ComplexMatrix& xi0 : candidates) {
        Candidate c = evaluate(t, xi0);
        if (c.zeta_norm > best.zeta_norm) best = c;
        if (c.zeta_norm >= 1e-8 * tnorm) {
            best = c;
            accepted = true;
            break;
        }
    }
    // Fall back to the best candidate seen when every vector sits near an
    // eigenvector but the operator is not scalar.
    if (!accepted && best.zeta_norm <= 1e-13 * std::max(tnorm, 1.0))
        throw ScalarInput("admissible_basis: no candidate with usable overlap");

    // Orthonormal complement eta_1..eta_{r-1} of xi_0 by Gram-Schmidt over
    // standard vectors, run twice for orthogonality at machine precision.
    std::vector<ComplexMatrix> frame{best.xi0};
    for (int k = 0; k < r && static_cast<int>(frame.size()) < r; ++k) {
        ComplexMatrix w(r, 1);
        w(k, 0) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const ComplexMatrix& f : frame) {
                cplx ov = 0.0;
                for (int i = 0; i < r; ++i) ov += w(i, 0) * std::conj(f(i, 0));
                w -= ov * f;
            }
        const double nrm = w.frobenius_norm();
        if (nrm > 1e-7) frame.push_back(w * cplx(1.0 / nrm));
    }
    if (static_cast<int>(frame.size()) != r)
        throw ConstructionFailed("admissible_basis: complement completion failed");

    // Coordinates of zeta in the complement, and the unitary taking the
    // constant vector c*(1,..,1) to them; its columns give xi_1..xi_{r-1}
    // with overlap <zeta, xi_k> = c = ||zeta||/sqrt(r-1), real positive.
    const int m = r - 1;
    ComplexMatrix z(m, 1);
    for (int a = 0; a < m; ++a) {
        cplx ov = 0.0;
        for (int i = 0; i < r; ++i) ov += best.zeta(i, 0) * std::conj(frame[a + 1](i, 0));
        z(a, 0) = ov;
    }
    const double c = best.zeta_norm / std::sqrt(static_cast<double>(m));
    ComplexMatrix ones(m, 1);
    for (int a = 0; a < m; ++a) ones(a, 0) = c;

    cplx mu_z, mu_1;
    const ComplexMatrix rz = reflection_to_e0(z, mu_z);
    const ComplexMatrix r1 = reflection_to_e0(ones, mu_1);
    ComplexMatrix d = ComplexMatrix::identity(m);
    d(0, 0) = mu_z / mu_1;
    const ComplexMatrix wmat = rz * d * r1; // unitary, wmat * (c*ones) = z

    ComplexMatrix out(r, r);
    out.set_column(0, best.xi0);
    for (int k = 0; k < m; ++k) {
        ComplexMatrix xi(r, 1);
        for (int a = 0; a < m; ++a) xi += wmat(a, k) * frame[a + 1];
        out.set_column(k + 1, xi);
    }
    return out;
}

WeylPair clock_shift(int r, const ComplexMatrix& basis) {
    if (r < 2) throw DimensionMismatch("clock_shift: need r >= 2");
    if (basis.rows() != r || basis.cols() != r)
        throw DimensionMismatch("clock_shift: basis shape mismatch");
    if ((basis.adjoint() * basis - ComplexMatrix::identity(r)).frobenius_norm() > 1e-12)
        throw NotOrthonormal("clock_shift: basis columns are not orthonormal");

    WeylPair pair;
    pair.r = r;
    pair.lambda = std::polar(1.0, 2.0 * kPi / r);
    pair.basis = basis;
    pair.u = ComplexMatrix(r, r);
    pair.v = ComplexMatrix(r, r);
    for (int k = 0; k < r; ++k) {
        const ComplexMatrix xk = basis.column(k);
        const ComplexMatrix xk1 = basis.column((k + 1) % r);
        pair.u += std::polar(1.0, -2.0 * kPi * k / r) * (xk * xk.adjoint());
        pair.v += xk1 * xk.adjoint();
    }
    return pair;
}

std::vector<ComplexMatrix> weyl_family(const WeylPair& pair) {
    const int r = pair.r;
    std::vector<ComplexMatrix> words;
    words.reserve(static_cast<size_t>(r) * r);
    std::vector<ComplexMatrix> upow(r), vpow(r);
    upow[0] = ComplexMatrix::identity(r);
    vpow[0] = ComplexMatrix::identity(r);
    for (int k = 1; k < r; ++k) {
        upow[k] = upow[k - 1] * pair.u;
        vpow[k] = vpow[k - 1] * pair.v;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) words.push_back(upow[i] * vpow[j]);
    return words;
}

bool check_irreducible_pair(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (!a.is_square() || !b.same_shape(a))
        throw DimensionMismatch("check_irreducible_pair: shape mismatch");
    const int r = a.rows();
    const ComplexMatrix ka = commutation_map(a);
    const ComplexMatrix kb = commutation_map(b);
    ComplexMatrix stacked(2 * r * r, r * r);
    for (int i = 0; i < r * r; ++i)
        for (int j = 0; j < r * r; ++j) {
            stacked(i, j) = ka(i, j);
            stacked(i + r * r, j) = kb(i, j);
        }
    return null_space(stacked, tol).size() == 1;
}

} // namespace absorbing
