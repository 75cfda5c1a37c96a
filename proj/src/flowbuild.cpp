#include "absorbing/flowbuild.hpp"

#include <cmath>

#include "absorbing/eig.hpp"
#include "absorbing/weyl.hpp"

namespace absorbing {

IndexResult numerical_index(const LindbladGenerator& gen, double tol) {
    IndexResult res;
    res.space.basis_ops = gen.kraus;
    if (gen.kraus.empty()) return res;

    const int rank_ops = gram_rank(gen.kraus, tol);
    std::vector<ComplexMatrix> augmented = gen.kraus;
    augmented.push_back(ComplexMatrix::identity(gen.r));
    const int rank_aug = gram_rank(augmented, tol);

    res.space.dim = rank_ops;
    res.space.intersects_scalars = rank_aug == rank_ops;
    res.index = rank_aug - 1;
    return res;
}

std::vector<std::pair<int, int>> select_kraus(int r, int n) {
    if (r < 2) throw IndexOutOfRange("select_kraus: need r >= 2");
    if (n < 1 || n > r * r - 1)
        throw IndexOutOfRange("select_kraus: index must lie in [1, r^2 - 1]");
    std::vector<std::pair<int, int>> sel{{1, 0}};
    for (int i = 0; i < r && static_cast<int>(sel.size()) < n; ++i)
        for (int j = 0; j < r && static_cast<int>(sel.size()) < n; ++j) {
            if ((i == 0 && j == 0) || (i == 1 && j == 0)) continue;
            sel.emplace_back(i, j);
        }
    return sel;
}

PureFlowModel build_pure_model(const std::vector<double>& eigenvalue_list, int n,
                               std::uint64_t seed) {
    const int r = static_cast<int>(eigenvalue_list.size());

    PureFlowModel model;
    model.state = make_state(eigenvalue_list, ComplexMatrix::identity(r));
    model.kraus_selection = select_kraus(r, n);

    const double spread =
        (eigenvalue_list.front() - eigenvalue_list.back()) / eigenvalue_list.front();
    const bool tracial = spread <= kTracialSpreadTol;

    if (tracial) {
        model.branch = "tracial";
        // Fixed skew-adjoint, non-scalar drift seed: the commutator part
        // [t, .] costs nothing on the trace and makes the pair {t, u}
        // irreducible.
        ComplexMatrix t(r, r);
        t(0, 1) = 1.0;
        t(1, 0) = -1.0;
        const ComplexMatrix xi = admissible_basis(t, seed);
        const WeylPair pair = clock_shift(r, xi);
        const std::vector<ComplexMatrix> words = weyl_family(pair);

        model.gen.r = r;
        for (const auto& [i, j] : model.kraus_selection)
            model.gen.kraus.push_back(words[static_cast<size_t>(i) * r + j]);
        model.gen.drift = t - (0.5 * n) * ComplexMatrix::identity(r);
    } else {
        model.branch = "non-tracial";
        const ComplexMatrix xi = admissible_basis(model.state.density, seed);
        const WeylPair pair = clock_shift(r, xi);
        const std::vector<ComplexMatrix> words = weyl_family(pair);

        std::vector<ComplexMatrix> kraus;
        for (const auto& [i, j] : model.kraus_selection)
            kraus.push_back(words[static_cast<size_t>(i) * r + j]);
        model.gen = build_preserving(model.state, kraus);
    }

    model.certificate = purity_verdict(model.gen, model.state);
    if (!model.certificate.pure())
        throw ConstructionFailed("build_pure_model: certificate reports a non-pure flow");
    if (model.certificate.spectral_gap_estimate <= 0.0)
        throw ConstructionFailed("build_pure_model: no positive spectral gap");
    if (invariance_defect(model.gen, model.state) > 1e-9)
        throw ConstructionFailed("build_pure_model: state is not invariant");

    model.index = numerical_index(model.gen).index;
    if (model.index != n)
        throw ConstructionFailed("build_pure_model: numerical index disagrees with target");
    return model;
}

} // namespace absorbing
