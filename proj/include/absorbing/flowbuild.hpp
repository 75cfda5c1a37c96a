#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absorbing/analysis.hpp"
#include "absorbing/generator.hpp"
#include "absorbing/state.hpp"

namespace absorbing {

// Span of the kraus operators with its Hilbert-Schmidt dimension and
// whether it meets the scalars.
struct MetricOperatorSpace {
    std::vector<ComplexMatrix> basis_ops;
    int dim = 0;
    bool intersects_scalars = false;
};

struct IndexResult {
    int index = 0;
    MetricOperatorSpace space;
};

// dim span(kraus + identity) - 1.
IndexResult numerical_index(const LindbladGenerator& gen, double tol = 1e-9);

// Word exponents used for n kraus operators: (1,0) first, then the
// remaining (i,j) != (0,0) lexicographically.
std::vector<std::pair<int, int>> select_kraus(int r, int n);

struct PureFlowModel {
    LindbladGenerator gen;
    FaithfulState state;
    PurityCertificate certificate;
    int index = 0;
    std::string branch;  // "tracial" or "non-tracial"
    std::vector<std::pair<int, int>> kraus_selection;
};

// Pure state-preserving flow with prescribed state spectrum and index n,
// driven by clock-shift words in a basis adapted to the density (or, for
// the tracial branch, to a fixed skew-adjoint operator). Certificate
// failures throw ConstructionFailed.
PureFlowModel build_pure_model(const std::vector<double>& eigenvalue_list, int n,
                               std::uint64_t seed = 0);

// Relative spread under which an eigenvalue list counts as tracial.
inline constexpr double kTracialSpreadTol = 1e-10;

} // namespace absorbing
