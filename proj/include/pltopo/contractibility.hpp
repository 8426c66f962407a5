#pragma once

#include "pltopo/complex.hpp"
#include "pltopo/evaluator.hpp"
#include "pltopo/smith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pltopo {

/// Integral reduced homology.
struct HomologyProfile {
    /// b̃_0 … b̃_dim.
    std::vector<long> betti;
    /// Torsion coefficients (> 1) of H̃_k, per degree.
    std::vector<std::vector<BigInt>> torsion;

    bool trivial() const;
    std::string describe() const;
};

/// Boundary matrix ∂_k: C_k → C_{k-1}, rows and columns in the complex's
/// simplex order. ∂_0 is the augmentation C_0 → ℤ.
IntMatrix<BigInt> boundary_matrix(const SimplicialComplex& k, int dim);

/// Reduced homology over ℤ. An empty complex yields an empty profile.
HomologyProfile homology(const SimplicialComplex& k);

struct ElementaryCollapse {
    Simplex free_face;
    Simplex coface;
};

struct CollapseSequence {
    std::vector<ElementaryCollapse> steps;
    bool full = false;
    /// The surviving vertex of a full collapse.
    VertexIndex basepoint = -1;
    /// Simplices left when stuck.
    std::vector<Simplex> core;
};

/// Removes the lexicographically least free face until none is left.
/// Throws EmptyInput for an empty complex.
CollapseSequence greedy_collapse(const SimplicialComplex& k);

enum class VerdictKind { Contractible, NotContractible, Unknown };

const char* to_string(VerdictKind kind);

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::string reason;
    HomologyProfile homology;
    CollapseSequence collapse;
};

Verdict contractibility_verdict(const SimplicialComplex& k);

/// C: K × I → K with C(·,0) = id and C(·,1) the basepoint; step i of the
/// sequence runs on [i/N, (i+1)/N]. Throws NotContractible for a partial
/// sequence.
Homotopy contraction_from_collapse(const ComplexPtr& k, const CollapseSequence& seq);

/// One elementary collapse as a deformation, s ∈ [0, 1].
Point collapse_push(const Point& x, const ElementaryCollapse& step, double s);

}  // namespace pltopo
