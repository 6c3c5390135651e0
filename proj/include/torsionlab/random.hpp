#pragma once

#include <random>
#include <vector>

#include "torsionlab/spectral.hpp"

namespace torsionlab {

/// Matrix irreducibles of g, in character_table order. Computed once per group.
const std::vector<UnitaryRep>& irreducible_reps(const GroupPtr& g);

namespace random {

/// Direct sum of random irreducibles with total dimension in [1, max_dim], conjugated by a Haar unitary.
UnitaryRep rep(const GroupPtr& g, int max_dim, std::mt19937_64& rng);
/// Equivariant map from -> to with Gaussian entries before averaging.
Mat equivariant(const UnitaryRep& from, const UnitaryRep& to, std::mt19937_64& rng);
/// Irreducibles on which the normal subgroup n acts trivially (pullbacks from G/N).
std::vector<UnitaryRep> pulled_back_irreducibles(const Subgroup& n);
/// Invertible equivariant self-map (identity plus a small random equivariant part).
Mat equivariant_invertible(const UnitaryRep& v, std::mt19937_64& rng);

struct ComplexOptions {
    int lo = 0;
    int degrees = 3;
    int max_dim = 16;        ///< bound on the total dimension
    int harmonic_pieces = 0; ///< pieces with zero differential (cohomology)
    /// Irreducibles the cohomology pieces are drawn from; empty means all of them.
    std::vector<UnitaryRep> harmonic_pool;
};

/// Sum of elementary pieces V -> V, then a non-unitary equivariant change of basis
/// and a unitary scramble of every degree.
GammaComplex complex(const GroupPtr& g, const ComplexOptions& opt, std::mt19937_64& rng);

/// G-invariant inner product on the cohomology of c, not the standard one in general.
CohomologyMetric invariant_metric(const GammaComplex& c, std::mt19937_64& rng);

struct FilteredOptions {
    int lo = 0;
    int degrees = 3;
    int levels = 3;          ///< filtration length (F_0 .. F_{levels-1})
    int max_dim = 20;
    int harmonic_pieces = 1;
};

/// Random filtered complex: pieces placed at filtration levels, then a filtration-preserving
/// equivariant change of basis and a unitary scramble.
FilteredComplex filtered(const GroupPtr& g, const FilteredOptions& opt, std::mt19937_64& rng);

}  // namespace random
}  // namespace torsionlab
