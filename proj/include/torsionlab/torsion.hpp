#pragma once

#include <vector>

#include "torsionlab/complex.hpp"

namespace torsionlab {

/**
 * X[[f]] for an equivariant isomorphism f : V -> W.
 *
 * [[f]](pi) = (1 / dim pi) log|det f restricted to the pi-isotypic parts|, and the
 * result is sum_pi [[f]](pi) chi_pi. Complex in general since characters are.
 * Throws Error(Singular) when f is not invertible.
 */
ClassFunction bracket_torsion(const Mat& f, const UnitaryRep& v, const UnitaryRep& w);

/// Degree -1 maps kappa^p : C^p -> C^{p-1}, stored for p = lo .. hi.
struct Contraction {
    int lo = 0;
    std::vector<Mat> kappa;
    const Mat& at(int p) const { return kappa[p - lo]; }
};

/// kappa = c^* Laplacian^{-1}. Throws NotAcyclicError with the Betti numbers.
Contraction hodge_contraction(const GammaComplex& c);
/// Max deviation of c kappa + kappa c from the identity.
double contraction_defect(const GammaComplex& c, const Contraction& k);

/// rho(C) = X[[c + kappa : C^ev -> C^odd]] with the Hodge contraction.
ClassFunction torsion_acyclic(const GammaComplex& c);
/// Same with a caller-supplied contraction (checked to kAlgTol).
ClassFunction torsion_acyclic(const GammaComplex& c, const Contraction& k);

/// cone(f)^n = C^n + D^{n-1}, differential ((c, 0), (f, -d)).
GammaComplex cone(const ChainMap& f);
/// t(f) = rho(cone f). Throws Error(NotQuasiIso) when the cone has cohomology.
ClassFunction torsion_of_map(const ChainMap& f);

/// Cohomology as a complex with zero differential, in coordinates orthonormal for mu.
GammaComplex cohomology_complex(const GammaComplex& c, const CohomologyMetric& mu);
/// Harmonic embedding i : H(C) -> C with i_* = id.
ChainMap harmonic_embedding(const GammaComplex& c, const CohomologyMetric& mu);

/// rho(C, mu) = -t(i). Throws Error(Contract) if mu is not invariant.
ClassFunction torsion_with_cohomology(const GammaComplex& c, const CohomologyMetric& mu);

/**
 * Representative of rho(C, mu) in C^(G) = C(G) / pullbacks from G/G0.
 * G0 must act trivially on cohomology (Error(Contract) otherwise).
 */
ClassFunction hat_torsion(const GammaComplex& c, const CohomologyMetric& mu, const Subgroup& gamma0);

}  // namespace torsionlab
