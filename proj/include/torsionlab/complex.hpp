#pragma once

#include <vector>

#include "torsionlab/rep.hpp"

namespace torsionlab {

/**
 * Finite cochain complex of unitary G-modules in degrees lo .. lo + size - 1.
 *
 * `differential(p)` maps degree p to degree p + 1; outside the stored range the
 * spaces are zero.
 */
class GammaComplex {
public:
    GammaComplex() = default;
    /// Checks d^2 = 0 and equivariance to kAlgTol. Throws Error(Contract).
    GammaComplex(int lo, std::vector<UnitaryRep> spaces, std::vector<Mat> differentials, bool validate = true);

    const GroupPtr& group() const { return spaces_.front().group(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(spaces_.size()) - 1; }
    int size() const { return static_cast<int>(spaces_.size()); }
    bool in_range(int p) const { return p >= lo() && p <= hi(); }
    int dim(int p) const { return in_range(p) ? space(p).dim() : 0; }
    int total_dim() const;
    const UnitaryRep& space(int p) const { return spaces_[p - lo_]; }
    /// d^p : C^p -> C^{p+1}; a (dim(p+1) x dim(p)) matrix, possibly empty.
    Mat differential(int p) const;

    /// C[k]^n = C^{n+k}; the differential is multiplied by (-1)^k.
    GammaComplex shifted(int k) const;
    /// Pullback along an embedding into this complex's group.
    GammaComplex restricted(const Embedding& iota) const;
    /// Degreewise conjugation x -> u_p x by equivariant unitaries.
    GammaComplex conjugated(const std::vector<Mat>& u) const;

    /// Harmonic space ker(Laplacian) in degree p (orthonormal columns).
    Mat harmonic_basis(int p) const;
    /// Hodge Laplacian d d^* + d^* d in degree p.
    Mat laplacian(int p) const;
    std::vector<int> betti() const;
    bool is_acyclic() const;

    static GammaComplex direct_sum(const GammaComplex& a, const GammaComplex& b);

private:
    int lo_ = 0;
    std::vector<UnitaryRep> spaces_;
    std::vector<Mat> d_;  // d_[i] : spaces_[i] -> spaces_[i+1]
};

/// Components f^p : C^p -> D^p; missing degrees are zero.
struct ChainMap {
    GammaComplex source;
    GammaComplex target;
    std::vector<Mat> components;  // indexed from lo = min(source.lo, target.lo)
    int lo = 0;

    ChainMap(GammaComplex source, GammaComplex target, int lo, std::vector<Mat> components, bool validate = true);
    /// Component in degree p, with zero blocks outside the stored range.
    Mat at(int p) const;
    static ChainMap identity(const GammaComplex& c);
    /// g o f
    static ChainMap compose(const ChainMap& g, const ChainMap& f);
};

/**
 * Hermitian inner product on the cohomology of a complex, given on harmonic
 * representatives: in degree p, <basis x, basis y> = y^* gram x.
 */
struct CohomologyMetric {
    std::vector<Mat> basis;  // indexed from the complex's lo
    std::vector<Mat> gram;

    /// Harmonic representatives are isometric to cohomology.
    static CohomologyMetric standard(const GammaComplex& c);
    /// Declares the classes of the given cocycles (columns, per degree) orthonormal.
    static CohomologyMetric from_cocycles(const GammaComplex& c, const std::vector<Mat>& cocycles);
    /// Multiply the metric in degree p by s^2.
    CohomologyMetric scaled(const GammaComplex& c, int p, double s) const;

    /// Basis of harmonic representatives orthonormal for this metric, in degree p.
    Mat orthonormal_representatives(const GammaComplex& c, int p) const;
    /// Metric on GammaComplex::direct_sum(a, b) (also the layout of a disjoint union's cochains).
    static CohomologyMetric direct_sum(const GammaComplex& a, const CohomologyMetric& ma, const GammaComplex& b,
                                       const CohomologyMetric& mb);

    /// Max defect of G-invariance over all degrees.
    double invariance_defect(const GammaComplex& c) const;
};

}  // namespace torsionlab
