#pragma once

#include <vector>

#include "torsionlab/character.hpp"

namespace torsionlab {

/// Unitary representation of a finite group on C^m, one operator per element.
class UnitaryRep {
public:
    UnitaryRep() = default;
    /// Checks unitarity and the homomorphism law to kAlgTol. Throws Error(Contract).
    UnitaryRep(GroupPtr group, std::vector<Mat> ops);

    /// Skips the O(|G|^2 m^3) checks; for callers that validated the data at a coarser level.
    static UnitaryRep trusted(GroupPtr group, std::vector<Mat> ops);
    static UnitaryRep trivial(GroupPtr group, int dim = 1);
    static UnitaryRep regular(GroupPtr group);
    /// One-dimensional representation from a linear character.
    static UnitaryRep from_character(const Irreducible& chi);
    /// Permutation representation on G/H (cosets ordered by smallest element).
    static UnitaryRep on_cosets(const Subgroup& h);
    /// Induction from a representation of the subgroup (given on h.as_group()).
    static UnitaryRep induced(const Subgroup& h, const UnitaryRep& rep);
    static UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);
    static UnitaryRep direct_sum(const std::vector<UnitaryRep>& parts, GroupPtr group);

    /// u rho(g) u^*
    UnitaryRep conjugated(const Mat& u) const;
    /// Pullback along an embedding into this representation's group.
    UnitaryRep restricted(const Embedding& iota) const;

    const GroupPtr& group() const { return group_; }
    int dim() const { return dim_; }
    const Mat& operator()(int g) const { return ops_[g]; }
    const std::vector<Mat>& ops() const { return ops_; }
    ClassFunction character() const;

private:
    GroupPtr group_;
    int dim_ = 0;
    std::vector<Mat> ops_;
};

/// P = (dim pi / |G|) sum_g conj(chi_pi(g)) rho(g).
Mat isotypic_projector(const UnitaryRep& v, const Irreducible& pi);

/// Group average (1/|G|) sum_g rho_to(g) x rho_from(g)^{-1}; an equivariant map from -> to.
Mat equivariant_average(const UnitaryRep& from, const UnitaryRep& to, const Mat& x);

/// Max over g of ||rho_to(g) x - x rho_from(g)||.
double equivariance_defect(const UnitaryRep& from, const UnitaryRep& to, const Mat& x);

}  // namespace torsionlab
