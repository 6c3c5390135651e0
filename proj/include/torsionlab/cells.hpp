#pragma once

#include <string>
#include <vector>

#include "torsionlab/complex.hpp"

namespace torsionlab {

/// One entry of the cellular coboundary: (delta f)(upper) += sign * transport * f(lower).
struct Incidence {
    int lower = 0;
    int upper = 0;
    int sign = 1;
};

/**
 * Finite G-CW complex given combinatorially.
 *
 * perm[g][c] is the image cell of c under g and orient[g][c] = +-1 records
 * whether g preserves the orientation of c.  The filtration index of a cell
 * defaults to its dimension (skeletal filtration).
 */
struct CellComplex {
    GroupPtr group;
    std::vector<int> dims;
    std::vector<std::vector<int>> perm;
    std::vector<std::vector<int>> orient;
    std::vector<Incidence> incidences;
    std::vector<int> filtration;

    int cell_count() const { return static_cast<int>(dims.size()); }
    int max_dim() const;
    int min_dim() const;
    /// Cells of dimension p in index order.
    std::vector<int> cells_of_dim(int p) const;
    /// Checks the permutation action is a group action and incidences are compatible. Throws Error(Structural).
    void validate() const;
    /// Orbits of cells under the group, each listed from its smallest cell.
    std::vector<std::vector<int>> orbits() const;
    /// Stabilizer of a cell (as a set of elements; orientation not considered).
    Subgroup isotropy(int cell) const;
    /// Euler characteristic of the underlying space.
    int euler_characteristic() const;
};

/// Flat unitary bundle on a CellComplex together with its lift of the group action.
struct LocalSystem {
    int fiber = 1;
    std::vector<Mat> transport;             // per incidence
    std::vector<std::vector<Mat>> action;   // action[g][c] : fiber over c -> fiber over g c

    /// Constant sheaf with fiber V and the group acting through V.
    static LocalSystem constant(const CellComplex& x, const UnitaryRep& v);
    static LocalSystem trivial(const CellComplex& x, int m = 1);
};

/// Space of cochains in degree p is the sum over p-cells (index order) of C^m.
GammaComplex cochain_complex(const CellComplex& x, const LocalSystem& f);

/// rho(X, F) relative to mu (computed through torsion_with_cohomology).
ClassFunction torsion_cw(const CellComplex& x, const LocalSystem& f, const CohomologyMetric& mu);
/// Same with the standard harmonic metric.
ClassFunction torsion_cw(const CellComplex& x, const LocalSystem& f);

/// A cell complex together with its local system.
struct CWModel {
    CellComplex cells;
    LocalSystem sheaf;
    GammaComplex complex() const { return cochain_complex(cells, sheaf); }
};

/// 0-dimensional model of G/H with the sheaf induced from rho_h.
CWModel build_orbit(const GroupPtr& g, const Subgroup& h, const UnitaryRep& rho_h);

/// Order of the cyclic group generated by the circle rotation: n * order(lambda^n U^{-k}).
/// Throws Error(Unsupported) when that operator has no finite order below `max_order`.
int circle_group_order(int n, int k, const Mat& u, const Mat& lambda, int max_order = 4096);

/**
 * Circle with n vertices and n edges over Z_N, N = circle_group_order(n, k, U, lambda).
 * The generator shifts cells by k and acts on fibers by lambda (times U^{-1} when the
 * index wraps).  The closing edge carries the holonomy U.
 */
CWModel build_circle(int n, int k, const Mat& u, const Mat& lambda);
/// Same over a given cyclic group (element j acting as t^j); its order must be a
/// multiple of circle_group_order.
CWModel build_circle_over(const GroupPtr& zn, int n, int k, const Mat& u, const Mat& lambda);

/// Dihedral group D_n acting on a 2n-gon (reflections fix vertices), constant sheaf.
CWModel build_dihedral_polygon(int n);

CWModel disjoint_union(const CWModel& a, const CWModel& b);
/// Cells E x D^n: dimensions shift by n, the group acts trivially on the disk.
CWModel product_with_disk(const CWModel& a, int n);
/// Product cell structure with diagonal action and tensor product sheaf.
CWModel product(const CWModel& a, const CWModel& b);
/// Join with diagonal action; both sheaves must be constant and the fiber is their tensor product.
CWModel join(const CWModel& a, const CWModel& b);

/// Pullback of the action along an embedding into the model's group.
CWModel restrict_model(const CWModel& x, const Embedding& iota);

/// de Rham style metric: the constant class in H^0 and each top class dual to one
/// top cell declared of norm 1; requires a trivial one-dimensional fiber.
CohomologyMetric integral_metric(const CWModel& x);

}  // namespace torsionlab
