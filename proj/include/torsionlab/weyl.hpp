#pragma once

#include <string>
#include <vector>

#include "torsionlab/torus.hpp"

namespace torsionlab {

/// G/K families. SOEven(m, p) = SO(2m)/SO(2p-1) x SO(2m-2p+1); SU3SO3 = SU(3)/SO(3);
/// Listed = a named pair known only through its ranks.
struct SymmetricSpaceFamily {
    enum class Tag { SOEven, SU3SO3, Listed };
    Tag tag = Tag::SOEven;
    int m = 2;
    int p = 1;
    std::string label;
    int rank_g = 0;
    int rank_k = 0;

    static SymmetricSpaceFamily so_even(int m, int p);
    static SymmetricSpaceFamily su3_so3();
    /// Looks up a tabulated family by name, e.g. "SU(4)" or "SU(8)/Sp(4)".
    static SymmetricSpaceFamily listed(const std::string& name);
    static std::vector<std::string> listed_names();

    int torus_rank() const;
    bool rank_condition() const { return rank_g == rank_k + 1; }
    std::string name() const;
};

/// Signed permutation: (w t)_i = sign[i] * t_{perm[i]}.
struct WeylElement {
    std::vector<int> perm;
    std::vector<int> sign;
};

struct WeylData {
    std::vector<WeylElement> w_g;
    long long w_k_order = 1;
};

/// Throws Domain for bad parameters and Unsupported for listed families.
WeylData weyl_group(const SymmetricSpaceFamily& f);

/// t^w in the torus coordinates of the family.
TorusElement weyl_act(const SymmetricSpaceFamily& f, const WeylElement& w, const TorusElement& t);
/// alpha(t) in R/Z as a reduced fraction.
std::pair<long long, long long> alpha(const SymmetricSpaceFamily& f, const TorusElement& t);

/// psi(1, 0, tau): the constant-sheaf circle value.
double psi_constant_sheaf(long long num, long long den);

/// (1/#W_K) sum_{w in W_G} psi(alpha(t^w)); exactly 0 when rank G != rank K + 1.
double symmetric_space_torsion(const SymmetricSpaceFamily& f, const TorusElement& t);

}  // namespace torsionlab
