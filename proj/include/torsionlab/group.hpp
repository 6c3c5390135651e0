#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "torsionlab/linalg.hpp"

namespace torsionlab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Raw character data cached on a group: one row per irreducible, one column per class.
struct CharacterData {
    std::vector<int> dims;
    Mat values;
};

/**
 * Finite group given by its multiplication table over element indices 0..order-1.
 *
 * Conjugacy classes are computed at construction; class 0 always contains the
 * identity. The character table is computed on first use and cached.
 */
class FiniteGroup {
public:
    /// Validates the table (Latin square, identity, associativity). Throws Error(Structural).
    static GroupPtr from_cayley(std::vector<std::vector<int>> table, std::string name = "");
    /// Closure of the given permutations (images of 0..k-1). Element 0 is the identity.
    static GroupPtr from_permutations(const std::vector<std::vector<int>>& generators, std::string name = "");
    static GroupPtr cyclic(int n);
    /// Dihedral group of order 2n: element i + n*f stands for r^i s^f.
    static GroupPtr dihedral(int n);
    /// Symmetric group on k <= 5 letters.
    static GroupPtr symmetric(int k);
    static GroupPtr trivial() { return cyclic(1); }

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }
    int power(int a, long long k) const;
    int element_order(int a) const;
    /// h g h^{-1}
    int conjugate(int g, int h) const { return mul(mul(h, g), inverse(h)); }

    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    int class_of(int g) const { return class_of_[g]; }
    bool is_abelian() const { return abelian_; }
    /// A generator when the group is cyclic, otherwise -1.
    int cyclic_generator() const { return cyclic_generator_; }
    const std::string& name() const { return name_; }

    const CharacterData& characters() const;

private:
    FiniteGroup() = default;
    static GroupPtr build(std::vector<int> flat, int n, std::string name, bool validate);
    void finalize();

    int order_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
    bool abelian_ = false;
    int cyclic_generator_ = -1;
    std::string name_;

    mutable std::once_flag chars_once_;
    mutable CharacterData chars_;
};

/// Injective homomorphism source -> target, stored as an element map.
struct Embedding {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> map;

    /// Validates the homomorphism and injectivity. Throws Error(Contract).
    static Embedding make(GroupPtr source, GroupPtr target, std::vector<int> map);
    static Embedding identity(GroupPtr g);
    /// Composition: first `inner`, then `outer`.
    static Embedding compose(const Embedding& outer, const Embedding& inner);
    /// Post-composition with conjugation by h in the target: gamma -> h map(gamma) h^{-1}.
    Embedding twisted(int h) const;
};

/// Subgroup of a parent group, closed under products and inverses.
class Subgroup {
public:
    /// Throws Error(Contract) unless `members` is closed and contains the identity.
    Subgroup(GroupPtr parent, std::vector<int> members);
    static Subgroup generated(GroupPtr parent, const std::vector<int>& generators);
    static Subgroup whole(GroupPtr parent);
    static Subgroup trivial(GroupPtr parent);

    const GroupPtr& parent() const { return parent_; }
    const std::vector<int>& members() const { return members_; }
    int order() const { return static_cast<int>(members_.size()); }
    bool contains(int g) const;
    bool is_normal() const;
    /// h S h^{-1}
    Subgroup conjugated(int h) const;

    /// The subgroup as a standalone group together with its inclusion into the parent.
    /// Element i of the standalone group is members()[i].
    const Embedding& inclusion() const { return inclusion_; }
    const GroupPtr& as_group() const { return inclusion_.source; }

private:
    GroupPtr parent_;
    std::vector<int> members_;
    std::vector<char> mask_;
    Embedding inclusion_;
};

/// All cyclic subgroups, one per distinct member set.
std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g);
/// All subgroups (brute force over generated subgroups); intended for small groups.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

}  // namespace torsionlab
