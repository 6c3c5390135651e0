#pragma once

#include <vector>

#include "torsionlab/group.hpp"

namespace torsionlab {

/// Complex-valued class function, stored as one value per conjugacy class.
class ClassFunction {
public:
    ClassFunction() = default;
    ClassFunction(GroupPtr group, Vec values);
    static ClassFunction zero(GroupPtr group);
    static ClassFunction constant(GroupPtr group, cplx c);
    /// Samples f on class representatives.
    template <class F>
    static ClassFunction from_elements(GroupPtr group, F&& f)
    {
        Vec v(group->class_count());
        for (int c = 0; c < group->class_count(); ++c) v(c) = f(group->classes()[c].front());
        return ClassFunction(std::move(group), std::move(v));
    }

    const GroupPtr& group() const { return group_; }
    const Vec& values() const { return values_; }
    cplx on_class(int c) const { return values_(c); }
    cplx operator()(int element) const { return values_(group_->class_of(element)); }

    ClassFunction& operator+=(const ClassFunction& o);
    ClassFunction& operator-=(const ClassFunction& o);
    ClassFunction& operator*=(cplx c);
    friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
    friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
    friend ClassFunction operator*(cplx c, ClassFunction a) { return a *= c; }
    ClassFunction operator-() const { return cplx(-1.0) * *this; }

    /// Max |f - g| over classes.
    double distance(const ClassFunction& o) const;

private:
    GroupPtr group_;
    Vec values_;
};

/// Normalized Hermitian pairing (1/|G|) sum_g f(g) conj(h(g)).
cplx inner(const ClassFunction& f, const ClassFunction& h);

struct Irreducible {
    int dimension = 1;
    ClassFunction character;
};

/// Conjugacy classes as element index lists (class 0 contains the identity).
const std::vector<std::vector<int>>& conjugacy_classes(const GroupPtr& g);

/// Irreducible characters, trivial character first. Cached on the group.
std::vector<Irreducible> character_table(const GroupPtr& g);

/// f composed with the embedding: (C(iota) f)(gamma) = f(iota(gamma)).
ClassFunction restrict_class_function(const ClassFunction& f, const Embedding& iota);

/**
 * Canonical representative of the class of f modulo pullbacks from G/N.
 *
 * Pullbacks are the class functions constant on the preimages of the conjugacy
 * classes of G/N; the representative is the orthogonal complement projection
 * for the counting measure on elements.
 */
ClassFunction hat_project(const ClassFunction& f, const Subgroup& normal);

/// Number of conjugacy classes of G/N (the dimension of the pullback subspace).
int quotient_class_count(const Subgroup& normal);

}  // namespace torsionlab
