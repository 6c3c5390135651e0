#include "torsionlab/torsion.hpp"

#include <algorithm>
#include <cmath>

#include "torsionlab/error.hpp"

namespace torsionlab {

ClassFunction bracket_torsion(const Mat& f, const UnitaryRep& v, const UnitaryRep& w)
{
    require(v.group() == w.group(), ErrorKind::Contract, "bracket_torsion: modules over different groups");
    require(f.rows() == w.dim() && f.cols() == v.dim(), ErrorKind::Contract, "bracket_torsion: shape mismatch");
    require(v.dim() == w.dim(), ErrorKind::Singular, "bracket_torsion: dimensions differ, map cannot be invertible");
    const GroupPtr& g = v.group();
    ClassFunction out = ClassFunction::zero(g);
    if (v.dim() == 0) return out;

    // global singularity test against the full operator norm
    Eigen::JacobiSVD<Mat> svd(f);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) < kSingularRel * sv(0))
        fail(ErrorKind::Singular, "bracket_torsion: map is singular");

    if (g->order() == 1) return ClassFunction::constant(g, linalg::log_abs_det(f));

    for (const auto& pi : character_table(g)) {
        const Mat q = linalg::projector_range(isotypic_projector(v, pi));
        if (q.cols() == 0) continue;
        Eigen::JacobiSVD<Mat> s(f * q);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < s.singularValues().size(); ++i) acc += std::log(s.singularValues()(i));
        out += cplx(acc / pi.dimension) * pi.character;
    }
    return out;
}

Contraction hodge_contraction(const GammaComplex& c)
{
    const auto b = c.betti();
    if (std::any_of(b.begin(), b.end(), [](int x) { return x != 0; }))
        throw NotAcyclicError("complex is not acyclic", b);
    Contraction k;
    k.lo = c.lo();
    for (int p = c.lo(); p <= c.hi(); ++p) {
        const Mat down = c.differential(p - 1);
        if (c.dim(p) == 0 || down.cols() == 0) {
            k.kappa.push_back(Mat::Zero(c.dim(p - 1), c.dim(p)));
            continue;
        }
        // (Laplacian^{-1} c^{p-1})^* = (c^{p-1})^* Laplacian^{-1}
        Eigen::LDLT<Mat> ldlt(c.laplacian(p));
        k.kappa.push_back(ldlt.solve(down).adjoint());
    }
    return k;
}

double contraction_defect(const GammaComplex& c, const Contraction& k)
{
    double worst = 0.0;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        Mat lhs = Mat::Zero(c.dim(p), c.dim(p));
        if (p > c.lo()) lhs += c.differential(p - 1) * k.at(p);
        if (p < c.hi()) lhs += k.at(p + 1) * c.differential(p);
        worst = std::max(worst, linalg::max_abs(lhs - Mat::Identity(c.dim(p), c.dim(p))));
    }
    return worst;
}

namespace {

ClassFunction torsion_from(const GammaComplex& c, const Contraction& k)
{
    // offsets of each degree inside C^ev and C^odd
    std::vector<int> off(c.size());
    int ev = 0, od = 0;
    std::vector<UnitaryRep> ev_parts, od_parts;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        const bool even = (p % 2 == 0);
        off[p - c.lo()] = even ? ev : od;
        (even ? ev : od) += c.dim(p);
        (even ? ev_parts : od_parts).push_back(c.space(p));
    }
    const GroupPtr& g = c.group();
    if (ev != od) fail(ErrorKind::Singular, "c + kappa is not square: even and odd dimensions differ");
    Mat f = Mat::Zero(od, ev);
    for (int p = c.lo(); p <= c.hi(); ++p) {
        if (p % 2 != 0 || c.dim(p) == 0) continue;
        const int col = off[p - c.lo()];
        if (p < c.hi() && c.dim(p + 1) > 0) f.block(off[p + 1 - c.lo()], col, c.dim(p + 1), c.dim(p)) = c.differential(p);
        if (p > c.lo() && c.dim(p - 1) > 0) f.block(off[p - 1 - c.lo()], col, c.dim(p - 1), c.dim(p)) = k.at(p);
    }
    return bracket_torsion(f, UnitaryRep::direct_sum(ev_parts, g), UnitaryRep::direct_sum(od_parts, g));
}

}  // namespace

ClassFunction torsion_acyclic(const GammaComplex& c)
{
    return torsion_from(c, hodge_contraction(c));
}

ClassFunction torsion_acyclic(const GammaComplex& c, const Contraction& k)
{
    require(k.lo == c.lo() && static_cast<int>(k.kappa.size()) == c.size(), ErrorKind::Contract,
            "contraction does not match the complex");
    require(contraction_defect(c, k) <= 1e3 * kAlgTol, ErrorKind::Contract, "c kappa + kappa c != id");
    return torsion_from(c, k);
}

GammaComplex cone(const ChainMap& f)
{
    const GammaComplex& c = f.source;
    const GammaComplex& d = f.target;
    const GroupPtr& g = c.group();
    const int lo = std::min(c.lo(), d.lo() + 1);
    const int hi = std::max(c.hi(), d.hi() + 1);
    auto space = [&](const GammaComplex& x, int p) { return x.in_range(p) ? x.space(p) : UnitaryRep::trivial(g, 0); };
    std::vector<UnitaryRep> sp;
    std::vector<Mat> diff;
    for (int n = lo; n <= hi; ++n) {
        sp.push_back(UnitaryRep::direct_sum(space(c, n), space(d, n - 1)));
        if (n == hi) break;
        const int cn = c.dim(n), dn1 = d.dim(n - 1);
        const int cn1 = c.dim(n + 1), dn = d.dim(n);
        Mat m = Mat::Zero(cn1 + dn, cn + dn1);
        m.topLeftCorner(cn1, cn) = c.differential(n);
        m.bottomLeftCorner(dn, cn) = f.at(n);
        m.bottomRightCorner(dn, dn1) = -d.differential(n - 1);
        diff.push_back(std::move(m));
    }
    return GammaComplex(lo, std::move(sp), std::move(diff), false);
}

ClassFunction torsion_of_map(const ChainMap& f)
{
    const GammaComplex k = cone(f);
    if (!k.is_acyclic()) fail(ErrorKind::NotQuasiIso, "chain map is not a quasi-isomorphism (cone has cohomology)");
    return torsion_acyclic(k);
}

GammaComplex cohomology_complex(const GammaComplex& c, const CohomologyMetric& mu)
{
    require(static_cast<int>(mu.basis.size()) == c.size(), ErrorKind::Contract, "metric does not match the complex");
    const GroupPtr& g = c.group();
    std::vector<UnitaryRep> sp;
    std::vector<Mat> diff;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        const Mat x = mu.orthonormal_representatives(c, p);
        const int h = static_cast<int>(x.cols());
        std::vector<Mat> ops(g->order());
        if (h > 0) {
            // coordinates of g.x in the columns of x
            Eigen::ColPivHouseholderQR<Mat> qr(x);
            for (int e = 0; e < g->order(); ++e) ops[e] = qr.solve(c.space(p)(e) * x);
        } else {
            for (auto& o : ops) o = Mat(0, 0);
        }
        sp.push_back(UnitaryRep::trusted(g, std::move(ops)));
        if (p < c.hi()) diff.push_back(Mat::Zero(mu.basis[p + 1 - c.lo()].cols(), h));
    }
    return GammaComplex(c.lo(), std::move(sp), std::move(diff), false);
}

ChainMap harmonic_embedding(const GammaComplex& c, const CohomologyMetric& mu)
{
    GammaComplex h = cohomology_complex(c, mu);
    std::vector<Mat> comps;
    for (int p = c.lo(); p <= c.hi(); ++p) comps.push_back(mu.orthonormal_representatives(c, p));
    return ChainMap(std::move(h), c, c.lo(), std::move(comps), false);
}

ClassFunction torsion_with_cohomology(const GammaComplex& c, const CohomologyMetric& mu)
{
    require(static_cast<int>(mu.basis.size()) == c.size(), ErrorKind::Contract, "metric does not match the complex");
    double scale = 1.0;
    for (const auto& gm : mu.gram) scale = std::max(scale, linalg::max_abs(gm));
    require(mu.invariance_defect(c) <= 1e3 * kAlgTol * scale, ErrorKind::Contract, "cohomology metric is not invariant");
    return -torsion_of_map(harmonic_embedding(c, mu));
}

ClassFunction hat_torsion(const GammaComplex& c, const CohomologyMetric& mu, const Subgroup& gamma0)
{
    require(gamma0.parent() == c.group(), ErrorKind::Contract, "hat_torsion: subgroup of another group");
    for (int i = 0; i < c.size(); ++i) {
        const Mat& b = mu.basis[i];
        if (b.cols() == 0) continue;
        for (int x : gamma0.members()) {
            const Mat rh = b.adjoint() * c.space(c.lo() + i)(x) * b;
            require(linalg::max_abs(rh - Mat::Identity(b.cols(), b.cols())) <= 1e3 * kAlgTol, ErrorKind::Contract,
                    "hat_torsion: normal subgroup acts nontrivially on cohomology");
        }
    }
    return hat_project(torsion_with_cohomology(c, mu), gamma0);
}

}  // namespace torsionlab
