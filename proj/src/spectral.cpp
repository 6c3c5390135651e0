#include "torsionlab/spectral.hpp"

#include <algorithm>

#include "torsionlab/error.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

FilteredComplex::FilteredComplex(GammaComplex c, std::vector<std::vector<Mat>> levels) : c_(std::move(c))
{
    require(!levels.empty(), ErrorKind::Contract, "filtration needs at least one level");
    const int nd = c_.size();
    const int len = static_cast<int>(levels.size());
    std::vector<std::vector<Mat>> q(len, std::vector<Mat>(nd));
    for (int p = 0; p < len; ++p) {
        require(static_cast<int>(levels[p].size()) == nd, ErrorKind::Contract, "filtration level needs a basis per degree");
        for (int i = 0; i < nd; ++i) {
            require(levels[p][i].rows() == c_.dim(c_.lo() + i), ErrorKind::Contract, "filtration basis has the wrong height");
            q[p][i] = linalg::range_basis(levels[p][i]);
        }
    }
    for (int i = 0; i < nd; ++i)
        require(q[0][i].cols() == c_.dim(c_.lo() + i), ErrorKind::Contract, "F_0 must be the whole complex");
    auto inside = [](const Mat& sub, const Mat& q) {
        if (sub.cols() == 0) return true;
        if (q.cols() == 0) return linalg::max_abs(sub) <= kAlgTol;
        return linalg::max_abs(sub - q * (q.adjoint() * sub)) <= 1e3 * kAlgTol * std::max(1.0, linalg::max_abs(sub));
    };
    for (int p = 0; p < len; ++p)
        for (int i = 0; i < nd; ++i) {
            const int n = c_.lo() + i;
            if (p + 1 < len) require(inside(q[p + 1][i], q[p][i]), ErrorKind::Contract, "filtration is not decreasing");
            if (i + 1 < nd)
                require(inside(c_.differential(n) * q[p][i], q[p][i + 1]), ErrorKind::Contract,
                        "differential does not preserve F_" + std::to_string(p) + " in degree " + std::to_string(n));
            for (int g = 0; g < c_.group()->order(); ++g)
                require(inside(c_.space(n)(g) * q[p][i], q[p][i]), ErrorKind::Contract,
                        "F_" + std::to_string(p) + " is not invariant under the group");
        }
    graded_.assign(len, std::vector<Mat>(nd));
    for (int p = 0; p < len; ++p)
        for (int i = 0; i < nd; ++i)
            graded_[p][i] = (p + 1 < len) ? linalg::complement_in(q[p][i], q[p + 1][i]) : q[p][i];
}

FilteredComplex FilteredComplex::trivial(const GammaComplex& c)
{
    std::vector<Mat> whole;
    for (int n = c.lo(); n <= c.hi(); ++n) whole.push_back(Mat::Identity(c.dim(n), c.dim(n)));
    return FilteredComplex(c, {whole});
}

FilteredComplex FilteredComplex::from_cells(const CWModel& x)
{
    const GammaComplex c = x.complex();
    const auto& cells = x.cells;
    const int m = x.sheaf.fiber;
    const int fmin = *std::min_element(cells.filtration.begin(), cells.filtration.end());
    const int fmax = *std::max_element(cells.filtration.begin(), cells.filtration.end());
    std::vector<std::vector<Mat>> levels;
    for (int p = 0; p <= fmax - fmin; ++p) {
        std::vector<Mat> per_deg;
        for (int n = c.lo(); n <= c.hi(); ++n) {
            const auto ids = cells.cells_of_dim(n);
            std::vector<int> keep;
            for (size_t j = 0; j < ids.size(); ++j)
                if (cells.filtration[ids[j]] - fmin >= p) keep.push_back(static_cast<int>(j));
            Mat b = Mat::Zero(c.dim(n), static_cast<Eigen::Index>(keep.size()) * m);
            for (size_t t = 0; t < keep.size(); ++t)
                b.block(keep[t] * m, static_cast<Eigen::Index>(t) * m, m, m) = Mat::Identity(m, m);
            per_deg.push_back(std::move(b));
        }
        levels.push_back(std::move(per_deg));
    }
    return FilteredComplex(c, std::move(levels));
}

namespace {

/// Restriction of a representation to an invariant subspace with orthonormal basis q.
UnitaryRep on_subspace(const GroupPtr& g, const std::vector<Mat>& act, const Mat& q)
{
    std::vector<Mat> ops(g->order());
    for (int e = 0; e < g->order(); ++e) ops[e] = q.adjoint() * act[e] * q;
    return UnitaryRep::trusted(g, std::move(ops));
}

std::vector<Mat> ops_on_subspace(const GroupPtr& g, const std::vector<Mat>& act, const Mat& q, const Mat& left)
{
    std::vector<Mat> ops(g->order());
    for (int e = 0; e < g->order(); ++e) ops[e] = left * act[e] * q;
    return ops;
}

Mat min_norm_solve(const Mat& a, const Mat& b)
{
    if (a.cols() == 0) return Mat::Zero(0, b.cols());
    if (a.rows() == 0) return Mat::Zero(a.cols(), b.cols());
    // the threshold must be in place before compute(): the factorization depends on the rank
    Eigen::CompleteOrthogonalDecomposition<Mat> cod;
    cod.setThreshold(kRankRel);
    cod.compute(a);
    return cod.solve(b);
}

/// Everything expressed in the filtration-adapted orthonormal coordinates.
struct Adapted {
    GroupPtr group;
    int lo = 0, hi = 0, len = 0;
    std::vector<std::vector<int>> off;  // off[i][p], with off[i][len] = dim
    std::vector<Mat> d;                 // d[i] : degree lo+i -> lo+i+1
    std::vector<Mat> u;                 // ambient basis change per degree
    std::vector<std::vector<Mat>> act;  // act[i][g]

    int begin(int n, int p) const { return off[n - lo][std::clamp(p, 0, len)]; }
    int width(int n, int a, int b) const { return begin(n, b) - begin(n, a); }
    /// Block of d^n with rows levels [ra, rb) of degree n+1 and columns levels [ca, cb) of degree n.
    Mat dblock(int n, int ra, int rb, int ca, int cb) const
    {
        const int rows = (n + 1 >= lo && n + 1 <= hi) ? width(n + 1, ra, rb) : 0;
        const int cols = (n >= lo && n <= hi) ? width(n, ca, cb) : 0;
        if (n < lo || n >= hi) return Mat::Zero(rows, cols);
        return d[n - lo].block(begin(n + 1, ra), begin(n, ca), width(n + 1, ra, rb), width(n, ca, cb));
    }
};

Adapted adapt(const FilteredComplex& fc)
{
    const GammaComplex& c = fc.complex();
    Adapted a;
    a.group = c.group();
    a.lo = c.lo();
    a.hi = c.hi();
    a.len = fc.length();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Mat u(c.dim(n), c.dim(n));
        std::vector<int> off{0};
        for (int p = 0; p < a.len; ++p) {
            const Mat& g = fc.graded_basis(p, n);
            u.middleCols(off.back(), g.cols()) = g;
            off.push_back(off.back() + static_cast<int>(g.cols()));
        }
        a.off.push_back(off);
        a.u.push_back(u);
        std::vector<Mat> act(a.group->order());
        for (int e = 0; e < a.group->order(); ++e) act[e] = u.adjoint() * c.space(n)(e) * u;
        a.act.push_back(std::move(act));
    }
    for (int n = c.lo(); n < c.hi(); ++n) a.d.push_back(a.u[n + 1 - a.lo].adjoint() * c.differential(n) * a.u[n - a.lo]);
    return a;
}

/// E_1^{p,n} in nu-orthonormal coordinates.
struct E1 {
    Mat h;                  // representatives in level-p coordinates
    Mat k;                  // class coordinates of a level-p cocycle
    std::vector<Mat> act;   // action on E_1 coordinates
    int dim() const { return static_cast<int>(h.cols()); }
};

}  // namespace

GammaComplex FilteredComplex::graded_piece(int p) const
{
    std::vector<UnitaryRep> sp;
    std::vector<Mat> d;
    const GroupPtr& g = c_.group();
    for (int n = c_.lo(); n <= c_.hi(); ++n) {
        const Mat& q = graded_basis(p, n);
        std::vector<Mat> ops(g->order());
        for (int e = 0; e < g->order(); ++e) ops[e] = q.adjoint() * c_.space(n)(e) * q;
        sp.push_back(UnitaryRep::trusted(g, std::move(ops)));
        if (n < c_.hi()) d.push_back(graded_basis(p, n + 1).adjoint() * c_.differential(n) * q);
    }
    return GammaComplex(c_.lo(), std::move(sp), std::move(d), false);
}

SpectralReport spectral_decomposition(const FilteredComplex& fc, const CohomologyMetric& mu,
                                      const std::vector<CohomologyMetric>& nu)
{
    require(static_cast<int>(nu.size()) == fc.length(), ErrorKind::Contract, "one metric per graded piece expected");
    const GammaComplex& c = fc.complex();
    const GroupPtr& grp = c.group();
    const Adapted a = adapt(fc);
    const int len = a.len, lo = a.lo, hi = a.hi, nd = hi - lo + 1;

    SpectralReport rep;
    rep.cell_term = ClassFunction::zero(grp);
    rep.ss_term = ClassFunction::zero(grp);
    rep.psi_term = ClassFunction::zero(grp);

    // E_1 and the cell term
    std::vector<std::vector<E1>> e1(len, std::vector<E1>(nd));
    for (int p = 0; p < len; ++p) {
        const GammaComplex piece = fc.graded_piece(p);
        rep.cell_term += torsion_with_cohomology(piece, nu[p]);
        for (int n = lo; n <= hi; ++n) {
            E1& e = e1[p][n - lo];
            const Mat& b = nu[p].basis[n - lo];
            e.h = nu[p].orthonormal_representatives(piece, n);
            e.k = e.h.cols() == 0 ? Mat(0, b.rows()) : Mat((b.adjoint() * e.h).inverse() * b.adjoint());
            e.act.resize(grp->order());
            for (int g = 0; g < grp->order(); ++g) e.act[g] = e.k * piece.space(n)(g) * e.h;
        }
    }

    auto z_r = [&](int p, int n, int r) -> Mat {
        const E1& e = e1[p][n - lo];
        if (e.dim() == 0) return Mat(0, 0);
        const int top = std::min(p + r, len);
        if (n == hi) return Mat::Identity(e.dim(), e.dim());
        const Mat dx = a.dblock(n, p, top, p, p + 1) * e.h;
        const Mat dy = a.dblock(n, p, top, p + 1, top);
        Mat m(dx.rows(), dx.cols() + dy.cols());
        m << dx, dy;
        const Mat ker = linalg::kernel_basis(m);
        return linalg::range_basis(ker.topRows(e.dim()));
    };
    auto b_r = [&](int p, int n, int r) -> Mat {
        const E1& e = e1[p][n - lo];
        const int from = std::max(0, p - r + 1);
        if (e.dim() == 0 || from >= p || n == lo) return Mat(e.dim(), 0);
        const Mat w = linalg::kernel_basis(a.dblock(n - 1, from, p, from, p));
        if (w.cols() == 0) return Mat(e.dim(), 0);
        const Mat v = a.dblock(n - 1, p, p + 1, from, p) * w;
        return linalg::range_basis(e.k * v);
    };

    // pages: bases of E_r^{p,n} inside E_1 coordinates
    auto page = [&](int r) {
        std::vector<std::vector<Mat>> s(len, std::vector<Mat>(nd));
        for (int p = 0; p < len; ++p)
            for (int n = lo; n <= hi; ++n) s[p][n - lo] = linalg::complement_in(z_r(p, n, r), b_r(p, n, r));
        return s;
    };
    auto record = [&](const std::vector<std::vector<Mat>>& s) {
        std::vector<std::vector<int>> d(len, std::vector<int>(nd));
        for (int p = 0; p < len; ++p)
            for (int i = 0; i < nd; ++i) d[p][i] = static_cast<int>(s[p][i].cols());
        rep.dims.push_back(std::move(d));
    };

    for (int r = 1; r < len; ++r) {
        const auto s = page(r);
        record(s);
        // d_r : E_r^{p,n} -> E_r^{p+r,n+1}
        auto d_r = [&](int p, int n) -> Mat {
            const Mat& src = s[p][n - lo];
            const int tp = p + r;
            const int rows = (tp < len && n < hi) ? static_cast<int>(s[tp][n + 1 - lo].cols()) : 0;
            if (rows == 0 || src.cols() == 0) return Mat::Zero(rows, src.cols());
            const E1& e = e1[p][n - lo];
            const Mat x = e.h * src;
            const Mat y = -min_norm_solve(a.dblock(n, p, tp, p + 1, tp), a.dblock(n, p, tp, p, p + 1) * x);
            const Mat v = a.dblock(n, tp, tp + 1, p, p + 1) * x + a.dblock(n, tp, tp + 1, p + 1, tp) * y;
            return s[tp][n + 1 - lo].adjoint() * (e1[tp][n + 1 - lo].k * v);
        };
        for (int p0 = 0; p0 < len; ++p0)
            for (int k0 = lo; k0 <= hi; ++k0) {
                // chain E_r^{p0 + j r, k0 + j}, j = 0, 1, ..., started where no predecessor exists
                if (p0 >= r && k0 > lo) continue;
                std::vector<UnitaryRep> sp;
                std::vector<Mat> diff;
                bool any = false;
                for (int j = 0; p0 + j * r < len && k0 + j <= hi; ++j) {
                    const int p = p0 + j * r, n = k0 + j;
                    const Mat& q = s[p][n - lo];
                    any = any || q.cols() > 0;
                    sp.push_back(on_subspace(grp, e1[p][n - lo].act, q));
                    if (p + r < len && n < hi) diff.push_back(d_r(p, n));
                }
                if (!any) continue;
                GammaComplex chain(k0, std::move(sp), std::move(diff), false);
                rep.ss_term += torsion_with_cohomology(chain, CohomologyMetric::standard(chain));
            }
    }
    rep.pages = std::max(0, len - 1);

    // E_infinity = Z_inf - B_inf with B_inf = B_{p+1}
    std::vector<std::vector<Mat>> einf(len, std::vector<Mat>(nd));
    for (int p = 0; p < len; ++p)
        for (int n = lo; n <= hi; ++n) einf[p][n - lo] = linalg::complement_in(z_r(p, n, len), b_r(p, n, p + 1));
    record(einf);

    // psi^{p,n} : F^p / F^{p+1} -> E_infinity^{p,n}
    for (int n = lo; n <= hi; ++n) {
        const Mat& bc = mu.basis[n - lo];
        if (bc.cols() == 0) continue;
        const Mat hc = mu.orthonormal_representatives(c, n);
        const Mat kc = (bc.adjoint() * hc).inverse() * bc.adjoint() * a.u[n - lo];
        std::vector<Mat> act_c(grp->order());
        for (int g = 0; g < grp->order(); ++g) act_c[g] = kc * a.act[n - lo][g] * (a.u[n - lo].adjoint() * hc);

        std::vector<Mat> zp(len + 1), fp(len + 1);
        for (int p = 0; p <= len; ++p) {
            const int dim = a.width(n, 0, len);
            const int w = a.width(n, p, len);
            Mat z = Mat::Zero(dim, 0);
            if (w > 0) {
                const Mat dcols = n < hi ? a.dblock(n, 0, len, p, len) : Mat(0, w);
                const Mat ker = dcols.rows() == 0 ? Mat(Mat::Identity(w, w)) : linalg::kernel_basis(dcols);
                z = Mat::Zero(dim, ker.cols());
                z.bottomRows(w) = ker;
            }
            zp[p] = z;
            fp[p] = linalg::range_basis(kc * z);
        }
        for (int p = 0; p < len; ++p) {
            const Mat q = linalg::complement_in(fp[p], fp[p + 1]);
            const Mat& tgt = einf[p][n - lo];
            require(q.cols() == tgt.cols(), ErrorKind::Precision,
                    "spectral sequence: dim F^p/F^{p+1} != dim E_inf in degree " + std::to_string(n));
            if (q.cols() == 0) continue;
            const Mat coeff = min_norm_solve(kc * zp[p], q);
            const Mat z = zp[p] * coeff;
            const Mat v = z.middleRows(a.begin(n, p), a.width(n, p, p + 1));
            const Mat psi = tgt.adjoint() * (e1[p][n - lo].k * v);
            const UnitaryRep src = UnitaryRep::trusted(grp, ops_on_subspace(grp, act_c, q, q.adjoint()));
            const UnitaryRep dst = on_subspace(grp, e1[p][n - lo].act, tgt);
            const ClassFunction t = bracket_torsion(psi, src, dst);
            rep.psi_term += (n % 2 == 0) ? t : -t;
        }
    }

    rep.total = torsion_with_cohomology(c, mu);
    rep.rhs = rep.cell_term + rep.ss_term - rep.psi_term;
    rep.residual = rep.total.distance(rep.rhs);
    return rep;
}

SpectralReport spectral_decomposition(const FilteredComplex& fc)
{
    std::vector<CohomologyMetric> nu;
    for (int p = 0; p < fc.length(); ++p) nu.push_back(CohomologyMetric::standard(fc.graded_piece(p)));
    return spectral_decomposition(fc, CohomologyMetric::standard(fc.complex()), nu);
}

}  // namespace torsionlab
