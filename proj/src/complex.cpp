#include "torsionlab/complex.hpp"

#include <algorithm>

#include "torsionlab/error.hpp"

namespace torsionlab {

GammaComplex::GammaComplex(int lo, std::vector<UnitaryRep> spaces, std::vector<Mat> differentials, bool validate)
    : lo_(lo), spaces_(std::move(spaces)), d_(std::move(differentials))
{
    require(!spaces_.empty(), ErrorKind::Contract, "complex needs at least one degree");
    require(d_.size() + 1 == spaces_.size(), ErrorKind::Contract, "complex needs one differential between consecutive degrees");
    const GroupPtr& g = spaces_.front().group();
    for (const auto& s : spaces_) require(s.group() == g, ErrorKind::Contract, "complex spaces over different groups");
    for (size_t i = 0; i < d_.size(); ++i)
        require(d_[i].rows() == spaces_[i + 1].dim() && d_[i].cols() == spaces_[i].dim(), ErrorKind::Contract,
                "differential in degree " + std::to_string(lo_ + static_cast<int>(i)) + " has the wrong shape");
    if (!validate) return;
    for (size_t i = 0; i + 1 < d_.size(); ++i) {
        const double scale = std::max(1.0, linalg::max_abs(d_[i + 1]) * linalg::max_abs(d_[i]));
        require(linalg::max_abs(d_[i + 1] * d_[i]) <= kAlgTol * scale, ErrorKind::Contract,
                "d^2 != 0 in degree " + std::to_string(lo_ + static_cast<int>(i)));
    }
    for (size_t i = 0; i < d_.size(); ++i)
        require(equivariance_defect(spaces_[i], spaces_[i + 1], d_[i]) <= kAlgTol * std::max(1.0, linalg::max_abs(d_[i])),
                ErrorKind::Contract, "differential in degree " + std::to_string(lo_ + static_cast<int>(i)) + " is not equivariant");
}

int GammaComplex::total_dim() const
{
    int n = 0;
    for (const auto& s : spaces_) n += s.dim();
    return n;
}

Mat GammaComplex::differential(int p) const
{
    if (p >= lo() && p < hi()) return d_[p - lo_];
    return Mat::Zero(dim(p + 1), dim(p));
}

GammaComplex GammaComplex::shifted(int k) const
{
    GammaComplex out = *this;
    out.lo_ = lo_ - k;
    if (k % 2 != 0)
        for (auto& d : out.d_) d = -d;
    return out;
}

GammaComplex GammaComplex::restricted(const Embedding& iota) const
{
    std::vector<UnitaryRep> sp;
    sp.reserve(spaces_.size());
    for (const auto& s : spaces_) sp.push_back(s.restricted(iota));
    return GammaComplex(lo_, std::move(sp), d_, false);
}

GammaComplex GammaComplex::conjugated(const std::vector<Mat>& u) const
{
    require(u.size() == spaces_.size(), ErrorKind::Contract, "conjugation needs one unitary per degree");
    std::vector<UnitaryRep> sp;
    for (size_t i = 0; i < spaces_.size(); ++i) {
        require(equivariance_defect(spaces_[i], spaces_[i], u[i]) <= kAlgTol, ErrorKind::Contract,
                "conjugating unitary is not equivariant");
        sp.push_back(spaces_[i].conjugated(u[i]));
    }
    std::vector<Mat> d(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) d[i] = u[i + 1] * d_[i] * u[i].adjoint();
    return GammaComplex(lo_, std::move(sp), std::move(d), false);
}

Mat GammaComplex::laplacian(int p) const
{
    const Mat up = differential(p);
    const Mat down = differential(p - 1);
    return up.adjoint() * up + down * down.adjoint();
}

Mat GammaComplex::harmonic_basis(int p) const
{
    const int n = dim(p);
    if (n == 0) return Mat(0, 0);
    const Mat up = differential(p);
    const Mat down = differential(p - 1);
    Mat stacked(up.rows() + down.cols(), n);
    stacked << up, down.adjoint();
    return linalg::kernel_basis(stacked);
}

std::vector<int> GammaComplex::betti() const
{
    std::vector<int> b;
    for (int p = lo(); p <= hi(); ++p) b.push_back(static_cast<int>(harmonic_basis(p).cols()));
    return b;
}

bool GammaComplex::is_acyclic() const
{
    for (int b : betti())
        if (b != 0) return false;
    return true;
}

GammaComplex GammaComplex::direct_sum(const GammaComplex& a, const GammaComplex& b)
{
    require(a.group() == b.group(), ErrorKind::Contract, "direct sum of complexes over different groups");
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    const GroupPtr& g = a.group();
    auto space = [&](const GammaComplex& c, int p) { return c.in_range(p) ? c.space(p) : UnitaryRep::trivial(g, 0); };
    std::vector<UnitaryRep> sp;
    std::vector<Mat> d;
    for (int p = lo; p <= hi; ++p) {
        sp.push_back(UnitaryRep::direct_sum(space(a, p), space(b, p)));
        if (p < hi) d.push_back(linalg::direct_sum(a.differential(p), b.differential(p)));
    }
    return GammaComplex(lo, std::move(sp), std::move(d), false);
}

ChainMap::ChainMap(GammaComplex src, GammaComplex tgt, int lo_, std::vector<Mat> comps, bool validate)
    : source(std::move(src)), target(std::move(tgt)), components(std::move(comps)), lo(lo_)
{
    require(source.group() == target.group(), ErrorKind::Contract, "chain map between complexes over different groups");
    for (size_t i = 0; i < components.size(); ++i) {
        const int p = lo + static_cast<int>(i);
        require(components[i].rows() == target.dim(p) && components[i].cols() == source.dim(p), ErrorKind::Contract,
                "chain map component in degree " + std::to_string(p) + " has the wrong shape");
    }
    if (!validate) return;
    const int a = std::min(source.lo(), target.lo()) - 1;
    const int b = std::max(source.hi(), target.hi());
    for (int p = a; p <= b; ++p) {
        const Mat lhs = target.differential(p) * at(p);
        const Mat rhs = at(p + 1) * source.differential(p);
        const double scale = std::max(1.0, std::max(linalg::max_abs(lhs), linalg::max_abs(rhs)));
        require(linalg::max_abs(lhs - rhs) <= kAlgTol * scale, ErrorKind::Contract,
                "chain map does not commute with differentials in degree " + std::to_string(p));
        if (source.dim(p) > 0 && target.dim(p) > 0)
            require(equivariance_defect(source.space(p), target.space(p), at(p)) <= kAlgTol * scale, ErrorKind::Contract,
                    "chain map component in degree " + std::to_string(p) + " is not equivariant");
    }
}

Mat ChainMap::at(int p) const
{
    const int i = p - lo;
    if (i >= 0 && i < static_cast<int>(components.size())) return components[i];
    return Mat::Zero(target.dim(p), source.dim(p));
}

ChainMap ChainMap::identity(const GammaComplex& c)
{
    std::vector<Mat> comps;
    for (int p = c.lo(); p <= c.hi(); ++p) comps.push_back(Mat::Identity(c.dim(p), c.dim(p)));
    return ChainMap(c, c, c.lo(), std::move(comps), false);
}

ChainMap ChainMap::compose(const ChainMap& g, const ChainMap& f)
{
    const int lo = std::min({f.source.lo(), f.target.lo(), g.target.lo()});
    const int hi = std::max({f.source.hi(), f.target.hi(), g.target.hi()});
    std::vector<Mat> comps;
    for (int p = lo; p <= hi; ++p) comps.push_back(g.at(p) * f.at(p));
    return ChainMap(f.source, g.target, lo, std::move(comps), false);
}

CohomologyMetric CohomologyMetric::standard(const GammaComplex& c)
{
    CohomologyMetric m;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        m.basis.push_back(c.harmonic_basis(p));
        const auto h = m.basis.back().cols();
        m.gram.push_back(Mat::Identity(h, h));
    }
    return m;
}

CohomologyMetric CohomologyMetric::from_cocycles(const GammaComplex& c, const std::vector<Mat>& cocycles)
{
    require(static_cast<int>(cocycles.size()) == c.size(), ErrorKind::Contract, "one cocycle block per degree expected");
    CohomologyMetric m = standard(c);
    for (int i = 0; i < c.size(); ++i) {
        const int p = c.lo() + i;
        const Mat& b = m.basis[i];
        const Mat& z = cocycles[i];
        require(z.rows() == c.dim(p) && z.cols() == b.cols(), ErrorKind::Contract,
                "degree " + std::to_string(p) + ": need one cocycle per cohomology dimension");
        require(linalg::max_abs(c.differential(p) * z) <= kAlgTol * std::max(1.0, linalg::max_abs(z)), ErrorKind::Contract,
                "degree " + std::to_string(p) + ": given vectors are not cocycles");
        if (b.cols() == 0) continue;
        // harmonic part of each cocycle is its class
        const Mat a = b.adjoint() * z;
        Eigen::FullPivLU<Mat> lu(a);
        require(lu.isInvertible(), ErrorKind::Contract, "degree " + std::to_string(p) + ": cocycle classes are dependent");
        const Mat ainv = lu.inverse();
        m.gram[i] = ainv.adjoint() * ainv;
    }
    return m;
}

CohomologyMetric CohomologyMetric::scaled(const GammaComplex& c, int p, double s) const
{
    require(c.in_range(p), ErrorKind::Contract, "scaled: degree out of range");
    require(s > 0, ErrorKind::Domain, "scaled: factor must be positive");
    CohomologyMetric m = *this;
    m.gram[p - c.lo()] *= s * s;
    return m;
}

CohomologyMetric CohomologyMetric::direct_sum(const GammaComplex& a, const CohomologyMetric& ma, const GammaComplex& b,
                                              const CohomologyMetric& mb)
{
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    auto pick = [](const GammaComplex& c, const std::vector<Mat>& v, int p) { return c.in_range(p) ? v[p - c.lo()] : Mat(0, 0); };
    CohomologyMetric m;
    for (int p = lo; p <= hi; ++p) {
        Mat ba = pick(a, ma.basis, p), bb = pick(b, mb.basis, p);
        if (ba.rows() != a.dim(p)) ba = Mat(a.dim(p), 0);
        if (bb.rows() != b.dim(p)) bb = Mat(b.dim(p), 0);
        m.basis.push_back(linalg::direct_sum(ba, bb));
        m.gram.push_back(linalg::direct_sum(pick(a, ma.gram, p), pick(b, mb.gram, p)));
    }
    return m;
}

Mat CohomologyMetric::orthonormal_representatives(const GammaComplex& c, int p) const
{
    const int i = p - c.lo();
    const Mat& b = basis[i];
    if (b.cols() == 0) return b;
    Eigen::LLT<Mat> llt(0.5 * (gram[i] + gram[i].adjoint()));
    require(llt.info() == Eigen::Success, ErrorKind::Contract, "cohomology metric is not positive definite");
    // columns B L^{-*} are orthonormal for gram = L L^*
    const Mat linv_adj = llt.matrixU().solve(Mat::Identity(b.cols(), b.cols()));
    return b * linv_adj;
}

double CohomologyMetric::invariance_defect(const GammaComplex& c) const
{
    double worst = 0.0;
    for (int i = 0; i < c.size(); ++i) {
        const Mat& b = basis[i];
        if (b.cols() == 0) continue;
        const UnitaryRep& v = c.space(c.lo() + i);
        for (int g = 0; g < c.group()->order(); ++g) {
            const Mat rh = b.adjoint() * v(g) * b;
            worst = std::max(worst, linalg::max_abs(rh.adjoint() * gram[i] * rh - gram[i]));
        }
    }
    return worst;
}

}  // namespace torsionlab
