#include "torsionlab/cells.hpp"

#include <algorithm>
#include <numeric>

#include "torsionlab/error.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

int CellComplex::max_dim() const
{
    return dims.empty() ? 0 : *std::max_element(dims.begin(), dims.end());
}

int CellComplex::min_dim() const
{
    return dims.empty() ? 0 : *std::min_element(dims.begin(), dims.end());
}

std::vector<int> CellComplex::cells_of_dim(int p) const
{
    std::vector<int> out;
    for (int c = 0; c < cell_count(); ++c)
        if (dims[c] == p) out.push_back(c);
    return out;
}

void CellComplex::validate() const
{
    require(group != nullptr, ErrorKind::Structural, "cell complex has no group");
    const int n = cell_count();
    const int order = group->order();
    require(n > 0, ErrorKind::Structural, "cell complex has no cells");
    require(static_cast<int>(perm.size()) == order && static_cast<int>(orient.size()) == order, ErrorKind::Structural,
            "cell complex needs a permutation and orientation row per group element");
    require(static_cast<int>(filtration.size()) == n, ErrorKind::Structural, "filtration index missing for some cells");
    for (int g = 0; g < order; ++g) {
        require(static_cast<int>(perm[g].size()) == n && static_cast<int>(orient[g].size()) == n, ErrorKind::Structural,
                "permutation row has the wrong length");
        std::vector<char> hit(n, 0);
        for (int c = 0; c < n; ++c) {
            const int img = perm[g][c];
            require(img >= 0 && img < n && !hit[img], ErrorKind::Structural, "group element does not permute the cells");
            hit[img] = 1;
            require(dims[img] == dims[c], ErrorKind::Structural, "group element changes a cell's dimension");
            require(filtration[img] == filtration[c], ErrorKind::Structural, "group element changes a filtration index");
            require(orient[g][c] == 1 || orient[g][c] == -1, ErrorKind::Structural, "orientation must be +-1");
        }
    }
    for (int c = 0; c < n; ++c)
        require(perm[group->identity()][c] == c && orient[group->identity()][c] == 1, ErrorKind::Structural,
                "identity does not fix every cell");
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h) {
            const int gh = group->mul(g, h);
            for (int c = 0; c < n; ++c) {
                require(perm[gh][c] == perm[g][perm[h][c]], ErrorKind::Structural, "cell permutations are not an action");
                require(orient[gh][c] == orient[g][perm[h][c]] * orient[h][c], ErrorKind::Structural,
                        "orientation signs are not a cocycle");
            }
        }
    for (const auto& inc : incidences) {
        require(inc.lower >= 0 && inc.lower < n && inc.upper >= 0 && inc.upper < n, ErrorKind::Structural,
                "incidence refers to a missing cell");
        require(dims[inc.upper] == dims[inc.lower] + 1, ErrorKind::Structural, "incidence between non-adjacent dimensions");
    }
}

std::vector<std::vector<int>> CellComplex::orbits() const
{
    std::vector<std::vector<int>> out;
    std::vector<char> seen(cell_count(), 0);
    for (int c = 0; c < cell_count(); ++c) {
        if (seen[c]) continue;
        std::vector<int> orb;
        for (int g = 0; g < group->order(); ++g) {
            const int x = perm[g][c];
            if (!seen[x]) {
                seen[x] = 1;
                orb.push_back(x);
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

Subgroup CellComplex::isotropy(int cell) const
{
    std::vector<int> members;
    for (int g = 0; g < group->order(); ++g)
        if (perm[g][cell] == cell) members.push_back(g);
    return Subgroup(group, std::move(members));
}

int CellComplex::euler_characteristic() const
{
    int chi = 0;
    for (int d : dims) chi += (d % 2 == 0) ? 1 : -1;
    return chi;
}

LocalSystem LocalSystem::constant(const CellComplex& x, const UnitaryRep& v)
{
    require(v.group() == x.group, ErrorKind::Contract, "constant sheaf: representation of another group");
    LocalSystem f;
    f.fiber = v.dim();
    f.transport.assign(x.incidences.size(), Mat::Identity(v.dim(), v.dim()));
    f.action.resize(x.group->order());
    for (int g = 0; g < x.group->order(); ++g) f.action[g].assign(x.cell_count(), v(g));
    return f;
}

LocalSystem LocalSystem::trivial(const CellComplex& x, int m)
{
    return constant(x, UnitaryRep::trivial(x.group, m));
}

GammaComplex cochain_complex(const CellComplex& x, const LocalSystem& f)
{
    x.validate();
    const int m = f.fiber;
    const int order = x.group->order();
    require(f.transport.size() == x.incidences.size(), ErrorKind::Structural, "one transport per incidence expected");
    require(static_cast<int>(f.action.size()) == order, ErrorKind::Structural, "sheaf action needs a row per element");
    for (const auto& t : f.transport)
        require(t.rows() == m && t.cols() == m && linalg::is_unitary(t), ErrorKind::Contract, "transport is not a unitary on the fiber");
    for (int g = 0; g < order; ++g) {
        require(static_cast<int>(f.action[g].size()) == x.cell_count(), ErrorKind::Structural, "sheaf action row too short");
        for (const auto& a : f.action[g])
            require(a.rows() == m && a.cols() == m && linalg::is_unitary(a), ErrorKind::Contract, "fiber action is not unitary");
    }
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h) {
            const int gh = x.group->mul(g, h);
            for (int c = 0; c < x.cell_count(); ++c)
                require(linalg::max_abs(f.action[gh][c] - f.action[g][x.perm[h][c]] * f.action[h][c]) <= kAlgTol,
                        ErrorKind::Contract, "fiber action is not multiplicative at cell " + std::to_string(c));
        }

    const int lo = x.min_dim();
    const int hi = x.max_dim();
    std::vector<int> pos(x.cell_count());
    std::vector<int> count(hi - lo + 1, 0);
    for (int c = 0; c < x.cell_count(); ++c) pos[c] = count[x.dims[c] - lo]++;

    std::vector<UnitaryRep> spaces;
    for (int p = lo; p <= hi; ++p) {
        const int n = count[p - lo] * m;
        std::vector<Mat> ops(order, Mat::Zero(n, n));
        for (int g = 0; g < order; ++g)
            for (int c = 0; c < x.cell_count(); ++c) {
                if (x.dims[c] != p) continue;
                ops[g].block(pos[x.perm[g][c]] * m, pos[c] * m, m, m) = double(x.orient[g][c]) * f.action[g][c];
            }
        spaces.push_back(UnitaryRep::trusted(x.group, std::move(ops)));
    }
    std::vector<Mat> diff;
    for (int p = lo; p < hi; ++p) diff.push_back(Mat::Zero(count[p + 1 - lo] * m, count[p - lo] * m));
    for (size_t i = 0; i < x.incidences.size(); ++i) {
        const auto& inc = x.incidences[i];
        const int p = x.dims[inc.lower];
        diff[p - lo].block(pos[inc.upper] * m, pos[inc.lower] * m, m, m) += double(inc.sign) * f.transport[i];
    }

    for (size_t i = 0; i + 1 < diff.size(); ++i)
        require(linalg::max_abs(diff[i + 1] * diff[i]) <= kAlgTol, ErrorKind::Contract,
                "coboundary does not square to zero in degree " + std::to_string(lo + static_cast<int>(i)));
    // equivariance, reporting the worst cell
    for (size_t i = 0; i < diff.size(); ++i)
        for (int g = 0; g < order; ++g) {
            const Mat r = spaces[i + 1](g) * diff[i] - diff[i] * spaces[i](g);
            if (linalg::max_abs(r) <= kAlgTol) continue;
            Eigen::Index col = 0;
            r.cwiseAbs().colwise().maxCoeff().maxCoeff(&col);
            int bad = -1;
            for (int c = 0; c < x.cell_count(); ++c)
                if (x.dims[c] == lo + static_cast<int>(i) && pos[c] == col / m) bad = c;
            fail(ErrorKind::Contract, "coboundary is not equivariant at cell " + std::to_string(bad) + " (element " +
                                          std::to_string(g) + ")");
        }
    return GammaComplex(lo, std::move(spaces), std::move(diff), false);
}

ClassFunction torsion_cw(const CellComplex& x, const LocalSystem& f, const CohomologyMetric& mu)
{
    return torsion_with_cohomology(cochain_complex(x, f), mu);
}

ClassFunction torsion_cw(const CellComplex& x, const LocalSystem& f)
{
    const GammaComplex c = cochain_complex(x, f);
    return torsion_with_cohomology(c, CohomologyMetric::standard(c));
}

CohomologyMetric integral_metric(const CWModel& x)
{
    require(x.sheaf.fiber == 1, ErrorKind::Contract, "integral metric needs a one-dimensional fiber");
    const GammaComplex c = x.complex();
    CohomologyMetric std_metric = CohomologyMetric::standard(c);
    std::vector<Mat> cocycles;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        const int h = static_cast<int>(std_metric.basis[p - c.lo()].cols());
        if (h == 0) {
            cocycles.push_back(Mat(c.dim(p), 0));
            continue;
        }
        require(h == 1, ErrorKind::Unsupported, "integral metric only for one-dimensional cohomology groups");
        Mat z;
        if (p == c.lo()) {
            z = Mat::Ones(c.dim(p), 1);
        } else if (p == c.hi()) {
            z = Mat::Zero(c.dim(p), 1);
            z(0, 0) = 1.0;
        } else {
            z = std_metric.basis[p - c.lo()];
        }
        cocycles.push_back(z);
    }
    return CohomologyMetric::from_cocycles(c, cocycles);
}

}  // namespace torsionlab
