#include "torsionlab/random.hpp"

#include <map>
#include <mutex>

#include "torsionlab/error.hpp"

namespace torsionlab {

namespace {

/// Splits an isotypic block of the regular representation with a generic commutant element.
UnitaryRep split_irreducible(const UnitaryRep& reg, const Irreducible& pi, std::mt19937_64& rng)
{
    const Mat q = linalg::projector_range(isotypic_projector(reg, pi));
    std::vector<Mat> ops;
    for (const Mat& m : reg.ops()) ops.push_back(q.adjoint() * m * q);
    const UnitaryRep block = UnitaryRep::trusted(reg.group(), ops);
    if (block.dim() == pi.dimension) return block;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat h = equivariant_average(block, block, linalg::random_gaussian(block.dim(), block.dim(), rng));
        h = (h + h.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        const auto& ev = es.eigenvalues();
        // eigenvalues come in runs of length dim pi; take the lowest run if it is separated
        const double spread = ev(ev.size() - 1) - ev(0);
        if (spread <= 0) continue;
        if (ev(pi.dimension) - ev(pi.dimension - 1) < 1e-4 * spread) continue;
        const Mat v = es.eigenvectors().leftCols(pi.dimension);
        std::vector<Mat> sub;
        for (const Mat& m : block.ops()) sub.push_back(v.adjoint() * m * v);
        return UnitaryRep(reg.group(), sub);
    }
    fail(ErrorKind::Precision, "could not split an isotypic component");
}

}  // namespace

const std::vector<UnitaryRep>& irreducible_reps(const GroupPtr& g)
{
    static std::mutex mtx;
    static std::map<const FiniteGroup*, std::pair<GroupPtr, std::vector<UnitaryRep>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.get());
    if (it != cache.end() && it->second.first == g) return it->second.second;
    std::mt19937_64 rng(0x1bad5eed);
    const UnitaryRep reg = UnitaryRep::regular(g);
    std::vector<UnitaryRep> out;
    for (const auto& pi : character_table(g))
        out.push_back(pi.dimension == 1 ? UnitaryRep::from_character(pi) : split_irreducible(reg, pi, rng));
    return (cache[g.get()] = {g, std::move(out)}).second;
}

namespace random {

UnitaryRep rep(const GroupPtr& g, int max_dim, std::mt19937_64& rng)
{
    require(max_dim >= 1, ErrorKind::Contract, "random rep needs max_dim >= 1");
    const auto& irr = irreducible_reps(g);
    std::uniform_int_distribution<size_t> pick(0, irr.size() - 1);
    std::uniform_int_distribution<int> target_d(1, max_dim);
    const int target = target_d(rng);
    std::vector<UnitaryRep> parts;
    int dim = 0;
    for (int tries = 0; tries < 64 && dim < target; ++tries) {
        const UnitaryRep& r = irr[pick(rng)];
        if (dim + r.dim() > target) continue;
        parts.push_back(r);
        dim += r.dim();
    }
    if (parts.empty()) parts.push_back(irr[0]);
    const UnitaryRep sum = UnitaryRep::direct_sum(parts, g);
    return sum.conjugated(linalg::random_unitary(sum.dim(), rng));
}

Mat equivariant(const UnitaryRep& from, const UnitaryRep& to, std::mt19937_64& rng)
{
    return equivariant_average(from, to, linalg::random_gaussian(to.dim(), from.dim(), rng));
}

std::vector<UnitaryRep> pulled_back_irreducibles(const Subgroup& n)
{
    require(n.is_normal(), ErrorKind::Contract, "pullbacks need a normal subgroup");
    std::vector<UnitaryRep> out;
    for (const UnitaryRep& r : irreducible_reps(n.parent())) {
        bool trivial = true;
        for (int x : n.members()) trivial = trivial && linalg::max_abs(r(x) - Mat::Identity(r.dim(), r.dim())) <= kAlgTol;
        if (trivial) out.push_back(r);
    }
    return out;
}

Mat equivariant_invertible(const UnitaryRep& v, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> scale(0.3, 2.0);
    Mat m = scale(rng) * Mat::Identity(v.dim(), v.dim()) + 0.5 * equivariant(v, v, rng);
    return m;
}

namespace {

/// Rep scaled by an equivariant change of basis b: a one-dimensional rep keeps its operators.
struct Builder {
    GroupPtr g;
    int lo, degrees;
    std::vector<std::vector<UnitaryRep>> pieces;   // per degree
    std::vector<std::vector<int>> level;           // per degree, per piece
    // differential entries: (degree, source piece, target piece, map)
    struct Arrow { int n, from, to; Mat f; };
    std::vector<Arrow> arrows;

    int add(int n, const UnitaryRep& v, int lvl)
    {
        pieces[n - lo].push_back(v);
        level[n - lo].push_back(lvl);
        return static_cast<int>(pieces[n - lo].size()) - 1;
    }

    std::vector<int> offsets(int n) const
    {
        std::vector<int> off{0};
        for (const auto& v : pieces[n - lo]) off.push_back(off.back() + v.dim());
        return off;
    }

    UnitaryRep space(int n) const
    {
        if (pieces[n - lo].empty()) return UnitaryRep::trivial(g, 0);
        return UnitaryRep::direct_sum(pieces[n - lo], g);
    }

    std::vector<Mat> differentials() const
    {
        std::vector<Mat> d;
        for (int n = lo; n < lo + degrees - 1; ++n) d.push_back(Mat::Zero(space(n + 1).dim(), space(n).dim()));
        for (const auto& a : arrows) {
            const auto os = offsets(a.n), ot = offsets(a.n + 1);
            d[a.n - lo].block(ot[a.to], os[a.from], a.f.rows(), a.f.cols()) = a.f;
        }
        return d;
    }
};

Builder make_builder(const GroupPtr& g, int lo, int degrees)
{
    require(degrees >= 2, ErrorKind::Contract, "random complex needs at least two degrees");
    Builder b{g, lo, degrees, {}, {}, {}};
    b.pieces.resize(degrees);
    b.level.resize(degrees);
    return b;
}

/// Adds elementary pieces and cohomology pieces until the budget is used.
void populate(Builder& b, int max_dim, int harmonic, int levels, std::mt19937_64& rng,
              const std::vector<UnitaryRep>& pool = {})
{
    std::uniform_int_distribution<int> deg(b.lo, b.lo + b.degrees - 2);
    std::uniform_int_distribution<int> any_deg(b.lo, b.lo + b.degrees - 1);
    std::uniform_int_distribution<int> lvl(0, levels - 1);
    int used = 0;
    for (int h = 0; h < harmonic; ++h) {
        UnitaryRep v;
        if (pool.empty()) {
            v = rep(b.g, std::max(1, std::min(3, max_dim - used)), rng);
        } else {
            std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
            const UnitaryRep& r = pool[pick(rng)];
            v = r.conjugated(linalg::random_unitary(r.dim(), rng));
        }
        if (used + v.dim() > max_dim) break;
        b.add(any_deg(rng), v, lvl(rng));
        used += v.dim();
    }
    for (int tries = 0; tries < 32; ++tries) {
        const int room = (max_dim - used) / 2;
        if (room < 1) break;
        const UnitaryRep v = rep(b.g, std::min(room, 4), rng);
        const int n = deg(rng);
        int la = lvl(rng), lb = lvl(rng);
        if (lb < la) std::swap(la, lb);
        const int i = b.add(n, v, la);
        const int j = b.add(n + 1, v, lb);
        b.arrows.push_back({n, i, j, equivariant_invertible(v, rng)});
        used += 2 * v.dim();
    }
}

}  // namespace

GammaComplex complex(const GroupPtr& g, const ComplexOptions& opt, std::mt19937_64& rng)
{
    Builder b = make_builder(g, opt.lo, opt.degrees);
    populate(b, opt.max_dim, opt.harmonic_pieces, 1, rng, opt.harmonic_pool);
    std::vector<UnitaryRep> spaces;
    std::vector<Mat> basis, inv;
    for (int n = b.lo; n < b.lo + b.degrees; ++n) {
        const UnitaryRep v = b.space(n);
        const Mat u = linalg::random_unitary(v.dim(), rng);
        const Mat m = u * equivariant_invertible(v, rng);
        spaces.push_back(v.conjugated(u));
        basis.push_back(m);
        inv.push_back(m.inverse());
    }
    std::vector<Mat> d = b.differentials();
    for (size_t i = 0; i < d.size(); ++i) d[i] = basis[i + 1] * d[i] * inv[i];
    return GammaComplex(b.lo, std::move(spaces), std::move(d));
}

CohomologyMetric invariant_metric(const GammaComplex& c, std::mt19937_64& rng)
{
    CohomologyMetric mu = CohomologyMetric::standard(c);
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const Mat& h = mu.basis[n - c.lo()];
        const Eigen::Index k = h.cols();
        if (k == 0) continue;
        std::vector<Mat> act;
        for (int g = 0; g < c.group()->order(); ++g) act.push_back(h.adjoint() * c.space(n)(g) * h);
        const Mat a = linalg::random_gaussian(k, k, rng);
        const Mat m = a.adjoint() * a + 0.2 * Mat::Identity(k, k);
        Mat gram = Mat::Zero(k, k);
        for (const Mat& x : act) gram += x.adjoint() * m * x;
        gram /= static_cast<double>(act.size());
        mu.gram[n - c.lo()] = (gram + gram.adjoint()) / 2.0;
    }
    return mu;
}

FilteredComplex filtered(const GroupPtr& g, const FilteredOptions& opt, std::mt19937_64& rng)
{
    require(opt.levels >= 1, ErrorKind::Contract, "filtration needs at least one level");
    Builder b = make_builder(g, opt.lo, opt.degrees);
    populate(b, opt.max_dim, opt.harmonic_pieces, opt.levels, rng);
    std::vector<UnitaryRep> spaces;
    std::vector<Mat> basis, inv;
    std::vector<std::vector<Mat>> levels(opt.levels);
    for (int n = b.lo; n < b.lo + b.degrees; ++n) {
        const UnitaryRep v = b.space(n);
        const auto off = b.offsets(n);
        const auto& lv = b.level[n - b.lo];
        // filtration-preserving: the column block of a level-a piece may reach pieces of level >= a
        Mat m = Mat::Zero(v.dim(), v.dim());
        for (size_t i = 0; i < lv.size(); ++i)
            for (size_t j = 0; j < lv.size(); ++j) {
                const UnitaryRep& pi = b.pieces[n - b.lo][i];
                const UnitaryRep& pj = b.pieces[n - b.lo][j];
                if (i == j)
                    m.block(off[i], off[i], pi.dim(), pi.dim()) = equivariant_invertible(pi, rng);
                else if (lv[i] > lv[j])
                    m.block(off[i], off[j], pi.dim(), pj.dim()) = 0.7 * equivariant(pj, pi, rng);
            }
        const Mat u = linalg::random_unitary(v.dim(), rng);
        spaces.push_back(v.conjugated(u));
        basis.push_back(u * m);
        inv.push_back((u * m).inverse());
        for (int p = 0; p < opt.levels; ++p) {
            std::vector<Eigen::Index> cols;
            for (size_t i = 0; i < lv.size(); ++i)
                if (lv[i] >= p)
                    for (int c = off[i]; c < off[i + 1]; ++c) cols.push_back(c);
            Mat e = Mat::Zero(v.dim(), static_cast<Eigen::Index>(cols.size()));
            for (size_t c = 0; c < cols.size(); ++c) e(cols[c], static_cast<Eigen::Index>(c)) = 1.0;
            levels[p].push_back(u * m * e);
        }
    }
    std::vector<Mat> d = b.differentials();
    for (size_t i = 0; i < d.size(); ++i) d[i] = basis[i + 1] * d[i] * inv[i];
    return FilteredComplex(GammaComplex(b.lo, std::move(spaces), std::move(d)), std::move(levels));
}

}  // namespace random
}  // namespace torsionlab
