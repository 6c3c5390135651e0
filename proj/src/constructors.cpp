#include <numeric>

#include "torsionlab/cells.hpp"
#include "torsionlab/error.hpp"

namespace torsionlab {

namespace {

Mat mat_power(const Mat& m, long long e)
{
    Mat base = m, out = Mat::Identity(m.rows(), m.cols());
    if (e < 0) {
        base = m.inverse();
        e = -e;
    }
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

CellComplex empty_complex(const GroupPtr& g)
{
    CellComplex x;
    x.group = g;
    x.perm.resize(g->order());
    x.orient.resize(g->order());
    return x;
}

void add_cell(CellComplex& x, LocalSystem& f, int dim, int filt)
{
    x.dims.push_back(dim);
    x.filtration.push_back(filt);
    for (auto& row : x.perm) row.push_back(-1);
    for (auto& row : x.orient) row.push_back(1);
    for (auto& row : f.action) row.push_back(Mat::Identity(f.fiber, f.fiber));
}

}  // namespace

CWModel build_orbit(const GroupPtr& g, const Subgroup& h, const UnitaryRep& rho_h)
{
    require(h.parent() == g, ErrorKind::Contract, "build_orbit: subgroup of another group");
    require(rho_h.group() == h.as_group(), ErrorKind::Contract, "build_orbit: representation is not of the isotropy group");
    std::vector<int> local(g->order(), -1);
    for (int i = 0; i < h.order(); ++i) local[h.members()[i]] = i;
    std::vector<int> reps, coset_of(g->order(), -1);
    for (int x = 0; x < g->order(); ++x) {
        if (coset_of[x] >= 0) continue;
        for (int m : h.members()) coset_of[g->mul(x, m)] = static_cast<int>(reps.size());
        reps.push_back(x);
    }
    CWModel out;
    out.cells = empty_complex(g);
    out.sheaf.fiber = rho_h.dim();
    out.sheaf.action.resize(g->order());
    for (size_t i = 0; i < reps.size(); ++i) add_cell(out.cells, out.sheaf, 0, 0);
    for (int x = 0; x < g->order(); ++x)
        for (size_t i = 0; i < reps.size(); ++i) {
            const int y = g->mul(x, reps[i]);
            const int j = coset_of[y];
            out.cells.perm[x][i] = j;
            out.sheaf.action[x][i] = rho_h(local[g->mul(g->inverse(reps[j]), y)]);
        }
    return out;
}

int circle_group_order(int n, int k, const Mat& u, const Mat& lambda, int max_order)
{
    require(n >= 1, ErrorKind::Domain, "circle needs at least one cell");
    require(k >= 0 && k < n, ErrorKind::Domain, "rotation step must lie in [0, n)");
    const int g = std::gcd(n, k == 0 ? n : k);
    const int step = n / g;
    // t^step rotates by k/g full turns
    const Mat m = mat_power(lambda, step) * mat_power(u, -(k / g));
    Mat acc = m;
    for (int r = 1; step * r <= max_order; ++r) {
        if (linalg::max_abs(acc - Mat::Identity(m.rows(), m.cols())) <= 1e-9) return step * r;
        acc = acc * m;
    }
    fail(ErrorKind::Unsupported, "circle action has no finite order (holonomy or twist not of finite order)");
}

CWModel build_circle_over(const GroupPtr& g, int n, int k, const Mat& u, const Mat& lambda)
{
    const int order = g->order();
    require(u.rows() == u.cols() && linalg::is_unitary(u), ErrorKind::Contract, "holonomy must be unitary");
    require(lambda.rows() == u.rows() && linalg::is_unitary(lambda), ErrorKind::Contract, "fiber twist must be unitary of the fiber size");
    require(linalg::max_abs(u * lambda - lambda * u) <= kAlgTol, ErrorKind::Contract, "holonomy and fiber twist must commute");
    const int base = circle_group_order(n, k, u, lambda);
    require(order % base == 0, ErrorKind::Contract, "group order must be a multiple of the circle action's order");
    const int m = static_cast<int>(u.rows());
    for (int j = 0; j < order; ++j)
        require(g->mul(1 % order, j) == (j + 1) % order, ErrorKind::Contract, "build_circle_over: group is not Z_N with generator 1");

    CWModel out;
    out.cells = empty_complex(g);
    out.sheaf.fiber = m;
    out.sheaf.action.resize(order);
    for (int i = 0; i < n; ++i) add_cell(out.cells, out.sheaf, 0, 0);
    for (int i = 0; i < n; ++i) add_cell(out.cells, out.sheaf, 1, 1);
    const Mat uinv = u.adjoint();
    const Mat eye = Mat::Identity(m, m);
    // element j = t^j, built up one step at a time
    for (int c = 0; c < 2 * n; ++c) {
        out.cells.perm[0][c] = c;
        out.sheaf.action[0][c] = eye;
    }
    for (int j = 1; j < order; ++j)
        for (int c = 0; c < 2 * n; ++c) {
            const int prev = out.cells.perm[j - 1][c];
            const int off = prev < n ? 0 : n;
            const int i = prev - off;
            const bool wrap = i + k >= n;
            out.cells.perm[j][c] = off + (i + k) % n;
            out.sheaf.action[j][c] = (wrap ? Mat(lambda * uinv) : lambda) * out.sheaf.action[j - 1][c];
        }
    for (int i = 0; i < n; ++i) {
        const int edge = n + i;
        out.cells.incidences.push_back({(i + 1) % n, edge, 1});
        out.sheaf.transport.push_back(i == n - 1 ? u : eye);
        out.cells.incidences.push_back({i, edge, -1});
        out.sheaf.transport.push_back(eye);
    }
    return out;
}

CWModel build_circle(int n, int k, const Mat& u, const Mat& lambda)
{
    return build_circle_over(FiniteGroup::cyclic(circle_group_order(n, k, u, lambda)), n, k, u, lambda);
}

CWModel build_dihedral_polygon(int n)
{
    require(n >= 2, ErrorKind::Domain, "dihedral polygon needs n >= 2");
    const GroupPtr g = FiniteGroup::dihedral(n);
    const int v = 2 * n;
    CellComplex x = empty_complex(g);
    LocalSystem dummy;
    dummy.fiber = 1;
    dummy.action.resize(g->order());
    for (int i = 0; i < v; ++i) add_cell(x, dummy, 0, 0);
    for (int i = 0; i < v; ++i) add_cell(x, dummy, 1, 1);
    auto mod = [v](int a) { return ((a % v) + v) % v; };
    for (int r = 0; r < n; ++r)
        for (int f = 0; f < 2; ++f) {
            const int e = r + n * f;
            for (int i = 0; i < v; ++i) {
                // s first (i -> -i), then rotate by r steps of two vertices
                const int vi = f ? mod(-i) : i;
                x.perm[e][i] = mod(vi + 2 * r);
                // edge i joins i and i+1; s sends it to the edge joining -i-1 and -i, reversed
                const int ei = f ? mod(-i - 1) : i;
                x.perm[e][v + i] = v + mod(ei + 2 * r);
                x.orient[e][v + i] = f ? -1 : 1;
            }
        }
    for (int i = 0; i < v; ++i) {
        x.incidences.push_back({mod(i + 1), v + i, 1});
        x.incidences.push_back({i, v + i, -1});
    }
    CWModel out;
    out.cells = std::move(x);
    out.sheaf = LocalSystem::trivial(out.cells);
    return out;
}

CWModel disjoint_union(const CWModel& a, const CWModel& b)
{
    require(a.cells.group == b.cells.group, ErrorKind::Contract, "disjoint_union: different groups");
    require(a.sheaf.fiber == b.sheaf.fiber, ErrorKind::Contract, "disjoint_union: fiber dimensions differ");
    CWModel out = a;
    const int shift = a.cells.cell_count();
    auto& x = out.cells;
    x.dims.insert(x.dims.end(), b.cells.dims.begin(), b.cells.dims.end());
    x.filtration.insert(x.filtration.end(), b.cells.filtration.begin(), b.cells.filtration.end());
    for (int g = 0; g < x.group->order(); ++g) {
        for (int c : b.cells.perm[g]) x.perm[g].push_back(c + shift);
        x.orient[g].insert(x.orient[g].end(), b.cells.orient[g].begin(), b.cells.orient[g].end());
        out.sheaf.action[g].insert(out.sheaf.action[g].end(), b.sheaf.action[g].begin(), b.sheaf.action[g].end());
    }
    for (const auto& inc : b.cells.incidences) x.incidences.push_back({inc.lower + shift, inc.upper + shift, inc.sign});
    out.sheaf.transport.insert(out.sheaf.transport.end(), b.sheaf.transport.begin(), b.sheaf.transport.end());
    return out;
}

CWModel product_with_disk(const CWModel& a, int n)
{
    require(n >= 0, ErrorKind::Domain, "disk dimension must be non-negative");
    CWModel out = a;
    for (auto& d : out.cells.dims) d += n;
    for (auto& f : out.cells.filtration) f += n;
    return out;
}

CWModel product(const CWModel& a, const CWModel& b)
{
    require(a.cells.group == b.cells.group, ErrorKind::Contract, "product: different groups");
    const GroupPtr& g = a.cells.group;
    const int na = a.cells.cell_count(), nb = b.cells.cell_count();
    const int ma = a.sheaf.fiber, mb = b.sheaf.fiber;
    CWModel out;
    out.cells = empty_complex(g);
    out.sheaf.fiber = ma * mb;
    out.sheaf.action.resize(g->order());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            add_cell(out.cells, out.sheaf, a.cells.dims[i] + b.cells.dims[j], a.cells.filtration[i] + b.cells.filtration[j]);
    for (int e = 0; e < g->order(); ++e)
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) {
                const int c = i * nb + j;
                out.cells.perm[e][c] = a.cells.perm[e][i] * nb + b.cells.perm[e][j];
                out.cells.orient[e][c] = a.cells.orient[e][i] * b.cells.orient[e][j];
                out.sheaf.action[e][c] = linalg::kron(a.sheaf.action[e][i], b.sheaf.action[e][j]);
            }
    const Mat ia = Mat::Identity(ma, ma), ib = Mat::Identity(mb, mb);
    for (size_t t = 0; t < a.cells.incidences.size(); ++t) {
        const auto& inc = a.cells.incidences[t];
        for (int j = 0; j < nb; ++j) {
            out.cells.incidences.push_back({inc.lower * nb + j, inc.upper * nb + j, inc.sign});
            out.sheaf.transport.push_back(linalg::kron(a.sheaf.transport[t], ib));
        }
    }
    for (size_t t = 0; t < b.cells.incidences.size(); ++t) {
        const auto& inc = b.cells.incidences[t];
        for (int i = 0; i < na; ++i) {
            const int sign = (a.cells.dims[i] % 2 == 0) ? inc.sign : -inc.sign;
            out.cells.incidences.push_back({i * nb + inc.lower, i * nb + inc.upper, sign});
            out.sheaf.transport.push_back(linalg::kron(ia, b.sheaf.transport[t]));
        }
    }
    return out;
}

namespace {

/// Per-element scalar through which a constant one-dimensional sheaf acts.
std::vector<cplx> constant_character(const CWModel& x)
{
    require(x.sheaf.fiber == 1, ErrorKind::Contract, "join needs one-dimensional fibers");
    for (const auto& t : x.sheaf.transport)
        require(std::abs(t(0, 0) - 1.0) <= kAlgTol, ErrorKind::Contract, "join needs constant sheaves");
    std::vector<cplx> chi(x.cells.group->order());
    for (int g = 0; g < x.cells.group->order(); ++g) {
        chi[g] = x.sheaf.action[g][0](0, 0);
        for (const auto& a : x.sheaf.action[g])
            require(std::abs(a(0, 0) - chi[g]) <= kAlgTol, ErrorKind::Contract, "join needs the group to act by a character");
    }
    return chi;
}

}  // namespace

CWModel join(const CWModel& a, const CWModel& b)
{
    require(a.cells.group == b.cells.group, ErrorKind::Contract, "join: different groups");
    const auto chi = constant_character(a);
    const auto chib = constant_character(b);
    for (size_t g = 0; g < chi.size(); ++g)
        require(std::abs(chi[g] - chib[g]) <= kAlgTol, ErrorKind::Contract, "join: the two sheaves carry different characters");
    const GroupPtr& g = a.cells.group;
    const CellComplex& x = a.cells;
    const CellComplex& y = b.cells;
    const int na = x.cell_count(), nb = y.cell_count();
    CellComplex out = empty_complex(g);
    LocalSystem dummy;
    dummy.fiber = 1;
    dummy.action.resize(g->order());
    for (int i = 0; i < na; ++i) add_cell(out, dummy, x.dims[i], x.dims[i]);
    for (int j = 0; j < nb; ++j) add_cell(out, dummy, y.dims[j], y.dims[j]);
    auto jc = [&](int i, int j) { return na + nb + i * nb + j; };
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) add_cell(out, dummy, x.dims[i] + y.dims[j] + 1, x.dims[i] + y.dims[j] + 1);
    for (int e = 0; e < g->order(); ++e) {
        for (int i = 0; i < na; ++i) {
            out.perm[e][i] = x.perm[e][i];
            out.orient[e][i] = x.orient[e][i];
        }
        for (int j = 0; j < nb; ++j) {
            out.perm[e][na + j] = na + y.perm[e][j];
            out.orient[e][na + j] = y.orient[e][j];
        }
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) {
                out.perm[e][jc(i, j)] = jc(x.perm[e][i], y.perm[e][j]);
                out.orient[e][jc(i, j)] = x.orient[e][i] * y.orient[e][j];
            }
    }
    for (const auto& inc : x.incidences) out.incidences.push_back(inc);
    for (const auto& inc : y.incidences) out.incidences.push_back({na + inc.lower, na + inc.upper, inc.sign});
    // d(i*j) = d~i * j + (-1)^{|i|+1} i * d~j, where d~(vertex) is the empty cell
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            const int up = jc(i, j);
            const int s = (x.dims[i] % 2 == 0) ? -1 : 1;
            if (x.dims[i] == 0) out.incidences.push_back({na + j, up, 1});
            for (const auto& inc : x.incidences)
                if (inc.upper == i) out.incidences.push_back({jc(inc.lower, j), up, inc.sign});
            if (y.dims[j] == 0) out.incidences.push_back({i, up, s});
            for (const auto& inc : y.incidences)
                if (inc.upper == j) out.incidences.push_back({jc(i, inc.lower), up, s * inc.sign});
        }
    CWModel m;
    m.cells = std::move(out);
    std::vector<Mat> ops(g->order(), Mat(1, 1));
    for (int e = 0; e < g->order(); ++e) ops[e](0, 0) = chi[e];
    m.sheaf = LocalSystem::constant(m.cells, UnitaryRep::trusted(g, std::move(ops)));
    return m;
}

CWModel restrict_model(const CWModel& x, const Embedding& iota)
{
    require(iota.target == x.cells.group, ErrorKind::Contract, "restrict_model: embedding into another group");
    CWModel out = x;
    const int n = iota.source->order();
    out.cells.group = iota.source;
    out.cells.perm.resize(n);
    out.cells.orient.resize(n);
    out.sheaf.action.resize(n);
    for (int g = 0; g < n; ++g) {
        out.cells.perm[g] = x.cells.perm[iota.map[g]];
        out.cells.orient[g] = x.cells.orient[iota.map[g]];
        out.sheaf.action[g] = x.sheaf.action[iota.map[g]];
    }
    return out;
}

}  // namespace torsionlab
