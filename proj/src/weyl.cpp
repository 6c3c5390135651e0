#include "torsionlab/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "torsionlab/error.hpp"

namespace torsionlab {

namespace {

long long factorial(int n)
{
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

struct ListedEntry {
    int rank_g;
    int rank_k;
};

// ranks from the standard classification; only the rank condition is used
const std::map<std::string, ListedEntry>& listed_table()
{
    static const std::map<std::string, ListedEntry> table{
        {"SU(2)", {2, 1}},          // group manifold G x G / G
        {"SU(3)", {4, 2}},
        {"SU(4)", {6, 3}},
        {"SO(5)/SO(4)", {2, 2}},    // S^4
        {"SO(7)/SO(6)", {3, 3}},    // S^6
        {"SU(3)/S(U(2)xU(1))", {2, 2}},
        {"SU(4)/SO(4)", {3, 2}},
        {"SU(5)/SO(5)", {4, 2}},
        {"SU(6)/Sp(3)", {5, 3}},
        {"SU(8)/Sp(4)", {7, 4}},
        {"SO(8)/SO(4)xSO(4)", {4, 4}},
        {"Sp(2)/U(2)", {2, 2}},
        {"G2/SO(4)", {2, 2}},
        {"E6/F4", {6, 4}},
    };
    return table;
}

}  // namespace

SymmetricSpaceFamily SymmetricSpaceFamily::so_even(int m, int p)
{
    require(m >= 2, ErrorKind::Domain, "SO(2m) family needs m >= 2");
    require(p >= 1 && p <= m, ErrorKind::Domain, "SO(2m) family needs 1 <= p <= m");
    SymmetricSpaceFamily f;
    f.tag = Tag::SOEven;
    f.m = m;
    f.p = p;
    f.rank_g = m;
    f.rank_k = (p - 1) + (m - p);
    return f;
}

SymmetricSpaceFamily SymmetricSpaceFamily::su3_so3()
{
    SymmetricSpaceFamily f;
    f.tag = Tag::SU3SO3;
    f.rank_g = 2;
    f.rank_k = 1;
    return f;
}

SymmetricSpaceFamily SymmetricSpaceFamily::listed(const std::string& name)
{
    auto it = listed_table().find(name);
    require(it != listed_table().end(), ErrorKind::Domain, "unknown symmetric-space family: " + name);
    SymmetricSpaceFamily f;
    f.tag = Tag::Listed;
    f.label = name;
    f.rank_g = it->second.rank_g;
    f.rank_k = it->second.rank_k;
    return f;
}

std::vector<std::string> SymmetricSpaceFamily::listed_names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : listed_table()) out.push_back(k);
    return out;
}

int SymmetricSpaceFamily::torus_rank() const
{
    switch (tag) {
    case Tag::SOEven: return m;
    case Tag::SU3SO3: return 2;
    case Tag::Listed: return rank_g;
    }
    return rank_g;
}

std::string SymmetricSpaceFamily::name() const
{
    switch (tag) {
    case Tag::SOEven:
        return "SO(" + std::to_string(2 * m) + ")/SO(" + std::to_string(2 * p - 1) + ")xSO(" + std::to_string(2 * m - 2 * p + 1) + ")";
    case Tag::SU3SO3: return "SU(3)/SO(3)";
    case Tag::Listed: return label;
    }
    return label;
}

WeylData weyl_group(const SymmetricSpaceFamily& f)
{
    WeylData out;
    switch (f.tag) {
    case SymmetricSpaceFamily::Tag::SOEven: {
        require(f.m <= 8, ErrorKind::Domain, "weyl_group: m > 8 not supported");
        std::vector<int> perm(f.m);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (int mask = 0; mask < (1 << f.m); ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) % 2) continue;
                WeylElement w{perm, std::vector<int>(f.m, 1)};
                for (int i = 0; i < f.m; ++i)
                    if (mask >> i & 1) w.sign[i] = -1;
                out.w_g.push_back(std::move(w));
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        // W_K = W(SO(2p-1)) x W(SO(2m-2p+1)) = B_{p-1} x B_{m-p}
        out.w_k_order = (1LL << (f.m - 1)) * factorial(f.p - 1) * factorial(f.m - f.p);
        break;
    }
    case SymmetricSpaceFamily::Tag::SU3SO3: {
        std::vector<int> perm{0, 1, 2};
        do out.w_g.push_back({perm, {1, 1, 1}});
        while (std::next_permutation(perm.begin(), perm.end()));
        out.w_k_order = 2;
        break;
    }
    case SymmetricSpaceFamily::Tag::Listed:
        fail(ErrorKind::Unsupported, "weyl_group: no Weyl data tabulated for " + f.label);
    }
    return out;
}

namespace {

/// SU(3) torus coordinates (theta_1, theta_2) extended by theta_3 = -theta_1 - theta_2.
std::vector<std::pair<long long, long long>> su3_coords(const TorusElement& t)
{
    auto c = t.coords();
    const long long d = std::lcm(c[0].second, c[1].second);
    const long long n = c[0].first * (d / c[0].second) + c[1].first * (d / c[1].second);
    c.push_back({-n, d});
    return c;
}

}  // namespace

TorusElement weyl_act(const SymmetricSpaceFamily& f, const WeylElement& w, const TorusElement& t)
{
    require(t.rank() == f.torus_rank(), ErrorKind::Contract, "torus element has the wrong rank");
    const auto c = f.tag == SymmetricSpaceFamily::Tag::SU3SO3 ? su3_coords(t) : t.coords();
    std::vector<std::pair<long long, long long>> out;
    for (size_t i = 0; i < w.perm.size(); ++i) out.push_back({w.sign[i] * c[w.perm[i]].first, c[w.perm[i]].second});
    if (f.tag == SymmetricSpaceFamily::Tag::SU3SO3) out.pop_back();
    return TorusElement(std::move(out));
}

std::pair<long long, long long> alpha(const SymmetricSpaceFamily& f, const TorusElement& t)
{
    require(t.rank() == f.torus_rank(), ErrorKind::Contract, "torus element has the wrong rank");
    switch (f.tag) {
    case SymmetricSpaceFamily::Tag::SOEven: {
        std::vector<int> chi(f.m, 0);
        chi[f.p - 1] = 1;
        return t.pair_with(chi);
    }
    case SymmetricSpaceFamily::Tag::SU3SO3: return t.pair_with({1, 1});
    case SymmetricSpaceFamily::Tag::Listed: break;
    }
    fail(ErrorKind::Unsupported, "alpha: no cocharacter data for " + f.name());
}

double psi_constant_sheaf(long long num, long long den)
{
    return psi_rational(1.0, 0.0, num, den).real();
}

double symmetric_space_torsion(const SymmetricSpaceFamily& f, const TorusElement& t)
{
    require(t.rank() == f.torus_rank(), ErrorKind::Contract, "torus element has the wrong rank");
    if (!f.rank_condition()) return 0.0;
    const WeylData wd = weyl_group(f);
    double sum = 0.0;
    for (const auto& w : wd.w_g) {
        const auto [k, n] = alpha(f, weyl_act(f, w, t));
        sum += psi_constant_sheaf(k, n);
    }
    return sum / static_cast<double>(wd.w_k_order);
}

}  // namespace torsionlab
