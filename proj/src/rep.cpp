#include "torsionlab/rep.hpp"

#include <algorithm>
#include <set>

#include "torsionlab/error.hpp"

namespace torsionlab {

UnitaryRep::UnitaryRep(GroupPtr group, std::vector<Mat> ops) : group_(std::move(group)), ops_(std::move(ops))
{
    require(group_ != nullptr, ErrorKind::Contract, "representation needs a group");
    require(static_cast<int>(ops_.size()) == group_->order(), ErrorKind::Contract,
            "representation needs one operator per group element");
    dim_ = ops_.empty() ? 0 : static_cast<int>(ops_[0].rows());
    for (const auto& op : ops_) {
        require(op.rows() == dim_ && op.cols() == dim_, ErrorKind::Contract, "representation operators differ in size");
        require(linalg::is_unitary(op), ErrorKind::Contract, "representation operator is not unitary");
    }
    require(linalg::max_abs(ops_[group_->identity()] - Mat::Identity(dim_, dim_)) <= kAlgTol, ErrorKind::Contract,
            "identity element does not act trivially");
    const int n = group_->order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            require(linalg::max_abs(ops_[group_->mul(a, b)] - ops_[a] * ops_[b]) <= kAlgTol, ErrorKind::Contract,
                    "representation violates rho(gh) = rho(g) rho(h)");
}

UnitaryRep UnitaryRep::trusted(GroupPtr group, std::vector<Mat> ops)
{
    require(group != nullptr && static_cast<int>(ops.size()) == group->order(), ErrorKind::Contract,
            "representation needs one operator per group element");
    UnitaryRep out;
    out.group_ = std::move(group);
    out.dim_ = ops.empty() ? 0 : static_cast<int>(ops[0].rows());
    out.ops_ = std::move(ops);
    return out;
}

UnitaryRep UnitaryRep::trivial(GroupPtr group, int dim)
{
    std::vector<Mat> ops(group->order(), Mat::Identity(dim, dim));
    return trusted(std::move(group), std::move(ops));
}

UnitaryRep UnitaryRep::regular(GroupPtr group)
{
    const int n = group->order();
    std::vector<Mat> ops(n, Mat::Zero(n, n));
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x) ops[g](group->mul(g, x), x) = 1.0;
    return UnitaryRep(std::move(group), std::move(ops));
}

UnitaryRep UnitaryRep::from_character(const Irreducible& chi)
{
    require(chi.dimension == 1, ErrorKind::Contract, "from_character needs a linear character");
    const GroupPtr& g = chi.character.group();
    std::vector<Mat> ops(g->order(), Mat(1, 1));
    for (int x = 0; x < g->order(); ++x) ops[x](0, 0) = chi.character(x);
    return UnitaryRep(g, std::move(ops));
}

namespace {

struct CosetData {
    std::vector<int> reps;          // representative of each coset
    std::vector<int> coset_of;      // element -> coset index
    std::vector<int> local_index;   // parent element -> index in subgroup, or -1
};

CosetData cosets(const Subgroup& h)
{
    const GroupPtr& g = h.parent();
    CosetData cd;
    cd.coset_of.assign(g->order(), -1);
    cd.local_index.assign(g->order(), -1);
    for (size_t i = 0; i < h.members().size(); ++i) cd.local_index[h.members()[i]] = static_cast<int>(i);
    for (int x = 0; x < g->order(); ++x) {
        if (cd.coset_of[x] >= 0) continue;
        const int idx = static_cast<int>(cd.reps.size());
        cd.reps.push_back(x);
        for (int m : h.members()) cd.coset_of[g->mul(x, m)] = idx;
    }
    return cd;
}

}  // namespace

UnitaryRep UnitaryRep::on_cosets(const Subgroup& h)
{
    return induced(h, trivial(h.as_group(), 1));
}

UnitaryRep UnitaryRep::induced(const Subgroup& h, const UnitaryRep& rep)
{
    require(rep.group() == h.as_group(), ErrorKind::Contract, "induced: representation is not of the subgroup");
    const GroupPtr& g = h.parent();
    CosetData cd = cosets(h);
    const int k = static_cast<int>(cd.reps.size());
    const int m = rep.dim();
    std::vector<Mat> ops(g->order(), Mat::Zero(k * m, k * m));
    for (int x = 0; x < g->order(); ++x)
        for (int i = 0; i < k; ++i) {
            // x r_i = r_j h'
            const int y = g->mul(x, cd.reps[i]);
            const int j = cd.coset_of[y];
            const int hh = g->mul(g->inverse(cd.reps[j]), y);
            ops[x].block(j * m, i * m, m, m) = rep(cd.local_index[hh]);
        }
    return UnitaryRep(g, std::move(ops));
}

UnitaryRep UnitaryRep::direct_sum(const UnitaryRep& a, const UnitaryRep& b)
{
    require(a.group() == b.group(), ErrorKind::Contract, "direct sum of representations of different groups");
    std::vector<Mat> ops(a.group()->order());
    for (size_t g = 0; g < ops.size(); ++g) ops[g] = linalg::direct_sum(a.ops_[g], b.ops_[g]);
    UnitaryRep out;
    out.group_ = a.group_;
    out.dim_ = a.dim_ + b.dim_;
    out.ops_ = std::move(ops);
    return out;
}

UnitaryRep UnitaryRep::direct_sum(const std::vector<UnitaryRep>& parts, GroupPtr group)
{
    UnitaryRep out;
    out.group_ = group;
    out.dim_ = 0;
    out.ops_.assign(group->order(), Mat(0, 0));
    for (const auto& p : parts) out = direct_sum(out, p);
    return out;
}

UnitaryRep UnitaryRep::conjugated(const Mat& u) const
{
    require(u.rows() == dim_ && linalg::is_unitary(u), ErrorKind::Contract, "conjugation needs a unitary of matching size");
    UnitaryRep out = *this;
    for (auto& op : out.ops_) op = u * op * u.adjoint();
    return out;
}

UnitaryRep UnitaryRep::restricted(const Embedding& iota) const
{
    require(iota.target == group_, ErrorKind::Contract, "restriction along an embedding into another group");
    UnitaryRep out;
    out.group_ = iota.source;
    out.dim_ = dim_;
    out.ops_.resize(iota.source->order());
    for (int g = 0; g < iota.source->order(); ++g) out.ops_[g] = ops_[iota.map[g]];
    return out;
}

ClassFunction UnitaryRep::character() const
{
    return ClassFunction::from_elements(group_, [&](int g) { return ops_[g].trace(); });
}

Mat isotypic_projector(const UnitaryRep& v, const Irreducible& pi)
{
    require(v.group() == pi.character.group(), ErrorKind::Contract, "isotypic_projector: irreducible of another group");
    const GroupPtr& g = v.group();
    Mat p = Mat::Zero(v.dim(), v.dim());
    for (int x = 0; x < g->order(); ++x) p += std::conj(pi.character(x)) * v(x);
    return p * (static_cast<double>(pi.dimension) / g->order());
}

Mat equivariant_average(const UnitaryRep& from, const UnitaryRep& to, const Mat& x)
{
    require(from.group() == to.group(), ErrorKind::Contract, "equivariant_average: different groups");
    Mat acc = Mat::Zero(to.dim(), from.dim());
    for (int g = 0; g < from.group()->order(); ++g) acc += to(g) * x * from(g).adjoint();
    return acc / static_cast<double>(from.group()->order());
}

double equivariance_defect(const UnitaryRep& from, const UnitaryRep& to, const Mat& x)
{
    double worst = 0.0;
    for (int g = 0; g < from.group()->order(); ++g) worst = std::max(worst, linalg::max_abs(to(g) * x - x * from(g)));
    return worst;
}

}  // namespace torsionlab
