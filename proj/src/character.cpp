#include "torsionlab/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torsionlab/error.hpp"

namespace torsionlab {

namespace {

CharacterData cyclic_characters(const FiniteGroup& g)
{
    const int n = g.order();
    const int gen = g.cyclic_generator();
    // exponent of each element with respect to the generator
    std::vector<int> expo(n, 0);
    int x = g.identity();
    for (int j = 0; j < n; ++j) {
        expo[x] = j;
        x = g.mul(x, gen);
    }
    CharacterData out;
    out.dims.assign(n, 1);
    out.values = Mat(n, n);
    for (int k = 0; k < n; ++k)
        for (int c = 0; c < n; ++c) {
            const int e = g.classes()[c].front();
            const double ang = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(expo[e]) * k) % n) / n;
            out.values(k, c) = std::polar(1.0, ang);
        }
    return out;
}

/// Burnside: common eigenvectors of the class-multiplication matrices give the central characters.
CharacterData class_algebra_characters(const FiniteGroup& g)
{
    const int n = g.order();
    const int k = g.class_count();
    const auto& classes = g.classes();
    std::vector<Eigen::MatrixXd> a(k, Eigen::MatrixXd::Zero(k, k));
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) {
            std::vector<double> count(k, 0.0);
            for (int x : classes[j])
                for (int y : classes[l]) count[g.class_of(g.mul(x, y))] += 1.0;
            for (int m = 0; m < k; ++m) a[j](l, m) = count[m] / static_cast<double>(classes[m].size());
        }

    std::mt19937_64 rng(0x5eed + static_cast<unsigned>(n));
    std::uniform_real_distribution<double> ud(0.5, 1.5);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
        for (int j = 0; j < k; ++j) m += ud(rng) * a[j];
        Eigen::ComplexEigenSolver<Mat> es(m.cast<cplx>());
        if (es.info() != Eigen::Success) continue;
        const Vec& ev = es.eigenvalues();
        double gap = 1e300;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) gap = std::min(gap, std::abs(ev(i) - ev(j)));
        if (k > 1 && gap < 1e-6 * std::max(1.0, ev.cwiseAbs().maxCoeff())) continue;

        CharacterData out;
        out.values = Mat(k, k);
        out.dims.resize(k);
        for (int i = 0; i < k; ++i) {
            Vec w = es.eigenvectors().col(i);
            w /= w(0);
            double denom = 0.0;
            for (int c = 0; c < k; ++c) denom += std::norm(w(c)) / static_cast<double>(classes[c].size());
            const double d = std::sqrt(static_cast<double>(n) / denom);
            const int di = static_cast<int>(std::lround(d));
            if (std::abs(d - di) > 1e-6) fail(ErrorKind::Precision, "character_table: non-integral dimension");
            out.dims[i] = di;
            for (int c = 0; c < k; ++c)
                out.values(i, c) = w(c) * static_cast<double>(di) / static_cast<double>(classes[c].size());
        }
        return out;
    }
    fail(ErrorKind::Precision, "character_table: could not separate central characters");
}

void sort_and_check(const FiniteGroup& g, CharacterData& data)
{
    const int k = g.class_count();
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    auto key = [&](int i) {
        std::vector<double> v{static_cast<double>(data.dims[i])};
        bool trivial = true;
        for (int c = 0; c < k; ++c) trivial = trivial && std::abs(data.values(i, c) - 1.0) < 1e-6;
        v.insert(v.begin(), trivial ? 0.0 : 1.0);
        for (int c = 0; c < k; ++c) {
            v.push_back(-std::round(data.values(i, c).real() * 1e6));
            v.push_back(-std::round(data.values(i, c).imag() * 1e6));
        }
        return v;
    };
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
    CharacterData sorted;
    sorted.values = Mat(k, k);
    for (int i = 0; i < k; ++i) {
        sorted.dims.push_back(data.dims[idx[i]]);
        sorted.values.row(i) = data.values.row(idx[i]);
    }
    data = std::move(sorted);

    long long sumsq = 0;
    for (int d : data.dims) sumsq += static_cast<long long>(d) * d;
    require(sumsq == g.order(), ErrorKind::Precision, "character_table: sum of squared dimensions != |G|");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            cplx s = 0.0;
            for (int c = 0; c < k; ++c)
                s += static_cast<double>(g.classes()[c].size()) * data.values(i, c) * std::conj(data.values(j, c));
            s /= static_cast<double>(g.order());
            require(std::abs(s - (i == j ? 1.0 : 0.0)) <= kAlgTol, ErrorKind::Precision,
                    "character_table: orthogonality check failed");
        }
}

}  // namespace

CharacterData compute_character_data(const FiniteGroup& g)
{
    require(g.order() <= 512, ErrorKind::Contract, "character_table: group order exceeds 512");
    CharacterData data = g.cyclic_generator() >= 0 ? cyclic_characters(g) : class_algebra_characters(g);
    sort_and_check(g, data);
    return data;
}

ClassFunction::ClassFunction(GroupPtr group, Vec values) : group_(std::move(group)), values_(std::move(values))
{
    require(group_ != nullptr, ErrorKind::Contract, "class function needs a group");
    require(values_.size() == group_->class_count(), ErrorKind::Contract, "class function has wrong length");
}

ClassFunction ClassFunction::zero(GroupPtr group)
{
    Vec v = Vec::Zero(group->class_count());
    return ClassFunction(std::move(group), std::move(v));
}

ClassFunction ClassFunction::constant(GroupPtr group, cplx c)
{
    Vec v = Vec::Constant(group->class_count(), c);
    return ClassFunction(std::move(group), std::move(v));
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o)
{
    require(group_ == o.group_, ErrorKind::Contract, "class functions on different groups");
    values_ += o.values_;
    return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o)
{
    require(group_ == o.group_, ErrorKind::Contract, "class functions on different groups");
    values_ -= o.values_;
    return *this;
}

ClassFunction& ClassFunction::operator*=(cplx c)
{
    values_ *= c;
    return *this;
}

double ClassFunction::distance(const ClassFunction& o) const
{
    require(group_ == o.group_, ErrorKind::Contract, "class functions on different groups");
    return values_.size() == 0 ? 0.0 : (values_ - o.values_).cwiseAbs().maxCoeff();
}

cplx inner(const ClassFunction& f, const ClassFunction& h)
{
    require(f.group() == h.group(), ErrorKind::Contract, "class functions on different groups");
    const auto& cls = f.group()->classes();
    cplx s = 0.0;
    for (size_t c = 0; c < cls.size(); ++c)
        s += static_cast<double>(cls[c].size()) * f.on_class(static_cast<int>(c)) * std::conj(h.on_class(static_cast<int>(c)));
    return s / static_cast<double>(f.group()->order());
}

const std::vector<std::vector<int>>& conjugacy_classes(const GroupPtr& g) { return g->classes(); }

std::vector<Irreducible> character_table(const GroupPtr& g)
{
    const CharacterData& data = g->characters();
    std::vector<Irreducible> out;
    for (size_t i = 0; i < data.dims.size(); ++i)
        out.push_back(Irreducible{data.dims[i], ClassFunction(g, data.values.row(static_cast<Eigen::Index>(i)).transpose())});
    return out;
}

ClassFunction restrict_class_function(const ClassFunction& f, const Embedding& iota)
{
    require(f.group() == iota.target, ErrorKind::Contract, "restriction: class function lives on another group");
    const GroupPtr& src = iota.source;
    return ClassFunction::from_elements(src, [&](int gamma) { return f(iota.map[gamma]); });
}

namespace {

/// Label each element by the G/N conjugacy class of its coset.
std::vector<int> coset_class_labels(const Subgroup& normal)
{
    const GroupPtr& g = normal.parent();
    std::vector<int> label(g->order(), -1);
    int next = 0;
    for (int x = 0; x < g->order(); ++x) {
        if (label[x] >= 0) continue;
        std::vector<int> stack{x};
        label[x] = next;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            auto visit = [&](int z) {
                if (label[z] < 0) {
                    label[z] = next;
                    stack.push_back(z);
                }
            };
            for (int n : normal.members()) visit(g->mul(y, n));
            for (int h = 0; h < g->order(); ++h) visit(g->conjugate(y, h));
        }
        ++next;
    }
    return label;
}

}  // namespace

int quotient_class_count(const Subgroup& normal)
{
    require(normal.is_normal(), ErrorKind::Contract, "subgroup is not normal");
    auto labels = coset_class_labels(normal);
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

ClassFunction hat_project(const ClassFunction& f, const Subgroup& normal)
{
    require(normal.parent() == f.group(), ErrorKind::Contract, "hat_project: subgroup of another group");
    require(normal.is_normal(), ErrorKind::Contract, "hat_project: subgroup is not normal");
    const GroupPtr& g = f.group();
    auto labels = coset_class_labels(normal);
    const int sets = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<cplx> sum(sets, 0.0);
    std::vector<int> count(sets, 0);
    for (int x = 0; x < g->order(); ++x) {
        sum[labels[x]] += f(x);
        ++count[labels[x]];
    }
    return ClassFunction::from_elements(g, [&](int x) { return f(x) - sum[labels[x]] / static_cast<double>(count[labels[x]]); });
}

}  // namespace torsionlab
