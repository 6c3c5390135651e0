#include "torsionlab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "torsionlab/error.hpp"

namespace torsionlab {

CharacterData compute_character_data(const FiniteGroup& g);  // character.cpp

GroupPtr FiniteGroup::build(std::vector<int> flat, int n, std::string name, bool validate)
{
    require(n >= 1, ErrorKind::Structural, "group order must be positive");
    require(flat.size() == static_cast<size_t>(n) * n, ErrorKind::Structural, "cayley table has wrong size");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = n;
    g->table_ = std::move(flat);
    g->name_ = std::move(name);

    if (validate) {
        for (int i = 0; i < n; ++i) {
            std::vector<char> row(n, 0), col(n, 0);
            for (int j = 0; j < n; ++j) {
                int a = g->mul(i, j), b = g->mul(j, i);
                require(a >= 0 && a < n && b >= 0 && b < n, ErrorKind::Structural, "cayley entry out of range");
                require(!row[a] && !col[b], ErrorKind::Structural, "cayley table is not a Latin square");
                row[a] = col[b] = 1;
            }
        }
    }
    int id = -1;
    for (int e = 0; e < n && id < 0; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = g->mul(e, j) == j && g->mul(j, e) == j;
        if (ok) id = e;
    }
    require(id >= 0, ErrorKind::Structural, "cayley table has no identity element");
    g->identity_ = id;
    if (validate) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = g->mul(a, b);
                for (int c = 0; c < n; ++c)
                    require(g->mul(ab, c) == g->mul(a, g->mul(b, c)), ErrorKind::Structural,
                            "cayley table is not associative");
            }
    }
    g->inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == id) g->inverse_[a] = b;
    g->finalize();
    return g;
}

void FiniteGroup::finalize()
{
    const int n = order_;
    class_of_.assign(n, -1);
    classes_.clear();
    // identity class first, then classes in order of their smallest element
    std::vector<int> order_of_visit(n);
    std::iota(order_of_visit.begin(), order_of_visit.end(), 0);
    std::stable_partition(order_of_visit.begin(), order_of_visit.end(), [&](int x) { return x == identity_; });
    for (int g : order_of_visit) {
        if (class_of_[g] >= 0) continue;
        std::set<int> cls;
        for (int h = 0; h < n; ++h) cls.insert(conjugate(g, h));
        const int idx = static_cast<int>(classes_.size());
        for (int x : cls) class_of_[x] = idx;
        classes_.emplace_back(cls.begin(), cls.end());
    }
    abelian_ = static_cast<int>(classes_.size()) == n;
    cyclic_generator_ = -1;
    if (abelian_) {
        for (int g = 0; g < n; ++g)
            if (element_order(g) == n) {
                cyclic_generator_ = g;
                break;
            }
    }
}

int FiniteGroup::power(int a, long long k) const
{
    const int ord = element_order(a);
    long long e = k % ord;
    if (e < 0) e += ord;
    int r = identity_;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const
{
    int k = 1, x = a;
    while (x != identity_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

const CharacterData& FiniteGroup::characters() const
{
    std::call_once(chars_once_, [this] { chars_ = compute_character_data(*this); });
    return chars_;
}

GroupPtr FiniteGroup::from_cayley(std::vector<std::vector<int>> table, std::string name)
{
    const int n = static_cast<int>(table.size());
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : table) {
        require(static_cast<int>(row.size()) == n, ErrorKind::Structural, "cayley table is not square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return build(std::move(flat), n, std::move(name), true);
}

GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators, std::string name)
{
    require(!generators.empty(), ErrorKind::Structural, "need at least one permutation generator");
    const size_t k = generators[0].size();
    for (const auto& p : generators) {
        require(p.size() == k, ErrorKind::Structural, "permutation generators have different degrees");
        std::vector<int> s(p);
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < k; ++i)
            require(s[i] == static_cast<int>(i), ErrorKind::Structural, "generator is not a permutation");
    }
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems{id};
    index[id] = 0;
    std::queue<int> todo;
    todo.push(0);
    // elements are permutations; product (p*q)(i) = p(q(i))
    while (!todo.empty()) {
        int e = todo.front();
        todo.pop();
        for (const auto& gen : generators) {
            std::vector<int> prod(k);
            for (size_t i = 0; i < k; ++i) prod[i] = gen[elems[e][i]];
            if (!index.count(prod)) {
                index[prod] = static_cast<int>(elems.size());
                elems.push_back(prod);
                todo.push(static_cast<int>(elems.size()) - 1);
                require(elems.size() <= 5040, ErrorKind::Structural, "permutation group too large");
            }
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(k);
            for (size_t i = 0; i < k; ++i) prod[i] = elems[a][elems[b][i]];
            flat[static_cast<size_t>(a) * n + b] = index.at(prod);
        }
    return build(std::move(flat), n, std::move(name), false);
}

GroupPtr FiniteGroup::cyclic(int n)
{
    require(n >= 1, ErrorKind::Contract, "cyclic group order must be positive");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat[static_cast<size_t>(a) * n + b] = (a + b) % n;
    return build(std::move(flat), n, "Z" + std::to_string(n), false);
}

GroupPtr FiniteGroup::dihedral(int n)
{
    require(n >= 1, ErrorKind::Contract, "dihedral parameter must be positive");
    const int ord = 2 * n;
    std::vector<int> flat(static_cast<size_t>(ord) * ord);
    // r^i s^f * r^j s^g = r^{i + (-1)^f j} s^{f+g}
    for (int a = 0; a < ord; ++a)
        for (int b = 0; b < ord; ++b) {
            int i = a % n, f = a / n, j = b % n, g = b / n;
            int rot = ((f ? i - j : i + j) % n + n) % n;
            flat[static_cast<size_t>(a) * ord + b] = rot + n * ((f + g) % 2);
        }
    return build(std::move(flat), ord, "D" + std::to_string(n), false);
}

GroupPtr FiniteGroup::symmetric(int k)
{
    require(k >= 1 && k <= 5, ErrorKind::Contract, "symmetric group supported for 1 <= k <= 5");
    std::vector<std::vector<int>> gens;
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    if (k == 1) gens.push_back(id);
    if (k >= 2) {
        std::vector<int> swap01 = id;
        std::swap(swap01[0], swap01[1]);
        gens.push_back(swap01);
        std::vector<int> cycle(k);
        for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
        gens.push_back(cycle);
    }
    return from_permutations(gens, "S" + std::to_string(k));
}

Embedding Embedding::make(GroupPtr source, GroupPtr target, std::vector<int> map)
{
    require(source && target, ErrorKind::Contract, "embedding needs both groups");
    const int n = source->order();
    require(static_cast<int>(map.size()) == n, ErrorKind::Contract, "embedding map has wrong length");
    std::vector<char> seen(target->order(), 0);
    for (int a = 0; a < n; ++a) {
        require(map[a] >= 0 && map[a] < target->order(), ErrorKind::Contract, "embedding image out of range");
        require(!seen[map[a]], ErrorKind::Contract, "embedding is not injective");
        seen[map[a]] = 1;
        for (int b = 0; b < n; ++b)
            require(map[source->mul(a, b)] == target->mul(map[a], map[b]), ErrorKind::Contract,
                    "embedding is not a homomorphism");
    }
    return Embedding{std::move(source), std::move(target), std::move(map)};
}

Embedding Embedding::identity(GroupPtr g)
{
    std::vector<int> m(g->order());
    std::iota(m.begin(), m.end(), 0);
    return Embedding{g, g, std::move(m)};
}

Embedding Embedding::compose(const Embedding& outer, const Embedding& inner)
{
    require(inner.target == outer.source, ErrorKind::Contract, "embeddings are not composable");
    std::vector<int> m(inner.map.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = outer.map[inner.map[i]];
    return Embedding{inner.source, outer.target, std::move(m)};
}

Embedding Embedding::twisted(int h) const
{
    std::vector<int> m(map.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = target->conjugate(map[i], h);
    return Embedding{source, target, std::move(m)};
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members) : parent_(std::move(parent))
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    mask_.assign(parent_->order(), 0);
    for (int m : members_) {
        require(m >= 0 && m < parent_->order(), ErrorKind::Contract, "subgroup member out of range");
        mask_[m] = 1;
    }
    require(mask_[parent_->identity()], ErrorKind::Contract, "subgroup must contain the identity");
    for (int a : members_) {
        require(mask_[parent_->inverse(a)], ErrorKind::Contract, "subgroup not closed under inverses");
        for (int b : members_)
            require(mask_[parent_->mul(a, b)], ErrorKind::Contract, "subgroup not closed under products");
    }
    // standalone group with the identity at index 0
    std::stable_partition(members_.begin(), members_.end(), [&](int x) { return x == parent_->identity(); });
    const int n = static_cast<int>(members_.size());
    std::vector<int> local(parent_->order(), -1);
    for (int i = 0; i < n; ++i) local[members_[i]] = i;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i][j] = local[parent_->mul(members_[i], members_[j])];
    GroupPtr sub = FiniteGroup::from_cayley(std::move(table), parent_->name() + "-sub");
    inclusion_ = Embedding{sub, parent_, members_};
}

Subgroup Subgroup::generated(GroupPtr parent, const std::vector<int>& generators)
{
    std::set<int> s{parent->identity()};
    std::vector<int> frontier{parent->identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : generators) {
                int y = parent->mul(x, g);
                if (s.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return Subgroup(std::move(parent), std::vector<int>(s.begin(), s.end()));
}

Subgroup Subgroup::whole(GroupPtr parent)
{
    std::vector<int> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent)
{
    int id = parent->identity();
    return Subgroup(std::move(parent), {id});
}

bool Subgroup::contains(int g) const { return g >= 0 && g < parent_->order() && mask_[g]; }

bool Subgroup::is_normal() const
{
    for (int h = 0; h < parent_->order(); ++h)
        for (int m : members_)
            if (!contains(parent_->conjugate(m, h))) return false;
    return true;
}

Subgroup Subgroup::conjugated(int h) const
{
    std::vector<int> m;
    for (int x : members_) m.push_back(parent_->conjugate(x, h));
    return Subgroup(parent_, std::move(m));
}

std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g)
{
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    for (int x = 0; x < g->order(); ++x) {
        Subgroup s = Subgroup::generated(g, {x});
        std::vector<int> key = s.members();
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) out.push_back(std::move(s));
    }
    return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g)
{
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> found;
    std::vector<Subgroup> out;
    auto add = [&](Subgroup s) {
        std::vector<int> key = s.members();
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) {
            found.push_back(key);
            out.push_back(std::move(s));
            return true;
        }
        return false;
    };
    for (auto& c : cyclic_subgroups(g)) add(std::move(c));
    // joins of known subgroups with single elements until nothing new appears
    bool grew = true;
    while (grew) {
        grew = false;
        const size_t n = found.size();
        for (size_t i = 0; i < n; ++i)
            for (int x = 0; x < g->order(); ++x) {
                std::vector<int> gens = found[i];
                gens.push_back(x);
                if (add(Subgroup::generated(g, gens))) grew = true;
            }
    }
    return out;
}

}  // namespace torsionlab
