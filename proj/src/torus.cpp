#include "torsionlab/torus.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "torsionlab/error.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

namespace {

std::pair<long long, long long> reduce(long long num, long long den)
{
    require(den > 0, ErrorKind::Domain, "torus coordinate needs a positive denominator");
    num %= den;
    if (num < 0) num += den;
    const long long g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace

TorusElement::TorusElement(std::vector<std::pair<long long, long long>> coords)
{
    for (auto [n, d] : coords) coords_.push_back(reduce(n, d));
}

TorusElement TorusElement::identity(int rank)
{
    return TorusElement(std::vector<std::pair<long long, long long>>(rank, {0, 1}));
}

long long TorusElement::order() const
{
    long long l = 1;
    for (auto [n, d] : coords_) l = std::lcm(l, d);
    return l;
}

TorusElement TorusElement::power(long long k) const
{
    std::vector<std::pair<long long, long long>> c;
    for (auto [n, d] : coords_) c.push_back({(n * (k % d)) % d, d});
    return TorusElement(std::move(c));
}

TorusElement TorusElement::root(long long k) const
{
    require(k >= 1, ErrorKind::Domain, "root index must be positive");
    std::vector<std::pair<long long, long long>> c;
    for (auto [n, d] : coords_) c.push_back({n, d * k});
    return TorusElement(std::move(c));
}

std::pair<long long, long long> TorusElement::pair_with(const std::vector<int>& chi) const
{
    require(static_cast<int>(chi.size()) == rank(), ErrorKind::Contract, "character has the wrong rank");
    const long long l = order();
    long long num = 0;
    for (int i = 0; i < rank(); ++i) num = (num + chi[i] * coords_[i].first % l * (l / coords_[i].second)) % l;
    return reduce(num, l);
}

std::vector<double> TorusElement::as_double() const
{
    std::vector<double> v;
    for (auto [n, d] : coords_) v.push_back(static_cast<double>(n) / static_cast<double>(d));
    return v;
}

std::string TorusElement::key() const
{
    std::string s;
    for (auto [n, d] : coords_) s += std::to_string(n) + "/" + std::to_string(d) + ",";
    return s;
}

TorusSpace TorusSpace::point(int rank)
{
    TorusSpace x;
    x.kind = Kind::Point;
    x.rank = rank;
    return x;
}

TorusSpace TorusSpace::circle(std::vector<int> chi, double a, int weight)
{
    require(a >= 0.0 && a < 1.0, ErrorKind::Domain, "circle holonomy exponent must lie in [0, 1)");
    TorusSpace x;
    x.kind = Kind::Circle;
    x.rank = static_cast<int>(chi.size());
    x.chi = std::move(chi);
    x.a = a;
    x.weight = weight;
    return x;
}

TorusSpace TorusSpace::s3_join()
{
    TorusSpace x;
    x.kind = Kind::S3Join;
    x.rank = 2;
    return x;
}

TorusSpace TorusSpace::free_t2()
{
    TorusSpace x;
    x.kind = Kind::FreeT2;
    x.rank = 2;
    return x;
}

TorusSpace TorusSpace::disjoint(std::vector<TorusSpace> parts)
{
    require(!parts.empty(), ErrorKind::Contract, "union needs at least one part");
    TorusSpace x;
    x.kind = Kind::Union;
    x.rank = parts.front().rank;
    for (const auto& p : parts) require(p.rank == x.rank, ErrorKind::Contract, "union parts have different ranks");
    x.parts = std::move(parts);
    return x;
}

TorusSpace TorusSpace::with_disk(int n) const
{
    TorusSpace x = *this;
    x.disk += n;
    return x;
}

std::string TorusSpace::name() const
{
    std::string base;
    switch (kind) {
    case Kind::Point: base = "point"; break;
    case Kind::Circle: base = "circle"; break;
    case Kind::S3Join: base = "s3"; break;
    case Kind::FreeT2: base = "t2"; break;
    case Kind::Union: {
        base = "union(";
        for (size_t i = 0; i < parts.size(); ++i) base += (i ? "," : "") + parts[i].name();
        base += ")";
        break;
    }
    }
    return disk ? base + "xD" + std::to_string(disk) : base;
}

namespace {

CWModel circle_model(const std::vector<int>& chi, double a, int weight, const TorusElement& t, const GroupPtr& zn)
{
    const auto [k, n] = t.pair_with(chi);
    const double tau = static_cast<double>(k) / static_cast<double>(n);
    Mat u(1, 1), lambda(1, 1);
    u(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * a);
    lambda(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * (a + weight) * tau);
    return build_circle_over(zn, static_cast<int>(n), static_cast<int>(k), u, lambda);
}

}  // namespace

CWModel restricted_model(const TorusSpace& x, const TorusElement& t, const GroupPtr& zn)
{
    require(t.rank() == x.rank, ErrorKind::Contract, "torus element has the wrong rank");
    require(zn->order() % t.order() == 0, ErrorKind::Contract, "group order must be a multiple of the element's order");
    CWModel m;
    switch (x.kind) {
    case TorusSpace::Kind::Point: {
        const Subgroup all = Subgroup::whole(zn);
        m = build_orbit(zn, all, UnitaryRep::trivial(all.as_group()));
        break;
    }
    case TorusSpace::Kind::Circle: m = circle_model(x.chi, x.a, x.weight, t, zn); break;
    case TorusSpace::Kind::S3Join:
        m = join(circle_model({1, 0}, 0.0, 0, t, zn), circle_model({0, 1}, 0.0, 0, t, zn));
        break;
    case TorusSpace::Kind::FreeT2:
        m = product(circle_model({1, 0}, 0.0, 0, t, zn), circle_model({0, 1}, 0.0, 0, t, zn));
        break;
    case TorusSpace::Kind::Union: {
        m = restricted_model(x.parts[0], t, zn);
        for (size_t i = 1; i < x.parts.size(); ++i) m = disjoint_union(m, restricted_model(x.parts[i], t, zn));
        break;
    }
    }
    return x.disk ? product_with_disk(m, x.disk) : m;
}

CohomologyMetric model_metric(const TorusSpace& x, const CWModel& m)
{
    // unions need per-part metrics; torsion_on_cyclic assembles those itself
    require(x.kind != TorusSpace::Kind::Union, ErrorKind::Unsupported, "model_metric: build unions part by part");
    try {
        return integral_metric(m);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unsupported) throw;
        return CohomologyMetric::standard(m.complex());
    }
}

namespace {

/// Complex and metric of the restricted model, built part by part for unions.
std::pair<GammaComplex, CohomologyMetric> model_with_metric(const TorusSpace& x, const TorusElement& t, const GroupPtr& zn)
{
    if (x.kind != TorusSpace::Kind::Union) {
        CWModel m = restricted_model(x, t, zn);
        CohomologyMetric mu = model_metric(x, m);
        return {m.complex(), std::move(mu)};
    }
    auto acc = model_with_metric(x.parts[0].with_disk(x.disk), t, zn);
    for (size_t i = 1; i < x.parts.size(); ++i) {
        auto next = model_with_metric(x.parts[i].with_disk(x.disk), t, zn);
        acc.second = CohomologyMetric::direct_sum(acc.first, acc.second, next.first, next.second);
        acc.first = GammaComplex::direct_sum(acc.first, next.first);
    }
    return acc;
}

}  // namespace

ClassFunction torsion_on_cyclic(const TorusSpace& x, const TorusElement& t)
{
    const GroupPtr zn = FiniteGroup::cyclic(static_cast<int>(t.order()));
    auto [c, mu] = model_with_metric(x, t, zn);
    return torsion_with_cohomology(c, mu);
}

cplx torsion_at(const TorusSpace& x, const TorusElement& t)
{
    const ClassFunction f = torsion_on_cyclic(x, t);
    return f(1 % static_cast<int>(t.order()));
}

cplx torsion_at_via_root(const TorusSpace& x, const TorusElement& t, long long k)
{
    const TorusElement s = t.root(k);
    const ClassFunction f = torsion_on_cyclic(x, s);
    return f(static_cast<int>(k % s.order()));
}

cplx FGClassFunction::operator()(const TorusElement& t) const
{
    const std::string key = t.key();
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    const cplx v = f_(t);
    std::lock_guard<std::mutex> lock(mtx_);
    return memo_.emplace(key, v).first->second;
}

std::vector<cplx> FGClassFunction::evaluate_many(const std::vector<TorusElement>& ts) const
{
    std::vector<cplx> out(ts.size());
    std::vector<std::string> errors(ts.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(ts.size()); ++i) {
        try {
            out[i] = (*this)(ts[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) fail(ErrorKind::Precision, "evaluation failed: " + e);
    return out;
}

size_t FGClassFunction::cached() const
{
    std::lock_guard<std::mutex> lock(mtx_);
    return memo_.size();
}

TorusCellSpec cell_spec(const TorusSpace& x)
{
    TorusCellSpec out;
    switch (x.kind) {
    case TorusSpace::Kind::Point: out.push_back({0, x.disk, {}, 0.0, 0}); break;
    case TorusSpace::Kind::Circle: out.push_back({1, x.disk, x.chi, x.a, x.weight}); break;
    case TorusSpace::Kind::S3Join:
        out.push_back({1, x.disk, {1, 0}, 0.0, 0});
        out.push_back({1, x.disk, {0, 1}, 0.0, 0});
        out.push_back({2, x.disk + 1, {}, 0.0, 0});
        break;
    case TorusSpace::Kind::FreeT2: out.push_back({2, x.disk, {}, 0.0, 0}); break;
    case TorusSpace::Kind::Union:
        for (const auto& p : x.parts)
            for (const auto& c : cell_spec(p.with_disk(x.disk))) out.push_back(c);
        break;
    }
    return out;
}

cplx cell_sum(const TorusCellSpec& cells, const TorusElement& t)
{
    cplx acc = 0.0;
    for (const auto& e : cells) {
        require(e.orbit_dim >= 0 && e.disk_dim >= 0, ErrorKind::Structural, "malformed cell spec");
        if (e.orbit_dim != 1) continue;  // orbits of dimension != 1 do not contribute
        const auto [k, n] = t.pair_with(e.chi);
        const double tau = static_cast<double>(k) / static_cast<double>(n);
        CircleOrbitData d;
        d.lambda = Mat::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * (e.a + e.weight) * tau));
        d.a = Mat::Constant(1, 1, e.a);
        d.tau = tau;
        d.disk_parity = e.disk_dim;
        acc += psi_trace(d);
    }
    return acc;
}

cplx hat_cell_sum(const TorusCellSpec& cells, const TorusElement& t)
{
    const long long n = t.order();
    cplx mean = 0.0;
    for (long long j = 0; j < n; ++j) mean += cell_sum(cells, t.power(j));
    return cell_sum(cells, t) - mean / static_cast<double>(n);
}

ClassFunction hat_value(const ClassFunction& values, const Subgroup& gamma0)
{
    return hat_project(values, gamma0);
}

}  // namespace torsionlab
