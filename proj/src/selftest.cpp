#include "torsionlab/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "torsionlab/error.hpp"
#include "torsionlab/random.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/torus.hpp"
#include "torsionlab/weyl.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab::selftest {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

Mat scalar(cplx z) { return Mat::Constant(1, 1, z); }
cplx phase(double x) { return std::polar(1.0, 2.0 * kPi * x); }

double norm(const ClassFunction& f) { return f.values().size() ? f.values().cwiseAbs().maxCoeff() : 0.0; }

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

SuiteResult finish(SuiteResult r, double err, double tol, const std::string& extra = "")
{
    r.error = err;
    r.tolerance = tol;
    r.passed = std::isfinite(err) && err <= tol;
    r.detail = "max error " + fmt(err) + " (tol " + fmt(tol) + ")" + (extra.empty() ? "" : "; " + extra);
    return r;
}

// 1. Trivial group: rho(S^1, U) = log(2 sin pi a), psi = 2 log(2 sin pi a).
SuiteResult circle(std::uint64_t)
{
    SuiteResult r;
    double worst = 0.0;
    json rows = json::array();
    for (int i = 1; i <= 9; ++i) {
        const double a = 0.1 * i;
        const double exact = std::log(2.0 * std::sin(kPi * a));
        const CWModel x = build_circle(1, 0, scalar(phase(a)), scalar(1.0));
        const cplx rho = torsion_cw(x.cells, x.sheaf)(0);
        const PsiValue an = psi_mellin(1.0, a, 0.0);
        const double e1 = std::abs(rho - exact);
        const double e2 = std::abs(an.value - 2.0 * exact);
        const double e3 = std::abs(rho - kAnalyticNormalization * an.value);
        worst = std::max({worst, e1, e2, e3});
        rows.push_back({{"a", a}, {"rho", rho.real()}, {"psi_mellin", an.value.real()}, {"exact", exact}});
    }
    r.data["grid"] = rows;
    r.data["normalization"] = kAnalyticNormalization;
    return finish(r, worst, 1e-7, "rho = 0.5 * psi");
}

// 2. Z_N circles: rho(generator) = 0.5 * psi(lambda, a, k/n).
SuiteResult equivariant_circle(std::uint64_t)
{
    SuiteResult r;
    double worst = 0.0;
    int cases = 0;
    json rows = json::array();
    for (int n : {2, 3, 4, 6})
        for (int k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            for (double a : {0.3, 0.5})
                for (cplx lambda : {cplx(1.0), cplx(0.0, 1.0)}) {
                    const CWModel x = build_circle(n, k, scalar(phase(a)), scalar(lambda));
                    const cplx rho = torsion_cw(x.cells, x.sheaf)(1 % x.cells.group->order());
                    CircleOrbitData d;
                    d.lambda = scalar(lambda);
                    d.a = scalar(a);
                    d.tau = static_cast<double>(k) / n;
                    const cplx an = psi_trace(d);
                    const double e = std::abs(rho - kAnalyticNormalization * an);
                    worst = std::max(worst, e);
                    ++cases;
                    rows.push_back({{"n", n}, {"k", k}, {"a", a}, {"lambda", {lambda.real(), lambda.imag()}},
                                    {"N", x.cells.group->order()}, {"rho", {rho.real(), rho.imag()}},
                                    {"half_psi", {0.5 * an.real(), 0.5 * an.imag()}}, {"error", e}});
                }
        }
    r.data["cases"] = rows;
    return finish(r, worst, 1e-6, std::to_string(cases) + " cases");
}

// 3. psi special values and the digamma constant.
SuiteResult psi_values(std::uint64_t)
{
    SuiteResult r;
    double worst0 = 0.0;
    for (cplx lambda : {cplx(1.0), cplx(0.0, 1.0), phase(0.3)})
        worst0 = std::max(worst0, std::abs(psi_mellin(lambda, 0.0, 0.0).value));
    const double half = std::abs(psi_mellin(1.0, 0.5, 0.0).value - 2.0 * std::log(2.0));
    const DigammaConstant& dc = digamma_constant();
    double worst_dg = 0.0;
    json rows = json::array();
    for (double tau : {0.25, 1.0 / 3.0, 0.5}) {
        const PsiValue closed = psi_eval(1.0, 0.0, tau);
        const PsiValue general = psi_mellin(1.0, 0.0, tau);
        const double e = std::abs(closed.value - general.value);
        worst_dg = std::max(worst_dg, e);
        rows.push_back({{"tau", tau}, {"branch", closed.branch}, {"closed", closed.value.real()}, {"mellin", general.value.real()}, {"error", e}});
    }
    r.data["psi_000_max"] = worst0;
    r.data["psi_half_error"] = half;
    r.data["digamma"] = rows;
    r.data["D"] = dc.value;
    r.data["D_minus_2gamma"] = dc.value - 2.0 * std::numbers::egamma;
    // three tolerances (1e-9, 1e-9, 1e-8): report the worst error/tolerance ratio
    SuiteResult out = finish(r, std::max({worst0 / 1e-9, half / 1e-9, worst_dg / 1e-8}), 1.0);
    out.detail = "worst error/tol ratio " + fmt(out.error) + "; psi(l,0,0) " + fmt(worst0) + ", psi(1,1/2,0)-2log2 " + fmt(half) +
                 ", digamma vs mellin " + fmt(worst_dg) + ", D = " + std::to_string(dc.value) + " (2 gamma + " +
                 fmt(dc.value - 2.0 * std::numbers::egamma) + ")";
    return out;
}

std::vector<GroupPtr> small_groups()
{
    return {FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)};
}

/// kappa + d h - h d for an equivariant h of degree -2.
Contraction perturbed(const GammaComplex& c, const Contraction& k, std::mt19937_64& rng)
{
    auto h = [&](int p) -> Mat {
        if (!c.in_range(p) || !c.in_range(p - 2)) return Mat::Zero(c.dim(p - 2), c.dim(p));
        return random::equivariant(c.space(p), c.space(p - 2), rng);
    };
    std::vector<Mat> hs;
    for (int p = c.lo(); p <= c.hi() + 1; ++p) hs.push_back(h(p));
    auto hat = [&](int p) -> const Mat& { return hs[p - c.lo()]; };
    Contraction out = k;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        Mat add = Mat::Zero(c.dim(p - 1), c.dim(p));
        if (c.in_range(p - 2)) add += c.differential(p - 2) * hat(p);
        if (p < c.hi()) add -= hat(p + 1) * c.differential(p);
        out.kappa[p - c.lo()] += add;
    }
    return out;
}

// 4. Contraction independence and metric independence in C^.
SuiteResult contraction(std::uint64_t seed)
{
    SuiteResult r;
    std::mt19937_64 rng(seed ^ 0x4444);
    const auto groups = small_groups();
    std::uniform_int_distribution<int> ndeg(2, 4);
    double worst_k = 0.0, worst_mu = 0.0, moved = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GroupPtr& g = groups[i % groups.size()];
        random::ComplexOptions opt;
        opt.degrees = ndeg(rng);
        opt.max_dim = 16;
        const GammaComplex c = random::complex(g, opt, rng);
        const Contraction k1 = hodge_contraction(c);
        const Contraction k2 = perturbed(c, k1, rng);
        worst_k = std::max(worst_k, torsion_acyclic(c, k1).distance(torsion_acyclic(c, k2)));
    }
    // G0 per group: the whole group, or Z2 in Z4 and A3 in S3
    std::vector<std::pair<GroupPtr, Subgroup>> pairs;
    for (const GroupPtr& g : groups) pairs.emplace_back(g, Subgroup::whole(g));
    const GroupPtr z4 = FiniteGroup::cyclic(4);
    pairs.emplace_back(z4, Subgroup::generated(z4, {2}));
    const GroupPtr s3 = FiniteGroup::symmetric(3);
    for (const Subgroup& h : all_subgroups(s3))
        if (h.order() == 3) pairs.emplace_back(s3, h);
    for (int i = 0; i < 50; ++i) {
        const auto& [g, g0] = pairs[i % pairs.size()];
        random::ComplexOptions opt;
        opt.degrees = ndeg(rng);
        opt.max_dim = 16;
        opt.harmonic_pieces = 1 + i % 3;
        opt.harmonic_pool = random::pulled_back_irreducibles(g0);
        const GammaComplex c = random::complex(g, opt, rng);
        const CohomologyMetric m1 = random::invariant_metric(c, rng);
        const CohomologyMetric m2 = random::invariant_metric(c, rng);
        worst_mu = std::max(worst_mu, hat_torsion(c, m1, g0).distance(hat_torsion(c, m2, g0)));
        moved = std::max(moved, torsion_with_cohomology(c, m1).distance(torsion_with_cohomology(c, m2)));
    }
    r.data["contraction_max"] = worst_k;
    r.data["metric_hat_max"] = worst_mu;
    r.data["metric_raw_change_max"] = moved;
    return finish(r, std::max(worst_k, worst_mu), 1e-8,
                  "contractions " + fmt(worst_k) + ", metrics " + fmt(worst_mu) + " (raw rho moved by up to " + fmt(moved) + ")");
}

std::vector<std::pair<std::string, CWModel>> builtin_models()
{
    std::vector<std::pair<std::string, CWModel>> out;
    const GroupPtr z4 = FiniteGroup::cyclic(4), z6 = FiniteGroup::cyclic(6);
    const double a = 0.3;
    out.emplace_back("Z4 circle n=4 a=0.3", build_circle_over(z4, 4, 1, scalar(phase(a)), scalar(phase(a / 4))));
    out.emplace_back("Z4 circle n=4 a=0", build_circle_over(z4, 4, 1, scalar(1.0), scalar(1.0)));
    out.emplace_back("Z4 circle n=2 a=0.3", build_circle_over(z4, 2, 1, scalar(phase(a)), scalar(phase((a + 0.5) / 2))));
    out.emplace_back("Z4 circle x D1", product_with_disk(out[0].second, 1));
    const CWModel c6 = build_circle_over(z6, 6, 1, scalar(phase(a)), scalar(phase(a / 6)));
    const CWModel c3 = build_circle_over(z6, 3, 1, scalar(phase(a)), scalar(phase((a + 0.5) / 3)));
    out.emplace_back("Z6 circle n=6 a=0.3", c6);
    out.emplace_back("Z6 circle n=3 a=0.3", c3);
    out.emplace_back("Z6 circle n=6 k=5 a=0", build_circle_over(z6, 6, 5, scalar(1.0), scalar(1.0)));
    out.emplace_back("Z6 union", disjoint_union(c6, c3));
    const CWModel poly = build_dihedral_polygon(3);
    const GroupPtr s3 = poly.cells.group;
    out.emplace_back("S3 hexagon", poly);
    for (const Subgroup& h : all_subgroups(s3)) {
        if (h.order() == 2 && out.size() < 10)
            out.emplace_back("S3/Z2 orbit", build_orbit(s3, h, UnitaryRep::trivial(h.as_group())));
        if (h.order() == 3)
            out.emplace_back("S3/Z3 orbit, nontrivial character",
                             build_orbit(s3, h, UnitaryRep::from_character(character_table(h.as_group())[1])));
    }
    return out;
}

// 5. Restriction and conjugation laws.
SuiteResult restriction(std::uint64_t)
{
    SuiteResult r;
    double worst_res = 0.0, worst_conj = 0.0;
    int checks = 0;
    json models = json::array();
    for (const auto& [name, x] : builtin_models()) {
        const GroupPtr& g = x.cells.group;
        const ClassFunction full = torsion_cw(x.cells, x.sheaf);
        for (const Subgroup& h : all_subgroups(g)) {
            const Embedding& iota = h.inclusion();
            const CWModel xr = restrict_model(x, iota);
            const ClassFunction on_h = torsion_cw(xr.cells, xr.sheaf);
            worst_res = std::max(worst_res, restrict_class_function(full, iota).distance(on_h));
            for (int e = 0; e < g->order(); ++e) {
                const CWModel xc = restrict_model(x, iota.twisted(e));
                worst_conj = std::max(worst_conj, torsion_cw(xc.cells, xc.sheaf).distance(on_h));
                ++checks;
            }
        }
        models.push_back(name);
    }
    r.data["models"] = models;
    r.data["restriction_max"] = worst_res;
    r.data["conjugation_max"] = worst_conj;
    return finish(r, std::max(worst_res, worst_conj), 1e-9,
                  std::to_string(checks) + " conjugations; restriction " + fmt(worst_res) + ", conjugation " + fmt(worst_conj));
}

// 6. Spectral-sequence additivity.
SuiteResult spectral(std::uint64_t seed)
{
    SuiteResult r;
    std::mt19937_64 rng(seed ^ 0x6666);
    const auto groups = small_groups();
    std::uniform_int_distribution<int> ndeg(2, 4), nlev(2, 4), nharm(0, 2);
    double worst = 0.0;
    int nontrivial = 0, with_ss = 0, with_psi = 0;
    for (int i = 0; i < 100; ++i) {
        random::FilteredOptions opt;
        opt.degrees = ndeg(rng);
        opt.levels = nlev(rng);
        opt.max_dim = 20;
        opt.harmonic_pieces = nharm(rng);
        const FilteredComplex fc = random::filtered(groups[i % groups.size()], opt, rng);
        const SpectralReport rep = spectral_decomposition(fc);
        worst = std::max(worst, rep.residual);
        const bool ss = norm(rep.ss_term) > 1e-6, ps = norm(rep.psi_term) > 1e-6;
        with_ss += ss;
        with_psi += ps;
        nontrivial += ss && ps;
    }
    r.data["residual_max"] = worst;
    r.data["nonzero_ss"] = with_ss;
    r.data["nonzero_psi"] = with_psi;
    r.data["nonzero_both"] = nontrivial;
    SuiteResult out = finish(r, worst, 1e-8, std::to_string(nontrivial) + "/100 with nonzero ss and psi terms");
    if (nontrivial < 10) {
        out.passed = false;
        out.detail += " (need >= 10)";
    }
    return out;
}

struct TorusCase {
    TorusSpace x;
    std::vector<TorusElement> ts;
};

std::vector<TorusElement> rank1_elements()
{
    std::vector<TorusElement> ts;
    for (auto [n, d] : std::vector<std::pair<long long, long long>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 6}, {5, 6}})
        ts.emplace_back(std::vector<std::pair<long long, long long>>{{n, d}});
    return ts;
}

std::vector<TorusElement> rank2_elements()
{
    std::vector<TorusElement> ts;
    for (auto [a, b] : std::vector<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>>{
             {{1, 2}, {0, 1}}, {{0, 1}, {1, 2}}, {{1, 2}, {1, 2}}, {{1, 3}, {0, 1}}, {{1, 3}, {2, 3}}, {{1, 4}, {1, 2}}, {{1, 4}, {1, 4}}, {{1, 6}, {1, 3}}})
        ts.emplace_back(std::vector<std::pair<long long, long long>>{a, b});
    return ts;
}

// 7. Cell-sum formula on assembled torus models.
SuiteResult cellsum(std::uint64_t)
{
    SuiteResult r;
    std::vector<TorusCase> cases{
        {TorusSpace::circle({1}, 0.3), rank1_elements()},
        {TorusSpace::circle({1}, 0.0), rank1_elements()},
        {TorusSpace::circle({1}, 0.3, 1), rank1_elements()},
        {TorusSpace::circle({2}, 0.5), rank1_elements()},
        {TorusSpace::circle({1}, 0.3).with_disk(1), rank1_elements()},
        {TorusSpace::disjoint({TorusSpace::circle({1}, 0.3), TorusSpace::circle({1}, 0.3).with_disk(1)}), rank1_elements()},
        {TorusSpace::disjoint({TorusSpace::point(1), TorusSpace::circle({1}, 0.3)}), rank1_elements()},
        {TorusSpace::point(1), rank1_elements()},
        {TorusSpace::s3_join(), rank2_elements()},
        {TorusSpace::free_t2(), rank2_elements()},
        {TorusSpace::circle({1, 1}, 0.3), rank2_elements()},
    };
    double worst = 0.0, worst_vanish = 0.0;
    json rows = json::array();
    for (const auto& tc : cases) {
        const TorusCellSpec spec = cell_spec(tc.x);
        double model_worst = 0.0;
        for (const TorusElement& t : tc.ts) {
            const ClassFunction f = torsion_on_cyclic(tc.x, t);
            const ClassFunction hat = hat_value(f, Subgroup::whole(f.group()));
            const long long n = t.order();
            std::vector<cplx> cells(n);
            cplx mean = 0.0;
            for (long long j = 0; j < n; ++j) mean += (cells[j] = cell_sum(spec, t.power(j)));
            mean /= static_cast<double>(n);
            for (long long j = 0; j < n; ++j)
                model_worst = std::max(model_worst, std::abs(hat(static_cast<int>(j)) - kAnalyticNormalization * (cells[j] - mean)));
            if (tc.x.kind == TorusSpace::Kind::Point || tc.x.kind == TorusSpace::Kind::FreeT2)
                worst_vanish = std::max(worst_vanish, norm(hat));
        }
        worst = std::max(worst, model_worst);
        rows.push_back({{"space", tc.x.name()}, {"max_error", model_worst}});
    }
    r.data["models"] = rows;
    r.data["vanishing_max"] = worst_vanish;
    return finish(r, std::max(worst, worst_vanish), 1e-8, "codim != 1 orbits give " + fmt(worst_vanish));
}

// 8. Section property.
SuiteResult section(std::uint64_t seed)
{
    SuiteResult r;
    std::mt19937_64 rng(seed ^ 0x8888);
    std::uniform_int_distribution<long long> den(1, 6);
    std::vector<TorusSpace> spaces{TorusSpace::circle({1}, 0.0),      TorusSpace::circle({1}, 0.3),
                                   TorusSpace::circle({1}, 0.5),      TorusSpace::circle({1}, 0.3, 1),
                                   TorusSpace::circle({2}, 0.3),      TorusSpace::circle({1}, 0.0).with_disk(1),
                                   TorusSpace::circle({1}, 0.3, -1)};
    double worst = 0.0;
    int checks = 0;
    for (const TorusSpace& x : spaces)
        for (int s = 0; s < 20; ++s) {
            const long long d = den(rng);
            std::uniform_int_distribution<long long> num(0, d - 1);
            const TorusElement t({{num(rng), d}});
            const cplx base = torsion_at(x, t);
            for (long long k = 2; k <= 4; ++k) {
                worst = std::max(worst, std::abs(torsion_at_via_root(x, t, k) - base));
                ++checks;
            }
        }
    r.data["checks"] = checks;
    return finish(r, worst, 1e-9, std::to_string(checks) + " overgroup evaluations");
}

// 9. S^3 = SO(4)/SO(3): CW torsion minus half the Weyl sum is one constant.
SuiteResult symmetric(std::uint64_t)
{
    SuiteResult r;
    const auto fam = SymmetricSpaceFamily::so_even(2, 1);
    std::vector<TorusElement> ts;
    for (auto [a, b] : std::vector<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>>{
             {{1, 2}, {0, 1}}, {{0, 1}, {1, 2}}, {{1, 2}, {1, 2}}, {{1, 3}, {0, 1}}, {{1, 3}, {1, 3}},
             {{1, 3}, {2, 3}}, {{1, 4}, {0, 1}}, {{1, 4}, {1, 2}}, {{1, 4}, {3, 4}}, {{3, 4}, {1, 4}}})
        ts.emplace_back(std::vector<std::pair<long long, long long>>{a, b});
    std::vector<cplx> diffs;
    json rows = json::array();
    for (const TorusElement& t : ts) {
        const cplx cw = torsion_at(TorusSpace::s3_join(), t);
        const double w = symmetric_space_torsion(fam, t);
        diffs.push_back(cw - kAnalyticNormalization * w);
        rows.push_back({{"t", t.key()}, {"order", t.order()}, {"cw", {cw.real(), cw.imag()}}, {"weyl", w},
                        {"difference", {diffs.back().real(), diffs.back().imag()}}});
    }
    double spread = 0.0;
    cplx mean = 0.0;
    for (const cplx& a : diffs) {
        mean += a;
        for (const cplx& b : diffs) spread = std::max(spread, std::abs(a - b));
    }
    mean /= static_cast<double>(diffs.size());
    // Weyl group orders by enumeration
    bool orders_ok = true;
    json orders = json::object();
    for (int m = 2; m <= 4; ++m) {
        const long long got = static_cast<long long>(weyl_group(SymmetricSpaceFamily::so_even(m, 1)).w_g.size());
        long long want = 1LL << (m - 1);
        for (int i = 2; i <= m; ++i) want *= i;
        orders["SO(" + std::to_string(2 * m) + ")"] = got;
        orders_ok = orders_ok && got == want;
    }
    const long long su3 = static_cast<long long>(weyl_group(SymmetricSpaceFamily::su3_so3()).w_g.size());
    orders["SU(3)"] = su3;
    orders_ok = orders_ok && su3 == 6;
    r.data["points"] = rows;
    r.data["constant"] = {mean.real(), mean.imag()};
    r.data["weyl_orders"] = orders;
    SuiteResult out = finish(r, spread, 1e-6,
                             "constant " + std::to_string(mean.real()) + (std::abs(mean.imag()) > 1e-12 ? " + " + std::to_string(mean.imag()) + "i" : "") +
                                 ", Weyl orders " + (orders_ok ? "ok" : "WRONG"));
    out.passed = out.passed && orders_ok;
    return out;
}

// 10. Rank condition.
SuiteResult rank(std::uint64_t seed)
{
    SuiteResult r;
    std::mt19937_64 rng(seed ^ 0xaaaa);
    std::uniform_int_distribution<long long> den(1, 8);
    int families = 0, evaluations = 0;
    double worst = 0.0;
    json names = json::array();
    for (const std::string& name : SymmetricSpaceFamily::listed_names()) {
        const auto f = SymmetricSpaceFamily::listed(name);
        if (f.rank_condition()) continue;
        ++families;
        names.push_back(name);
        for (int s = 0; s < 10; ++s) {
            std::vector<std::pair<long long, long long>> c;
            for (int i = 0; i < f.torus_rank(); ++i) {
                const long long d = den(rng);
                c.push_back({std::uniform_int_distribution<long long>(0, d - 1)(rng), d});
            }
            const double v = symmetric_space_torsion(f, TorusElement(c));
            if (v != 0.0) worst = std::max(worst, std::abs(v));
            ++evaluations;
        }
    }
    r.data["families"] = names;
    SuiteResult out = finish(r, worst, 0.0, std::to_string(families) + " families, " + std::to_string(evaluations) + " evaluations, exact zero required");
    return out;
}

using Suite = std::function<SuiteResult(std::uint64_t)>;

const std::vector<std::pair<std::string, Suite>>& registry()
{
    static const std::vector<std::pair<std::string, Suite>> suites{
        {"circle", circle},       {"equivariant_circle", equivariant_circle},
        {"psi", psi_values},      {"contraction", contraction},
        {"restriction", restriction}, {"spectral", spectral},
        {"cellsum", cellsum},     {"section", section},
        {"symmetric", symmetric}, {"rank", rank},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed)
{
    const auto& reg = registry();
    for (size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].first != name) continue;
        const auto start = std::chrono::steady_clock::now();
        SuiteResult r;
        try {
            r = reg[i].second(seed);
        } catch (const std::exception& e) {
            r = SuiteResult{};
            r.passed = false;
            r.error = std::numeric_limits<double>::infinity();
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = static_cast<int>(i) + 1;
        r.name = name;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    fail(ErrorKind::Domain, "unknown suite: " + name);
}

std::vector<SuiteResult> run_all(std::uint64_t seed)
{
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
    return out;
}

json to_json(const SuiteResult& r)
{
    json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["error"] = std::isfinite(r.error) ? json(r.error) : json(nullptr);
    j["tolerance"] = r.tolerance;
    j["detail"] = r.detail;
    j["seconds"] = r.seconds;
    j["data"] = r.data;
    return j;
}

}  // namespace torsionlab::selftest
