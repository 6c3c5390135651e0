#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsionlab/error.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/selftest.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/torus.hpp"
#include "torsionlab/weyl.hpp"
#include "torsionlab/zeta.hpp"

using namespace torsionlab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitNotAcyclic = 4;
constexpr int kExitMismatch = 5;

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Precision:
    case ErrorKind::Singular: return kExitPrecision;
    case ErrorKind::NotAcyclic:
    case ErrorKind::NotQuasiIso: return kExitNotAcyclic;
    default: return kExitDomain;
    }
}

/// Rows of scalar cells, rendered as JSON, CSV or an aligned text table.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json meta = json::object();

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string cell_text(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void emit(const Table& t, const std::string& format, const json& full = nullptr)
{
    if (format == "json") {
        json j = t.meta;
        if (!full.is_null()) {
            for (auto it = full.begin(); it != full.end(); ++it) j[it.key()] = it.value();
        } else {
            json rows = json::array();
            for (const auto& r : t.rows) {
                json o;
                for (size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
                rows.push_back(o);
            }
            j["rows"] = rows;
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        for (size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << csv_escape(t.columns[i]);
        std::cout << "\n";
        for (const auto& r : t.rows) {
            for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_escape(cell_text(r[i]));
            std::cout << "\n";
        }
        return;
    }
    for (auto it = t.meta.begin(); it != t.meta.end(); ++it) std::cout << it.key() << ": " << cell_text(it.value()) << "\n";
    std::vector<size_t> w(t.columns.size());
    for (size_t i = 0; i < t.columns.size(); ++i) w[i] = t.columns[i].size();
    for (const auto& r : t.rows)
        for (size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], cell_text(r[i]).size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "  " : "") << cells[i] << std::string(w[i] - cells[i].size(), ' ');
        std::cout << "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) {
        std::vector<std::string> cells;
        for (const auto& v : r) cells.push_back(cell_text(v));
        line(cells);
    }
}

cplx parse_complex(const std::string& s)
{
    // "re" or "re,im"
    std::stringstream ss(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    ss >> re;
    if (ss.fail()) fail(ErrorKind::Domain, "cannot parse complex number '" + s + "'");
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) fail(ErrorKind::Domain, "cannot parse complex number '" + s + "'");
    }
    return {re, im};
}

TorusElement parse_torus(const std::string& s)
{
    // "1/4,0" -> (1/4, 0/1)
    std::vector<std::pair<long long, long long>> c;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto slash = part.find('/');
        try {
            if (slash == std::string::npos) c.push_back({std::stoll(part), 1});
            else c.push_back({std::stoll(part.substr(0, slash)), std::stoll(part.substr(slash + 1))});
        } catch (const std::exception&) {
            fail(ErrorKind::Domain, "cannot parse torus element '" + s + "'");
        }
    }
    if (c.empty()) fail(ErrorKind::Domain, "empty torus element");
    return TorusElement(c);
}

json torus_to_json(const TorusElement& t)
{
    json a = json::array();
    for (auto [n, d] : t.coords()) a.push_back({n, d});
    return a;
}

std::string torus_text(const TorusElement& t)
{
    std::string s;
    for (auto [n, d] : t.coords()) s += (s.empty() ? "" : ",") + std::to_string(n) + "/" + std::to_string(d);
    return s;
}

Table class_function_table(const ClassFunction& f)
{
    Table t;
    t.columns = {"class", "representative", "size", "re", "im"};
    const auto& cls = f.group()->classes();
    for (size_t c = 0; c < cls.size(); ++c) {
        const cplx v = f.on_class(static_cast<int>(c));
        t.add({static_cast<int>(c), cls[c].front(), cls[c].size(), v.real(), v.imag()});
    }
    return t;
}

struct Common {
    std::string format = "pretty";
    double eps = 0.0;
};

ZetaAccuracy accuracy(const Common& c)
{
    ZetaAccuracy acc = ZetaAccuracy::from_env();
    if (c.eps > 0.0) acc.eps = c.eps;
    return acc;
}

struct PsiArgs {
    std::string lambda = "1";
    double lambda_phase = std::nan("");
    double a = 0.0;
    double tau = 0.0;
    bool mellin = false;
};

int cmd_psi(const PsiArgs& p, const Common& c)
{
    const cplx lambda = std::isnan(p.lambda_phase) ? parse_complex(p.lambda) : std::polar(1.0, 2.0 * std::numbers::pi * p.lambda_phase);
    const ZetaAccuracy acc = accuracy(c);
    const PsiValue v = p.mellin ? psi_mellin(lambda, p.a, p.tau, acc) : psi_eval(lambda, p.a, p.tau, acc);
    Table t;
    t.columns = {"lambda_re", "lambda_im", "a", "tau", "re", "im", "branch", "error_bound"};
    t.add({lambda.real(), lambda.imag(), p.a, p.tau, v.value.real(), v.value.imag(), v.branch, v.error_bound});
    t.meta["eps"] = acc.eps;
    emit(t, c.format);
    return 0;
}

struct ComplexArgs {
    std::string path;
    bool hat = false;
    std::vector<int> gamma0;
    bool standard_metric = false;
};

int cmd_complex(const ComplexArgs& a, const Common& c)
{
    const io::ComplexInput in = io::complex_from_json(io::read_file(a.path));
    const GammaComplex& cx = in.complex;
    ClassFunction rho;
    std::string metric;
    if (in.metric) {
        rho = torsion_with_cohomology(cx, *in.metric);
        metric = "cocycles";
    } else if (a.standard_metric) {
        rho = torsion_with_cohomology(cx, CohomologyMetric::standard(cx));
        metric = "standard";
    } else {
        rho = torsion_acyclic(cx);
        metric = "none (acyclic)";
    }
    if (a.hat) {
        const Subgroup g0 = a.gamma0.empty() ? Subgroup::whole(cx.group()) : Subgroup::generated(cx.group(), a.gamma0);
        rho = hat_project(rho, g0);
        // hat_torsion also insists that G0 acts trivially on cohomology
        if (cx.betti() != std::vector<int>(cx.size(), 0))
            rho = hat_torsion(cx, in.metric ? *in.metric : CohomologyMetric::standard(cx), g0);
    }
    Table t = class_function_table(rho);
    t.meta["schema_version"] = io::kSchemaVersion;
    t.meta["metric"] = metric;
    t.meta["hat"] = a.hat;
    json full = t.meta;
    full["torsion"] = io::class_function_to_json(rho);
    emit(t, c.format, c.format == "json" ? full : json(nullptr));
    return 0;
}

struct CircleArgs {
    int n = 1;
    int k = 0;
    double a = 0.0;
    std::string lambda = "1";
    double lambda_phase = std::nan("");
    double tol = 1e-6;
};

cplx circle_lambda(const CircleArgs& a)
{
    return std::isnan(a.lambda_phase) ? parse_complex(a.lambda) : std::polar(1.0, 2.0 * std::numbers::pi * a.lambda_phase);
}

CWModel circle_model(const CircleArgs& a)
{
    require(a.a >= 0.0 && a.a < 1.0, ErrorKind::Domain, "--a must lie in [0, 1)");
    const Mat u = Mat::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * a.a));
    return build_circle(a.n, a.k, u, Mat::Constant(1, 1, circle_lambda(a)));
}

ClassFunction circle_torsion(const CWModel& x)
{
    const GammaComplex c = x.complex();
    if (c.is_acyclic()) return torsion_acyclic(c);
    return torsion_with_cohomology(c, integral_metric(x));
}

int cmd_circle(const CircleArgs& a, const Common& c)
{
    const CWModel x = circle_model(a);
    const ClassFunction rho = circle_torsion(x);
    Table t = class_function_table(rho);
    t.meta["group_order"] = x.cells.group->order();
    t.meta["acyclic"] = x.complex().is_acyclic();
    emit(t, c.format);
    return 0;
}

int cmd_compare(const CircleArgs& a, const Common& c)
{
    const CWModel x = circle_model(a);
    const int order = x.cells.group->order();
    const cplx rho = circle_torsion(x)(1 % order);
    CircleOrbitData d;
    d.lambda = Mat::Constant(1, 1, circle_lambda(a));
    d.a = Mat::Constant(1, 1, a.a);
    d.tau = a.n ? static_cast<double>(a.k) / a.n : 0.0;
    const cplx an = psi_trace(d);
    const double gap = std::abs(rho - kAnalyticNormalization * an);
    Table t;
    t.columns = {"n", "k", "a", "group_order", "combinatorial_re", "combinatorial_im", "analytic_re", "analytic_im", "normalized_gap", "match"};
    t.add({a.n, a.k, a.a, order, rho.real(), rho.imag(), an.real(), an.imag(), gap, gap <= a.tol});
    t.meta["normalization"] = "combinatorial = 0.5 * analytic";
    t.meta["tolerance"] = a.tol;
    emit(t, c.format);
    return gap <= a.tol ? 0 : kExitMismatch;
}

int cmd_filtered(const std::string& path, const Common& c)
{
    const FilteredComplex fc = io::filtered_from_json(io::read_file(path));
    const SpectralReport r = spectral_decomposition(fc);
    Table t;
    t.columns = {"class", "representative", "total", "cell_term", "ss_term", "psi_term", "rhs"};
    const auto& cls = fc.complex().group()->classes();
    for (size_t k = 0; k < cls.size(); ++k) {
        const int i = static_cast<int>(k);
        auto s = [&](const ClassFunction& f) {
            const cplx v = f.on_class(i);
            return std::abs(v.imag()) < 1e-14 ? json(v.real()) : json(cell_text(v.real()) + (v.imag() < 0 ? "" : "+") + cell_text(v.imag()) + "i");
        };
        t.add({i, cls[k].front(), s(r.total), s(r.cell_term), s(r.ss_term), s(r.psi_term), s(r.rhs)});
    }
    t.meta["residual"] = r.residual;
    t.meta["pages"] = r.pages;
    json full = t.meta;
    full["total"] = io::class_function_to_json(r.total);
    full["cell_term"] = io::class_function_to_json(r.cell_term);
    full["ss_term"] = io::class_function_to_json(r.ss_term);
    full["psi_term"] = io::class_function_to_json(r.psi_term);
    full["page_dims"] = r.dims;
    emit(t, c.format, c.format == "json" ? full : json(nullptr));
    return r.residual <= 1e-8 ? 0 : kExitMismatch;
}

SymmetricSpaceFamily parse_family(const std::string& s)
{
    if (s == "su3") return SymmetricSpaceFamily::su3_so3();
    if (s.rfind("so:", 0) == 0) {
        int m = 0, p = 0;
        if (std::sscanf(s.c_str() + 3, "%d,%d", &m, &p) != 2) fail(ErrorKind::Domain, "expected so:m,p");
        return SymmetricSpaceFamily::so_even(m, p);
    }
    return SymmetricSpaceFamily::listed(s);
}

int cmd_symmetric(const std::string& family, const std::vector<std::string>& ts, bool list, const Common& c)
{
    if (list) {
        Table t;
        t.columns = {"family", "rank_G", "rank_K", "rank_condition"};
        t.add({"so:m,p", "m", "m-1", true});
        t.add({"su3", 2, 1, true});
        for (const auto& name : SymmetricSpaceFamily::listed_names()) {
            const auto f = SymmetricSpaceFamily::listed(name);
            t.add({name, f.rank_g, f.rank_k, f.rank_condition()});
        }
        emit(t, c.format);
        return 0;
    }
    const SymmetricSpaceFamily f = parse_family(family);
    const bool s3 = f.tag == SymmetricSpaceFamily::Tag::SOEven && f.m == 2 && f.p == 1;
    Table t;
    t.columns = {"t", "order", "value"};
    if (s3) t.columns.insert(t.columns.end(), {"cw_join", "cw_minus_half_value"});
    json rows = json::array();
    for (const auto& s : ts) {
        const TorusElement e = parse_torus(s);
        const double v = symmetric_space_torsion(f, e);
        std::vector<json> row{torus_text(e), e.order(), v};
        json r;
        r["t"] = torus_to_json(e);
        r["value"] = v;
        r["branch"] = f.rank_condition() ? "weyl" : "rank-vanishing";
        r["normalization"] = "analytic (combinatorial = 0.5 * analytic)";
        if (s3) {
            const cplx cw = torsion_at(TorusSpace::s3_join(), e);
            row.push_back(cw.real());
            row.push_back(cw.real() - kAnalyticNormalization * v);
            r["cw_join"] = cw.real();
        }
        t.add(row);
        rows.push_back(r);
    }
    t.meta["family"] = f.name();
    json full = t.meta;
    full["values"] = rows;
    emit(t, c.format, c.format == "json" ? full : json(nullptr));
    return 0;
}

int cmd_selftest(std::uint64_t seed, const std::vector<std::string>& suites, const Common& c)
{
    const auto names = suites.empty() ? selftest::suite_names() : suites;
    Table t;
    t.columns = {"id", "suite", "passed", "error", "tolerance", "seconds", "detail"};
    json results = json::array();
    bool ok = true;
    for (const auto& n : names) {
        const auto r = selftest::run_suite(n, seed);
        ok = ok && r.passed;
        t.add({r.id, r.name, r.passed, std::isfinite(r.error) ? json(r.error) : json("inf"), r.tolerance, r.seconds, r.detail});
        results.push_back(selftest::to_json(r));
    }
    t.meta["seed"] = seed;
    t.meta["passed"] = ok;
    json full = t.meta;
    full["suites"] = results;
    emit(t, c.format, c.format == "json" ? full : json(nullptr));
    return ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Equivariant Reidemeister and analytic torsion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--eps", common.eps, "Zeta accuracy target (default: TORSIONLAB_ACCURACY or 1e-10)");

    PsiArgs psi;
    auto* p = app.add_subcommand("psi", "Evaluate psi(lambda, a, tau)");
    p->add_option("--lambda", psi.lambda, "Fiber twist as re[,im]");
    p->add_option("--lambda-phase", psi.lambda_phase, "Fiber twist exp(2 pi i x)");
    p->add_option("--a", psi.a, "Holonomy exponent in [0, 1)");
    p->add_option("--tau", psi.tau, "Rotation in [0, 1)");
    p->add_flag("--mellin", psi.mellin, "Force the Mellin-split evaluation");

    ComplexArgs cx;
    auto* cc = app.add_subcommand("complex", "Torsion class function of a complex given as JSON");
    cc->add_option("input", cx.path, "Complex JSON file")->required();
    cc->add_flag("--hat", cx.hat, "Print the representative modulo pullbacks from G/G0");
    cc->add_option("--gamma0", cx.gamma0, "Generators of G0 (default: the whole group)");
    cc->add_flag("--standard-metric", cx.standard_metric, "Use harmonic representatives when no cocycles are given");

    CircleArgs circ;
    auto* ci = app.add_subcommand("circle", "Combinatorial torsion of an equivariant circle");
    auto* co = app.add_subcommand("compare", "Combinatorial vs analytic torsion of an equivariant circle");
    for (auto* sc : {ci, co}) {
        sc->add_option("--n", circ.n, "Number of vertices")->check(CLI::PositiveNumber);
        sc->add_option("--k", circ.k, "Rotation step");
        sc->add_option("--a", circ.a, "Holonomy exponent: U = exp(2 pi i a)");
        sc->add_option("--lambda", circ.lambda, "Generator fiber action as re[,im]");
        sc->add_option("--lambda-phase", circ.lambda_phase, "Generator fiber action exp(2 pi i x)");
    }
    co->add_option("--tol", circ.tol, "Allowed normalized discrepancy");

    std::string fpath;
    auto* fi = app.add_subcommand("filtered", "Spectral-sequence decomposition of a filtered complex");
    fi->add_option("input", fpath, "Filtration JSON file")->required();

    std::string family = "so:2,1";
    std::vector<std::string> tlist;
    bool list = false;
    auto* sy = app.add_subcommand("symmetric", "Weyl-formula torsion of symmetric spaces");
    sy->add_option("--family", family, "so:m,p | su3 | a listed name such as SU(8)/Sp(4)");
    sy->add_option("--t", tlist, "Torus elements as comma separated fractions, e.g. 1/4,0");
    sy->add_flag("--list", list, "List known families");

    std::uint64_t seed = selftest::kDefaultSeed;
    std::vector<std::string> suites;
    auto* st = app.add_subcommand("selftest", "Run the property suites");
    st->add_option("--seed", seed, "Random seed");
    st->add_option("--suite", suites, "Suites to run (default: all)")->check(CLI::IsMember(selftest::suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    try {
        // psi_rational and friends read the target from the environment
        if (common.eps > 0.0) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", common.eps);
            setenv("TORSIONLAB_ACCURACY", buf, 1);
        }
        if (*p) return cmd_psi(psi, common);
        if (*cc) return cmd_complex(cx, common);
        if (*ci) return cmd_circle(circ, common);
        if (*co) return cmd_compare(circ, common);
        if (*fi) return cmd_filtered(fpath, common);
        if (*sy) return cmd_symmetric(family, tlist, list, common);
        if (*st) return cmd_selftest(seed, suites, common);
    } catch (const NotAcyclicError& e) {
        std::cerr << "error: " << e.what() << " (betti:";
        for (int b : e.betti()) std::cerr << " " << b;
        std::cerr << ")\n";
        return kExitNotAcyclic;
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved_bound() << ")\n";
        return kExitPrecision;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
