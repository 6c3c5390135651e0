#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "torsionlab/character.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/kernels.hpp"
#include "torsionlab/random.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/torus.hpp"
#include "torsionlab/weyl.hpp"
#include "torsionlab/zeta.hpp"

using namespace torsionlab;

namespace {

Mat scalar(cplx c) { return Mat::Constant(1, 1, c); }

Mat column(std::initializer_list<cplx> xs)
{
    Mat m(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index i = 0;
    for (cplx x : xs) m(i++, 0) = x;
    return m;
}

}  // namespace

TEST_SUITE("grouprep") {

TEST_CASE("character tables satisfy the orthogonality relations")
{
    for (const GroupPtr& g : {FiniteGroup::cyclic(5), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::symmetric(4)}) {
        const auto t = character_table(g);
        CHECK(static_cast<int>(t.size()) == g->class_count());
        int sum_sq = 0;
        for (const auto& pi : t) sum_sq += pi.dimension * pi.dimension;
        CHECK(sum_sq == g->order());
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = 0; j < t.size(); ++j)
                CHECK(std::abs(inner(t[i].character, t[j].character) - cplx(i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("S3 has irreducible dimensions 1, 1, 2 and D4 has five classes")
{
    auto t = character_table(FiniteGroup::symmetric(3));
    std::vector<int> dims;
    for (const auto& pi : t) dims.push_back(pi.dimension);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 1, 2});
    CHECK(FiniteGroup::dihedral(4)->class_count() == 5);
}

TEST_CASE("matrix irreducibles are unitary homomorphisms with the tabulated characters")
{
    const GroupPtr g = FiniteGroup::symmetric(4);
    const auto& reps = irreducible_reps(g);
    const auto table = character_table(g);
    REQUIRE(reps.size() == table.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        CHECK(kernels::homomorphism_defect(reps[i], kernels::Exec::Serial) < 1e-9);
        CHECK(reps[i].character().distance(table[i].character) < 1e-9);
    }
}

TEST_CASE("hat projection on Z4 modulo pullbacks from Z4/Z2")
{
    const GroupPtr z4 = FiniteGroup::cyclic(4);
    const Subgroup z2 = Subgroup::generated(z4, {2});
    CHECK(quotient_class_count(z2) == 2);
    Vec v(4);
    v << 1.0, 0.0, 0.0, 0.0;
    const ClassFunction h = hat_project(ClassFunction(z4, v), z2);
    // f minus its average over each coset {0,2}, {1,3}
    CHECK(std::abs(h(0) - 0.5) < 1e-12);
    CHECK(std::abs(h(2) + 0.5) < 1e-12);
    CHECK(std::abs(h(1)) < 1e-12);
    CHECK(std::abs(h(3)) < 1e-12);
}

TEST_CASE("malformed Cayley tables are rejected")
{
    CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1, 1}}), Error);
}

}

TEST_SUITE("chain_torsion") {

TEST_CASE("one-step complex over the trivial group: rho = log |s|")
{
    const GroupPtr e = FiniteGroup::trivial();
    const GammaComplex c(0, {UnitaryRep::trivial(e), UnitaryRep::trivial(e)}, {scalar(3.0)});
    CHECK(std::abs(torsion_acyclic(c)(0) - std::log(3.0)) < 1e-12);
}

TEST_CASE("Z2 regular representation splits into isotypic pieces")
{
    const GroupPtr z2 = FiniteGroup::cyclic(2);
    const UnitaryRep reg = UnitaryRep::regular(z2);
    const double a = 3.0, b = 1.0;
    const Mat d = a * reg(0) + b * reg(1);
    const ClassFunction rho = torsion_acyclic(GammaComplex(0, {reg, reg}, {d}));
    // log|a+b| chi_triv + log|a-b| chi_sign
    CHECK(std::abs(rho(0) - (std::log(a + b) + std::log(a - b))) < 1e-12);
    CHECK(std::abs(rho(1) - (std::log(a + b) - std::log(a - b))) < 1e-12);
}

TEST_CASE("three-term complex: contributions alternate")
{
    const GroupPtr e = FiniteGroup::trivial();
    Mat d0 = column({2.0, 0.0});
    Mat d1(1, 2);
    d1 << 0.0, 5.0;
    const GammaComplex c(0, {UnitaryRep::trivial(e), UnitaryRep::trivial(e, 2), UnitaryRep::trivial(e)}, {d0, d1});
    CHECK(std::abs(torsion_acyclic(c)(0) - (std::log(2.0) - std::log(5.0))) < 1e-12);
}

TEST_CASE("non-acyclic input is refused with Betti numbers")
{
    const GroupPtr e = FiniteGroup::trivial();
    const GammaComplex c(0, {UnitaryRep::trivial(e), UnitaryRep::trivial(e)}, {scalar(0.0)});
    try {
        torsion_acyclic(c);
        FAIL("expected NotAcyclicError");
    } catch (const NotAcyclicError& err) {
        CHECK(err.betti() == std::vector<int>{1, 1});
    }
}

TEST_CASE("d^2 != 0 violates the complex contract")
{
    const GroupPtr e = FiniteGroup::trivial();
    const auto t = UnitaryRep::trivial(e);
    CHECK_THROWS_AS(GammaComplex(0, {t, t, t}, {scalar(1.0), scalar(1.0)}), Error);
}

TEST_CASE("rho does not depend on the choice of contraction in random complexes")
{
    std::mt19937_64 rng(7);
    const GroupPtr g = FiniteGroup::symmetric(3);
    random::ComplexOptions opt;
    opt.degrees = 3;
    const GammaComplex c = random::complex(g, opt, rng);
    const Contraction k = hodge_contraction(c);
    CHECK(contraction_defect(c, k) < 1e-10);
    CHECK(torsion_acyclic(c).distance(torsion_acyclic(c, k)) < 1e-10);
}

TEST_CASE("torsion of maps is additive under composition")
{
    std::mt19937_64 rng(5);
    const GroupPtr g = FiniteGroup::cyclic(3);
    random::ComplexOptions opt;
    opt.degrees = 3;
    opt.harmonic_pieces = 2;
    const GammaComplex c = random::complex(g, opt, rng);
    // D = B C B^{-1}; B is then a chain isomorphism C -> D
    auto transported = [&](const GammaComplex& x, std::vector<Mat>& b) {
        b.clear();
        for (int p = x.lo(); p <= x.hi(); ++p) b.push_back(random::equivariant_invertible(x.space(p), rng));
        std::vector<UnitaryRep> spaces;
        std::vector<Mat> ds;
        for (int p = x.lo(); p <= x.hi(); ++p) spaces.push_back(x.space(p));
        for (int p = x.lo(); p < x.hi(); ++p) {
            const int i = p - x.lo();
            ds.push_back(b[i + 1] * x.differential(p) * b[i].inverse());
        }
        return GammaComplex(x.lo(), spaces, ds);
    };
    std::vector<Mat> b1, b2;
    const GammaComplex d = transported(c, b1);
    const GammaComplex e = transported(d, b2);
    const ChainMap emb = harmonic_embedding(c, CohomologyMetric::standard(c));
    const ChainMap f(c, d, c.lo(), b1);
    const ChainMap h(d, e, d.lo(), b2);
    const ClassFunction lhs = torsion_of_map(ChainMap::compose(h, ChainMap::compose(f, emb)));
    const ClassFunction rhs = torsion_of_map(emb) + torsion_of_map(f) + torsion_of_map(h);
    CHECK(lhs.distance(rhs) < 1e-9);
    // and the map part is not trivially zero
    CHECK(torsion_of_map(f).distance(ClassFunction::zero(g)) > 1e-3);
}

}

TEST_SUITE("circle_zeta") {

TEST_CASE("psi closed forms")
{
    CHECK(std::abs(psi_scalar(1.0, 0.25, 0.0) - std::log(2.0)) < 1e-12);
    CHECK(std::abs(psi_scalar(1.0, 0.5, 0.0) - 2.0 * std::log(2.0)) < 1e-12);
    CHECK(std::abs(psi_scalar(1.0, 0.0, 0.0)) < 1e-12);
}

TEST_CASE("Mellin split agrees with the closed-form branch")
{
    for (double a : {0.1, 0.3, 0.7})
        for (double tau : {0.0, 0.2, 0.45}) {
            const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi * 0.37);
            const cplx x = psi_eval(lambda, a, tau).value;
            const cplx y = psi_mellin(lambda, a, tau).value;
            CHECK(std::abs(x - y) < 1e-8);
        }
}

TEST_CASE("reversing the circle's orientation leaves psi unchanged")
{
    for (double a : {0.3, 0.55})
        for (double tau : {0.2, 0.6}) {
            const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi * 0.1);
            const cplx flipped = lambda * std::polar(1.0, -2.0 * std::numbers::pi * a);
            CHECK(std::abs(psi_scalar(lambda, a, tau) - psi_scalar(flipped, 1.0 - a, 1.0 - tau)) < 1e-10);
        }
}

TEST_CASE("holonomy outside [0, 1) is a domain error")
{
    try {
        psi_eval(1.0, 1.5, 0.0);
        FAIL("expected Domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("digamma constant is twice Euler's gamma")
{
    CHECK(std::abs(digamma_constant().value - 2.0 * std::numbers::egamma) < 1e-12);
}

}

TEST_SUITE("cw_local") {

TEST_CASE("torus elements reduce and have lcm order")
{
    const TorusElement t({{2, 4}, {5, 6}});
    CHECK(t.coords()[0] == std::pair<long long, long long>{1, 2});
    CHECK(t.order() == 6);
    CHECK(TorusElement({{1, 4}, {1, 6}}).order() == 12);
    CHECK(t.power(2).coords()[0].first == 0);
    CHECK(t.root(3).power(3).key() == t.key());
}

TEST_CASE("combinatorial circle matches half the analytic value")
{
    const Mat u = scalar(std::polar(1.0, 2.0 * std::numbers::pi * 0.3));
    const CWModel x = build_circle(1, 0, u, scalar(1.0));
    const cplx rho = torsion_acyclic(x.complex())(0);
    CHECK(std::abs(rho - kAnalyticNormalization * psi_scalar(1.0, 0.3, 0.0)) < 1e-10);
}

TEST_CASE("restriction to a subgroup commutes with torsion on the dihedral hexagon")
{
    const CWModel x = build_dihedral_polygon(3);
    const GammaComplex c = x.complex();
    const GroupPtr g = c.group();
    const Subgroup h = Subgroup::generated(g, {g->classes().back().front()});
    const Embedding iota = h.inclusion();
    if (c.is_acyclic()) {
        const ClassFunction a = restrict_class_function(torsion_acyclic(c), iota);
        const ClassFunction b = torsion_acyclic(c.restricted(iota));
        CHECK(a.distance(b) < 1e-10);
    } else {
        const CWModel y = restrict_model(x, iota);
        const ClassFunction a = restrict_class_function(torsion_with_cohomology(c, integral_metric(x)), iota);
        const ClassFunction b = torsion_with_cohomology(y.complex(), integral_metric(y));
        CHECK(a.distance(b) < 1e-10);
    }
}

}

TEST_SUITE("equivariant_assembly") {

TEST_CASE("Weyl group orders")
{
    CHECK(weyl_group(SymmetricSpaceFamily::so_even(2, 1)).w_g.size() == 4);
    CHECK(weyl_group(SymmetricSpaceFamily::so_even(3, 2)).w_g.size() == 24);
    CHECK(weyl_group(SymmetricSpaceFamily::so_even(3, 2)).w_k_order == 4);
    CHECK(weyl_group(SymmetricSpaceFamily::su3_so3()).w_g.size() == 6);
    CHECK(weyl_group(SymmetricSpaceFamily::su3_so3()).w_k_order == 2);
}

TEST_CASE("rank condition failures vanish exactly")
{
    const auto f = SymmetricSpaceFamily::listed("SU(4)");
    CHECK_FALSE(f.rank_condition());
    std::vector<std::pair<long long, long long>> c;
    for (int i = 0; i < f.torus_rank(); ++i) c.push_back({i + 1, 2 * i + 3});
    CHECK(symmetric_space_torsion(f, TorusElement(c)) == 0.0);
}

TEST_CASE("Weyl formula for S3 agrees with the join model")
{
    const auto f = SymmetricSpaceFamily::so_even(2, 1);
    for (const TorusElement& t : {TorusElement({{1, 2}, {0, 1}}), TorusElement({{1, 3}, {1, 4}})}) {
        const double w = symmetric_space_torsion(f, t);
        const cplx cw = torsion_at(TorusSpace::s3_join(), t);
        CHECK(std::abs(cw - kAnalyticNormalization * w) < 1e-9);
    }
}

TEST_CASE("memoized evaluation is stable under parallel calls")
{
    int calls = 0;
    FGClassFunction f([&](const TorusElement& t) {
#pragma omp atomic
        ++calls;
        return cplx(t.as_double()[0], 0.0);
    });
    std::vector<TorusElement> ts;
    for (int i = 0; i < 40; ++i) ts.push_back(TorusElement({{i % 10, 10}}));
    const auto v = f.evaluate_many(ts);
    for (int i = 0; i < 40; ++i) CHECK(std::abs(v[i] - cplx((i % 10) / 10.0, 0.0)) < 1e-15);
    CHECK(f.cached() == 10);
}

}

TEST_SUITE("io_and_kernels") {

TEST_CASE("complex JSON round trip preserves torsion")
{
    std::mt19937_64 rng(11);
    const GroupPtr g = FiniteGroup::dihedral(4);
    const GammaComplex c = random::complex(g, random::ComplexOptions{}, rng);
    const io::json j = io::complex_to_json(c);
    const io::ComplexInput back = io::complex_from_json(io::json::parse(j.dump()));
    // the parsed group is a fresh object with the same class ordering
    CHECK(back.complex.group()->order() == g->order());
    CHECK((torsion_acyclic(back.complex).values() - torsion_acyclic(c).values()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("class functions round trip through JSON")
{
    const GroupPtr g = FiniteGroup::symmetric(3);
    const ClassFunction f = character_table(g).back().character;
    CHECK(io::class_function_from_json(g, io::class_function_to_json(f)).distance(f) < 1e-15);
}

TEST_CASE("bad schema version is a structural error")
{
    io::json j = {{"schema_version", 99}};
    try {
        io::check_version(j);
        FAIL("expected Structural error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Structural);
    }
}

TEST_CASE("serial and parallel kernels agree")
{
    using kernels::Exec;
    const GroupPtr g = FiniteGroup::symmetric(4);
    CHECK(kernels::class_structure_constants(*g, Exec::Serial) == kernels::class_structure_constants(*g, Exec::Parallel));
    const UnitaryRep v = UnitaryRep::regular(g);
    for (const auto& pi : character_table(g)) {
        const Mat a = kernels::isotypic_projector(v, pi, Exec::Serial);
        const Mat b = kernels::isotypic_projector(v, pi, Exec::Parallel);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a * a - a).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(kernels::homomorphism_defect(v, Exec::Serial) == kernels::homomorphism_defect(v, Exec::Parallel));
    const std::vector<double> taus{0.0, 0.125, 0.5, 0.8};
    const auto p = kernels::psi_grid(cplx(0.0, 1.0), 0.2, taus, Exec::Serial);
    const auto q = kernels::psi_grid(cplx(0.0, 1.0), 0.2, taus, Exec::Parallel);
    for (size_t i = 0; i < taus.size(); ++i) CHECK(std::abs(p[i] - q[i]) < 1e-14);
}

}
