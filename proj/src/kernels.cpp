#include "torsionlab/kernels.hpp"

#include <algorithm>

#include "torsionlab/error.hpp"

namespace torsionlab::kernels {

std::vector<cplx> psi_grid(cplx lambda, double a, const std::vector<double>& taus, Exec exec, const ZetaAccuracy& acc)
{
    std::vector<cplx> out(taus.size());
    std::vector<char> failed(taus.size(), 0);
    const long n = static_cast<long>(taus.size());
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) out[i] = psi_eval(lambda, a, taus[i], acc).value;
        return out;
    }
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = psi_eval(lambda, a, taus[i], acc).value;
        } catch (...) {
            failed[i] = 1;
        }
    }
    // rerun failures serially so the exception carries its own diagnostics
    for (long i = 0; i < n; ++i)
        if (failed[i]) out[i] = psi_eval(lambda, a, taus[i], acc).value;
    return out;
}

std::vector<std::vector<std::vector<double>>> class_structure_constants(const FiniteGroup& g, Exec exec)
{
    const int k = g.class_count();
    const auto& cls = g.classes();
    std::vector<std::vector<std::vector<double>>> out(k, std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)));
    auto fill = [&](int j, int l) {
        std::vector<double> count(k, 0.0);
        for (int x : cls[j])
            for (int y : cls[l]) count[g.class_of(g.mul(x, y))] += 1.0;
        for (int m = 0; m < k; ++m) out[j][l][m] = count[m] / static_cast<double>(cls[m].size());
    };
    if (exec == Exec::Serial) {
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) fill(j, l);
        return out;
    }
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) fill(j, l);
    return out;
}

namespace {

// Kept out of line: inlined into the caller, gcc emits a much slower loop (about 8x for S5).
[[gnu::noinline]] void accumulate_twisted(Mat& p, const UnitaryRep& v, const ClassFunction& chi, int lo, int hi)
{
    for (int g = lo; g < hi; ++g) p += std::conj(chi(g)) * v(g);
}

}  // namespace

Mat isotypic_projector(const UnitaryRep& v, const Irreducible& pi, Exec exec)
{
    require(v.group() == pi.character.group(), ErrorKind::Contract, "projector: character of another group");
    const int order = v.group()->order();
    const double scale = static_cast<double>(pi.dimension) / order;
    if (exec == Exec::Serial) {
        Mat p = Mat::Zero(v.dim(), v.dim());
        accumulate_twisted(p, v, pi.character, 0, order);
        return scale * p;
    }
    Mat p = Mat::Zero(v.dim(), v.dim());
#pragma omp parallel
    {
        Mat local = Mat::Zero(v.dim(), v.dim());
#pragma omp for schedule(static) nowait
        for (int g = 0; g < order; ++g) accumulate_twisted(local, v, pi.character, g, g + 1);
#pragma omp critical
        p += local;
    }
    return scale * p;
}

double homomorphism_defect(const UnitaryRep& v, Exec exec)
{
    const FiniteGroup& grp = *v.group();
    const int order = grp.order();
    const Mat id = Mat::Identity(v.dim(), v.dim());
    double worst = 0.0;
    auto row = [&](int g) {
        double w = linalg::max_abs(v(g).adjoint() * v(g) - id);
        for (int h = 0; h < order; ++h) w = std::max(w, linalg::max_abs(v(g) * v(h) - v(grp.mul(g, h))));
        return w;
    };
    if (exec == Exec::Serial) {
        for (int g = 0; g < order; ++g) worst = std::max(worst, row(g));
        return worst;
    }
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
    for (int g = 0; g < order; ++g) worst = std::max(worst, row(g));
    return worst;
}

}  // namespace torsionlab::kernels
