#include "torsionlab/zeta.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "torsionlab/error.hpp"

namespace torsionlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitTol = 1e-9;

void check_domain(cplx lambda, double a, double tau)
{
    require(std::abs(std::abs(lambda) - 1.0) <= kUnitTol, ErrorKind::Domain, "psi: lambda must have modulus 1");
    require(a >= 0.0 && a < 1.0, ErrorKind::Domain, "psi: a must lie in [0, 1)");
    require(tau >= 0.0 && tau < 1.0, ErrorKind::Domain, "psi: tau must lie in [0, 1)");
}

double reduce_unit(double x)
{
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

}  // namespace

ZetaAccuracy ZetaAccuracy::from_env()
{
    ZetaAccuracy acc;
    if (const char* s = std::getenv("TORSIONLAB_ACCURACY")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        require(end != s && v > 0.0, ErrorKind::Domain, "TORSIONLAB_ACCURACY must be a positive number");
        acc.eps = v;
    }
    return acc;
}

std::pair<double, double> hurwitz_special(double a)
{
    require(a > 0.0 && a <= 1.0, ErrorKind::Domain, "hurwitz_special: a must lie in (0, 1]");
    return {0.5 - a, std::lgamma(a) - 0.5 * std::log(2.0 * kPi)};
}

PsiValue psi_mellin(cplx lambda, double a, double tau, const ZetaAccuracy& acc)
{
    check_domain(lambda, a, tau);
    require(acc.eps > 0.0, ErrorKind::Domain, "accuracy must be positive");
    const double t0 = acc.t0 > 0.0 ? acc.t0 : 1.0 / (4.0 * kPi);
    const double target = acc.eps / 10.0;

    // large-t part: sum_n c_n E1(mu_n t0), terms bounded by exp(-mu t0) / (mu t0)
    cplx large = 0.0;
    double bound_large = 0.0;
    {
        const double w = 4.0 * kPi * kPi * t0;
        int n_max = 1;
        while (n_max < acc.max_terms) {
            const double x = w * (n_max - 1.0) * (n_max - 1.0);
            // tail of sum_{|n+a| >= N-1} exp(-w m^2) / (w m^2), dominated by a geometric series
            if (x > 1.0 && 2.0 * std::exp(-x) / x / (1.0 - std::exp(-w * (2.0 * n_max - 1.0))) < target) break;
            ++n_max;
        }
        if (n_max >= acc.max_terms)
            throw PrecisionError("psi: Gaussian sum did not converge within the term budget", 1.0);
        const double x = w * (n_max - 1.0) * (n_max - 1.0);
        bound_large = 2.0 * std::exp(-x) / std::max(x, 1e-300);
        for (int n = -n_max; n <= n_max; ++n) {
            const double m = n + a;
            if (m == 0.0) continue;
            const double mu = 4.0 * kPi * kPi * m * m;
            large += lambda * std::polar(1.0, -2.0 * kPi * m * tau) * boost::math::expint(1, mu * t0);
        }
    }

    // small-t part after Poisson summation
    cplx small = 0.0;
    double bound_small = 0.0;
    {
        const double s = 2.0 * std::sqrt(t0);
        int j_max = 1;
        while (j_max < acc.max_terms) {
            const double b = j_max - 1.0;
            if (b > 0.5 && 2.0 * std::erfc(b / s) / b < target) break;
            ++j_max;
        }
        if (j_max >= acc.max_terms)
            throw PrecisionError("psi: Poisson sum did not converge within the term budget", 1.0);
        bound_small = 2.0 * std::erfc((j_max - 1.0) / s) / std::max(j_max - 1.0, 1.0);
        for (int j = -j_max; j <= j_max; ++j) {
            const double b = j + tau;
            if (b == 0.0) continue;
            small += lambda * std::polar(1.0, 2.0 * kPi * j * a) * (boost::math::erfc(std::abs(b) / s) / std::abs(b));
        }
        if (tau == 0.0) small -= lambda / std::sqrt(kPi * t0);
        if (a == 0.0) small -= lambda * (std::numbers::egamma + std::log(t0));
    }

    PsiValue out;
    out.value = -(large + small);
    out.branch = "mellin";
    out.error_bound = bound_large + bound_small + 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(out.value));
    if (out.error_bound > acc.eps) throw PrecisionError("psi: accuracy target not reached", out.error_bound);
    return out;
}

const DigammaConstant& digamma_constant()
{
    static DigammaConstant d;
    static std::once_flag once;
    std::call_once(once, [] {
        ZetaAccuracy acc;
        acc.eps = 1e-12;
        const PsiValue v = psi_mellin(1.0, 0.0, 0.5, acc);
        d.value = v.value.real() - 2.0 * boost::math::digamma(0.5);
        d.error = v.error_bound + std::abs(v.value.imag());
    });
    return d;
}

PsiValue psi_eval(cplx lambda, double a, double tau, const ZetaAccuracy& acc)
{
    check_domain(lambda, a, tau);
    PsiValue out;
    if (a == 0.0 && tau == 0.0) {
        // -d/ds 2 lambda zeta_R(2s) (4 pi^2)^{-s} at s = 0
        const auto [z0, z1] = hurwitz_special(1.0);
        out.value = -lambda * (4.0 * z1 - 2.0 * z0 * std::log(4.0 * kPi * kPi));
        out.branch = "riemann";
        out.error_bound = 1e-15;
    } else if (tau == 0.0) {
        // -d/ds lambda (4 pi^2)^{-s} (zeta_H(2s, a) + zeta_H(2s, 1 - a))
        const auto [z0a, z1a] = hurwitz_special(a);
        const auto [z0b, z1b] = hurwitz_special(1.0 - a);
        out.value = -lambda * (2.0 * (z1a + z1b) - (z0a + z0b) * std::log(4.0 * kPi * kPi));
        out.branch = "hurwitz";
        out.error_bound = 1e-14;
    } else if (a == 0.0) {
        const DigammaConstant& d = digamma_constant();
        out.value = lambda * (d.value + boost::math::digamma(tau) + boost::math::digamma(1.0 - tau));
        out.branch = "digamma";
        out.error_bound = d.error + 1e-14;
    } else {
        return psi_mellin(lambda, a, tau, acc);
    }
    return out;
}

cplx psi_rational(cplx lambda, double a, long long k, long long n)
{
    require(n > 0, ErrorKind::Domain, "psi_rational: denominator must be positive");
    k = ((k % n) + n) % n;
    using Key = std::tuple<double, double, double, long long, long long>;
    static std::mutex mtx;
    static std::map<Key, cplx> memo;
    const Key key{lambda.real(), lambda.imag(), a, k, n};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    const cplx v = psi_eval(lambda, a, static_cast<double>(k) / static_cast<double>(n), ZetaAccuracy::from_env()).value;
    std::lock_guard<std::mutex> lock(mtx);
    return memo.emplace(key, v).first->second;
}

cplx psi_trace(const CircleOrbitData& d)
{
    const Eigen::Index m = d.lambda.rows();
    require(d.lambda.cols() == m && d.a.rows() == m && d.a.cols() == m, ErrorKind::Contract, "psi_trace: shape mismatch");
    require(linalg::is_unitary(d.lambda), ErrorKind::Contract, "psi_trace: lambda is not unitary");
    require(linalg::max_abs(d.a - d.a.adjoint()) <= kAlgTol, ErrorKind::Contract, "psi_trace: a is not self-adjoint");
    require(linalg::max_abs(d.a * d.lambda - d.lambda * d.a) <= kAlgTol, ErrorKind::Contract, "psi_trace: lambda and a do not commute");
    require(d.orientation == 1 || d.orientation == -1, ErrorKind::Contract, "psi_trace: orientation must be +-1");
    if (m == 0) return 0.0;
    // commuting normal operators: a generic combination separates the joint eigenspaces
    const Mat comb = d.a + cplx(0.31830988618, 0.2718281828) * d.lambda;
    Eigen::ComplexEigenSolver<Mat> es(comb);
    require(es.info() == Eigen::Success, ErrorKind::Precision, "psi_trace: eigen-decomposition failed");
    const double tau = reduce_unit(d.tau);
    const ZetaAccuracy target = ZetaAccuracy::from_env();
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        const Vec v = es.eigenvectors().col(j);
        const double nv = v.squaredNorm();
        cplx lam = v.dot(d.lambda * v) / nv;
        double a = (v.dot(d.a * v) / nv).real();
        require(a > -1e-9 && a < 1.0, ErrorKind::Domain, "psi_trace: eigenvalues of a must lie in [0, 1)");
        a = std::max(a, 0.0);
        lam /= std::abs(lam);
        double t = tau;
        if (d.orientation < 0) {
            lam *= std::polar(1.0, -2.0 * kPi * a);
            a = reduce_unit(1.0 - a);
            t = reduce_unit(1.0 - t);
        }
        acc += psi_eval(lam, a, t, target).value;
    }
    return (d.disk_parity % 2 == 0) ? acc : -acc;
}

cplx analytic_torsion_orbit(const std::vector<CircleOrbitData>& pieces, const std::vector<bool>& fixed)
{
    require(pieces.size() == fixed.size(), ErrorKind::Contract, "one fixed flag per circle expected");
    cplx acc = 0.0;
    for (size_t i = 0; i < pieces.size(); ++i)
        if (fixed[i]) acc += psi_trace(pieces[i]);
    return acc;
}

}  // namespace torsionlab
