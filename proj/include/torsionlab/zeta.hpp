#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torsionlab/linalg.hpp"

namespace torsionlab {

/// Accuracy target for zeta-regularized quantities. TORSIONLAB_ACCURACY overrides the default.
struct ZetaAccuracy {
    double eps = 1e-10;
    /// Split point of the Mellin integral; the result does not depend on it.
    double t0 = 0.0;  // 0 selects 1/(4 pi)
    int max_terms = 100000;

    static ZetaAccuracy from_env();
};

/// (zeta_H(0, a), d/ds zeta_H(0, a)) = (1/2 - a, log Gamma(a) - log(2 pi)/2) for 0 < a <= 1.
std::pair<double, double> hurwitz_special(double a);

struct PsiValue {
    cplx value;
    std::string branch;  ///< "riemann", "hurwitz", "digamma" or "mellin"
    double error_bound = 0.0;
};

/**
 * psi(lambda, a, tau) = -d/ds|_{s=0} sum_n lambda e^{-2 pi i (n+a) tau} (4 pi^2 (n+a)^2)^{-s}
 * through the theta-function Mellin split (the n + a = 0 mode is dropped).
 * Throws PrecisionError when the truncation budget cannot meet acc.eps.
 */
PsiValue psi_mellin(cplx lambda, double a, double tau, const ZetaAccuracy& acc = {});

/// Dispatches to the closed forms where they apply, otherwise psi_mellin.
PsiValue psi_eval(cplx lambda, double a, double tau, const ZetaAccuracy& acc = {});
inline cplx psi_scalar(cplx lambda, double a, double tau) { return psi_eval(lambda, a, tau).value; }

/// psi at rational tau = k/n; memoized (thread safe).
cplx psi_rational(cplx lambda, double a, long long k, long long n);

/// Constant D of the a = 0 branch, extracted from the Mellin value at tau = 1/2.
struct DigammaConstant {
    double value = 0.0;
    double error = 0.0;
};
const DigammaConstant& digamma_constant();

/// Fiber data of one invariant circle: lambda and a commute, U = exp(2 pi i a).
struct CircleOrbitData {
    Mat lambda;
    Mat a;
    double tau = 0.0;
    int orientation = 1;
    int disk_parity = 0;
};

/// (-1)^{n_E} sum_j psi(lambda_j, a_j, tau) over a joint eigenbasis. Orientation -1
/// uses (lambda e^{-2 pi i a}, 1 - a, 1 - tau).
cplx psi_trace(const CircleOrbitData& d);

/// Circles moved by t contribute 0; fixed ones their psi_trace.
cplx analytic_torsion_orbit(const std::vector<CircleOrbitData>& pieces, const std::vector<bool>& fixed);

/// Combinatorial torsion equals this factor times the analytic value.
inline constexpr double kAnalyticNormalization = 0.5;

}  // namespace torsionlab
