#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "torsionlab/cells.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab {

/// Finite-order element of T = (R/Z)^r with exact rational coordinates in [0, 1).
class TorusElement {
public:
    TorusElement() = default;
    /// (numerator, denominator) pairs; reduced and normalized into [0, 1).
    explicit TorusElement(std::vector<std::pair<long long, long long>> coords);
    static TorusElement identity(int rank);

    int rank() const { return static_cast<int>(coords_.size()); }
    const std::vector<std::pair<long long, long long>>& coords() const { return coords_; }
    long long order() const;
    TorusElement power(long long k) const;
    /// Coordinatewise t / k (one of the k-th roots of t).
    TorusElement root(long long k) const;
    /// <chi, t> mod 1 as a reduced fraction.
    std::pair<long long, long long> pair_with(const std::vector<int>& chi) const;
    std::vector<double> as_double() const;
    std::string key() const;

private:
    std::vector<std::pair<long long, long long>> coords_;
};

/**
 * Built-in T-spaces with explicit Z_N cell models for every finite cyclic subgroup.
 *
 * circle: T acts through the character chi, holonomy exp(2 pi i a) and fiber
 * twist exp(2 pi i (a + w) tau).  s3_join: S^3 = C_1 * C_2 with T^2 rotating the
 * factors.  free_t2: T^2 acting on itself.  point: fixed point.  Unions combine
 * parts; `disk` multiplies every cell by D^disk.
 */
struct TorusSpace {
    enum class Kind { Point, Circle, S3Join, FreeT2, Union };
    Kind kind = Kind::Point;
    int rank = 1;
    std::vector<int> chi;
    double a = 0.0;
    int weight = 0;
    int disk = 0;
    std::vector<TorusSpace> parts;

    static TorusSpace point(int rank);
    static TorusSpace circle(std::vector<int> chi, double a = 0.0, int weight = 0);
    static TorusSpace s3_join();
    static TorusSpace free_t2();
    static TorusSpace disjoint(std::vector<TorusSpace> parts);
    TorusSpace with_disk(int n) const;
    std::string name() const;
};

/// Cell model of the space restricted to Z_N = <g>, g acting as t.
CWModel restricted_model(const TorusSpace& x, const TorusElement& t, const GroupPtr& zn);
/// Metric used on restricted models: integral where available, standard otherwise.
CohomologyMetric model_metric(const TorusSpace& x, const CWModel& m);

/// rho(res X)(t) computed over <t> = Z_{order(t)}.
cplx torsion_at(const TorusSpace& x, const TorusElement& t);
/// Same computed over the larger cyclic group generated by t.root(k), evaluated at its k-th power.
cplx torsion_at_via_root(const TorusSpace& x, const TorusElement& t, long long k);
/// Full class function on Z_N = <t>.
ClassFunction torsion_on_cyclic(const TorusSpace& x, const TorusElement& t);

/// Lazy function on finite-order torus elements, memoized and safe for concurrent use.
class FGClassFunction {
public:
    using Evaluator = std::function<cplx(const TorusElement&)>;
    explicit FGClassFunction(Evaluator f, bool hat = false) : f_(std::move(f)), hat_(hat) {}
    cplx operator()(const TorusElement& t) const;
    /// Parallel over points; results in input order.
    std::vector<cplx> evaluate_many(const std::vector<TorusElement>& ts) const;
    bool is_hat() const { return hat_; }
    size_t cached() const;

private:
    Evaluator f_;
    bool hat_;
    mutable std::mutex mtx_;
    mutable std::map<std::string, cplx> memo_;
};

/// Orbit summary of a T-CW complex: E = T/S x D^{n_E}.
struct TorusCell {
    int orbit_dim = 0;  ///< dim T/S
    int disk_dim = 0;   ///< n_E
    std::vector<int> chi;  ///< for one-dimensional orbits: T -> T/S = R/Z
    double a = 0.0;
    int weight = 0;
};
using TorusCellSpec = std::vector<TorusCell>;

TorusCellSpec cell_spec(const TorusSpace& x);

/// Orbit sum sum_E (-1)^{n_E} Tr psi(lambda_E(t), a_E, tau_E(t)) over one-dimensional orbits (raw analytic units).
cplx cell_sum(const TorusCellSpec& cells, const TorusElement& t);
/// Representative in C^(Z_N) (mean over <t> removed) of cell_sum, evaluated at t.
cplx hat_cell_sum(const TorusCellSpec& cells, const TorusElement& t);
/// Representative in C^ of a class function on a cyclic group with Gamma^0 = Gamma.
ClassFunction hat_value(const ClassFunction& values, const Subgroup& gamma0);

}  // namespace torsionlab
