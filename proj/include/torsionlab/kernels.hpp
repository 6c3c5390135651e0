#pragma once

#include <vector>

#include "torsionlab/rep.hpp"
#include "torsionlab/zeta.hpp"

namespace torsionlab::kernels {

/// Hot loops in two flavours: OpenMP-parallel and a serial reference used by tests and benchmarks.
enum class Exec { Serial, Parallel };

/// psi(lambda, a, tau) over a grid of tau values (no memoization).
std::vector<cplx> psi_grid(cplx lambda, double a, const std::vector<double>& taus, Exec exec,
                           const ZetaAccuracy& acc = {});

/// N[j][l][m] = #{(x, y) in C_j x C_l : xy = z} for a fixed z in C_m.
std::vector<std::vector<std::vector<double>>> class_structure_constants(const FiniteGroup& g, Exec exec);

/// Isotypic projector (dim pi / |G|) sum_g conj(chi(g)) rho(g), with the group sum split across threads.
Mat isotypic_projector(const UnitaryRep& v, const Irreducible& pi, Exec exec);

/// max over g of ||rho(g)^* rho(g) - 1|| and ||rho(g) rho(h) - rho(gh)||.
double homomorphism_defect(const UnitaryRep& v, Exec exec);

}  // namespace torsionlab::kernels
