#pragma once

#include <vector>

#include "torsionlab/cells.hpp"

namespace torsionlab {

/**
 * Cochain complex with a decreasing filtration C = F_0 >= F_1 >= ... >= F_L >= 0
 * by G-invariant subcomplexes.
 *
 * levels[p][i] holds a basis (columns) of F_p in degree lo + i.  Graded pieces
 * are modelled as orthogonal complements G_p = F_p - F_{p+1}.
 */
class FilteredComplex {
public:
    /// Throws Error(Contract) if the subspaces are not nested, not invariant, or not preserved by d.
    FilteredComplex(GammaComplex c, std::vector<std::vector<Mat>> levels);
    /// F_p spanned by the cells whose filtration index is >= p (shifted so the least index is 0).
    static FilteredComplex from_cells(const CWModel& x);
    /// Single-step filtration F_0 = C, F_1 = 0.
    static FilteredComplex trivial(const GammaComplex& c);

    const GammaComplex& complex() const { return c_; }
    /// Number of filtration levels L + 1.
    int length() const { return static_cast<int>(graded_.size()); }
    /// Orthonormal basis of G_p in degree n (ambient coordinates).
    const Mat& graded_basis(int p, int n) const { return graded_[p][n - c_.lo()]; }
    /// F_p / F_{p+1} as a complex in the coordinates of graded_basis(p, .).
    GammaComplex graded_piece(int p) const;

private:
    GammaComplex c_;
    std::vector<std::vector<Mat>> graded_;
};

struct SpectralReport {
    ClassFunction cell_term;  ///< sum_p rho(F_p / F_{p+1}, nu_p)
    ClassFunction ss_term;    ///< sum_r sum_{p<r} sum_q (-1)^{p+q} rho(E_r^{p,q} complexes)
    ClassFunction psi_term;   ///< sum (-1)^{p+q} X[[psi^{p,q}]]
    ClassFunction total;      ///< rho(C, mu) computed directly
    ClassFunction rhs;        ///< cell_term + ss_term - psi_term
    double residual = 0.0;    ///< max |total - rhs| over classes
    int pages = 0;            ///< pages r = 1 .. pages carry nonzero differentials at most
    /// dims[r-1][p][n - lo] = dim E_r^{p, n-p}; the last entry is E_infinity.
    std::vector<std::vector<std::vector<int>>> dims;
};

/**
 * Torsion decomposition along the spectral sequence of a filtration.
 * nu[p] is a cohomology metric on graded_piece(p); mu one on the complex.
 */
SpectralReport spectral_decomposition(const FilteredComplex& fc, const CohomologyMetric& mu,
                                      const std::vector<CohomologyMetric>& nu);
/// Standard metrics everywhere.
SpectralReport spectral_decomposition(const FilteredComplex& fc);

}  // namespace torsionlab
