#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace torsionlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Tolerance for algebraic identities (d^2 = 0, equivariance, unitarity).
inline constexpr double kAlgTol = 1e-9;
/// Relative cutoff below which a singular value counts as zero.
inline constexpr double kSingularRel = 1e-12;
/// Relative cutoff used when deciding numerical rank of differentials.
inline constexpr double kRankRel = 1e-9;

namespace linalg {

/// Orthonormal basis of the column space of `a`.
Mat range_basis(const Mat& a, double rel_tol = kRankRel);
/// Orthonormal basis of the null space of `a` (`a.cols()` rows).
Mat kernel_basis(const Mat& a, double rel_tol = kRankRel);
/// Orthonormal basis of `span(z)` minus `span(s)`, assuming span(s) is inside span(z).
Mat complement_in(const Mat& z, const Mat& s, double rel_tol = kRankRel);
/// Least-squares coordinates of the columns of `v` in the (independent) columns of `basis`.
Mat coordinates(const Mat& basis, const Mat& v);
/// Orthonormal basis of the image of a Hermitian projector.
Mat projector_range(const Mat& p);

/// Sum of log singular values. Throws Error(Singular) when the map is numerically singular.
double log_abs_det(const Mat& f);

Mat direct_sum(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b);
bool is_unitary(const Mat& u, double tol = kAlgTol);
double max_abs(const Mat& a);

Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// Haar-distributed unitary via QR of a complex Gaussian matrix.
Mat random_unitary(Eigen::Index n, std::mt19937_64& rng);

}  // namespace linalg
}  // namespace torsionlab
