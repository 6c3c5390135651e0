#include "torsionlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "torsionlab/error.hpp"

namespace torsionlab::linalg {

namespace {

double scale_of(const Eigen::VectorXd& sv)
{
    return sv.size() == 0 ? 0.0 : std::max(1.0, sv(0));
}

}  // namespace

Mat range_basis(const Mat& a, double rel_tol)
{
    if (a.rows() == 0 || a.cols() == 0) return Mat(a.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = rel_tol * scale_of(sv);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

Mat kernel_basis(const Mat& a, double rel_tol)
{
    const Eigen::Index n = a.cols();
    if (n == 0) return Mat(0, 0);
    if (a.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = rel_tol * scale_of(sv);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixV().rightCols(n - r);
}

Mat complement_in(const Mat& z, const Mat& s, double rel_tol)
{
    if (z.cols() == 0) return Mat(z.rows(), 0);
    if (s.cols() == 0) return range_basis(z, rel_tol);
    Mat q = range_basis(s, rel_tol);
    Mat residual = z - q * (q.adjoint() * z);
    return range_basis(residual, rel_tol);
}

Mat coordinates(const Mat& basis, const Mat& v)
{
    if (basis.cols() == 0) return Mat(0, v.cols());
    return basis.colPivHouseholderQr().solve(v);
}

Mat projector_range(const Mat& p)
{
    if (p.rows() == 0) return Mat(0, 0);
    Mat herm = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    const auto& ev = es.eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.5) keep.push_back(i);
    Mat out(p.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
    return out;
}

double log_abs_det(const Mat& f)
{
    require(f.rows() == f.cols(), ErrorKind::Contract, "log_abs_det: map is not square");
    if (f.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(f);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < kSingularRel * sv(0) || sv(0) == 0.0)
        fail(ErrorKind::Singular, "map is singular (smallest singular value below cutoff)");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::log(sv(i));
    return acc;
}

Mat direct_sum(const Mat& a, const Mat& b)
{
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_unitary(const Mat& u, double tol)
{
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols())) <= tol;
}

double max_abs(const Mat& a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

Mat random_unitary(Eigen::Index n, std::mt19937_64& rng)
{
    if (n == 0) return Mat(0, 0);
    Mat g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix phases so the distribution is Haar
    for (Eigen::Index i = 0; i < n; ++i) {
        cplx d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

}  // namespace torsionlab::linalg
