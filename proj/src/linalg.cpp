#include "opbmo/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace opbmo {

namespace {

// Above this dimension a full decomposition is no longer worth it.
constexpr int kFullSvdLimit = 512;

void require_finite(const Mat& m) {
    if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

}  // namespace

double op_norm_svd(const Mat& m) {
    require_finite(m);
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

PowerIterationResult op_norm_power(const Mat& m, int max_iterations, double tol) {
    require_finite(m);
    PowerIterationResult res;
    if (m.size() == 0) { res.converged = true; return res; }

    // Deterministic start vector spread over all coordinates.
    Vec v(m.cols());
    Rng start = Rng::stream(0xa5a5a5a5ULL, static_cast<std::uint64_t>(m.rows()),
                            static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = start.next_cgaussian();
    v.normalize();

    auto apply_h = [&m](const Vec& x) { return Vec(m.adjoint() * (m * x)); };

    // Warm-up passes give a Rayleigh underestimate of lambda_1(M*M); shifting
    // by c <= lambda_1/2 keeps the top eigenvalue dominant in H - cI while
    // shrinking the convergence ratio to (lambda_2 - c)/(lambda_1 - c).
    double shift = 0.0;
    {
        constexpr int kWarmup = 20;
        for (int it = 0; it < kWarmup && it < max_iterations; ++it) {
            Vec u = apply_h(v);
            const double norm = u.norm();
            res.iterations = it + 1;
            if (norm == 0.0) { res.converged = true; return res; }
            v = u / norm;
        }
        shift = 0.45 * std::real(v.dot(apply_h(v)));
    }

    double lambda = 0.0, prev = -1.0;
    for (int it = res.iterations; it < max_iterations; ++it) {
        Vec u = apply_h(v) - shift * v;
        lambda = u.norm();
        res.iterations = it + 1;
        if (lambda == 0.0) break;
        v = u / lambda;
        if (prev >= 0.0 && std::abs(lambda - prev) <= tol * std::max(lambda, 1e-300)) {
            res.converged = true;
            break;
        }
        prev = lambda;
    }
    Vec u = apply_h(v);
    const double rq = std::real(v.dot(u));  // v^* M*M v
    res.value = std::sqrt(std::max(rq, 0.0));
    res.residual = (u - rq * v).norm() / std::max(rq, 1e-300);
    return res;
}

double op_norm(const Mat& m) {
    if (m.rows() <= kFullSvdLimit && m.cols() <= kFullSvdLimit) return op_norm_svd(m);
    return op_norm_power(m).value;
}

double trace_norm(const Mat& m) {
    require_finite(m);
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= tol * scale;
}

Mat psd_sqrt(const Mat& m) {
    require_finite(m);
    if (m.rows() != m.cols()) throw std::invalid_argument("psd_sqrt: matrix not square");
    if (!is_hermitian(m, 1e-10)) throw std::invalid_argument("psd_sqrt: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) * 0.5);
    Eigen::VectorXd evals = es.eigenvalues();
    const double floor = -1e-10 * std::max(1.0, evals.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals(i) < floor)
            throw std::invalid_argument("psd_sqrt: eigenvalue below tolerance");
        if (evals(i) < 0.0) evals(i) = 0.0;
    }
    return es.eigenvectors() * evals.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

Mat random_gaussian_matrix(int rows, int cols, Rng& rng) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.next_cgaussian();
    return m;
}

Vec random_gaussian_vector(int dim, Rng& rng) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.next_cgaussian();
    return v;
}

Mat random_unitary(int dim, Rng& rng) {
    Mat g = random_gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    // Fix the phase so the factorization is canonical.
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

double rel_diff(const Mat& a, const Mat& b) {
    return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

double rel_diff(const Vec& a, const Vec& b) {
    return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

}  // namespace opbmo
