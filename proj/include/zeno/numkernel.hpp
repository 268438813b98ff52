// numkernel.hpp — Dense complex linear algebra: Hermitian eigendecomposition,
// matrix exponentials, null spaces, norms, and eigenvalue clustering.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno::num {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// --------------------------- Guards and predicates ---------------------------

inline void require_square(const Matrix& A, const char* where) {
    if (A.rows() != A.cols())
        throw std::invalid_argument(std::string(where) + ": matrix must be square");
}

inline void require_nonempty(const Matrix& A, const char* where) {
    if (A.rows() == 0)
        throw std::invalid_argument(std::string(where) + ": empty space (dim = 0)");
}

inline void require_finite(const Matrix& A, const char* where) {
    if (!A.allFinite())
        throw std::invalid_argument(std::string(where) + ": non-finite entries");
}

// max |A(i,j) - conj(A(j,i))| <= rtol * ||A||_F, with the zero matrix Hermitian
inline bool is_hermitian(const Matrix& A, double rtol = 1e-12) {
    if (A.rows() != A.cols()) return false;
    const double scale = A.norm();
    return (A - A.adjoint()).cwiseAbs().maxCoeff() <= rtol * std::max(scale, 1e-300);
}

inline bool is_anti_hermitian(const Matrix& A, double rtol = 1e-12) {
    if (A.rows() != A.cols()) return false;
    const double scale = A.norm();
    return (A + A.adjoint()).cwiseAbs().maxCoeff() <= rtol * std::max(scale, 1e-300);
}

inline void require_hermitian(const Matrix& A, const char* where) {
    if (!is_hermitian(A))
        throw std::invalid_argument(std::string(where) + ": operator is not Hermitian");
}

// ------------------------------ Norms ----------------------------------------

// Spectral norm (largest singular value)
inline double op_norm(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

inline double frob_norm(const Matrix& A) { return A.norm(); }

// --------------------------- Hermitian eigendecomposition --------------------

struct Eigensystem {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, vectors.col(k) belongs to values(k)
    bool input_was_hermitian{true};

    Index dim() const { return values.size(); }
};

inline Eigensystem hermitian_eig(const Matrix& A) {
    require_square(A, "hermitian_eig");
    require_nonempty(A, "hermitian_eig");
    require_finite(A, "hermitian_eig");
    require_hermitian(A, "hermitian_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigendecomposition failed");
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors(), true};
}

// --------------------------- Matrix exponential -------------------------------

// Scaling-and-squaring with the degree-13 Pade approximant r_13(A/2^s)^(2^s),
// s chosen from the 1-norm so that ||A/2^s|| <= theta_13.
inline Matrix expm_pade(const Matrix& A) {
    require_square(A, "expm");
    require_finite(A, "expm");
    const Index n = A.rows();
    if (n == 0) return Matrix(0, 0);

    static const double theta13 = 5.371920351148152;
    static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                                 7771770303897600.0,  1187353796428800.0,
                                 129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,
                                 1323241920.0,        40840800.0,
                                 960960.0,            16380.0,
                                 182.0,               1.0};

    const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 == 0.0) return Matrix::Identity(n, n);  // exp(0) = 1 exactly
    int squarings = 0;
    if (norm1 > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

    const Matrix As = A / std::pow(2.0, squarings);
    const Matrix I = Matrix::Identity(n, n);
    const Matrix A2 = As * As;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A2 * A4;

    const Matrix U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                           b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                     b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Matrix R = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < squarings; ++k) R *= R;
    return R;
}

// exp(-i t H) for Hermitian H via the spectral theorem; unitary by construction.
// t = 0 is the exact identity rather than V V^dagger.
inline Matrix propagator(const Eigensystem& es, double t) {
    if (t == 0.0) return Matrix::Identity(es.dim(), es.dim());
    Vector phases(es.dim());
    for (Index k = 0; k < es.dim(); ++k)
        phases(k) = std::polar(1.0, -es.values(k) * t);
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

inline Matrix propagator(const Matrix& H, double t) {
    return propagator(hermitian_eig(H), t);
}

// Structure-dispatching exponential: Hermitian and anti-Hermitian inputs take
// the eigendecomposition path, everything else the Pade path.
inline Matrix expm(const Matrix& A) {
    require_square(A, "expm");
    require_finite(A, "expm");
    if (A.rows() == 0) return Matrix(0, 0);
    if (A.cwiseAbs().maxCoeff() == 0.0) return Matrix::Identity(A.rows(), A.cols());
    if (is_hermitian(A)) {
        const Eigensystem es = hermitian_eig(A);
        Vector d(es.dim());
        for (Index k = 0; k < es.dim(); ++k) d(k) = std::exp(es.values(k));
        return es.vectors * d.asDiagonal() * es.vectors.adjoint();
    }
    if (is_anti_hermitian(A)) {
        // A = -iH with H = iA Hermitian
        const Matrix H = Complex(0.0, 1.0) * A;
        return propagator((H + H.adjoint()) / 2.0, 1.0);
    }
    return expm_pade(A);
}

// ------------------------------ Null space ------------------------------------

// Orthonormal basis of {v : ||A v|| <= abs_tol * sigma_max}, from the SVD.
// Columns of the result span the numerical kernel; empty matrix for full rank.
inline Matrix null_space(const Matrix& A, double abs_tol = 1e-9) {
    require_square(A, "null_space");
    require_finite(A, "null_space");
    if (abs_tol <= 0.0) throw std::invalid_argument("null_space: abs_tol must be > 0");
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double thr = abs_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > thr) ++rank;
    return svd.matrixV().rightCols(sigma.size() - rank);
}

// --------------------------- Eigenvalue clustering -----------------------------

struct EigenvalueClusters {
    std::vector<std::vector<Index>> groups;  // ascending runs of indices
    std::vector<double> representatives;     // group means
    double tolerance_used{0.0};              // absolute gap threshold
};

// Single-link gap clustering of an ascending list: groups are maximal runs whose
// consecutive gaps are <= rel_tol * max(1, spread).
inline EigenvalueClusters cluster_eigenvalues(const RealVector& values,
                                              double rel_tol = 1e-8) {
    if (rel_tol <= 0.0)
        throw std::invalid_argument("cluster_eigenvalues: rel_tol must be > 0");
    EigenvalueClusters out;
    const Index n = values.size();
    if (n == 0) return out;
    for (Index k = 1; k < n; ++k)
        if (values(k) < values(k - 1))
            throw std::invalid_argument("cluster_eigenvalues: values must be ascending");

    const double spread = values(n - 1) - values(0);
    out.tolerance_used = rel_tol * std::max(1.0, spread);

    std::vector<Index> current{0};
    for (Index k = 1; k < n; ++k) {
        if (values(k) - values(k - 1) <= out.tolerance_used) {
            current.push_back(k);
        } else {
            out.groups.push_back(current);
            current = {k};
        }
    }
    out.groups.push_back(current);

    out.representatives.reserve(out.groups.size());
    for (const auto& g : out.groups) {
        double mean = 0.0;
        for (Index k : g) mean += values(k);
        out.representatives.push_back(mean / static_cast<double>(g.size()));
    }
    return out;
}

}  // namespace zeno::num
