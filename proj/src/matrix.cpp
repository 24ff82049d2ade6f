#include "clens/matrix.hpp"

#include "clens/errors.hpp"

#include <cmath>
#include <sstream>

namespace clens {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_nonempty(const Matrix& m, const char* what) {
    if (m.rows() < 1 || m.cols() < 1) {
        std::ostringstream msg;
        msg << what << ": matrix must have at least one row and one column (got " << m.rows() << "x"
            << m.cols() << ")";
        throw ValidationError(msg.str());
    }
}

void require_finite(const Matrix& m, const char* what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j))) {
                std::ostringstream msg;
                msg << what << ": non-finite entry at row " << i + 1 << ", column " << j + 1;
                throw ValidationError(msg.str());
            }
        }
    }
}

void require_symmetric(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(msg.str());
    }
    const double tol = kSymmetryTol * max_abs(m);
    const double asym = max_abs(m - m.transpose());
    if (asym > tol) {
        std::ostringstream msg;
        msg << what << ": matrix is not symmetric (max |C - C^T| = " << asym << ", tolerance " << tol << ")";
        throw ValidationError(msg.str());
    }
}

Centered center_columns(const Matrix& m) {
    require_nonempty(m, "center_columns");
    require_finite(m, "center_columns");
    Centered out;
    out.mean = m.colwise().mean().transpose();
    out.data = m.rowwise() - out.mean.transpose();
    return out;
}

Matrix covariance(const Matrix& centered) {
    require_nonempty(centered, "covariance");
    require_finite(centered, "covariance");
    const auto n = static_cast<double>(centered.rows());
    Matrix c = Matrix::Zero(centered.cols(), centered.cols());
    c.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / n);
    c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
    return c;
}

void normalize_column_signs(Matrix& columns) {
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index i = 0; i < columns.rows(); ++i) {
            const double a = std::abs(columns(i, j));
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (columns(best, j) < 0.0) columns.col(j) *= -1.0;
    }
}

Spectrum sym_eigh(const Matrix& symmetric) {
    require_nonempty(symmetric, "sym_eigh");
    require_finite(symmetric, "sym_eigh");
    require_symmetric(symmetric, "sym_eigh");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "sym_eigh: eigensolver did not converge (dim " << symmetric.rows()
            << ", max |entry| " << max_abs(symmetric) << ", Frobenius norm " << symmetric.norm()
            << ", min |diag| " << symmetric.diagonal().cwiseAbs().minCoeff() << ")";
        throw NumericError(msg.str());
    }

    // Eigen returns ascending order.
    Spectrum out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    normalize_column_signs(out.eigenvectors);
    return out;
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
        std::ostringstream msg;
        msg << "Subspace: need 1 <= k <= d, got d=" << basis_.rows() << ", k=" << basis_.cols();
        throw ValidationError(msg.str());
    }
    require_finite(basis_, "Subspace");
    const Matrix gram = basis_.transpose() * basis_;
    const double err = max_abs(gram - Matrix::Identity(gram.rows(), gram.cols()));
    if (err > kOrthonormalTol) {
        std::ostringstream msg;
        msg << "Subspace: basis columns are not orthonormal (max |B^T B - I| = " << err << ")";
        throw ValidationError(msg.str());
    }
}

Subspace Subspace::from_span(const Matrix& spanning) {
    require_nonempty(spanning, "Subspace::from_span");
    Eigen::HouseholderQR<Matrix> qr(spanning);
    const Matrix r = qr.matrixQR().topRows(spanning.cols()).triangularView<Eigen::Upper>();
    const double scale = std::max(1.0, max_abs(spanning));
    for (Eigen::Index i = 0; i < r.cols(); ++i) {
        if (std::abs(r(i, i)) <= 1e-12 * scale) {
            throw ValidationError("Subspace::from_span: spanning columns are linearly dependent");
        }
    }
    Matrix q = qr.householderQ() * Matrix::Identity(spanning.rows(), spanning.cols());
    return Subspace(std::move(q));
}

Matrix project(const Matrix& m, const Subspace& s, const Vector& mean) {
    if (m.cols() != s.dim() || mean.size() != s.dim()) {
        std::ostringstream msg;
        msg << "project: dimension mismatch (data has " << m.cols() << " columns, subspace dim " << s.dim()
            << ", mean length " << mean.size() << ")";
        throw ValidationError(msg.str());
    }
    return (m.rowwise() - mean.transpose()) * s.basis();
}

}  // namespace clens
