#pragma once

// Dense matrix primitives shared by every module: centering, covariance,
// symmetric eigendecomposition and projection onto orthonormal bases.

#include <Eigen/Dense>

#include <utility>

namespace clens {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const Matrix& m);

void require_finite(const Matrix& m, const char* what);
void require_nonempty(const Matrix& m, const char* what);
void require_symmetric(const Matrix& m, const char* what);

/// Column-centered copy plus the column means.
struct Centered {
    Matrix data;
    Vector mean;
};

Centered center_columns(const Matrix& m);

/// (1/n) * M^T M for already-centered M. Result is exactly symmetric.
Matrix covariance(const Matrix& centered);

/// Eigenpairs of a symmetric matrix, eigenvalues non-increasing.
///
/// Each eigenvector is sign-normalized so that its largest-magnitude entry is
/// positive (first such index on ties), which makes repeated calls on the same
/// input bit-identical.
struct Spectrum {
    Vector eigenvalues;
    Matrix eigenvectors;
};

Spectrum sym_eigh(const Matrix& symmetric);

/// Flip the sign of each column so its largest-magnitude entry is positive.
void normalize_column_signs(Matrix& columns);

/// An orthonormal d x k basis. Construction validates orthonormality.
class Subspace {
public:
    explicit Subspace(Matrix basis);

    /// Orthonormalizes the columns of `spanning` (thin QR); columns must be independent.
    static Subspace from_span(const Matrix& spanning);

    const Matrix& basis() const noexcept { return basis_; }
    Eigen::Index dim() const noexcept { return basis_.rows(); }
    Eigen::Index k() const noexcept { return basis_.cols(); }

private:
    Matrix basis_;
};

/// (M - mean) * basis.
Matrix project(const Matrix& m, const Subspace& s, const Vector& mean);

}  // namespace clens
