#pragma once

// Contrastive PCA for a single contrast strength: the leading eigenvectors of
// C_X - alpha * C_Y, plus projection, denoising and feature weights.

#include "clens/matrix.hpp"

#include <limits>
#include <string>
#include <vector>

namespace clens {

/// alpha = kInfiniteAlpha selects the background null-space mode.
inline constexpr double kInfiniteAlpha = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultNullTol = 1e-10;
inline constexpr int kDefaultComponents = 2;

bool is_infinite_alpha(double alpha) noexcept;

/// Parses a decimal number or "inf" (also "infinity", case-insensitive).
double parse_alpha(const std::string& text);
std::string format_alpha(double alpha);

/// Target and background variance along one direction.
struct VariancePair {
    double target_var = 0.0;
    double background_var = 0.0;
};

/// v^T C_X v and v^T C_Y v; tiny negative round-off is clamped to zero.
VariancePair variance_pair(const Matrix& target_cov, const Matrix& background_cov, const Vector& direction);

/// Per-dataset covariances and means. Built once and shared by every fit in a sweep.
struct CovariancePair {
    Matrix target_cov;
    Matrix background_cov;
    Vector target_mean;
    Vector background_mean;

    /// Centers each dataset by its own mean and applies the 1/n covariance.
    static CovariancePair from_data(const Matrix& target, const Matrix& background);

    /// Zero means; used when working directly with covariance matrices.
    static CovariancePair from_covariances(Matrix target_cov, Matrix background_cov);

    Eigen::Index dim() const noexcept { return target_cov.rows(); }
};

struct CpcaModel {
    double alpha = 0.0;
    Subspace subspace;
    /// Eigenvalues of C_X - alpha C_Y for the kept components (target variances when alpha is infinite).
    Vector eigenvalues;
    std::vector<VariancePair> variance_pairs;
    Vector target_mean;
    Vector background_mean;

    Eigen::Index dim() const noexcept { return subspace.dim(); }
    Eigen::Index k() const noexcept { return subspace.k(); }
};

/// Entrywise C_X - alpha * C_Y for finite alpha >= 0.
Matrix contrastive_matrix(const Matrix& target_cov, const Matrix& background_cov, double alpha);

CpcaModel fit(const Matrix& target, const Matrix& background, double alpha, int k = kDefaultComponents);
CpcaModel fit(const CovariancePair& covs, double alpha, int k = kDefaultComponents);

/// Projects the target onto null(C_Y) (eigenvalues <= null_tol * lambda_max(C_Y)) and runs PCA there.
CpcaModel fit_infinite(const Matrix& target, const Matrix& background, int k = kDefaultComponents,
                       double null_tol = kDefaultNullTol);
CpcaModel fit_infinite(const CovariancePair& covs, int k = kDefaultComponents, double null_tol = kDefaultNullTol);

/// Plain PCA of the target (the alpha = 0 baseline).
CpcaModel fit_pca(const CovariancePair& covs, int k = kDefaultComponents);

enum class CenterWith { Target, Background };

/// (data - mean) * basis, with mean the stored target mean unless Background is requested.
Matrix transform(const CpcaModel& model, const Matrix& data, CenterWith center = CenterWith::Target);

/// Squared loadings of one component rescaled to a maximum of exactly 1.
Vector feature_weights(const CpcaModel& model, Eigen::Index component);

/// target_mean + (data - target_mean) B B^T.
Matrix denoise(const CpcaModel& model, const Matrix& data);

}  // namespace clens
