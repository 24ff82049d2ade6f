#pragma once

// Kernel contrastive PCA. Components live in the span of the mapped training
// points (target rows first, then background rows) and are found from the
// non-symmetric dual eigenproblem  lambda a = Ktilde a, where Ktilde is the
// block-centered Gram matrix with its target rows scaled by 1/n and its
// background rows by -alpha/m.

#include "clens/cpca.hpp"
#include "clens/matrix.hpp"

#include <string>
#include <utility>

namespace clens {

enum class KernelKind { Linear, Polynomial, Rbf };

struct KernelSpec {
    KernelKind kind = KernelKind::Polynomial;
    int degree = 2;
    double coef0 = 1.0;
    double gamma = 1.0;

    static KernelSpec linear() { return {KernelKind::Linear, 1, 0.0, 1.0}; }
    static KernelSpec polynomial(int degree, double coef0) { return {KernelKind::Polynomial, degree, coef0, 1.0}; }
    static KernelSpec rbf(double gamma) { return {KernelKind::Rbf, 1, 0.0, gamma}; }

    void validate() const;
    double operator()(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const;
};

KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

/// Entry (i, j) = h(z1_i, z2_j).
Matrix gram(const Matrix& z1, const Matrix& z2, const KernelSpec& spec);

/// Quantities of the uncentered stacked Gram matrix needed to center kernel rows of unseen points.
struct CenteringStats {
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    /// Per training column j: mean of K(l, j) over target rows l.
    Vector target_column_means;
    /// Per training column j: mean of K(l, j) over background rows l.
    Vector background_column_means;
    /// Grand means of the blocks K_X, K_XY, K_YX, K_Y.
    double target_target = 0.0;
    double target_background = 0.0;
    double background_target = 0.0;
    double background_background = 0.0;
};

/// Double-centers every block of the stacked Gram matrix against its own
/// dataset means, i.e. returns the Gram matrix of Phi(x) - mu_X and Phi(y) - mu_Y.
std::pair<Matrix, CenteringStats> center_blocks(const Matrix& gram_matrix, Eigen::Index n, Eigen::Index m);

/// Row-block scaling of the centered Gram matrix: 1/n on target rows, -alpha/m on background rows.
Matrix build_ktilde(const Matrix& centered_gram, Eigen::Index n, Eigen::Index m, double alpha);

struct KernelCpcaModel {
    KernelSpec spec;
    double alpha = 0.0;
    Matrix training_points;
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    /// N x k, columns normalized so a^T K_centered a = 1.
    Matrix dual_coeffs;
    Vector eigenvalues;
    CenteringStats centering;
    /// K_centered * dual_coeffs: projections of the training rows.
    Matrix training_embedding;

    Eigen::Index k() const noexcept { return dual_coeffs.cols(); }
};

KernelCpcaModel fit_kernel(const Matrix& target, const Matrix& background, const KernelSpec& spec, double alpha,
                           int k = kDefaultComponents);

/// Projects unseen rows. Each row is centered as a member of the target
/// (default) or background dataset, so a training row passed back in
/// reproduces its training projection.
Matrix transform_kernel(const KernelCpcaModel& model, const Matrix& data, CenterWith center = CenterWith::Target);

}  // namespace clens
