#include "clens/kernel_cpca.hpp"

#include "clens/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace clens {

void KernelSpec::validate() const {
    switch (kind) {
        case KernelKind::Linear:
            return;
        case KernelKind::Polynomial:
            if (degree < 1) throw ValidationError("polynomial kernel degree must be >= 1");
            if (!std::isfinite(coef0)) throw ValidationError("polynomial kernel coef0 must be finite");
            return;
        case KernelKind::Rbf:
            if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("rbf kernel gamma must be positive");
            return;
    }
    throw ValidationError("unknown kernel kind");
}

double KernelSpec::operator()(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const {
    switch (kind) {
        case KernelKind::Linear:
            return a.dot(b);
        case KernelKind::Polynomial:
            return std::pow(a.dot(b) + coef0, degree);
        case KernelKind::Rbf:
            return std::exp(-gamma * (a - b).squaredNorm());
    }
    return 0.0;
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "linear") return KernelKind::Linear;
    if (name == "poly" || name == "polynomial") return KernelKind::Polynomial;
    if (name == "rbf") return KernelKind::Rbf;
    throw ValidationError("unknown kernel '" + name + "' (expected linear, poly or rbf)");
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Linear:
            return "linear";
        case KernelKind::Polynomial:
            return "poly";
        case KernelKind::Rbf:
            return "rbf";
    }
    return "unknown";
}

Matrix gram(const Matrix& z1, const Matrix& z2, const KernelSpec& spec) {
    spec.validate();
    if (z1.cols() != z2.cols()) {
        std::ostringstream msg;
        msg << "gram: feature counts differ (" << z1.cols() << " vs " << z2.cols() << ")";
        throw ValidationError(msg.str());
    }
    Matrix dots = z1 * z2.transpose();
    switch (spec.kind) {
        case KernelKind::Linear:
            return dots;
        case KernelKind::Polynomial:
            return (dots.array() + spec.coef0).pow(spec.degree).matrix();
        case KernelKind::Rbf: {
            const Vector sq1 = z1.rowwise().squaredNorm();
            const Vector sq2 = z2.rowwise().squaredNorm();
            Matrix dist = (-2.0 * dots).colwise() + sq1;
            dist.rowwise() += sq2.transpose();
            return (-spec.gamma * dist.cwiseMax(0.0)).array().exp().matrix();
        }
    }
    return dots;
}

std::pair<Matrix, CenteringStats> center_blocks(const Matrix& gram_matrix, Eigen::Index n, Eigen::Index m) {
    if (n < 1 || m < 1 || gram_matrix.rows() != n + m || gram_matrix.cols() != n + m) {
        std::ostringstream msg;
        msg << "center_blocks: expected a " << n + m << "x" << n + m << " matrix, got " << gram_matrix.rows() << "x"
            << gram_matrix.cols();
        throw ValidationError(msg.str());
    }
    require_symmetric(gram_matrix, "center_blocks");

    CenteringStats stats;
    stats.n = n;
    stats.m = m;
    stats.target_column_means = gram_matrix.topRows(n).colwise().mean().transpose();
    stats.background_column_means = gram_matrix.bottomRows(m).colwise().mean().transpose();
    stats.target_target = gram_matrix.topLeftCorner(n, n).mean();
    stats.target_background = gram_matrix.topRightCorner(n, m).mean();
    stats.background_target = gram_matrix.bottomLeftCorner(m, n).mean();
    stats.background_background = gram_matrix.bottomRightCorner(m, m).mean();

    const Eigen::Index total = n + m;
    Matrix centered(total, total);
    for (Eigen::Index j = 0; j < total; ++j) {
        const bool j_target = j < n;
        for (Eigen::Index i = 0; i < total; ++i) {
            const bool i_target = i < n;
            const double row_group_mean = i_target ? stats.target_column_means(j) : stats.background_column_means(j);
            const double col_group_mean = j_target ? stats.target_column_means(i) : stats.background_column_means(i);
            const double grand = i_target ? (j_target ? stats.target_target : stats.target_background)
                                          : (j_target ? stats.background_target : stats.background_background);
            centered(i, j) = gram_matrix(i, j) - row_group_mean - col_group_mean + grand;
        }
    }
    centered = (0.5 * (centered + centered.transpose())).eval();
    return {std::move(centered), std::move(stats)};
}

Matrix build_ktilde(const Matrix& centered_gram, Eigen::Index n, Eigen::Index m, double alpha) {
    if (centered_gram.rows() != n + m || centered_gram.cols() != n + m) {
        throw ValidationError("build_ktilde: shape does not match n + m");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("build_ktilde: alpha must be finite and >= 0");
    Matrix out(n + m, n + m);
    out.topRows(n) = centered_gram.topRows(n) / static_cast<double>(n);
    out.bottomRows(m) = centered_gram.bottomRows(m) * (-alpha / static_cast<double>(m));
    return out;
}

namespace {

struct RealEigenpairs {
    Vector real;
    Vector imag;
    Matrix vectors;  // LAPACK layout: conjugate pairs occupy consecutive columns (re, im)
};

RealEigenpairs general_eigen(Matrix a) {
    const auto n = static_cast<lapack_int>(a.rows());
    RealEigenpairs out{Vector(n), Vector(n), Matrix(n, n)};
    const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, out.real.data(), out.imag.data(),
                                          nullptr, 1, out.vectors.data(), n);
    if (info != 0) {
        std::ostringstream msg;
        msg << "fit_kernel: general eigensolver failed (dgeev info " << info << ", dim " << n << ")";
        throw NumericError(msg.str());
    }
    return out;
}

}  // namespace

KernelCpcaModel fit_kernel(const Matrix& target, const Matrix& background, const KernelSpec& spec, double alpha,
                           int k) {
    spec.validate();
    require_nonempty(target, "target");
    require_nonempty(background, "background");
    require_finite(target, "target");
    require_finite(background, "background");
    if (target.cols() != background.cols()) {
        std::ostringstream msg;
        msg << "target has " << target.cols() << " features, background has " << background.cols();
        throw ValidationError(msg.str());
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("fit_kernel: alpha must be finite and non-negative");
    }
    const Eigen::Index n = target.rows();
    const Eigen::Index m = background.rows();
    if (k < 1 || k > n + m) {
        std::ostringstream msg;
        msg << "fit_kernel: k=" << k << " must satisfy 1 <= k <= n + m = " << n + m;
        throw ValidationError(msg.str());
    }

    Matrix points(n + m, target.cols());
    points << target, background;
    Matrix k_raw = gram(points, points, spec);
    k_raw = (0.5 * (k_raw + k_raw.transpose())).eval();
    auto [k_centered, stats] = center_blocks(k_raw, n, m);
    const Matrix ktilde = build_ktilde(k_centered, n, m, alpha);

    const auto eig = general_eigen(ktilde);
    const double null_floor = 1e-10 * std::max(1.0, max_abs(k_centered));

    struct Candidate {
        double value;
        Eigen::Index column;
        double norm_sq;
    };
    std::vector<Candidate> admissible;
    for (Eigen::Index j = 0; j < eig.real.size(); ++j) {
        const double re = eig.real(j);
        const double im = eig.imag(j);
        if (std::abs(im) > 1e-8 * (1.0 + std::abs(re))) continue;
        const auto a = eig.vectors.col(j);
        const double norm_sq = a.dot(k_centered * a);
        if (norm_sq <= null_floor * a.squaredNorm()) continue;
        admissible.push_back({re, j, norm_sq});
    }
    if (static_cast<Eigen::Index>(admissible.size()) < k) {
        std::ostringstream msg;
        msg << "fit_kernel: only " << admissible.size() << " admissible eigenpairs, fewer than k=" << k;
        throw NumericError(msg.str());
    }
    std::stable_sort(admissible.begin(), admissible.end(),
                     [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

    Matrix coeffs(n + m, k);
    Vector values(k);
    for (int q = 0; q < k; ++q) {
        const auto& c = admissible[static_cast<std::size_t>(q)];
        coeffs.col(q) = eig.vectors.col(c.column) / std::sqrt(c.norm_sq);
        values(q) = c.value;
    }
    normalize_column_signs(coeffs);

    KernelCpcaModel model;
    model.spec = spec;
    model.alpha = alpha;
    model.training_points = std::move(points);
    model.n = n;
    model.m = m;
    model.training_embedding = k_centered * coeffs;
    model.dual_coeffs = std::move(coeffs);
    model.eigenvalues = std::move(values);
    model.centering = std::move(stats);
    return model;
}

Matrix transform_kernel(const KernelCpcaModel& model, const Matrix& data, CenterWith center) {
    if (data.cols() != model.training_points.cols()) {
        std::ostringstream msg;
        msg << "transform_kernel: data has " << data.cols() << " features, model expects "
            << model.training_points.cols();
        throw ValidationError(msg.str());
    }
    require_finite(data, "transform_kernel");
    const auto& s = model.centering;
    const Eigen::Index n = model.n;
    const Eigen::Index m = model.m;
    const bool as_target = center == CenterWith::Target;

    Matrix rows = gram(data, model.training_points, model.spec);
    const Vector own_mean_target = rows.leftCols(n).rowwise().mean();
    const Vector own_mean_background = rows.rightCols(m).rowwise().mean();
    const Vector& column_means = as_target ? s.target_column_means : s.background_column_means;
    const double grand_target = as_target ? s.target_target : s.background_target;
    const double grand_background = as_target ? s.target_background : s.background_background;

    rows.rowwise() -= column_means.transpose();
    rows.leftCols(n).colwise() -= own_mean_target;
    rows.rightCols(m).colwise() -= own_mean_background;
    rows.leftCols(n).array() += grand_target;
    rows.rightCols(m).array() += grand_background;
    return rows * model.dual_coeffs;
}

}  // namespace clens
