#include "clens/cpca.hpp"

#include "clens/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace clens {

bool is_infinite_alpha(double alpha) noexcept { return std::isinf(alpha) && alpha > 0; }

double parse_alpha(const std::string& text) {
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "inf" || lower == "infinity" || lower == "+inf") return kInfiniteAlpha;
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ValidationError("alpha: cannot parse '" + text + "' (expected a number or 'inf')");
    }
    if (value < 0.0) throw ValidationError("alpha must be non-negative, got " + text);
    return value;
}

std::string format_alpha(double alpha) {
    if (is_infinite_alpha(alpha)) return "inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), alpha);
    return std::string(buf, ptr);
}

namespace {

void require_components(int k, Eigen::Index d) {
    if (k < 1 || k > d) {
        std::ostringstream msg;
        msg << "number of components k=" << k << " must satisfy 1 <= k <= d=" << d;
        throw ValidationError(msg.str());
    }
}

void require_same_features(const Matrix& target, const Matrix& background) {
    if (target.cols() != background.cols()) {
        std::ostringstream msg;
        msg << "target has " << target.cols() << " features, background has " << background.cols();
        throw ValidationError(msg.str());
    }
}

std::vector<VariancePair> pairs_for(const CovariancePair& covs, const Matrix& basis) {
    std::vector<VariancePair> pairs;
    pairs.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
        pairs.push_back(variance_pair(covs.target_cov, covs.background_cov, basis.col(i)));
    }
    return pairs;
}

}  // namespace

VariancePair variance_pair(const Matrix& target_cov, const Matrix& background_cov, const Vector& direction) {
    auto quad = [&](const Matrix& c) {
        double q = direction.dot(c * direction);
        const double floor = -1e-12 * (1.0 + max_abs(c));
        if (q < 0.0 && q >= floor) q = 0.0;
        return q;
    };
    return {quad(target_cov), quad(background_cov)};
}

CovariancePair CovariancePair::from_data(const Matrix& target, const Matrix& background) {
    require_nonempty(target, "target");
    require_nonempty(background, "background");
    require_same_features(target, background);
    if (target.rows() < 2 || background.rows() < 2) {
        std::ostringstream msg;
        msg << "need at least 2 rows in each dataset (target has " << target.rows() << ", background has "
            << background.rows() << ")";
        throw ValidationError(msg.str());
    }
    auto t = center_columns(target);
    auto b = center_columns(background);
    return {covariance(t.data), covariance(b.data), std::move(t.mean), std::move(b.mean)};
}

CovariancePair CovariancePair::from_covariances(Matrix target_cov, Matrix background_cov) {
    require_nonempty(target_cov, "target covariance");
    require_symmetric(target_cov, "target covariance");
    require_symmetric(background_cov, "background covariance");
    require_finite(target_cov, "target covariance");
    require_finite(background_cov, "background covariance");
    if (target_cov.rows() != background_cov.rows()) {
        throw ValidationError("target and background covariances differ in dimension");
    }
    const auto d = target_cov.rows();
    return {std::move(target_cov), std::move(background_cov), Vector::Zero(d), Vector::Zero(d)};
}

Matrix contrastive_matrix(const Matrix& target_cov, const Matrix& background_cov, double alpha) {
    if (target_cov.rows() != background_cov.rows() || target_cov.cols() != background_cov.cols()) {
        throw ValidationError("contrastive_matrix: covariance dimension mismatch");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw ValidationError("contrastive_matrix: alpha must be finite and non-negative, got " + format_alpha(alpha));
    }
    if (alpha == 0.0) return target_cov;
    return target_cov - alpha * background_cov;
}

CpcaModel fit(const CovariancePair& covs, double alpha, int k) {
    if (is_infinite_alpha(alpha)) return fit_infinite(covs, k);
    require_components(k, covs.dim());
    const Matrix c = contrastive_matrix(covs.target_cov, covs.background_cov, alpha);
    Spectrum spec = sym_eigh(c);
    Matrix basis = spec.eigenvectors.leftCols(k);
    auto pairs = pairs_for(covs, basis);
    return CpcaModel{alpha, Subspace(std::move(basis)), spec.eigenvalues.head(k), std::move(pairs), covs.target_mean,
                     covs.background_mean};
}

CpcaModel fit(const Matrix& target, const Matrix& background, double alpha, int k) {
    auto covs = CovariancePair::from_data(target, background);
    require_components(k, covs.dim());
    return fit(covs, alpha, k);
}

CpcaModel fit_infinite(const CovariancePair& covs, int k, double null_tol) {
    require_components(k, covs.dim());
    if (!(null_tol > 0.0)) throw ValidationError("fit_infinite: null_tol must be positive");

    const Spectrum bg = sym_eigh(covs.background_cov);
    const double cutoff = null_tol * std::max(bg.eigenvalues(0), 0.0);
    Eigen::Index null_dim = 0;
    for (Eigen::Index i = 0; i < bg.eigenvalues.size(); ++i) {
        if (bg.eigenvalues(i) <= cutoff) ++null_dim;
    }
    if (null_dim < k) {
        std::ostringstream msg;
        msg << "fit_infinite: background null space dimension " << null_dim << " is smaller than k=" << k;
        throw ValidationError(msg.str());
    }

    // Eigenvalues are descending, so the null space is spanned by the trailing columns.
    const Matrix null_basis = bg.eigenvectors.rightCols(null_dim);
    Matrix reduced = null_basis.transpose() * covs.target_cov * null_basis;
    reduced = (0.5 * (reduced + reduced.transpose())).eval();
    const Spectrum inner = sym_eigh(reduced);
    Matrix basis = null_basis * inner.eigenvectors.leftCols(k);
    normalize_column_signs(basis);
    auto pairs = pairs_for(covs, basis);
    return CpcaModel{kInfiniteAlpha, Subspace(std::move(basis)), inner.eigenvalues.head(k), std::move(pairs),
                     covs.target_mean, covs.background_mean};
}

CpcaModel fit_infinite(const Matrix& target, const Matrix& background, int k, double null_tol) {
    auto covs = CovariancePair::from_data(target, background);
    return fit_infinite(covs, k, null_tol);
}

CpcaModel fit_pca(const CovariancePair& covs, int k) { return fit(covs, 0.0, k); }

Matrix transform(const CpcaModel& model, const Matrix& data, CenterWith center) {
    const Vector& mean = center == CenterWith::Target ? model.target_mean : model.background_mean;
    return project(data, model.subspace, mean);
}

Vector feature_weights(const CpcaModel& model, Eigen::Index component) {
    if (component < 0 || component >= model.k()) {
        std::ostringstream msg;
        msg << "component index " << component << " out of range [0, " << model.k() << ")";
        throw ValidationError(msg.str());
    }
    const Vector squared = model.subspace.basis().col(component).array().square();
    return squared / squared.maxCoeff();
}

Matrix denoise(const CpcaModel& model, const Matrix& data) {
    const Matrix& b = model.subspace.basis();
    const Matrix coords = project(data, model.subspace, model.target_mean);
    return (coords * b.transpose()).rowwise() + model.target_mean.transpose();
}

}  // namespace clens
