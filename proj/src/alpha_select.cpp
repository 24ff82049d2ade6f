#include "clens/alpha_select.hpp"

#include "clens/errors.hpp"
#include "clens/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace clens {

AlphaGrid::AlphaGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("alpha grid must not be empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
            throw ValidationError("alpha grid values must be finite and positive");
        }
        if (i > 0 && values_[i] <= values_[i - 1]) {
            throw ValidationError("alpha grid values must be strictly increasing");
        }
    }
}

AlphaGrid log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0)) throw ValidationError("log_grid: lo must be positive");
    if (!(hi > lo)) throw ValidationError("log_grid: hi must exceed lo");
    if (count < 2) throw ValidationError("log_grid: count must be at least 2");
    std::vector<double> v(static_cast<std::size_t>(count));
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (count - 1);
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::exp(log_lo + step * i);
    v.front() = lo;
    v.back() = hi;
    return AlphaGrid(std::move(v));
}

AlphaGrid parse_grid(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
    if (second == std::string::npos) {
        throw ValidationError("grid '" + spec + "': expected lo:hi:count");
    }
    auto parse_double = [&](std::string_view s) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) throw ValidationError("grid '" + spec + "': bad number");
        return v;
    };
    const std::string_view view(spec);
    const double lo = parse_double(view.substr(0, first));
    const double hi = parse_double(view.substr(first + 1, second - first - 1));
    int count = 0;
    const auto tail = view.substr(second + 1);
    auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), count);
    if (ec != std::errc() || p != tail.data() + tail.size()) throw ValidationError("grid '" + spec + "': bad count");
    return log_grid(lo, hi, count);
}

AlphaGrid default_grid() { return log_grid(0.1, 1000.0, 40); }

namespace {

void require_comparable(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim() || a.k() != b.k()) {
        std::ostringstream msg;
        msg << "subspaces are not comparable (" << a.dim() << "x" << a.k() << " vs " << b.dim() << "x" << b.k() << ")";
        throw ValidationError(msg.str());
    }
}

Vector clamped_cosines(const Subspace& a, const Subspace& b) {
    require_comparable(a, b);
    const Matrix cross = a.basis().transpose() * b.basis();
    Eigen::JacobiSVD<Matrix> svd(cross);
    return svd.singularValues().cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
    const Vector cosines = clamped_cosines(a, b);
    std::vector<double> angles(static_cast<std::size_t>(cosines.size()));
    for (Eigen::Index i = 0; i < cosines.size(); ++i) angles[static_cast<std::size_t>(i)] = std::acos(cosines(i));
    std::sort(angles.begin(), angles.end());
    return angles;
}

double subspace_affinity(const Subspace& a, const Subspace& b) { return clamped_cosines(a, b).prod(); }

AffinityMatrix::AffinityMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols() || values_.rows() < 1) {
        throw ValidationError("affinity matrix must be square and non-empty");
    }
    require_finite(values_, "affinity matrix");
    if (max_abs(values_ - values_.transpose()) > kSymmetryTol) {
        throw ValidationError("affinity matrix must be symmetric");
    }
    values_ = values_.cwiseMax(0.0).cwiseMin(1.0);
    values_.diagonal().setOnes();
}

AffinityMatrix affinity_matrix(const std::vector<Subspace>& subspaces) {
    const auto n = static_cast<Eigen::Index>(subspaces.size());
    Matrix a = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = subspace_affinity(subspaces[static_cast<std::size_t>(i)],
                                               subspaces[static_cast<std::size_t>(j)]);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return AffinityMatrix(std::move(a));
}

namespace {

struct LloydRun {
    std::vector<int> labels;
    double inertia = 0.0;
};

LloydRun lloyd(const Matrix& points, Matrix centers) {
    const Eigen::Index n = points.rows();
    const Eigen::Index c = centers.rows();
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    double inertia = 0.0;
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        inertia = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < c; ++j) {
                const double dist = (points.row(i) - centers.row(j)).squaredNorm();
                if (dist < best_d) {
                    best_d = dist;
                    best = static_cast<int>(j);
                }
            }
            inertia += best_d;
            if (labels[static_cast<std::size_t>(i)] != best) {
                labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;
        Matrix sums = Matrix::Zero(c, points.cols());
        std::vector<int> counts(static_cast<std::size_t>(c), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int l = labels[static_cast<std::size_t>(i)];
            sums.row(l) += points.row(i);
            ++counts[static_cast<std::size_t>(l)];
        }
        // Empty clusters keep their previous center.
        for (Eigen::Index j = 0; j < c; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0) centers.row(j) = sums.row(j) / counts[static_cast<std::size_t>(j)];
        }
    }
    return {std::move(labels), inertia};
}

Matrix farthest_point_seeds(const Matrix& points, int clusters, Eigen::Index first) {
    const Eigen::Index n = points.rows();
    Matrix centers(clusters, points.cols());
    centers.row(0) = points.row(first);
    Vector nearest(n);
    for (Eigen::Index i = 0; i < n; ++i) nearest(i) = (points.row(i) - centers.row(0)).squaredNorm();
    for (int c = 1; c < clusters; ++c) {
        Eigen::Index pick = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (nearest(i) > best) {
                best = nearest(i);
                pick = i;
            }
        }
        centers.row(c) = points.row(pick);
        for (Eigen::Index i = 0; i < n; ++i) {
            nearest(i) = std::min(nearest(i), (points.row(i) - centers.row(c)).squaredNorm());
        }
    }
    return centers;
}

std::vector<int> renumber_by_first_appearance(const std::vector<int>& labels) {
    std::vector<int> mapping;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int l = labels[i];
        if (l >= static_cast<int>(mapping.size())) mapping.resize(static_cast<std::size_t>(l) + 1, -1);
        if (mapping[static_cast<std::size_t>(l)] < 0) {
            mapping[static_cast<std::size_t>(l)] =
                static_cast<int>(std::count_if(mapping.begin(), mapping.end(), [](int m) { return m >= 0; }));
        }
        out[i] = mapping[static_cast<std::size_t>(l)];
    }
    return out;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int clusters, std::uint64_t seed, int restarts) {
    if (points.rows() < 1) throw ValidationError("kmeans: no points");
    if (clusters < 1 || clusters > points.rows()) {
        std::ostringstream msg;
        msg << "kmeans: cluster count " << clusters << " must be in [1, " << points.rows() << "]";
        throw ValidationError(msg.str());
    }
    if (restarts < 1) throw ValidationError("kmeans: restarts must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> pick_first(0, points.rows() - 1);
    std::optional<LloydRun> best;
    for (int r = 0; r < restarts; ++r) {
        auto run = lloyd(points, farthest_point_seeds(points, clusters, pick_first(rng)));
        if (!best || run.inertia < best->inertia) best = std::move(run);
    }
    return {renumber_by_first_appearance(best->labels), best->inertia};
}

std::vector<int> spectral_cluster(const AffinityMatrix& affinity, int clusters, std::uint64_t seed) {
    const Eigen::Index n = affinity.dim();
    if (clusters < 1 || clusters > n) {
        std::ostringstream msg;
        msg << "spectral_cluster: p=" << clusters << " must be in [1, " << n << "]";
        throw ValidationError(msg.str());
    }
    Vector inv_sqrt_degree = affinity.values().rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double deg = inv_sqrt_degree(i) > 0.0 ? inv_sqrt_degree(i) : 1.0;
        inv_sqrt_degree(i) = 1.0 / std::sqrt(deg);
    }
    Matrix laplacian = inv_sqrt_degree.asDiagonal() * affinity.values() * inv_sqrt_degree.asDiagonal();
    laplacian = (0.5 * (laplacian + laplacian.transpose())).eval();

    Matrix embedding = sym_eigh(laplacian).eigenvectors.leftCols(clusters);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }
    return kmeans(embedding, clusters, seed).labels;
}

std::vector<std::size_t> cluster_medoids(const AffinityMatrix& affinity, const std::vector<int>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != affinity.dim()) {
        throw ValidationError("cluster_medoids: label count does not match affinity dimension");
    }
    const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::size_t> medoids;
    for (int c = 0; c < count; ++c) {
        std::optional<std::size_t> best;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] != c) continue;
            double score = 0.0;
            for (std::size_t j = 0; j < labels.size(); ++j) {
                if (labels[j] == c) score += affinity(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best) medoids.push_back(*best);
    }
    return medoids;
}

std::vector<CpcaModel> sweep(const CovariancePair& covs, const AlphaGrid& grid, int k) {
    std::vector<std::optional<CpcaModel>> slots(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { slots[i].emplace(fit(covs, grid[i], k)); });
    std::vector<CpcaModel> models;
    models.reserve(grid.size());
    for (auto& s : slots) models.push_back(std::move(*s));
    return models;
}

SelectionResult auto_select(const CovariancePair& covs, const AlphaGrid& grid, int k, int p, std::uint64_t seed) {
    if (p < 1 || static_cast<std::size_t>(p) > grid.size()) {
        std::ostringstream msg;
        msg << "p=" << p << " must be between 1 and the grid size " << grid.size();
        throw ValidationError(msg.str());
    }
    auto baseline = fit_pca(covs, k);
    auto models = sweep(covs, grid, k);

    std::vector<Subspace> subspaces;
    subspaces.reserve(models.size());
    for (const auto& m : models) subspaces.push_back(m.subspace);
    auto affinity = affinity_matrix(subspaces);
    auto labels = spectral_cluster(affinity, p, seed);

    auto medoids = cluster_medoids(affinity, labels);
    std::sort(medoids.begin(), medoids.end());
    std::vector<double> medoid_alphas;
    std::vector<Subspace> medoid_subspaces;
    for (auto idx : medoids) {
        medoid_alphas.push_back(grid[idx]);
        medoid_subspaces.push_back(subspaces[idx]);
    }
    return SelectionResult{grid,
                           std::move(models),
                           std::move(affinity),
                           std::move(labels),
                           std::move(medoids),
                           std::move(medoid_alphas),
                           std::move(medoid_subspaces),
                           std::move(baseline)};
}

SelectionResult auto_select(const Matrix& target, const Matrix& background, const AlphaGrid& grid, int k, int p,
                            std::uint64_t seed) {
    auto covs = CovariancePair::from_data(target, background);
    if (k < 1 || k > covs.dim()) throw ValidationError("k must satisfy 1 <= k <= d");
    return auto_select(covs, grid, k, p, seed);
}

}  // namespace clens
