#pragma once

// Automatic selection of a few representative contrast strengths: fit every
// alpha on a grid, compare the resulting subspaces through principal angles,
// spectrally cluster them and report one medoid per cluster.

#include "clens/cpca.hpp"
#include "clens/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace clens {

/// Strictly increasing, finite, positive contrast strengths.
class AlphaGrid {
public:
    explicit AlphaGrid(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// count values from lo to hi (both exact) with a constant ratio.
AlphaGrid log_grid(double lo, double hi, int count);

/// "lo:hi:count" -> log_grid(lo, hi, count).
AlphaGrid parse_grid(const std::string& spec);

/// The 40-point grid from 0.1 to 1000.
AlphaGrid default_grid();

/// Principal angles in ascending order, each in [0, pi/2].
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

/// Product of the cosines of the principal angles.
double subspace_affinity(const Subspace& a, const Subspace& b);

/// Symmetric matrix with entries in [0, 1] and unit diagonal.
class AffinityMatrix {
public:
    explicit AffinityMatrix(Matrix values);

    const Matrix& values() const noexcept { return values_; }
    Eigen::Index dim() const noexcept { return values_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

private:
    Matrix values_;
};

AffinityMatrix affinity_matrix(const std::vector<Subspace>& subspaces);

struct KMeansResult {
    std::vector<int> labels;
    double inertia = 0.0;
};

/// Lloyd's k-means on the rows of `points`: farthest-point seeding whose first
/// center is drawn from `seed`, `restarts` runs, lowest inertia kept.
/// Labels are renumbered by order of first appearance.
KMeansResult kmeans(const Matrix& points, int clusters, std::uint64_t seed, int restarts = 10);

/// Ng-Jordan-Weiss spectral clustering. Rows with zero degree are given degree 1.
std::vector<int> spectral_cluster(const AffinityMatrix& affinity, int clusters, std::uint64_t seed);

/// Index of each cluster's member with the largest within-cluster affinity sum
/// (ties go to the lowest index), one entry per non-empty cluster, in label order.
std::vector<std::size_t> cluster_medoids(const AffinityMatrix& affinity, const std::vector<int>& labels);

/// Fits every grid alpha against one shared covariance pair.
std::vector<CpcaModel> sweep(const CovariancePair& covs, const AlphaGrid& grid, int k);

struct SelectionResult {
    AlphaGrid grid;
    std::vector<CpcaModel> per_alpha_models;
    AffinityMatrix affinity;
    std::vector<int> cluster_labels;
    /// Grid indices of the medoids, ascending in alpha.
    std::vector<std::size_t> medoid_indices;
    std::vector<double> medoid_alphas;
    std::vector<Subspace> medoid_subspaces;
    /// alpha = 0 fit; reported alongside but never clustered.
    CpcaModel pca_baseline;
};

SelectionResult auto_select(const CovariancePair& covs, const AlphaGrid& grid, int k, int p, std::uint64_t seed);
SelectionResult auto_select(const Matrix& target, const Matrix& background, const AlphaGrid& grid, int k, int p,
                            std::uint64_t seed);

}  // namespace clens
