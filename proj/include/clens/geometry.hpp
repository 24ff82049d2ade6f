#pragma once

// Executable geometry of target/background variance pairs: sampled clouds of
// pairs, the contrastiveness order, the most-contrastive boundary and
// empirical certificates that swept top components lie on it.

#include "clens/alpha_select.hpp"
#include "clens/cpca.hpp"
#include "clens/matrix.hpp"

#include <cstdint>
#include <vector>

namespace clens {

struct BoundarySample {
    Vector direction;
    VariancePair pair;
};

/// n rows, each a normalized standard-normal draw in R^d.
Matrix sample_unit_sphere(int d, int n, std::uint64_t seed);

/// Variance pair of every row of `directions`.
std::vector<BoundarySample> sample_pairs(const Matrix& target_cov, const Matrix& background_cov,
                                         const Matrix& directions);

/// Strict contrastiveness: p1 has no less target variance and strictly less background
/// variance, or strictly more target variance and no more background variance.
bool more_contrastive(const VariancePair& p1, const VariancePair& p2) noexcept;

/// Drops every sample that another sample eps-dominates; survivors sorted by ascending target variance.
std::vector<BoundarySample> boundary(const std::vector<BoundarySample>& samples, double eps);

struct HullVertex {
    std::size_t index;  // position in the input eigenvalue lists
    VariancePair pair;
};

/// Vertices of the lower-right convex-hull boundary of the points
/// (lambdas_x[i], lambdas_y[i]), ascending in target variance.
std::vector<HullVertex> simdiag_boundary(const std::vector<double>& lambdas_x, const std::vector<double>& lambdas_y);

/// Shared eigenbasis of a commuting covariance pair with per-eigenvector variance pairs.
struct CommonEigenbasis {
    Matrix vectors;
    std::vector<double> lambdas_x;
    std::vector<double> lambdas_y;
    double commutator = 0.0;
};

/// Diagonalizes a generic combination of the two matrices; throws unless ||C_X C_Y - C_Y C_X||_max is tiny.
CommonEigenbasis common_eigenbasis(const Matrix& target_cov, const Matrix& background_cov, double tol = 1e-9);

struct TraceEntry {
    double alpha;
    VariancePair pair;
    Vector direction;
};

/// Top component and its variance pair for every grid alpha.
std::vector<TraceEntry> top_component_trace(const Matrix& target_cov, const Matrix& background_cov,
                                            const AlphaGrid& grid);

/// Non-increasing in both coordinates over ascending alpha, within tol.
bool trace_is_monotone(const std::vector<TraceEntry>& trace, double tol);

struct DominanceViolation {
    double alpha;
    std::size_t sample;
    double target_gain;
    double background_drop;
};

struct FrontierCertificate {
    bool passed = true;
    double eps = 0.0;
    std::size_t samples = 0;
    /// max over alpha and samples of min(target gain, background drop) against the swept pair
    double max_dominance_margin = 0.0;
    /// max over alpha of (best sampled target variance at no more background variance) - swept target variance
    double max_frontier_gap = 0.0;
    std::vector<TraceEntry> trace;
    std::vector<DominanceViolation> violations;
    std::vector<VariancePair> cloud;
};

FrontierCertificate certify_frontier(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid,
                                int n_samples, std::uint64_t seed, double eps = 1e-6, bool keep_cloud = false);

struct Secant {
    double alpha_lo;
    double alpha_hi;
    double slope;
    double lower;
    double upper;
    bool bracketed;
};

struct TangencyReport {
    bool passed = true;
    std::vector<Secant> secants;
};

/// Secant slopes between consecutive distinct swept pairs must lie in
/// [1/alpha_hi - tol, 1/alpha_lo + tol] with tol = 0.05 / alpha_hi.
TangencyReport tangency_check(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid);

struct SimdiagReport {
    bool passed = true;
    /// Largest angle between a swept top component and its nearest hull-vertex eigenvector.
    double max_angle = 0.0;
    std::vector<HullVertex> vertices;
    /// For each grid alpha, the vertex index the swept component matched.
    std::vector<std::size_t> matched_vertex;
};

SimdiagReport simdiag_check(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid,
                            double angle_tol = 1e-6);

}  // namespace clens
