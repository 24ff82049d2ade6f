#include "clens/geometry.hpp"

#include "clens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace clens {

Matrix sample_unit_sphere(int d, int n, std::uint64_t seed) {
    if (d < 1 || n < 1) throw ValidationError("sample_unit_sphere: d and n must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix out(n, d);
    for (int i = 0; i < n; ++i) {
        double norm = 0.0;
        do {
            for (int j = 0; j < d; ++j) out(i, j) = normal(rng);
            norm = out.row(i).norm();
        } while (norm == 0.0);
        out.row(i) /= norm;
    }
    return out;
}

std::vector<BoundarySample> sample_pairs(const Matrix& target_cov, const Matrix& background_cov,
                                         const Matrix& directions) {
    if (directions.cols() != target_cov.rows() || target_cov.rows() != background_cov.rows()) {
        throw ValidationError("sample_pairs: dimension mismatch");
    }
    // Row-wise quadratic forms: diag(U C U^T).
    const Vector tx = (directions * target_cov).cwiseProduct(directions).rowwise().sum();
    const Vector ty = (directions * background_cov).cwiseProduct(directions).rowwise().sum();
    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(directions.rows()));
    for (Eigen::Index i = 0; i < directions.rows(); ++i) {
        out.push_back({directions.row(i).transpose(), {tx(i), ty(i)}});
    }
    return out;
}

bool more_contrastive(const VariancePair& p1, const VariancePair& p2) noexcept {
    return (p1.target_var >= p2.target_var && p1.background_var < p2.background_var) ||
           (p1.target_var > p2.target_var && p1.background_var <= p2.background_var);
}

std::vector<BoundarySample> boundary(const std::vector<BoundarySample>& samples, double eps) {
    if (!(eps >= 0.0)) throw ValidationError("boundary: eps must be non-negative");
    const std::size_t n = samples.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].pair.target_var < samples[b].pair.target_var;
    });
    std::vector<double> xs(n);
    std::vector<double> suffix_min_y(n + 1, std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < n; ++p) xs[p] = samples[order[p]].pair.target_var;
    for (std::size_t p = n; p-- > 0;) {
        suffix_min_y[p] = std::min(suffix_min_y[p + 1], samples[order[p]].pair.background_var);
    }

    std::vector<BoundarySample> kept;
    for (std::size_t p = 0; p < n; ++p) {
        const auto& s = samples[order[p]].pair;
        // Some s' with target > x + eps and background <= y + eps.
        const auto above = static_cast<std::size_t>(
            std::upper_bound(xs.begin(), xs.end(), s.target_var + eps) - xs.begin());
        const bool beaten_on_target = suffix_min_y[above] <= s.background_var + eps;
        // Some s' with target >= x - eps and background < y - eps.
        const auto near = static_cast<std::size_t>(
            std::lower_bound(xs.begin(), xs.end(), s.target_var - eps) - xs.begin());
        const bool beaten_on_background = suffix_min_y[near] < s.background_var - eps;
        if (!beaten_on_target && !beaten_on_background) kept.push_back(samples[order[p]]);
    }
    return kept;
}

std::vector<HullVertex> simdiag_boundary(const std::vector<double>& lambdas_x, const std::vector<double>& lambdas_y) {
    if (lambdas_x.size() != lambdas_y.size()) throw ValidationError("simdiag_boundary: length mismatch");
    std::vector<HullVertex> front;
    for (std::size_t i = 0; i < lambdas_x.size(); ++i) {
        const VariancePair pi{lambdas_x[i], lambdas_y[i]};
        bool dominated = false;
        bool duplicate = false;
        for (std::size_t j = 0; j < lambdas_x.size() && !dominated && !duplicate; ++j) {
            if (j == i) continue;
            const VariancePair pj{lambdas_x[j], lambdas_y[j]};
            dominated = more_contrastive(pj, pi);
            duplicate = j < i && pj.target_var == pi.target_var && pj.background_var == pi.background_var;
        }
        if (!dominated && !duplicate) front.push_back({i, pi});
    }
    // The non-dominated set is a staircase rising in both coordinates.
    std::sort(front.begin(), front.end(),
              [](const HullVertex& a, const HullVertex& b) { return a.pair.target_var < b.pair.target_var; });

    // Lower convex chain; collinear interior points are not vertices.
    std::vector<HullVertex> hull;
    auto cross = [](const VariancePair& o, const VariancePair& a, const VariancePair& b) {
        return (a.target_var - o.target_var) * (b.background_var - o.background_var) -
               (a.background_var - o.background_var) * (b.target_var - o.target_var);
    };
    for (const auto& v : front) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2].pair, hull.back().pair, v.pair) <= 0.0) hull.pop_back();
        hull.push_back(v);
    }
    return hull;
}

CommonEigenbasis common_eigenbasis(const Matrix& target_cov, const Matrix& background_cov, double tol) {
    if (target_cov.rows() != background_cov.rows()) throw ValidationError("common_eigenbasis: dimension mismatch");
    CommonEigenbasis out;
    out.commutator = max_abs(target_cov * background_cov - background_cov * target_cov);
    const double scale = 1.0 + max_abs(target_cov) * max_abs(background_cov);
    if (out.commutator > tol * scale) {
        std::ostringstream msg;
        msg << "common_eigenbasis: matrices do not commute (max |CxCy - CyCx| = " << out.commutator << ")";
        throw ValidationError(msg.str());
    }
    // An irrational weight separates eigenvalues that coincide in one of the two matrices.
    const double weight = std::sqrt(2.0) - 0.5;
    Matrix combo = target_cov + weight * background_cov;
    combo = (0.5 * (combo + combo.transpose())).eval();
    out.vectors = sym_eigh(combo).eigenvectors;
    for (Eigen::Index i = 0; i < out.vectors.cols(); ++i) {
        const auto p = variance_pair(target_cov, background_cov, out.vectors.col(i));
        out.lambdas_x.push_back(p.target_var);
        out.lambdas_y.push_back(p.background_var);
    }
    return out;
}

std::vector<TraceEntry> top_component_trace(const Matrix& target_cov, const Matrix& background_cov,
                                            const AlphaGrid& grid) {
    const auto covs = CovariancePair::from_covariances(target_cov, background_cov);
    const auto models = sweep(covs, grid, 1);
    std::vector<TraceEntry> trace;
    trace.reserve(models.size());
    for (const auto& m : models) {
        trace.push_back({m.alpha, m.variance_pairs.front(), m.subspace.basis().col(0)});
    }
    return trace;
}

bool trace_is_monotone(const std::vector<TraceEntry>& trace, double tol) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].pair.target_var > trace[i - 1].pair.target_var + tol) return false;
        if (trace[i].pair.background_var > trace[i - 1].pair.background_var + tol) return false;
    }
    return true;
}

FrontierCertificate certify_frontier(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid,
                                int n_samples, std::uint64_t seed, double eps, bool keep_cloud) {
    if (!(eps >= 0.0)) throw ValidationError("certify_frontier: eps must be non-negative");
    FrontierCertificate report;
    report.eps = eps;
    report.samples = static_cast<std::size_t>(n_samples);
    report.trace = top_component_trace(target_cov, background_cov, grid);

    const Matrix directions = sample_unit_sphere(static_cast<int>(target_cov.rows()), n_samples, seed);
    const auto cloud = sample_pairs(target_cov, background_cov, directions);

    report.max_dominance_margin = -std::numeric_limits<double>::infinity();
    report.max_frontier_gap = -std::numeric_limits<double>::infinity();
    for (const auto& entry : report.trace) {
        const double x = entry.pair.target_var;
        const double y = entry.pair.background_var;
        for (std::size_t s = 0; s < cloud.size(); ++s) {
            const double gain = cloud[s].pair.target_var - x;
            const double drop = y - cloud[s].pair.background_var;
            const double margin = std::min(gain, drop);
            report.max_dominance_margin = std::max(report.max_dominance_margin, margin);
            if (drop >= 0.0) report.max_frontier_gap = std::max(report.max_frontier_gap, gain);
            if (margin > eps) {
                report.passed = false;
                report.violations.push_back({entry.alpha, s, gain, drop});
            }
        }
    }
    if (report.max_frontier_gap > eps) report.passed = false;
    if (keep_cloud) {
        report.cloud.reserve(cloud.size());
        for (const auto& c : cloud) report.cloud.push_back(c.pair);
    }
    return report;
}

TangencyReport tangency_check(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid) {
    if (grid.size() < 3) throw ValidationError("tangency_check: grid needs at least 3 points");
    TangencyReport report;
    const auto trace = top_component_trace(target_cov, background_cov, grid);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const auto& lo = trace[i];
        const auto& hi = trace[i + 1];
        const double dx = lo.pair.target_var - hi.pair.target_var;
        const double dy = lo.pair.background_var - hi.pair.background_var;
        if (std::abs(dx) < 1e-9 && std::abs(dy) < 1e-9) continue;
        const double tol = 0.05 / hi.alpha;
        Secant s{lo.alpha, hi.alpha, dy / dx, 1.0 / hi.alpha - tol, 1.0 / lo.alpha + tol, false};
        s.bracketed = std::isfinite(s.slope) && s.slope >= s.lower && s.slope <= s.upper;
        report.passed = report.passed && s.bracketed;
        report.secants.push_back(s);
    }
    return report;
}

SimdiagReport simdiag_check(const Matrix& target_cov, const Matrix& background_cov, const AlphaGrid& grid,
                            double angle_tol) {
    SimdiagReport report;
    const auto basis = common_eigenbasis(target_cov, background_cov);
    report.vertices = simdiag_boundary(basis.lambdas_x, basis.lambdas_y);
    const auto trace = top_component_trace(target_cov, background_cov, grid);
    for (const auto& entry : trace) {
        double best_angle = std::numeric_limits<double>::infinity();
        std::size_t best_index = 0;
        for (const auto& v : report.vertices) {
            const double c = std::min(1.0, std::abs(entry.direction.dot(basis.vectors.col(static_cast<Eigen::Index>(v.index)))));
            const double angle = std::acos(c);
            if (angle < best_angle) {
                best_angle = angle;
                best_index = v.index;
            }
        }
        report.max_angle = std::max(report.max_angle, best_angle);
        report.matched_vertex.push_back(best_index);
    }
    report.passed = report.max_angle <= angle_tol;
    return report;
}

}  // namespace clens
