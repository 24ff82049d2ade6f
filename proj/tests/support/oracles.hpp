#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the library's numerical routines except where a
// helper is explicitly documented as wrapping one.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Seeded generator for hand-rolled property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double normal() { return normal_(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
        Matrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
        return m;
    }

    Matrix symmetric(Eigen::Index d) {
        Matrix a = gaussian(d, d);
        return (a + a.transpose()) / 2.0;
    }

    /// Gaussian data with per-feature scales drawn from [0.2, 3].
    Matrix dataset(Eigen::Index rows, Eigen::Index cols) {
        Matrix m = gaussian(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) m.col(j) *= uniform(0.2, 3.0);
        return m * gaussian(cols, cols) / std::sqrt(static_cast<double>(cols)) +
               Vector::Constant(cols, uniform(-2, 2)).transpose().replicate(rows, 1);
    }

    Vector unit(Eigen::Index d) {
        Vector v(d);
        for (auto& x : v) x = normal();
        return v.normalized();
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

/// Column means by explicit summation.
inline Vector column_means(const Matrix& m) {
    Vector mean = Vector::Zero(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        long double s = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) s += m(i, j);
        mean(j) = static_cast<double>(s / m.rows());
    }
    return mean;
}

/// (1/n) sum of outer products of rows after subtracting their mean, by explicit loops.
inline Matrix population_covariance(const Matrix& m) {
    const Vector mean = column_means(m);
    Matrix c = Matrix::Zero(m.cols(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Vector r = m.row(i).transpose() - mean;
        c += r * r.transpose();
    }
    return c / static_cast<double>(m.rows());
}

/// Analytic eigendecomposition of a symmetric 2x2 matrix, descending.
inline std::pair<Vector, Matrix> eig2x2(double a, double b, double d) {
    const double mid = (a + d) / 2.0;
    const double rad = std::hypot((a - d) / 2.0, b);
    Vector values(2);
    values << mid + rad, mid - rad;
    Matrix vectors(2, 2);
    for (int i = 0; i < 2; ++i) {
        Vector v(2);
        if (std::abs(b) > 0) {
            v << b, values(i) - a;
        } else {
            const bool first_axis = (i == 0) == (a >= d);
            v << (first_axis ? 1.0 : 0.0), (first_axis ? 0.0 : 1.0);
        }
        vectors.col(i) = v.normalized();
    }
    return {values, vectors};
}

/// Largest principal angle between the column spans of two orthonormal bases,
/// via the projector difference: sin(theta_max) = ||P1 - P2||_2.
inline double max_principal_angle(const Matrix& b1, const Matrix& b2) {
    const Matrix diff = b1 * b1.transpose() - b2 * b2.transpose();
    const double s = Eigen::JacobiSVD<Matrix>(diff).singularValues()(0);
    return std::asin(std::min(1.0, s));
}

/// Top-k eigenvectors of a symmetric matrix by orthogonal (subspace) iteration
/// with a Rayleigh-Ritz step, independent of the library's solver.
inline Matrix top_eigvecs_by_iteration(const Matrix& c, int k, int iterations = 3000) {
    const Eigen::Index d = c.rows();
    // shift so every eigenvalue is positive and the ordering is preserved
    const double shift = c.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
    const Matrix shifted = c + shift * Matrix::Identity(d, d);
    Matrix q = Matrix::Identity(d, k);
    for (int it = 0; it < iterations; ++it) {
        Eigen::HouseholderQR<Matrix> qr(shifted * q);
        q = qr.householderQ() * Matrix::Identity(d, k);
    }
    return q;
}

/// Adjusted Rand index between two labelings.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    std::map<std::pair<int, int>, long long> joint;
    std::map<int, long long> ca;
    std::map<int, long long> cb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[{a[i], b[i]}];
        ++ca[a[i]];
        ++cb[b[i]];
    }
    auto choose2 = [](long long x) { return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0; };
    double index = 0;
    for (const auto& [k, v] : joint) index += choose2(v);
    double sa = 0;
    double sb = 0;
    for (const auto& [k, v] : ca) sa += choose2(v);
    for (const auto& [k, v] : cb) sb += choose2(v);
    const double total = choose2(static_cast<long long>(a.size()));
    const double expected = sa * sb / total;
    const double max_index = (sa + sb) / 2.0;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

/// Best accuracy of any linear threshold classifier on 2-D points with binary
/// labels: scans directions at `angles` resolution over a half-turn and every
/// threshold between consecutive projected values.
inline double best_linear_split(const Matrix& points, const std::vector<int>& labels, int angles = 1440) {
    const auto n = points.rows();
    double best = 0.0;
    std::vector<std::pair<double, int>> proj(static_cast<std::size_t>(n));
    const int total_ones = static_cast<int>(std::count(labels.begin(), labels.end(), 1));
    for (int a = 0; a < angles; ++a) {
        const double t = M_PI * a / angles;
        const double cx = std::cos(t);
        const double cy = std::sin(t);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double y = points.cols() > 1 ? points(i, 1) : 0.0;
            proj[static_cast<std::size_t>(i)] = {cx * points(i, 0) + cy * y, labels[static_cast<std::size_t>(i)]};
        }
        std::sort(proj.begin(), proj.end());
        // predict 0 below the cut and 1 above it, or the reverse
        int ones_below = 0;
        for (Eigen::Index cut = 0; cut <= n; ++cut) {
            if (cut > 0) ones_below += proj[static_cast<std::size_t>(cut - 1)].second;
            if (cut > 0 && cut < n && proj[static_cast<std::size_t>(cut - 1)].first == proj[static_cast<std::size_t>(cut)].first) {
                continue;
            }
            const double zeros_below = static_cast<double>(cut - ones_below);
            const double ones_above = static_cast<double>(total_ones - ones_below);
            const double correct = zeros_below + ones_above;
            best = std::max({best, correct / n, (n - correct) / n});
        }
    }
    return best;
}

/// Lower-right boundary vertices of a finite point set: the points that are the
/// unique maximizer of x - alpha * y for some alpha in (0, inf), plus the
/// limiting maximizers at alpha -> 0 and alpha -> inf. Found by evaluating every
/// interval between the pairwise crossing alphas.
inline std::vector<std::size_t> lower_right_vertices(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> crossings;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (y[i] != y[j]) {
                const double a = (x[i] - x[j]) / (y[i] - y[j]);
                if (a > 0 && std::isfinite(a)) crossings.push_back(a);
            }
    std::sort(crossings.begin(), crossings.end());
    std::vector<double> probes;
    if (crossings.empty()) {
        probes.push_back(1.0);
    } else {
        probes.push_back(crossings.front() / 2.0);
        for (std::size_t i = 0; i + 1 < crossings.size(); ++i)
            if (crossings[i + 1] > crossings[i]) probes.push_back(std::sqrt(crossings[i] * crossings[i + 1]));
        probes.push_back(crossings.back() * 2.0);
    }
    std::vector<std::size_t> out;
    auto add = [&](std::size_t i) {
        if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    };
    // lexicographic limits: max x then min y; min y then max x
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] > x[lo] || (x[i] == x[lo] && y[i] < y[lo])) lo = i;
        if (y[i] < y[hi] || (y[i] == y[hi] && x[i] > x[hi])) hi = i;
    }
    add(lo);
    add(hi);
    for (double a : probes) {
        std::size_t arg = 0;
        int count = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double v = x[i] - a * y[i];
            if (v > best + 1e-12) {
                best = v;
                arg = i;
                count = 1;
            } else if (std::abs(v - best) <= 1e-12 && (x[i] != x[arg] || y[i] != y[arg])) {
                // identical points are one point; the lowest index represents them
                ++count;
            }
        }
        if (count == 1) add(arg);
    }
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    return out;
}

/// O(n^2) eps-dominance filter over (target, background) pairs.
inline std::vector<std::size_t> non_dominated(const std::vector<std::pair<double, double>>& pts, double eps) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            if (j == i) continue;
            const bool weakly = pts[j].first >= pts[i].first - eps && pts[j].second <= pts[i].second + eps;
            const bool strict = pts[j].first > pts[i].first + eps || pts[j].second < pts[i].second - eps;
            dominated = weakly && strict;
        }
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

/// Group-mean separation along one coordinate: |mean(A) - mean(B)| / pooled within-group std.
inline double separation(const Vector& coordinate, const std::vector<int>& labels, const std::vector<int>& group_a,
                         const std::vector<int>& group_b) {
    auto in = [](const std::vector<int>& g, int l) { return std::find(g.begin(), g.end(), l) != g.end(); };
    double sa = 0, sb = 0;
    int na = 0, nb = 0;
    for (Eigen::Index i = 0; i < coordinate.size(); ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        if (in(group_a, l)) sa += coordinate(i), ++na;
        if (in(group_b, l)) sb += coordinate(i), ++nb;
    }
    const double ma = sa / na;
    const double mb = sb / nb;
    double ss = 0;
    for (Eigen::Index i = 0; i < coordinate.size(); ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        if (in(group_a, l)) ss += (coordinate(i) - ma) * (coordinate(i) - ma);
        if (in(group_b, l)) ss += (coordinate(i) - mb) * (coordinate(i) - mb);
    }
    const double pooled = std::sqrt(ss / (na + nb - 2));
    return std::abs(ma - mb) / pooled;
}

/// Max over columns of the column-wise error after aligning signs, relative to the column scale.
inline double signed_column_error(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double scale = std::max(a.col(j).cwiseAbs().maxCoeff(), 1e-300);
        const double plus = (a.col(j) - b.col(j)).cwiseAbs().maxCoeff();
        const double minus = (a.col(j) + b.col(j)).cwiseAbs().maxCoeff();
        worst = std::max(worst, std::min(plus, minus) / scale);
    }
    return worst;
}

inline bool has_spectral_gap(const Matrix& c, int k, double gap) {
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(c).eigenvalues().reverse();
    for (int i = 0; i < k; ++i) {
        const double next = i + 1 < ev.size() ? ev(i + 1) : -std::numeric_limits<double>::infinity();
        if (ev(i) - next < gap) return false;
    }
    // retained components must carry non-zero eigenvalues, otherwise they mix with the null space
    return std::abs(ev(k - 1)) > gap;
}

}  // namespace oracle
