#include "clens/synth.hpp"

#include "clens/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace clens {

void LabeledDataset::validate(int groups) const {
    if (static_cast<Eigen::Index>(labels.size()) != data.rows()) {
        std::ostringstream msg;
        msg << name << ": " << labels.size() << " labels for " << data.rows() << " rows";
        throw ValidationError(msg.str());
    }
    for (int l : labels) {
        if (l < 0 || l >= groups) {
            std::ostringstream msg;
            msg << name << ": label " << l << " outside [0, " << groups << ")";
            throw ValidationError(msg.str());
        }
    }
}

ToyPair gen_toy_four_groups(std::uint64_t seed) {
    constexpr int kPerGroup = 100;
    constexpr int kDims = 30;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    ToyPair out;
    out.target.name = "four_groups_target";
    out.target.data.resize(4 * kPerGroup, kDims);
    out.target.labels.resize(4 * kPerGroup);
    for (int g = 0; g < 4; ++g) {
        const double first_mean = (g == kBlack || g == kYellow) ? 6.0 : 0.0;
        const double second_mean = (g == kBlack || g == kBlue) ? 3.0 : 0.0;
        for (int r = 0; r < kPerGroup; ++r) {
            const int row = g * kPerGroup + r;
            out.target.labels[static_cast<std::size_t>(row)] = g;
            for (int j = 0; j < 10; ++j) out.target.data(row, j) = first_mean + normal(rng);
            for (int j = 10; j < 20; ++j) out.target.data(row, j) = second_mean + normal(rng);
            for (int j = 20; j < 30; ++j) out.target.data(row, j) = 10.0 * normal(rng);
        }
    }

    out.background.resize(4 * kPerGroup, kDims);
    for (int row = 0; row < 4 * kPerGroup; ++row) {
        for (int j = 0; j < 10; ++j) out.background(row, j) = 3.0 * normal(rng);
        for (int j = 10; j < 20; ++j) out.background(row, j) = normal(rng);
        for (int j = 20; j < 30; ++j) out.background(row, j) = 10.0 * normal(rng);
    }
    return out;
}

ToyPair gen_toy_kernel(std::uint64_t seed) {
    constexpr int kPerGroup = 200;
    constexpr int kRows = 2 * kPerGroup;
    constexpr int kDims = 10;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto planar = [&](double r_inner, double r_outer) {
        // Uniform on the annulus: r^2 uniform between the squared radii.
        const double r = std::sqrt(r_inner * r_inner + unit(rng) * (r_outer * r_outer - r_inner * r_inner));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        return std::pair{r * std::cos(theta), r * std::sin(theta)};
    };

    ToyPair out;
    out.target.name = "kernel_toy_target";
    out.target.data.resize(kRows, kDims);
    out.target.labels.resize(kRows);
    for (int row = 0; row < kRows; ++row) {
        const int group = row < kPerGroup ? 0 : 1;
        out.target.labels[static_cast<std::size_t>(row)] = group;
        const auto [x1, x2] = group == 0 ? planar(0.0, 1.0) : planar(2.0, 3.0);
        out.target.data(row, 0) = x1;
        out.target.data(row, 1) = x2;
        for (int j = 2; j < kDims; ++j) out.target.data(row, j) = normal(rng);
    }

    out.background.resize(kRows, kDims);
    for (int row = 0; row < kRows; ++row) {
        const auto [y1, y2] = planar(0.0, 3.0);
        out.background(row, 0) = y1;
        out.background(row, 1) = y2;
        for (int j = 2; j < kDims; ++j) out.background(row, j) = 3.0 * normal(rng);
    }
    return out;
}

Matrix random_orthogonal(int d, std::uint64_t seed) {
    if (d < 1) throw ValidationError("random_orthogonal: d must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    return q;
}

CovariancePairSample gen_random_pair(int d, bool simdiag, std::uint64_t seed) {
    if (d < 2) throw ValidationError("gen_random_pair: d must be at least 2");
    std::mt19937_64 rng(seed);
    CovariancePairSample out;
    if (!simdiag) {
        std::normal_distribution<double> normal(0.0, 1.0);
        auto gram_of_gaussian = [&] {
            Matrix a(d, d);
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) a(i, j) = normal(rng);
            Matrix c = a.transpose() * a / static_cast<double>(d);
            return Matrix(0.5 * (c + c.transpose()));
        };
        out.target_cov = gram_of_gaussian();
        out.background_cov = gram_of_gaussian();
        return out;
    }
    const Matrix q = random_orthogonal(d, rng());
    std::uniform_real_distribution<double> eig(0.1, 3.0);
    Vector lx(d);
    Vector ly(d);
    for (int i = 0; i < d; ++i) lx(i) = eig(rng);
    for (int i = 0; i < d; ++i) ly(i) = eig(rng);
    Matrix cx = q * lx.asDiagonal() * q.transpose();
    Matrix cy = q * ly.asDiagonal() * q.transpose();
    out.target_cov = 0.5 * (cx + cx.transpose());
    out.background_cov = 0.5 * (cy + cy.transpose());
    return out;
}

}  // namespace clens
