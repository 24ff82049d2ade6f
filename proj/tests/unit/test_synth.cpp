#include "clens/errors.hpp"
#include "clens/synth.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace clens;

namespace {

double commutator(const Matrix& a, const Matrix& b) { return (a * b - b * a).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(FourGroups, ShapesAndLabels) {
    const auto toy = gen_toy_four_groups(0);
    EXPECT_EQ(toy.target.data.rows(), 400);
    EXPECT_EQ(toy.target.data.cols(), 30);
    EXPECT_EQ(toy.background.rows(), 400);
    EXPECT_EQ(toy.background.cols(), 30);
    EXPECT_NO_THROW(toy.target.validate(4));
    for (int g = 0; g < 4; ++g) EXPECT_EQ(std::count(toy.target.labels.begin(), toy.target.labels.end(), g), 100);
}

TEST(FourGroups, GroupMeansAndSpreads) {
    const auto toy = gen_toy_four_groups(1);
    const auto& x = toy.target;
    double first = 0, second_black_blue = 0;
    int n_first = 0, n_second = 0;
    for (Eigen::Index r = 0; r < x.data.rows(); ++r) {
        const int g = x.labels[static_cast<std::size_t>(r)];
        if (g == kBlack || g == kYellow) {
            first += x.data.row(r).head(10).mean();
            ++n_first;
        }
        if (g == kBlack || g == kBlue) {
            second_black_blue += x.data.row(r).segment(10, 10).mean();
            ++n_second;
        }
    }
    // 2000 draws per mean, sd of the mean is about 0.022
    EXPECT_NEAR(first / n_first, 6.0, 0.1);
    EXPECT_NEAR(second_black_blue / n_second, 3.0, 0.1);

    const Matrix cov_x = oracle::population_covariance(x.data);
    const Matrix cov_y = oracle::population_covariance(toy.background);
    // averaged over ten dims, each variance estimate has relative sd sqrt(2 / 4000) = 0.022
    EXPECT_NEAR(cov_x.diagonal().segment(20, 10).mean(), 100.0, 10.0);
    EXPECT_NEAR(cov_y.diagonal().segment(20, 10).mean(), 100.0, 10.0);
    EXPECT_NEAR(cov_y.diagonal().head(10).mean(), 9.0, 0.9);
    EXPECT_NEAR(cov_y.diagonal().segment(10, 10).mean(), 1.0, 0.1);
}

TEST(FourGroups, DeterministicPerSeed) {
    const auto a = gen_toy_four_groups(7);
    const auto b = gen_toy_four_groups(7);
    EXPECT_EQ(a.target.data, b.target.data);
    EXPECT_EQ(a.background, b.background);
    EXPECT_NE(a.target.data, gen_toy_four_groups(8).target.data);
}

TEST(KernelToy, ShapesAndRadii) {
    const auto toy = gen_toy_kernel(0);
    EXPECT_EQ(toy.target.data.rows(), 400);
    EXPECT_EQ(toy.target.data.cols(), 10);
    EXPECT_EQ(toy.background.rows(), 400);
    EXPECT_NO_THROW(toy.target.validate(2));
    for (Eigen::Index r = 0; r < 400; ++r) {
        const double radius = toy.target.data.row(r).head(2).norm();
        if (toy.target.labels[static_cast<std::size_t>(r)] == 0) {
            EXPECT_LE(radius, 1.0);
        } else {
            EXPECT_GE(radius, 2.0);
            EXPECT_LE(radius, 3.0);
        }
        EXPECT_LE(toy.background.row(r).head(2).norm(), 3.0);
    }
}

TEST(KernelToy, RadiusSeparatesButNoLineDoes) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto toy = gen_toy_kernel(seed);
        const Matrix planar = toy.target.data.leftCols(2);
        // the disk-vs-annulus population optimum over lines is about 0.685
        EXPECT_LE(oracle::best_linear_split(planar, toy.target.labels), 0.75) << "seed " << seed;
        int correct = 0;
        for (Eigen::Index r = 0; r < 400; ++r) {
            const int predicted = planar.row(r).squaredNorm() > 2.5 ? 1 : 0;
            correct += predicted == toy.target.labels[static_cast<std::size_t>(r)];
        }
        EXPECT_EQ(correct, 400);
    }
}

TEST(RandomPair, SimdiagCommutesAndIsPositiveDefinite) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto pair = gen_random_pair(6, true, seed);
        EXPECT_LE(commutator(pair.target_cov, pair.background_cov), 1e-10);
        EXPECT_EQ(pair.target_cov, pair.target_cov.transpose());
        const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(pair.target_cov).eigenvalues();
        EXPECT_GT(ev.minCoeff(), 0.1 - 1e-10);
        EXPECT_LT(ev.maxCoeff(), 3.0 + 1e-10);
    }
}

TEST(RandomPair, GeneralPairsAlmostNeverCommute) {
    int commuting = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto pair = gen_random_pair(5, false, seed);
        EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(pair.background_cov).eigenvalues().minCoeff(), -1e-12);
        if (commutator(pair.target_cov, pair.background_cov) <= 0.01) ++commuting;
    }
    EXPECT_LE(commuting, 10);
}

TEST(RandomPair, Validation) {
    EXPECT_THROW(gen_random_pair(1, false, 0), ValidationError);
    EXPECT_THROW(random_orthogonal(0, 0), ValidationError);
    const Matrix q = random_orthogonal(7, 3);
    EXPECT_LE((q.transpose() * q - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-12);
}
