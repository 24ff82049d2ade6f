#include "clens/errors.hpp"
#include "clens/matrix.hpp"
#include "clens/parallel.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

using namespace clens;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> values) {
    Matrix m(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : values) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST(CenterColumns, AlreadyCentered) {
    const auto c = center_columns(rows({{1, 0}, {-1, 0}}));
    EXPECT_EQ(c.data, rows({{1, 0}, {-1, 0}}));
    EXPECT_EQ(c.mean, Vector::Zero(2));
}

TEST(CenterColumns, ArithmeticMean) {
    const auto c = center_columns(rows({{2, 2}, {4, 4}}));
    EXPECT_EQ(c.data, rows({{-1, -1}, {1, 1}}));
    EXPECT_EQ(c.mean, Vector::Constant(2, 3.0));
}

TEST(CenterColumns, RandomColumnMeansVanishAndMeanRestores) {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = gen.dataset(100, 5) * gen.uniform(0.1, 50.0);
        const auto c = center_columns(m);
        const Vector means = oracle::column_means(c.data);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            EXPECT_LE(std::abs(means(j)), 1e-12 * std::max(1.0, c.data.col(j).cwiseAbs().maxCoeff()));
        }
        EXPECT_LE(max_abs(c.data.rowwise() + c.mean.transpose() - m), 1e-12 * max_abs(m));
    }
}

TEST(CenterColumns, RejectsNonFinite) {
    Matrix m = rows({{1, 2}, {3, 4}});
    m(1, 0) = std::nan("");
    EXPECT_THROW(center_columns(m), ValidationError);
    m(1, 0) = INFINITY;
    EXPECT_THROW(center_columns(m), ValidationError);
}

TEST(Covariance, PopulationNormalization) {
    EXPECT_EQ(covariance(rows({{1, 0}, {-1, 0}})), rows({{1, 0}, {0, 0}}));
}

TEST(Covariance, SingleCenteredRowIsZero) { EXPECT_EQ(covariance(rows({{0, 0}})), Matrix::Zero(2, 2)); }

TEST(Covariance, MatchesLoopOracleAndIsPsd) {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = gen.dataset(200, 4);
        const Matrix c = covariance(center_columns(m).data);
        EXPECT_EQ(c, c.transpose());
        EXPECT_LE(max_abs(c - oracle::population_covariance(m)), 1e-12 * (1 + max_abs(c)));
        const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(c).eigenvalues();
        EXPECT_GE(ev.minCoeff(), -1e-12);
    }
}

TEST(Covariance, TraceEqualsMeanSquaredRowNorm) {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix centered = center_columns(gen.dataset(gen.integer(2, 80), gen.integer(1, 12))).data;
        const double mean_sq = centered.rowwise().squaredNorm().mean();
        EXPECT_NEAR(covariance(centered).trace(), mean_sq, 1e-10 * std::max(1.0, mean_sq));
    }
}

TEST(SymEigh, Diagonal) {
    Matrix c = Matrix::Zero(2, 2);
    c.diagonal() << 1, 3;
    const auto s = sym_eigh(c);
    EXPECT_EQ(s.eigenvalues, (Vector(2) << 3, 1).finished());
    EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(SymEigh, SwapMatrixMatchesAnalyticTwoByTwo) {
    const auto s = sym_eigh(rows({{0, 1}, {1, 0}}));
    const auto [values, vectors] = oracle::eig2x2(0, 1, 0);
    EXPECT_NEAR(s.eigenvalues(0), values(0), 1e-15);
    EXPECT_NEAR(s.eigenvalues(1), values(1), 1e-15);
    for (int i = 0; i < 2; ++i) {
        EXPECT_NEAR(std::abs(s.eigenvectors.col(i).dot(vectors.col(i))), 1.0, 1e-14);
    }
    // sign convention: largest-magnitude entry positive, lowest index on ties
    EXPECT_GT(s.eigenvectors(0, 0), 0);
    EXPECT_GT(s.eigenvectors(0, 1), 0);
}

TEST(SymEigh, RandomTwoByTwoAgainstAnalytic) {
    oracle::Gen gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = gen.normal(), b = gen.normal(), d = gen.normal();
        const auto s = sym_eigh(rows({{a, b}, {b, d}}));
        const auto [values, vectors] = oracle::eig2x2(a, b, d);
        EXPECT_NEAR(s.eigenvalues(0), values(0), 1e-12);
        EXPECT_NEAR(s.eigenvalues(1), values(1), 1e-12);
        if (values(0) - values(1) > 1e-6) {
            EXPECT_NEAR(std::abs(s.eigenvectors.col(0).dot(vectors.col(0))), 1.0, 1e-10);
        }
    }
}

TEST(SymEigh, ReconstructionResidualAndOrthonormality) {
    oracle::Gen gen(15);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix c = gen.symmetric(50) * gen.uniform(0.01, 100.0);
        const auto s = sym_eigh(c);
        const Matrix recon = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
        EXPECT_LE(max_abs(recon - c), 1e-8 * max_abs(c));
        EXPECT_LE(max_abs(s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(50, 50)), 1e-10);
        for (Eigen::Index i = 0; i < 50; ++i) {
            EXPECT_LE((c * s.eigenvectors.col(i) - s.eigenvalues(i) * s.eigenvectors.col(i)).norm(),
                      1e-8 * (1 + max_abs(c)));
            if (i > 0) {
                EXPECT_LE(s.eigenvalues(i), s.eigenvalues(i - 1));
            }
            Eigen::Index arg = 0;
            s.eigenvectors.col(i).cwiseAbs().maxCoeff(&arg);
            EXPECT_GT(s.eigenvectors(arg, i), 0);
        }
    }
}

TEST(SymEigh, DeterministicAcrossCalls) {
    oracle::Gen gen(16);
    const Matrix c = gen.symmetric(40);
    const auto a = sym_eigh(c);
    const auto b = sym_eigh(c);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(SymEigh, RejectsAsymmetric) {
    EXPECT_THROW(sym_eigh(rows({{1, 2}, {2.001, 1}})), ValidationError);
    EXPECT_THROW(sym_eigh(rows({{1, 2, 3}, {2, 1, 3}})), ValidationError);
    // relative tolerance: asymmetry below 1e-12 * max |entry| is accepted
    EXPECT_NO_THROW(sym_eigh(rows({{1e6, 2}, {2 + 1e-7, 1}})));
}

TEST(SubspaceType, ValidatesOrthonormality) {
    EXPECT_NO_THROW(Subspace(Matrix::Identity(3, 2)));
    EXPECT_THROW(Subspace(rows({{1, 1}, {0, 1}})), ValidationError);
    EXPECT_THROW(Subspace(Matrix::Identity(2, 3)), ValidationError);
    const auto s = Subspace::from_span(rows({{1, 1}, {0, 1}, {0, 0}}));
    EXPECT_EQ(s.k(), 2);
    EXPECT_LE(max_abs(s.basis().transpose() * s.basis() - Matrix::Identity(2, 2)), 1e-12);
}

TEST(Project, CoordinateSelection) {
    const Subspace e1(Matrix::Identity(2, 1));
    EXPECT_EQ(project(rows({{1, 2}}), e1, Vector::Zero(2)), rows({{1}}));
}

TEST(Project, HandDotProduct) {
    const Subspace diag(rows({{1 / std::sqrt(2.0)}, {1 / std::sqrt(2.0)}}));
    const Matrix p = project(rows({{3, 4}}), diag, Vector::Constant(2, 1.0));
    EXPECT_NEAR(p(0, 0), 5 / std::sqrt(2.0), 1e-15);
}

TEST(Project, FullBasisIsAnIsometry) {
    oracle::Gen gen(17);
    const Matrix data = gen.dataset(30, 6);
    const auto c = center_columns(data);
    const auto s = sym_eigh(gen.symmetric(6));
    const Matrix p = project(data, Subspace(s.eigenvectors), c.mean);
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            const double before = (c.data.row(i) - c.data.row(j)).norm();
            EXPECT_NEAR((p.row(i) - p.row(j)).norm(), before, 1e-10 * before);
        }
}

TEST(Project, DimensionMismatch) {
    const Subspace e1(Matrix::Identity(2, 1));
    EXPECT_THROW(project(rows({{1, 2, 3}}), e1, Vector::Zero(3)), ValidationError);
    EXPECT_THROW(project(rows({{1, 2}}), e1, Vector::Zero(3)), ValidationError);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10,
                              [](std::size_t i) {
                                  if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}
