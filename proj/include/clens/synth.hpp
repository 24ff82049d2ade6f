#pragma once

// Synthetic datasets: the four-subgroup toy, the kernel toy and random
// covariance pairs. Every generator is a pure function of its seed.

#include "clens/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace clens {

struct LabeledDataset {
    Matrix data;
    std::vector<int> labels;
    std::string name;

    /// Throws unless labels match rows and lie in [0, groups).
    void validate(int groups) const;
};

struct ToyPair {
    LabeledDataset target;
    Matrix background;
};

/// Subgroup labels of the four-subgroup toy.
enum ToyGroup : int { kRed = 0, kBlue = 1, kBlack = 2, kYellow = 3 };

/// 400 x 30 target in four groups of 100 and a 400 x 30 background.
/// Dims 1-10 separate {red, blue} (mean 0) from {black, yellow} (mean 6);
/// dims 11-20 separate {red, yellow} (mean 0) from {black, blue} (mean 3);
/// dims 21-30 have standard deviation 10 in both datasets. Background dims
/// 1-10 have standard deviation 3 and dims 11-20 standard deviation 1.
ToyPair gen_toy_four_groups(std::uint64_t seed);

/// 400 x 10 target in two groups of 200: (x1, x2) uniform on the unit disk
/// (group 0) or the annulus 2 <= r <= 3 (group 1), remaining dims N(0, 1).
/// Background: (x1, x2) uniform on the disk of radius 3, remaining dims N(0, 3^2).
ToyPair gen_toy_kernel(std::uint64_t seed);

struct CovariancePairSample {
    Matrix target_cov;
    Matrix background_cov;
};

/// General case: A^T A / d for independent d x d standard-normal A.
/// Simultaneously diagonalizable case: Q diag(u) Q^T with one shared random
/// orthogonal Q and eigenvalues uniform on (0.1, 3).
CovariancePairSample gen_random_pair(int d, bool simdiag, std::uint64_t seed);

/// Random orthogonal matrix (QR of a Gaussian matrix with R's diagonal made positive).
Matrix random_orthogonal(int d, std::uint64_t seed);

}  // namespace clens
