#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gwfb/graph.hpp"
#include "gwfb/spectral.hpp"

namespace gwfb {

// Partition {A, B} of the vertex set. A keeps the lowpass samples (+1 on the
// diagonal of K), B keeps the highpass samples (-1).
struct SamplingPattern {
    std::vector<int> set_a;  // sorted
    std::vector<int> set_b;  // sorted
    Eigen::VectorXd k_diag;

    int n() const { return static_cast<int>(k_diag.size()); }
};

SamplingPattern make_pattern(int n, const std::vector<int>& set_a,
                             const std::vector<int>& set_b);

enum class PartitionStrategy { polarity, random };

PartitionStrategy parse_strategy(const std::string& name);
std::string to_string(PartitionStrategy s);

// Row-selection search for a pattern with U(A, I_r) and U(B, I_s) of full
// column rank: r pivot rows of the first r eigenvector columns go to A, then
// s pivot rows of the last s columns (among the rest) go to B, and remaining
// vertices follow the strategy. Throws RankError when a pivot stage fails.
SamplingPattern partition_search(const SpectralDecomposition& sd, int r, int s,
                                 PartitionStrategy strategy = PartitionStrategy::polarity,
                                 std::uint64_t seed = 0);

// Sign rule on the highest-frequency eigenvector: negative entries go to B,
// the rest (including exact zeros) to A.
std::pair<std::vector<int>, std::vector<int>> polarity_assign(
    const Eigen::VectorXd& u_last, const std::vector<int>& rest);

struct BipartitePartition {
    SamplingPattern pattern;
    int max_rs = 0;  // floor(rank(A^S) / 2)
};

// The two color classes of a bipartite graph; valid for any r, s <= max_rs.
BipartitePartition bipartite_natural_partition(const Graph& g);

struct SigmaMinResult {
    double sigma_min = 0.0;
    double bound_const = 0.0;  // 2 / sigma_min
    bool singular = false;     // sigma_min <= 1e-12
};

// Smallest singular value of I + K G and the approximation-error multiplier.
SigmaMinResult sigma_min_diagnostic(const Eigen::VectorXd& k_diag,
                                    const Eigen::MatrixXd& g_mat);

}  // namespace gwfb
