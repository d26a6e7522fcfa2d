#include "gwfb/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include <Eigen/SVD>

#include "gwfb/errors.hpp"
#include "gwfb/rng.hpp"
#include "gwfb/spectral.hpp"

namespace gwfb {

SamplingPattern make_pattern(int n, const std::vector<int>& set_a,
                             const std::vector<int>& set_b) {
    SamplingPattern sp;
    sp.set_a = set_a;
    sp.set_b = set_b;
    std::sort(sp.set_a.begin(), sp.set_a.end());
    std::sort(sp.set_b.begin(), sp.set_b.end());
    if (sp.set_a.empty() || sp.set_b.empty())
        throw ValidationError("sampling pattern must keep at least one vertex per channel");
    if (static_cast<int>(sp.set_a.size() + sp.set_b.size()) != n)
        throw ValidationError("sampling pattern does not cover the vertex set");
    sp.k_diag = Eigen::VectorXd::Zero(n);
    for (int i : sp.set_a) sp.k_diag(i) = 1.0;
    for (int i : sp.set_b) {
        if (sp.k_diag(i) != 0.0)
            throw ValidationError("sampling pattern sets overlap at vertex " + std::to_string(i));
        sp.k_diag(i) = -1.0;
    }
    return sp;
}

PartitionStrategy parse_strategy(const std::string& name) {
    if (name == "polarity") return PartitionStrategy::polarity;
    if (name == "random") return PartitionStrategy::random;
    throw ParseError("unknown partition strategy: " + name);
}

std::string to_string(PartitionStrategy s) {
    return s == PartitionStrategy::polarity ? "polarity" : "random";
}

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kRankTol = 1e-8;

// Scans candidate rows in index order and keeps each row that is linearly
// independent (Gram-Schmidt residual above kPivotTol relative to the block's
// largest entry) of the rows kept so far. Mirrors a row-echelon pass where
// the earliest usable pivot row wins.
std::vector<int> select_pivot_rows(const Eigen::MatrixXd& block,
                                   const std::vector<int>& candidates, int want) {
    const int cols = static_cast<int>(block.cols());
    double scale = 0.0;
    for (int row : candidates) scale = std::max(scale, block.row(row).lpNorm<Eigen::Infinity>());
    if (scale == 0.0) return {};

    std::vector<int> chosen;
    std::vector<Eigen::VectorXd> basis;  // orthonormal span of chosen rows
    for (int row : candidates) {
        if (static_cast<int>(chosen.size()) == want) break;
        Eigen::VectorXd v = block.row(row).transpose();
        for (const auto& b : basis) v -= b.dot(v) * b;
        if (v.norm() > kPivotTol * scale * std::sqrt(static_cast<double>(cols))) {
            basis.push_back(v.normalized());
            chosen.push_back(row);
        }
    }
    return chosen;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<int>& rows) {
    Eigen::MatrixXd out(static_cast<long>(rows.size()), m.cols());
    for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<long>(i)) = m.row(rows[i]);
    return out;
}

// Pivot preference: among equally usable rows, take the ones whose sign in the
// highest-frequency eigenvector already agrees with the destination channel
// (u_N >= 0 for A, u_N < 0 for B). Index order is kept within each class, so
// the choice stays deterministic; rows of the "wrong" polarity remain
// available as a fallback when the preferred ones are rank deficient.
std::vector<int> sign_preferred_order(const std::vector<int>& candidates,
                                      const Eigen::VectorXd& u_last, bool negative_first) {
    std::vector<int> ordered;
    ordered.reserve(candidates.size());
    for (int i : candidates)
        if ((u_last(i) < 0.0) == negative_first) ordered.push_back(i);
    for (int i : candidates)
        if ((u_last(i) < 0.0) != negative_first) ordered.push_back(i);
    return ordered;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> polarity_assign(
    const Eigen::VectorXd& u_last, const std::vector<int>& rest) {
    std::vector<int> to_a, to_b;
    for (int i : rest) {
        if (u_last(i) < 0.0)
            to_b.push_back(i);
        else
            to_a.push_back(i);
    }
    return {to_a, to_b};
}

SamplingPattern partition_search(const SpectralDecomposition& sd, int r, int s,
                                 PartitionStrategy strategy, std::uint64_t seed) {
    const int n = sd.n();
    if (r < 1 || s < 1 || r + s > n)
        throw ValidationError("partition_search: need 1 <= r, s with r + s <= n");

    Eigen::MatrixXd u_r = sd.u.leftCols(r);
    Eigen::MatrixXd u_s = sd.u.rightCols(s);

    const Eigen::VectorXd u_last = sd.u.col(n - 1);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> set_a =
        select_pivot_rows(u_r, sign_preferred_order(all, u_last, /*negative_first=*/false), r);
    if (static_cast<int>(set_a.size()) < r)
        throw RankError("partition_search: U(:, I_r) has fewer than r independent rows");

    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (std::find(set_a.begin(), set_a.end(), i) == set_a.end()) rest.push_back(i);

    if (smallest_singular_value(take_rows(u_s, rest)) <= kRankTol)
        throw RankError(
            "partition_search: U(V \\ A, I_s) is rank deficient; reset r and s");
    std::vector<int> set_b =
        select_pivot_rows(u_s, sign_preferred_order(rest, u_last, /*negative_first=*/true), s);
    if (static_cast<int>(set_b.size()) < s)
        throw RankError("partition_search: could not select s independent rows for B");

    std::vector<int> remaining;
    for (int i : rest)
        if (std::find(set_b.begin(), set_b.end(), i) == set_b.end()) remaining.push_back(i);

    if (strategy == PartitionStrategy::polarity) {
        auto [to_a, to_b] = polarity_assign(sd.u.col(n - 1), remaining);
        set_a.insert(set_a.end(), to_a.begin(), to_a.end());
        set_b.insert(set_b.end(), to_b.begin(), to_b.end());
    } else {
        auto rng = seeded_stream(seed, "random_partition");
        std::shuffle(remaining.begin(), remaining.end(), rng);
        size_t half = (remaining.size() + 1) / 2;
        set_a.insert(set_a.end(), remaining.begin(), remaining.begin() + half);
        set_b.insert(set_b.end(), remaining.begin() + half, remaining.end());
    }

    SamplingPattern sp = make_pattern(n, set_a, set_b);
    // Theorem-2 hypothesis, verified on the final pattern.
    if (smallest_singular_value(take_rows(u_r, sp.set_a)) <= kRankTol)
        throw RankError("partition_search: U(A, I_r) lost full column rank");
    if (smallest_singular_value(take_rows(u_s, sp.set_b)) <= kRankTol)
        throw RankError("partition_search: U(B, I_s) lost full column rank");
    return sp;
}

BipartitePartition bipartite_natural_partition(const Graph& g) {
    validate_graph(g);
    const int n = g.n;
    std::vector<int> color(n, -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (g.weights(u, v) <= 0.0) continue;
            if (color[v] == -1) {
                color[v] = 1 - color[u];
                q.push(v);
            } else if (color[v] == color[u]) {
                throw ValidationError("graph is not bipartite (odd cycle through vertices " +
                                      std::to_string(u) + " and " + std::to_string(v) + ")");
            }
        }
    }

    std::vector<int> set_a, set_b;
    for (int i = 0; i < n; ++i) (color[i] == 0 ? set_a : set_b).push_back(i);

    BipartitePartition bp;
    bp.pattern = make_pattern(n, set_a, set_b);
    NormalizedGraph ng = normalize(g);
    SpectralDecomposition sd = eigendecompose(ng);
    int rank = 0;
    for (int i = 0; i < n; ++i)
        if (std::abs(sd.xi(i)) > kRankTol) ++rank;
    bp.max_rs = rank / 2;
    return bp;
}

SigmaMinResult sigma_min_diagnostic(const Eigen::VectorXd& k_diag,
                                    const Eigen::MatrixXd& g_mat) {
    if (k_diag.size() != g_mat.rows() || g_mat.rows() != g_mat.cols())
        throw ValidationError("sigma_min_diagnostic: shape mismatch");
    const int n = static_cast<int>(k_diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + k_diag.asDiagonal() * g_mat;
    SigmaMinResult res;
    res.sigma_min = smallest_singular_value(m);
    res.singular = res.sigma_min <= 1e-12;
    res.bound_const = res.singular ? std::numeric_limits<double>::infinity()
                                   : 2.0 / res.sigma_min;
    return res;
}

}  // namespace gwfb
