#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "gwfb/filter_design.hpp"
#include "gwfb/filterbank.hpp"
#include "gwfb/graph.hpp"

namespace gwfb {

// Schur complement of the graph Laplacian on the removed block; the retained
// vertices are reconnected with the induced nonnegative weights.
Graph kron_reduce(const Graph& g, const std::vector<int>& keep);

struct PyramidLevel {
    Graph graph;
    Filterbank bank;
    ChannelOutputs channels;  // y_low feeds the next level
};

struct Pyramid {
    std::vector<PyramidLevel> levels;
    Eigen::VectorXd input;

    int depth() const { return static_cast<int>(levels.size()); }
};

// Per level: normalize, eigendecompose, design (cfg.model), Algorithm-1
// partition with polarity, zero-DC bank, analyze; then Kron-reduce onto the
// lowpass set and recurse. Recursion stops early once a level graph falls
// below max(4, r + s + 2) vertices.
Pyramid decompose(const Graph& g, const Eigen::VectorXd& x, int depth,
                  const DesignConfig& cfg);

enum class ReconMode { full, lp_only };

// full inverts every level with both channels (exact recovery); lp_only
// zeroes the stored highpass channels first.
Eigen::VectorXd reconstruct_pyramid(const Pyramid& p, ReconMode mode);

// Decompose, hard-threshold highpass coefficients at T = 3 sigma, reconstruct.
Eigen::VectorXd denoise(const Graph& g, const Eigen::VectorXd& x_noisy, double sigma,
                        int depth, const DesignConfig& cfg);

double relative_error(const Eigen::VectorXd& y, const Eigen::VectorXd& x_ref);

}  // namespace gwfb
