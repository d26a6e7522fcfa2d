#pragma once

#include <Eigen/Core>

#include "gwfb/filter_design.hpp"
#include "gwfb/graph.hpp"
#include "gwfb/sampling.hpp"

namespace gwfb {

// Assembled two-channel transform: analysis pair, sampling pattern and dense
// synthesis filter. Immutable after assemble(); analyze/reconstruct are pure.
struct Filterbank {
    FilterPair pair;         // zero-DC conjugated when zero_dc is set
    SamplingPattern pattern;
    Eigen::MatrixXd h_inv;
    bool zero_dc = false;
    Eigen::VectorXd deg_sqrt;
    Eigen::VectorXd deg_isqrt;
    double sigma_min = 0.0;  // of I + K G (plain G)
    double condition = 0.0;  // of I + K G~ actually inverted

    int n() const { return pattern.n(); }
};

struct ChannelOutputs {
    Eigen::VectorXd y_low;   // over set_a, ascending vertex index
    Eigen::VectorXd y_high;  // over set_b, ascending vertex index
};

// h_inv = 2 (I + K G)^{-1}; with zero_dc the analysis filters are conjugated
// by D^{+-1/2} and the synthesis becomes 2 D^{-1/2} (I + K G)^{-1} D^{1/2}.
// Throws NumericError when I + K G is numerically singular.
Filterbank assemble(const FilterPair& pair, const SamplingPattern& pattern,
                    bool zero_dc, const Eigen::VectorXd& deg);

ChannelOutputs analyze(const Filterbank& fb, const Eigen::VectorXd& x);

// Zero-fill upsampling, sum, synthesis. reconstruct(analyze(x)) == x for a
// perfect-reconstruction bank.
Eigen::VectorXd reconstruct(const Filterbank& fb, const ChannelOutputs& ch);

// y' = 1/2 H_INV (I + K) upsample(y_low): reconstruction from the lowpass
// channel alone.
Eigen::VectorXd lp_only_reconstruct(const Filterbank& fb, const Eigen::VectorXd& y_low);

struct ErrorBoundResult {
    double er = 0.0;     // || reconstruct(x) - lp_only(x) ||_2
    double bound = 0.0;  // 2 ||x||_2 / sigma_min(I + K G)
};

ErrorBoundResult error_bound(const Filterbank& fb, const Eigen::VectorXd& x);

struct LegacyCounterexampleReport {
    double sigma_min_identity = 0.0;   // K = I
    double sigma_min_bipartite = 0.0;  // K from the natural bipartition
    bool singular_with_identity = false;
    bool invertible_with_bipartition = false;
};

// Degree-1 legacy bank (w_1 = 1) on a bipartite graph: singular with K = I,
// invertible once the natural bipartition flips signs.
LegacyCounterexampleReport check_legacy_counterexample(const Graph& g);

}  // namespace gwfb
