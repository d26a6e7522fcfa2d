#pragma once

#include <vector>

#include <Eigen/Core>

#include "gwfb/graph.hpp"

namespace gwfb {

// Orthonormal eigenbasis of L^S = I - A^S. Columns of u are ordered by
// ascending Laplacian eigenvalue, so xi = 1 - lambda is descending and
// xi(0) = 1 for connected graphs.
struct SpectralDecomposition {
    Eigen::MatrixXd u;
    Eigen::VectorXd lambda;  // ascending, lambda(0) = 0
    Eigen::VectorXd xi;      // descending, xi(0) = 1

    int n() const { return static_cast<int>(lambda.size()); }
};

SpectralDecomposition eigendecompose(const NormalizedGraph& ng);

Eigen::VectorXd gft(const SpectralDecomposition& sd, const Eigen::VectorXd& x);
Eigen::VectorXd igft(const SpectralDecomposition& sd, const Eigen::VectorXd& xhat);

// Spectrum with duplicates merged: design constraints bind once per distinct
// eigenvalue and responses are expanded back through group_of.
struct DedupedSpectrum {
    Eigen::VectorXd xi_unique;  // strictly decreasing, m <= n entries
    std::vector<int> group_of;  // original index -> unique index

    int m() const { return static_cast<int>(xi_unique.size()); }
    int n() const { return static_cast<int>(group_of.size()); }

    // Expand a per-unique-value response to all n original indices.
    Eigen::VectorXd expand(const Eigen::VectorXd& per_unique) const;
};

constexpr double kDedupTolDefault = 1e-8;

DedupedSpectrum dedup_eigenvalues(const SpectralDecomposition& sd,
                                  double tol = kDedupTolDefault);

// Vandermonde system over the deduplicated spectrum. Row i of c is
// [1, xi_i, ..., xi_i^{J-1}]; c0 carries the derivative-basis rows
// [0, 1, xi_i, ..., xi_i^{J-2}]. The first r rows and last s rows are the
// equality blocks, the rest the inequality block.
struct VandermondeSystem {
    Eigen::MatrixXd c;   // m x J
    Eigen::MatrixXd c0;  // m x J
    int r = 0;
    int s = 0;
    DedupedSpectrum spectrum;

    int m() const { return static_cast<int>(c.rows()); }
    int J() const { return static_cast<int>(c.cols()); }
    Eigen::MatrixXd c_r() const { return c.topRows(r); }
    Eigen::MatrixXd c_s() const { return c.bottomRows(s); }
    Eigen::MatrixXd c_m() const { return c.middleRows(r, m() - r - s); }
};

VandermondeSystem vandermonde(const DedupedSpectrum& ds, int J, int r, int s);

}  // namespace gwfb
