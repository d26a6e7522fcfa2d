#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gwfb/graph.hpp"
#include "gwfb/spectral.hpp"

namespace gwfb {

enum class DesignModel { closed_form, ori_opt, reg_opt, liter_opt };

std::string to_string(DesignModel m);
DesignModel parse_design_model(const std::string& name);

struct DesignConfig {
    int r = 1;
    int s = 1;
    int J = 3;
    double alpha = 0.5;
    // Ideal-response cutoff; NaN means "median of the distinct eigenvalues".
    double xi0 = std::numeric_limits<double>::quiet_NaN();
    // Margin turning the strict inequality |gamma| < 1 into |gamma| <= 1 - epsilon.
    double epsilon = 1e-6;
    DesignModel model = DesignModel::reg_opt;

    void check() const;  // throws ValidationError
};

// Polynomial weights w plus the resulting spectral responses, expanded to all
// n original eigenvalue indices.
struct FilterDesign {
    Eigen::VectorXd w;
    Eigen::VectorXd gamma;   // length n
    Eigen::VectorXd h_low;   // (1 + gamma) / 2
    Eigen::VectorXd h_high;  // (1 - gamma) / 2
    double objective = 0.0;
    double soc_term = 0.0;   // regularizer value ||C0 diag(0..J-1) w||_2
    DesignModel model = DesignModel::closed_form;
};

// Vertex-domain analysis filters G, H_L = (I+G)/2, H_H = (I-G)/2.
struct FilterPair {
    Eigen::MatrixXd g;
    Eigen::MatrixXd h_low_mat;
    Eigen::MatrixXd h_high_mat;
};

// h(k) = 1 where xi_k >= xi0, else 0. Works on any xi vector (full or deduped).
Eigen::VectorXd ideal_lowpass(const Eigen::VectorXd& xi, double xi0);

// The always-feasible affine design for r = s = 1: gamma(xi) interpolates
// gamma(1) = 1, gamma(xi_min) = -1 and stays strictly inside (-1, 1) between.
Eigen::VectorXd closed_form_weights(double xi_min, int J);

FilterDesign solve_closed_form(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal);
FilterDesign solve_ori_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                           const DesignConfig& cfg);
FilterDesign solve_reg_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                           const DesignConfig& cfg);

// Legacy baseline: filter powers run 1..J (no constant term), weights on the
// simplex (positivity relaxed to w >= kLiterPosFloor).
constexpr double kLiterPosFloor = 1e-9;
FilterDesign solve_liter_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                             int J);

// Runs the model named in cfg, with the ideal response derived from cfg.xi0.
FilterDesign design_filters(const VandermondeSystem& vs, const DesignConfig& cfg);

struct Theorem2Report {
    bool pass = false;
    bool inside_branch = false;  // |gamma_i| < 1 in the middle (vs > 1)
    std::vector<int> violations; // offending original indices
    std::string message;
};

// Checks gamma_1..gamma_r = 1, gamma_{N+1-s}..gamma_N = -1 (tol 1e-6) and a
// uniform middle branch.
Theorem2Report validate_theorem2(const Eigen::VectorXd& gamma, int r, int s);

// G by Horner on A^S (keeps polynomial locality exact), filters (I +- G)/2.
FilterPair build_filters(const NormalizedGraph& ng, const SpectralDecomposition& sd,
                         const FilterDesign& fd);

}  // namespace gwfb
