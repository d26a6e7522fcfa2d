#include "gwfb/filter_design.hpp"

#include <algorithm>
#include <cmath>

#include "gwfb/errors.hpp"
#include "gwfb/solver.hpp"

namespace gwfb {

std::string to_string(DesignModel m) {
    switch (m) {
        case DesignModel::closed_form: return "closed_form";
        case DesignModel::ori_opt: return "ori_opt";
        case DesignModel::reg_opt: return "reg_opt";
        case DesignModel::liter_opt: return "liter_opt";
    }
    return "?";
}

DesignModel parse_design_model(const std::string& name) {
    if (name == "closed_form") return DesignModel::closed_form;
    if (name == "ori_opt") return DesignModel::ori_opt;
    if (name == "reg_opt") return DesignModel::reg_opt;
    if (name == "liter_opt") return DesignModel::liter_opt;
    throw ParseError("unknown design model: " + name);
}

void DesignConfig::check() const {
    if (r < 1 || s < 1) throw ValidationError("design config: r and s must be >= 1");
    if (J < 2 && model != DesignModel::liter_opt)
        throw ValidationError("design config: J must be >= 2");
    if (J < 1) throw ValidationError("design config: J must be >= 1");
    if (alpha < 0.0) throw ValidationError("design config: alpha must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("design config: epsilon must lie in (0, 1)");
}

Eigen::VectorXd ideal_lowpass(const Eigen::VectorXd& xi, double xi0) {
    if (xi0 < xi.minCoeff() - 1e-12 || xi0 > xi.maxCoeff() + 1e-12)
        throw ValidationError("ideal_lowpass: xi0 = " + std::to_string(xi0) +
                              " lies outside the spectrum range");
    Eigen::VectorXd h(xi.size());
    for (int i = 0; i < xi.size(); ++i) h(i) = xi(i) >= xi0 ? 1.0 : 0.0;
    return h;
}

Eigen::VectorXd closed_form_weights(double xi_min, int J) {
    if (J < 2) throw ValidationError("closed_form_weights: J must be >= 2");
    if (xi_min >= 1.0)
        throw ValidationError("closed_form_weights: degenerate spectrum, xi_min >= 1");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(J);
    w(0) = -(xi_min + 1.0) / (1.0 - xi_min);
    w(1) = 2.0 / (1.0 - xi_min);
    return w;
}

namespace {

FilterDesign make_design(const VandermondeSystem& vs, const Eigen::VectorXd& w,
                         double objective, double soc, DesignModel model) {
    FilterDesign fd;
    fd.w = w;
    fd.model = model;
    fd.objective = objective;
    fd.soc_term = soc;
    Eigen::VectorXd gamma_unique = vs.c * w;
    fd.gamma = vs.spectrum.expand(gamma_unique);
    fd.h_low = (Eigen::VectorXd::Ones(fd.gamma.size()) + fd.gamma) / 2.0;
    fd.h_high = (Eigen::VectorXd::Ones(fd.gamma.size()) - fd.gamma) / 2.0;
    return fd;
}

// Shared assembly for oriOpt/regOpt: minimax fit of the lowpass response with
// the Theorem-2 equality blocks and the margined middle inequalities.
detail::ConvexProgram base_program(const VandermondeSystem& vs,
                                   const Eigen::VectorXd& h_ideal,
                                   const DesignConfig& cfg) {
    const int m = vs.m();
    if (h_ideal.size() != m)
        throw ValidationError("design: ideal response must be given per distinct eigenvalue");
    detail::ConvexProgram prob;
    prob.P = -vs.c / 2.0;
    prob.q = h_ideal.array() - 0.5;
    const int mid = m - vs.r - vs.s;
    prob.Aeq.resize(vs.r + vs.s, vs.J());
    prob.Aeq.topRows(vs.r) = vs.c_r();
    prob.Aeq.bottomRows(vs.s) = vs.c_s();
    prob.beq.resize(vs.r + vs.s);
    prob.beq.head(vs.r).setOnes();
    prob.beq.tail(vs.s).setConstant(-1.0);
    if (mid > 0) {
        Eigen::MatrixXd cm = vs.c_m();
        prob.G.resize(2 * mid, vs.J());
        prob.G.topRows(mid) = cm;
        prob.G.bottomRows(mid) = -cm;
        prob.g = Eigen::VectorXd::Constant(2 * mid, 1.0 - cfg.epsilon);
    }
    return prob;
}

Eigen::MatrixXd regularizer_matrix(const VandermondeSystem& vs) {
    Eigen::VectorXd d(vs.J());
    for (int l = 0; l < vs.J(); ++l) d(l) = static_cast<double>(l);
    return vs.c0 * d.asDiagonal();
}

}  // namespace

FilterDesign solve_closed_form(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal) {
    Eigen::VectorXd w = closed_form_weights(vs.spectrum.xi_unique(vs.m() - 1), vs.J());
    double obj = (h_ideal - (Eigen::VectorXd::Ones(vs.m()) + vs.c * w) / 2.0)
                     .lpNorm<Eigen::Infinity>();
    double soc = (regularizer_matrix(vs) * w).norm();
    return make_design(vs, w, obj, soc, DesignModel::closed_form);
}

FilterDesign solve_ori_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                           const DesignConfig& cfg) {
    cfg.check();
    detail::ConvexProgram prob = base_program(vs, h_ideal, cfg);
    detail::ConvexSolution sol = detail::solve_convex(prob);
    double soc = (regularizer_matrix(vs) * sol.w).norm();
    return make_design(vs, sol.w, sol.minimax_term, soc, DesignModel::ori_opt);
}

FilterDesign solve_reg_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                           const DesignConfig& cfg) {
    cfg.check();
    detail::ConvexProgram prob = base_program(vs, h_ideal, cfg);
    prob.alpha = cfg.alpha;
    prob.R = regularizer_matrix(vs);
    prob.r0 = Eigen::VectorXd::Zero(vs.m());
    detail::ConvexSolution sol = detail::solve_convex(prob);
    return make_design(vs, sol.w, sol.objective, sol.soc_term, DesignModel::reg_opt);
}

FilterDesign solve_liter_opt(const VandermondeSystem& vs, const Eigen::VectorXd& h_ideal,
                             int J) {
    if (J < 1) throw ValidationError("liter_opt: J must be >= 1");
    const int m = vs.m();
    if (h_ideal.size() != m)
        throw ValidationError("design: ideal response must be given per distinct eigenvalue");
    // Legacy filter form: powers 1..J, no constant term.
    Eigen::MatrixXd c_leg(m, J);
    for (int i = 0; i < m; ++i) {
        double xi = vs.spectrum.xi_unique(i);
        c_leg(i, 0) = xi;
        for (int l = 1; l < J; ++l) c_leg(i, l) = c_leg(i, l - 1) * xi;
    }
    detail::ConvexProgram prob;
    prob.P = -c_leg / 2.0;
    prob.q = h_ideal.array() - 0.5;
    prob.Aeq = Eigen::MatrixXd::Ones(1, J);
    prob.beq = Eigen::VectorXd::Ones(1);
    prob.G = -Eigen::MatrixXd::Identity(J, J);
    prob.g = Eigen::VectorXd::Constant(J, -kLiterPosFloor);
    detail::ConvexSolution sol = detail::solve_convex(prob);

    FilterDesign fd;
    fd.w = sol.w;
    fd.model = DesignModel::liter_opt;
    fd.objective = sol.minimax_term;
    Eigen::VectorXd gamma_unique = c_leg * sol.w;
    fd.gamma = vs.spectrum.expand(gamma_unique);
    fd.h_low = (Eigen::VectorXd::Ones(fd.gamma.size()) + fd.gamma) / 2.0;
    fd.h_high = (Eigen::VectorXd::Ones(fd.gamma.size()) - fd.gamma) / 2.0;
    return fd;
}

FilterDesign design_filters(const VandermondeSystem& vs, const DesignConfig& cfg) {
    cfg.check();
    double xi0 = cfg.xi0;
    if (std::isnan(xi0)) {
        // Median of the distinct eigenvalues.
        const int m = vs.m();
        xi0 = (m % 2 == 1) ? vs.spectrum.xi_unique((m - 1) / 2)
                           : 0.5 * (vs.spectrum.xi_unique(m / 2 - 1) +
                                    vs.spectrum.xi_unique(m / 2));
    }
    Eigen::VectorXd h_ideal = ideal_lowpass(vs.spectrum.xi_unique, xi0);
    switch (cfg.model) {
        case DesignModel::closed_form: return solve_closed_form(vs, h_ideal);
        case DesignModel::ori_opt: return solve_ori_opt(vs, h_ideal, cfg);
        case DesignModel::reg_opt: return solve_reg_opt(vs, h_ideal, cfg);
        case DesignModel::liter_opt: return solve_liter_opt(vs, h_ideal, cfg.J);
    }
    throw ValidationError("unknown design model");
}

Theorem2Report validate_theorem2(const Eigen::VectorXd& gamma, int r, int s) {
    const int n = static_cast<int>(gamma.size());
    const double eq_tol = 1e-6;
    const double boundary_tol = 1e-9;
    Theorem2Report rep;
    if (r < 1 || s < 1 || r + s > n) {
        rep.message = "invalid (r, s) for spectrum of size " + std::to_string(n);
        return rep;
    }
    for (int i = 0; i < r; ++i)
        if (std::abs(gamma(i) - 1.0) > eq_tol) rep.violations.push_back(i);
    for (int i = n - s; i < n; ++i)
        if (std::abs(gamma(i) + 1.0) > eq_tol) rep.violations.push_back(i);

    int inside = 0, outside = 0;
    for (int i = r; i < n - s; ++i) {
        double a = std::abs(gamma(i));
        if (a <= 1.0 - boundary_tol) {
            ++inside;
        } else if (a >= 1.0 + boundary_tol) {
            ++outside;
        } else {
            rep.violations.push_back(i);  // on the boundary
        }
    }
    if (inside > 0 && outside > 0)
        for (int i = r; i < n - s; ++i) rep.violations.push_back(i);

    std::sort(rep.violations.begin(), rep.violations.end());
    rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()),
                         rep.violations.end());
    rep.pass = rep.violations.empty();
    rep.inside_branch = outside == 0;
    rep.message = rep.pass ? (rep.inside_branch ? "pass (|gamma| < 1 branch)"
                                                : "pass (|gamma| > 1 branch)")
                           : std::to_string(rep.violations.size()) + " index(es) violate "
                             "the eigenvalue conditions";
    return rep;
}

FilterPair build_filters(const NormalizedGraph& ng, const SpectralDecomposition& sd,
                         const FilterDesign& fd) {
    const int n = ng.graph.n;
    if (sd.n() != n || (fd.gamma.size() != 0 && fd.gamma.size() != n))
        throw ValidationError("build_filters: dimension mismatch");
    const int J = static_cast<int>(fd.w.size());

    FilterPair fp;
    // Horner on A^S; zero entries beyond the polynomial hop radius stay
    // exactly zero.
    Eigen::MatrixXd acc =
        fd.w(J - 1) * Eigen::MatrixXd::Identity(n, n);
    for (int l = J - 2; l >= 0; --l) {
        acc = (ng.a_sym * acc).eval();
        acc.diagonal().array() += fd.w(l);
    }
    if (fd.model == DesignModel::liter_opt) acc = (ng.a_sym * acc).eval();  // powers 1..J
    fp.g = acc;
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    fp.h_low_mat = (eye + fp.g) / 2.0;
    fp.h_high_mat = (eye - fp.g) / 2.0;
    return fp;
}

}  // namespace gwfb
