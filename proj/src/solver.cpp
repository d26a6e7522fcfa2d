#include "gwfb/solver.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "gwfb/errors.hpp"

namespace gwfb::detail {

namespace {

constexpr double kSocSmoothing = 1e-14;  // sqrt(||v||^2 + delta) smoothing
constexpr double kBarrierMu = 20.0;
constexpr double kBarrierGap = 1e-10;

// Smooth convex objective on the barrier variables z.
struct Objective {
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)>
        grad_hess;
};

// Minimizes t_bar * f0(z) - sum log(b - A z) over increasing t_bar, starting
// from a strictly feasible z0. `stop` may end the outer loop early.
Eigen::VectorXd barrier_minimize(const Objective& f0, const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& b, Eigen::VectorXd z,
                                 const std::function<bool(const Eigen::VectorXd&)>& stop) {
    const int p = static_cast<int>(z.size());
    const int ncon = static_cast<int>(A.rows());
    double t_bar = 1.0;

    auto psi = [&](const Eigen::VectorXd& zz, double tb) {
        Eigen::VectorXd slack = b - A * zz;
        if ((slack.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
        return tb * f0.value(zz) - slack.array().log().sum();
    };

    for (int outer = 0; outer < 40; ++outer) {
        for (int it = 0; it < 100; ++it) {
            Eigen::VectorXd slack = b - A * z;
            Eigen::VectorXd grad;
            Eigen::MatrixXd hess;
            f0.grad_hess(z, grad, hess);
            grad *= t_bar;
            hess *= t_bar;
            Eigen::VectorXd inv_slack = slack.array().inverse();
            grad.noalias() += A.transpose() * inv_slack;
            hess.noalias() +=
                A.transpose() * inv_slack.array().square().matrix().asDiagonal() * A;

            Eigen::VectorXd step;
            double ridge = 0.0;
            for (int tries = 0; tries < 8; ++tries) {
                Eigen::LDLT<Eigen::MatrixXd> ldlt(
                    hess + ridge * Eigen::MatrixXd::Identity(p, p));
                step = -ldlt.solve(grad);
                if (ldlt.info() == Eigen::Success && step.allFinite()) break;
                ridge = (ridge == 0.0) ? 1e-10 * (1.0 + hess.diagonal().maxCoeff())
                                       : ridge * 100.0;
            }
            if (!step.allFinite()) throw NumericError("barrier Newton step is not finite");

            double decrement2 = -grad.dot(step);
            if (decrement2 / 2.0 < 1e-12) break;

            // Step fraction to the nearest constraint boundary.
            double alpha_max = 1.0;
            Eigen::VectorXd a_step = A * step;
            for (int i = 0; i < ncon; ++i)
                if (a_step(i) > 0.0) alpha_max = std::min(alpha_max, 0.99 * slack(i) / a_step(i));

            double psi0 = psi(z, t_bar);
            double alpha = alpha_max;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls) {
                Eigen::VectorXd cand = z + alpha * step;
                if (psi(cand, t_bar) <= psi0 - 1e-4 * alpha * decrement2) {
                    z = cand;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        if (stop && stop(z)) break;
        if (ncon / t_bar < kBarrierGap) break;
        t_bar *= kBarrierMu;
    }
    return z;
}

}  // namespace

ConvexSolution solve_convex(const ConvexProgram& prob) {
    const int J = static_cast<int>(prob.P.cols());
    const bool has_soc = prob.alpha > 0.0 && prob.R.rows() > 0;

    // Eliminate equalities: w = wp + Z y with Z a null-space basis of Aeq.
    Eigen::VectorXd wp = Eigen::VectorXd::Zero(J);
    Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(J, J);
    if (prob.Aeq.rows() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(prob.Aeq,
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 1e-12 * std::max(1.0, smax)) ++rank;
        Eigen::VectorXd sv_inv = Eigen::VectorXd::Zero(svd.singularValues().size());
        for (int i = 0; i < rank; ++i) sv_inv(i) = 1.0 / svd.singularValues()(i);
        wp = svd.matrixV() * sv_inv.asDiagonal() * svd.matrixU().transpose() * prob.beq;
        double resid = (prob.Aeq * wp - prob.beq).lpNorm<Eigen::Infinity>();
        if (resid > 1e-8 * std::max(1.0, prob.beq.lpNorm<Eigen::Infinity>()))
            throw InfeasibleError(
                "equality constraints are inconsistent (residual " + std::to_string(resid) + ")");
        Z = svd.matrixV().rightCols(J - rank);
    }
    const int p = static_cast<int>(Z.cols());

    auto finish = [&](const Eigen::VectorXd& w) {
        ConvexSolution sol;
        sol.w = w;
        sol.minimax_term = (prob.q + prob.P * w).lpNorm<Eigen::Infinity>();
        sol.soc_term = prob.R.rows() > 0 ? (prob.R * w + prob.r0).norm() : 0.0;
        sol.objective = sol.minimax_term + prob.alpha * sol.soc_term;
        return sol;
    };

    // Reduced data.
    Eigen::MatrixXd Ph = prob.P * Z;
    Eigen::VectorXd qh = prob.q + prob.P * wp;
    Eigen::MatrixXd Gh;
    Eigen::VectorXd gh;
    if (prob.G.rows() > 0) {
        Gh = prob.G * Z;
        gh = prob.g - prob.G * wp;
    }
    Eigen::MatrixXd Rh;
    Eigen::VectorXd r0h;
    if (has_soc) {
        Rh = prob.R * Z;
        r0h = prob.r0 + prob.R * wp;
    }

    if (p == 0) {
        // Equalities determine w completely.
        if (gh.size() > 0 && (-gh).maxCoeff() > 1e-9)
            throw InfeasibleError(
                "inequality constraints violated by the equality-determined solution (max "
                "violation " + std::to_string((-gh).maxCoeff()) + ")");
        return finish(wp);
    }

    // Phase I: strictly feasible point for the inequalities.
    Eigen::VectorXd y = Eigen::VectorXd::Zero(p);
    if (gh.size() > 0) {
        double viol = (-gh).maxCoeff();
        if (viol >= -1e-9) {
            const int ncon = static_cast<int>(Gh.rows());
            Eigen::MatrixXd A1(ncon, p + 1);
            A1.leftCols(p) = Gh;
            A1.rightCols(1) = -Eigen::VectorXd::Ones(ncon);
            Eigen::VectorXd z0(p + 1);
            z0.head(p) = y;
            z0(p) = viol + 1.0;

            Objective lin;
            lin.value = [p](const Eigen::VectorXd& z) { return z(p); };
            lin.grad_hess = [p](const Eigen::VectorXd&, Eigen::VectorXd& g,
                                Eigen::MatrixXd& h) {
                g = Eigen::VectorXd::Zero(p + 1);
                g(p) = 1.0;
                h = Eigen::MatrixXd::Zero(p + 1, p + 1);
            };
            Eigen::VectorXd z = barrier_minimize(
                lin, A1, gh, z0,
                [p](const Eigen::VectorXd& zz) { return zz(p) < -1e-6; });
            if (z(p) >= -1e-9)
                throw InfeasibleError(
                    "inequality constraints |C_m w| < 1 have no strict interior for the "
                    "given (r, s, J)");
            y = z.head(p);
        }
    }

    // Phase II: epigraph variable t for the minimax term.
    const int nres = static_cast<int>(Ph.rows());
    const int nineq = static_cast<int>(Gh.rows());
    Eigen::MatrixXd A2(2 * nres + nineq, p + 1);
    Eigen::VectorXd b2(2 * nres + nineq);
    A2.block(0, 0, nres, p) = Ph;
    A2.block(nres, 0, nres, p) = -Ph;
    A2.block(0, p, 2 * nres, 1) = -Eigen::VectorXd::Ones(2 * nres);
    b2.head(nres) = -qh;
    b2.segment(nres, nres) = qh;
    if (nineq > 0) {
        A2.block(2 * nres, 0, nineq, p) = Gh;
        A2.block(2 * nres, p, nineq, 1).setZero();
        b2.tail(nineq) = gh;
    }

    Eigen::VectorXd z0(p + 1);
    z0.head(p) = y;
    z0(p) = (qh + Ph * y).lpNorm<Eigen::Infinity>() + 1.0;

    const double alpha = prob.alpha;
    Objective f0;
    f0.value = [&, p](const Eigen::VectorXd& z) {
        double v = z(p);
        if (has_soc) {
            Eigen::VectorXd res = Rh * z.head(p) + r0h;
            v += alpha * std::sqrt(res.squaredNorm() + kSocSmoothing);
        }
        return v;
    };
    f0.grad_hess = [&, p](const Eigen::VectorXd& z, Eigen::VectorXd& g, Eigen::MatrixXd& h) {
        g = Eigen::VectorXd::Zero(p + 1);
        g(p) = 1.0;
        h = Eigen::MatrixXd::Zero(p + 1, p + 1);
        if (has_soc) {
            Eigen::VectorXd res = Rh * z.head(p) + r0h;
            double s = std::sqrt(res.squaredNorm() + kSocSmoothing);
            Eigen::VectorXd rtv = Rh.transpose() * res;
            g.head(p) += (alpha / s) * rtv;
            h.topLeftCorner(p, p) +=
                (alpha / s) * (Rh.transpose() * Rh) - (alpha / (s * s * s)) * (rtv * rtv.transpose());
        }
    };

    Eigen::VectorXd z = barrier_minimize(f0, A2, b2, z0, nullptr);
    return finish(wp + Z * z.head(p));
}

}  // namespace gwfb::detail
