#include "gwfb/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gwfb/errors.hpp"

namespace gwfb {

SpectralDecomposition eigendecompose(const NormalizedGraph& ng) {
    const int n = ng.graph.n;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n) - ng.a_sym;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    if (es.info() != Eigen::Success)
        throw NumericError("eigendecomposition failed to converge (n = " +
                           std::to_string(n) + ", ||L|| = " +
                           std::to_string(lap.norm()) + ")");

    SpectralDecomposition sd;
    sd.lambda = es.eigenvalues();  // ascending
    sd.u = es.eigenvectors();
    // lambda(0) is 0 up to roundoff; pin it so xi(0) = 1 exactly.
    sd.lambda(0) = 0.0;
    sd.xi = Eigen::VectorXd::Ones(n) - sd.lambda;

    // Determinism: first entry of nonnegligible magnitude is made positive.
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            double v = sd.u(i, k);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) sd.u.col(k) = -sd.u.col(k);
                break;
            }
        }
    }
    return sd;
}

Eigen::VectorXd gft(const SpectralDecomposition& sd, const Eigen::VectorXd& x) {
    if (x.size() != sd.n())
        throw ValidationError("gft: signal length " + std::to_string(x.size()) +
                              " does not match graph size " + std::to_string(sd.n()));
    return sd.u.transpose() * x;
}

Eigen::VectorXd igft(const SpectralDecomposition& sd, const Eigen::VectorXd& xhat) {
    if (xhat.size() != sd.n())
        throw ValidationError("igft: spectrum length " + std::to_string(xhat.size()) +
                              " does not match graph size " + std::to_string(sd.n()));
    return sd.u * xhat;
}

Eigen::VectorXd DedupedSpectrum::expand(const Eigen::VectorXd& per_unique) const {
    Eigen::VectorXd out(n());
    for (int i = 0; i < n(); ++i) out(i) = per_unique(group_of[i]);
    return out;
}

DedupedSpectrum dedup_eigenvalues(const SpectralDecomposition& sd, double tol) {
    if (tol <= 0.0) throw ValidationError("dedup tolerance must be positive");
    const int n = sd.n();
    DedupedSpectrum ds;
    ds.group_of.resize(n);

    std::vector<double> reps;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        // xi is descending; members of a group are consecutive.
        if (i == n || sd.xi(start) - sd.xi(i) > tol) {
            double mean = 0.0;
            for (int k = start; k < i; ++k) mean += sd.xi(k);
            mean /= (i - start);
            for (int k = start; k < i; ++k) ds.group_of[k] = static_cast<int>(reps.size());
            reps.push_back(mean);
            start = i;
        }
    }
    ds.xi_unique = Eigen::Map<Eigen::VectorXd>(reps.data(), static_cast<long>(reps.size()));
    return ds;
}

VandermondeSystem vandermonde(const DedupedSpectrum& ds, int J, int r, int s) {
    if (J < 2) throw ValidationError("vandermonde: J must be >= 2");
    if (r < 1 || s < 1) throw ValidationError("vandermonde: r and s must be >= 1");
    const int m = ds.m();
    if (r + s > m)
        throw InfeasibleError("vandermonde: r + s = " + std::to_string(r + s) +
                              " exceeds the " + std::to_string(m) +
                              " distinct eigenvalues");

    VandermondeSystem vs;
    vs.r = r;
    vs.s = s;
    vs.spectrum = ds;
    vs.c.resize(m, J);
    vs.c0.resize(m, J);
    for (int i = 0; i < m; ++i) {
        double xi = ds.xi_unique(i);
        vs.c(i, 0) = 1.0;
        for (int l = 1; l < J; ++l) vs.c(i, l) = vs.c(i, l - 1) * xi;
        vs.c0(i, 0) = 0.0;
        vs.c0(i, 1) = 1.0;
        for (int l = 2; l < J; ++l) vs.c0(i, l) = vs.c0(i, l - 1) * xi;
    }
    return vs;
}

}  // namespace gwfb
