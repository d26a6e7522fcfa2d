#include "gwfb/filterbank.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "gwfb/errors.hpp"

namespace gwfb {

namespace {

Eigen::VectorXd upsample(int n, const std::vector<int>& idx, const Eigen::VectorXd& v) {
    if (static_cast<int>(idx.size()) != v.size())
        throw ValidationError("channel length does not match sampling pattern");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (size_t i = 0; i < idx.size(); ++i) out(idx[i]) = v(static_cast<long>(i));
    return out;
}

Eigen::VectorXd restrict_to(const std::vector<int>& idx, const Eigen::VectorXd& v) {
    Eigen::VectorXd out(static_cast<long>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i) out(static_cast<long>(i)) = v(idx[i]);
    return out;
}

}  // namespace

Filterbank assemble(const FilterPair& pair, const SamplingPattern& pattern,
                    bool zero_dc, const Eigen::VectorXd& deg) {
    const int n = pattern.n();
    if (pair.g.rows() != n || pair.g.cols() != n)
        throw ValidationError("assemble: filter/pattern dimension mismatch");

    Filterbank fb;
    fb.pattern = pattern;
    fb.zero_dc = zero_dc;

    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    {
        Eigen::MatrixXd m = eye + pattern.k_diag.asDiagonal() * pair.g;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        fb.sigma_min = svd.singularValues().minCoeff();
    }
    if (fb.sigma_min <= 1e-12)
        throw NumericError(
            "assemble: I + KG is singular (sigma_min = " + std::to_string(fb.sigma_min) +
            "); the Theorem-2 conditions on gamma or the sampling pattern do not hold");

    if (zero_dc) {
        if (deg.size() != n) throw ValidationError("assemble: degree vector size mismatch");
        fb.deg_sqrt = deg.array().sqrt();
        fb.deg_isqrt = deg.array().rsqrt();
        fb.pair.g = fb.deg_isqrt.asDiagonal() * pair.g * fb.deg_sqrt.asDiagonal();
        fb.pair.h_low_mat = (eye + fb.pair.g) / 2.0;
        fb.pair.h_high_mat = (eye - fb.pair.g) / 2.0;
    } else {
        fb.pair = pair;
        fb.deg_sqrt = Eigen::VectorXd::Ones(n);
        fb.deg_isqrt = Eigen::VectorXd::Ones(n);
    }

    // D and K commute, so I + K G~ is invertible exactly when I + K G is; the
    // LU below factors the conjugated system directly.
    Eigen::MatrixXd m = eye + pattern.k_diag.asDiagonal() * fb.pair.g;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    fb.h_inv = 2.0 * lu.solve(eye);
    {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        double smin = svd.singularValues().minCoeff();
        fb.condition = smin > 0.0 ? svd.singularValues().maxCoeff() / smin
                                  : std::numeric_limits<double>::infinity();
    }
    return fb;
}

ChannelOutputs analyze(const Filterbank& fb, const Eigen::VectorXd& x) {
    if (x.size() != fb.n()) throw ValidationError("analyze: signal length mismatch");
    ChannelOutputs ch;
    ch.y_low = restrict_to(fb.pattern.set_a, fb.pair.h_low_mat * x);
    ch.y_high = restrict_to(fb.pattern.set_b, fb.pair.h_high_mat * x);
    return ch;
}

Eigen::VectorXd reconstruct(const Filterbank& fb, const ChannelOutputs& ch) {
    const int n = fb.n();
    // 1/2 (I +- K) act as index masks on the zero-filled channels.
    Eigen::VectorXd combined = upsample(n, fb.pattern.set_a, ch.y_low) +
                               upsample(n, fb.pattern.set_b, ch.y_high);
    return fb.h_inv * combined;
}

Eigen::VectorXd lp_only_reconstruct(const Filterbank& fb, const Eigen::VectorXd& y_low) {
    return fb.h_inv * upsample(fb.n(), fb.pattern.set_a, y_low);
}

ErrorBoundResult error_bound(const Filterbank& fb, const Eigen::VectorXd& x) {
    ChannelOutputs ch = analyze(fb, x);
    Eigen::VectorXd y = reconstruct(fb, ch);
    Eigen::VectorXd y_lp = lp_only_reconstruct(fb, ch.y_low);
    ErrorBoundResult res;
    res.er = (y - y_lp).norm();
    res.bound = 2.0 * x.norm() / fb.sigma_min;
    return res;
}

LegacyCounterexampleReport check_legacy_counterexample(const Graph& g) {
    BipartitePartition bp = bipartite_natural_partition(g);  // throws if non-bipartite
    NormalizedGraph ng = normalize(g);
    // Legacy degree-1 filters force w_1 = 1, so G = A^S.
    const Eigen::MatrixXd& gmat = ng.a_sym;
    LegacyCounterexampleReport rep;
    rep.sigma_min_identity =
        sigma_min_diagnostic(Eigen::VectorXd::Ones(g.n), gmat).sigma_min;
    rep.sigma_min_bipartite = sigma_min_diagnostic(bp.pattern.k_diag, gmat).sigma_min;
    rep.singular_with_identity = rep.sigma_min_identity <= 1e-10;
    rep.invertible_with_bipartition = rep.sigma_min_bipartite > 1e-8;
    return rep;
}

}  // namespace gwfb
