#include "gwfb/mra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "gwfb/errors.hpp"
#include "gwfb/sampling.hpp"
#include "gwfb/spectral.hpp"

namespace gwfb {

Graph kron_reduce(const Graph& g, const std::vector<int>& keep) {
    validate_graph(g);
    std::vector<int> a = keep;
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) throw ValidationError("kron_reduce: keep set is empty");
    for (int i : a)
        if (i < 0 || i >= g.n)
            throw ValidationError("kron_reduce: vertex " + std::to_string(i) + " out of range");

    if (static_cast<int>(a.size()) == g.n) return g;  // empty complement

    std::vector<int> b;
    {
        std::vector<char> in_a(g.n, 0);
        for (int i : a) in_a[i] = 1;
        for (int i = 0; i < g.n; ++i)
            if (!in_a[i]) b.push_back(i);
    }

    Eigen::MatrixXd lap = Eigen::MatrixXd(degrees(g).asDiagonal()) - g.weights;
    auto block = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        Eigen::MatrixXd out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                out(static_cast<long>(i), static_cast<long>(j)) = lap(rows[i], cols[j]);
        return out;
    };

    Eigen::MatrixXd laa = block(a, a);
    Eigen::MatrixXd lab = block(a, b);
    Eigen::MatrixXd lbb = block(b, b);

    Eigen::LLT<Eigen::MatrixXd> llt(lbb);
    if (llt.info() != Eigen::Success)
        throw NumericError("kron_reduce: L(B, B) is singular");
    Eigen::MatrixXd l_red = laa - lab * llt.solve(lab.transpose());

    Graph out;
    out.n = static_cast<int>(a.size());
    out.weights = Eigen::MatrixXd::Zero(out.n, out.n);
    for (int i = 0; i < out.n; ++i) {
        for (int j = i + 1; j < out.n; ++j) {
            double w = -0.5 * (l_red(i, j) + l_red(j, i));
            if (w < 1e-12) w = 0.0;  // clamp roundoff, including tiny negatives
            out.weights(i, j) = w;
            out.weights(j, i) = w;
        }
    }
    if (!g.coords.empty()) {
        out.coords.reserve(a.size());
        for (int i : a) out.coords.push_back(g.coords[i]);
    }
    if (!g.labels.empty()) {
        out.labels.reserve(a.size());
        for (int i : a) out.labels.push_back(g.labels[i]);
    }
    if (!is_connected(out.weights))
        throw NumericError("kron_reduce: reduced graph disconnected after clamping");
    validate_graph(out);
    return out;
}

namespace {

template <typename F>
auto with_level_context(int level, F&& f) {
    auto prefix = [&](const std::string& what) {
        return "level " + std::to_string(level) + ": " + what;
    };
    try {
        return f();
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(prefix(e.what()));
    } catch (const RankError& e) {
        throw RankError(prefix(e.what()));
    } catch (const NumericError& e) {
        throw NumericError(prefix(e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(prefix(e.what()));
    }
}

}  // namespace

Pyramid decompose(const Graph& g, const Eigen::VectorXd& x, int depth,
                  const DesignConfig& cfg) {
    if (depth < 1) throw ValidationError("decompose: depth must be >= 1");
    cfg.check();
    const int floor_n = std::max(4, cfg.r + cfg.s + 2);

    Pyramid p;
    p.input = x;
    Graph cur = g;
    Eigen::VectorXd xcur = x;
    for (int level = 0; level < depth; ++level) {
        if (level > 0 && cur.n < floor_n) break;  // terminal: graph too small
        PyramidLevel pl = with_level_context(level, [&] {
            NormalizedGraph ng = normalize(cur);
            SpectralDecomposition sd = eigendecompose(ng);
            DedupedSpectrum ds = dedup_eigenvalues(sd);
            VandermondeSystem vs = vandermonde(ds, cfg.J, cfg.r, cfg.s);
            FilterDesign fd = design_filters(vs, cfg);
            SamplingPattern sp = partition_search(sd, cfg.r, cfg.s);
            FilterPair fp = build_filters(ng, sd, fd);
            PyramidLevel out;
            out.graph = cur;
            out.bank = assemble(fp, sp, /*zero_dc=*/true, ng.deg);
            out.channels = analyze(out.bank, xcur);
            return out;
        });
        std::vector<int> set_a = pl.bank.pattern.set_a;
        Eigen::VectorXd y_low = pl.channels.y_low;
        p.levels.push_back(std::move(pl));
        if (level + 1 < depth && static_cast<int>(set_a.size()) >= 2) {
            cur = with_level_context(level, [&] { return kron_reduce(cur, set_a); });
            xcur = y_low;
        } else if (level + 1 < depth) {
            break;  // single-vertex lowpass set, no further level possible
        }
    }
    return p;
}

Eigen::VectorXd reconstruct_pyramid(const Pyramid& p, ReconMode mode) {
    if (p.levels.empty()) throw ValidationError("reconstruct_pyramid: empty pyramid");
    const int deepest = p.depth() - 1;
    Eigen::VectorXd x = p.levels[deepest].channels.y_low;
    for (int level = deepest; level >= 0; --level) {
        const PyramidLevel& pl = p.levels[level];
        ChannelOutputs ch;
        ch.y_low = x;
        ch.y_high = mode == ReconMode::full
                        ? pl.channels.y_high
                        : Eigen::VectorXd::Zero(pl.channels.y_high.size());
        x = reconstruct(pl.bank, ch);
    }
    return x;
}

Eigen::VectorXd denoise(const Graph& g, const Eigen::VectorXd& x_noisy, double sigma,
                        int depth, const DesignConfig& cfg) {
    if (sigma < 0.0) throw ValidationError("denoise: sigma must be >= 0");
    Pyramid p = decompose(g, x_noisy, depth, cfg);
    const double threshold = 3.0 * sigma;
    for (PyramidLevel& pl : p.levels)
        for (long i = 0; i < pl.channels.y_high.size(); ++i)
            if (std::abs(pl.channels.y_high(i)) <= threshold) pl.channels.y_high(i) = 0.0;
    return reconstruct_pyramid(p, ReconMode::full);
}

double relative_error(const Eigen::VectorXd& y, const Eigen::VectorXd& x_ref) {
    if (y.size() != x_ref.size()) throw ValidationError("relative_error: length mismatch");
    double ref = x_ref.norm();
    if (ref <= 0.0) throw ValidationError("relative_error: reference has zero norm");
    return (y - x_ref).norm() / ref;
}

}  // namespace gwfb
