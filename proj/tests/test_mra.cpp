#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "gwfb/errors.hpp"
#include "gwfb/mra.hpp"
#include "gwfb/rng.hpp"
#include "test_util.hpp"

using namespace gwfb;

namespace {

// Brute-force Schur complement of the combinatorial Laplacian, written
// independently of the library implementation.
Eigen::MatrixXd schur_oracle(const Graph& g, const std::vector<int>& keep) {
    int n = g.n;
    Eigen::MatrixXd lap = -g.weights;
    for (int i = 0; i < n; ++i) lap(i, i) = g.weights.row(i).sum();
    std::vector<int> drop;
    std::vector<char> kept(n, 0);
    for (int v : keep) kept[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!kept[v]) drop.push_back(v);
    int a = static_cast<int>(keep.size()), b = static_cast<int>(drop.size());
    Eigen::MatrixXd laa(a, a), lab(a, b), lbb(b, b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) laa(i, j) = lap(keep[i], keep[j]);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) lab(i, j) = lap(keep[i], drop[j]);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) lbb(i, j) = lap(drop[i], drop[j]);
    return laa - lab * lbb.inverse() * lab.transpose();
}

Eigen::VectorXd smooth_signal(const Graph& g, std::uint64_t seed) {
    auto sd = eigendecompose(normalize(g));
    Eigen::VectorXd xhat = Eigen::VectorXd::Zero(g.n);
    auto rng = seeded_stream(seed, "signals");
    std::normal_distribution<double> nd;
    for (int i = 0; i < std::min(4, g.n); ++i) xhat(i) = nd(rng);
    return igft(sd, xhat);
}

}  // namespace

TEST_CASE("kron_reduce: P3 keep endpoints") {
    Graph red = kron_reduce(test::path_graph(3), {0, 2});
    REQUIRE(red.n == 2);
    CHECK(red.weights(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("kron_reduce: C4 keep opposite pair") {
    Graph red = kron_reduce(test::ring(4), {0, 2});
    REQUIRE(red.n == 2);
    CHECK(red.weights(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kron_reduce: keep everything returns the same graph") {
    Graph g = test::comet(9, 4);
    Graph red = kron_reduce(g, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK((red.weights - g.weights).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("kron_reduce: matches the Schur-complement oracle") {
    std::mt19937_64 rng(77);
    for (auto& g : {test::sensor(20, 5), test::comet(14, 6), test::ring(10)}) {
        std::vector<int> keep;
        for (int v = 0; v < g.n; ++v)
            if (rng() % 2 == 0) keep.push_back(v);
        if (static_cast<int>(keep.size()) < 2) keep = {0, 1, 2};
        Graph red = kron_reduce(g, keep);
        Eigen::MatrixXd l_oracle = schur_oracle(g, keep);
        int a = static_cast<int>(keep.size());
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j)
                if (i != j) {
                    double w = std::max(0.0, -l_oracle(i, j));
                    if (w < 1e-12) w = 0.0;
                    CHECK(red.weights(i, j) == doctest::Approx(w).epsilon(1e-9));
                }
        // symmetry, nonnegativity, connectivity preserved
        CHECK((red.weights - red.weights.transpose()).lpNorm<Eigen::Infinity>() <= 1e-12);
        CHECK(red.weights.minCoeff() >= 0.0);
        CHECK(is_connected(red.weights));
    }
}

TEST_CASE("decompose: depth 1 on K2 terminates at the size floor") {
    DesignConfig cfg;
    cfg.J = 2;
    Eigen::VectorXd x(2);
    x << 1.0, -0.5;
    Pyramid p = decompose(test::k2(), x, 3, cfg);
    CHECK(p.depth() == 1);  // one retained vertex cannot host another level
    CHECK(p.levels[0].channels.y_low.size() + p.levels[0].channels.y_high.size() == 2);
}

TEST_CASE("decompose: level sizes strictly decrease and chain consistently") {
    DesignConfig cfg;
    Graph g = test::sensor(60, 12);
    Eigen::VectorXd x = smooth_signal(g, 3);
    Pyramid p = decompose(g, x, 3, cfg);
    REQUIRE(p.depth() >= 2);
    for (int l = 0; l < p.depth(); ++l) {
        auto& lev = p.levels[l];
        int nl = lev.graph.n;
        CHECK(lev.channels.y_low.size() + lev.channels.y_high.size() == nl);
        if (l > 0) {
            CHECK(nl == static_cast<int>(p.levels[l - 1].bank.pattern.set_a.size()));
            CHECK(nl < p.levels[l - 1].graph.n);
            // y_low of the previous level is this level's input
            auto ch = analyze(lev.bank, p.levels[l - 1].channels.y_low);
            CHECK((ch.y_low - lev.channels.y_low).lpNorm<Eigen::Infinity>() <= 1e-10);
        }
    }
}

TEST_CASE("reconstruct_pyramid: full mode is exact") {
    DesignConfig cfg;
    for (auto& g : {test::ring(32), test::sensor(48, 8)}) {
        Eigen::VectorXd x = smooth_signal(g, 11);
        Pyramid p = decompose(g, x, 2, cfg);
        Eigen::VectorXd y = reconstruct_pyramid(p, ReconMode::full);
        CHECK((y - x).norm() <= 1e-8 * std::max(1.0, x.norm()));
    }
}

TEST_CASE("reconstruct_pyramid: lp_only differs only through HP channels") {
    DesignConfig cfg;
    Graph g = test::sensor(48, 19);
    Eigen::VectorXd x = smooth_signal(g, 23);
    Pyramid p = decompose(g, x, 2, cfg);
    Eigen::VectorXd lp = reconstruct_pyramid(p, ReconMode::lp_only);

    // Oracle: zero the highpass channels manually and invert level by level.
    Pyramid q = p;
    for (auto& lev : q.levels) lev.channels.y_high.setZero();
    Eigen::VectorXd cur = q.levels.back().channels.y_low;
    for (int l = q.depth() - 1; l >= 0; --l) {
        ChannelOutputs ch;
        ch.y_low = cur;
        ch.y_high = Eigen::VectorXd::Zero(q.levels[l].channels.y_high.size());
        cur = reconstruct(q.levels[l].bank, ch);
    }
    CHECK((lp - cur).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("denoise: sigma = 0 keeps the full reconstruction") {
    DesignConfig cfg;
    Graph g = test::ring(32);
    Eigen::VectorXd x = smooth_signal(g, 31);
    Eigen::VectorXd out = denoise(g, x, 0.0, 2, cfg);
    CHECK((out - x).norm() <= 1e-8 * std::max(1.0, x.norm()));
}

TEST_CASE("denoise: huge threshold reduces to lp_only") {
    DesignConfig cfg;
    Graph g = test::sensor(40, 41);
    Eigen::VectorXd x = smooth_signal(g, 43);
    Pyramid p = decompose(g, x, 2, cfg);
    Eigen::VectorXd lp = reconstruct_pyramid(p, ReconMode::lp_only);
    Eigen::VectorXd out = denoise(g, x, 1e6, 2, cfg);
    CHECK((out - lp).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("denoise: improves on the noisy input for a smooth signal") {
    DesignConfig cfg;
    cfg.r = 2;
    cfg.s = 3;
    cfg.J = 6;
    cfg.alpha = 0.01;
    Graph g = test::ring(64);
    Eigen::VectorXd x = smooth_signal(g, 51);
    x /= x.lpNorm<Eigen::Infinity>();
    double sigma = 1.0 / 8.0;
    double err_noisy = 0.0, err_den = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto rng = seeded_stream(seed, "noise");
        std::normal_distribution<double> nd(0.0, sigma);
        Eigen::VectorXd noisy = x;
        for (int i = 0; i < g.n; ++i) noisy(i) += nd(rng);
        err_noisy += relative_error(noisy, x);
        err_den += relative_error(denoise(g, noisy, sigma, 2, cfg), x);
    }
    CHECK(err_den / 10.0 < err_noisy / 10.0);
}

TEST_CASE("relative_error: basic identities") {
    Eigen::VectorXd x(3);
    x << 1.0, 2.0, -1.0;
    CHECK(relative_error(x, x) == 0.0);
    CHECK(relative_error(2.0 * x, x) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::VectorXd y = x;
    y(0) += x.norm();
    CHECK(relative_error(y, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(relative_error(x, Eigen::VectorXd::Zero(3)), ValidationError);
}
