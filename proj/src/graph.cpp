#include "gwfb/graph.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "gwfb/errors.hpp"
#include "gwfb/rng.hpp"

namespace gwfb {

bool is_connected(const Eigen::MatrixXd& weights) {
    const int n = static_cast<int>(weights.rows());
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (!seen[v] && weights(u, v) > 0.0) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n;
}

Eigen::VectorXd degrees(const Graph& g) {
    return g.weights.rowwise().sum();
}

void validate_graph(const Graph& g) {
    if (g.n < 1) throw ValidationError("graph has no vertices");
    if (g.weights.rows() != g.n || g.weights.cols() != g.n)
        throw ValidationError("weight matrix shape does not match vertex count");
    for (int i = 0; i < g.n; ++i) {
        if (g.weights(i, i) != 0.0)
            throw ValidationError("self-loop at vertex " + std::to_string(i));
        for (int j = i + 1; j < g.n; ++j) {
            if (g.weights(i, j) != g.weights(j, i))
                throw ValidationError("asymmetric weights at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            if (g.weights(i, j) < 0.0)
                throw ValidationError("negative weight at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
        }
    }
    Eigen::VectorXd d = degrees(g);
    for (int i = 0; i < g.n; ++i)
        if (d(i) <= 0.0)
            throw ValidationError("isolated vertex " + std::to_string(i));
    if (!is_connected(g.weights))
        throw ValidationError("graph is not connected");
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);

    struct Edge {
        int u, v;
        double w;
        int line;
    };
    std::vector<Edge> edges;
    int max_vertex = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        double w = 1.0;
        if (!(ls >> u >> v)) throw ParseError(path + ":" + std::to_string(lineno) + ": malformed edge line");
        ls >> w;  // optional
        std::string trailing;
        if (ls >> trailing)
            throw ParseError(path + ":" + std::to_string(lineno) + ": trailing tokens");
        if (u < 0 || v < 0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": negative vertex id");
        if (u == v)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": self-loop at vertex " + std::to_string(u));
        if (w < 0.0)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": negative weight");
        edges.push_back({static_cast<int>(u), static_cast<int>(v), w, lineno});
        max_vertex = std::max<long long>(max_vertex, std::max(u, v));
    }
    if (edges.empty()) throw ParseError(path + ": no edges");

    Graph g;
    g.n = max_vertex + 1;
    g.weights = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const Edge& e : edges) {
        if (g.weights(e.u, e.v) != 0.0 && g.weights(e.u, e.v) != e.w)
            throw ParseError(path + ":" + std::to_string(e.line) +
                             ": conflicting duplicate edge (" + std::to_string(e.u) +
                             ", " + std::to_string(e.v) + ")");
        g.weights(e.u, e.v) = e.w;
        g.weights(e.v, e.u) = e.w;
    }
    validate_graph(g);
    return g;
}

std::vector<std::array<double, 2>> load_coords(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open coordinates file: " + path);
    std::vector<std::array<double, 2>> coords;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x >> y))
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed coordinate line");
        coords.push_back({x, y});
    }
    if (static_cast<int>(coords.size()) != n)
        throw ParseError(path + ": expected " + std::to_string(n) + " coordinate lines, got " +
                         std::to_string(coords.size()));
    return coords;
}

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "ring") return GraphKind::ring;
    if (name == "path") return GraphKind::path;
    if (name == "comet") return GraphKind::comet;
    if (name == "random_sensor") return GraphKind::random_sensor;
    if (name == "random_bipartite") return GraphKind::random_bipartite;
    throw ParseError("unknown graph kind: " + name);
}

namespace {

Graph make_ring(int n) {
    if (n < 2) throw ValidationError("ring needs n >= 2");
    Graph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        g.weights(i, j) = 1.0;
        g.weights(j, i) = 1.0;
    }
    g.coords.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * i / n;
        g.coords[i] = {std::cos(t), std::sin(t)};
    }
    return g;
}

Graph make_path(int n) {
    if (n < 2) throw ValidationError("path needs n >= 2");
    Graph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        g.weights(i, i + 1) = 1.0;
        g.weights(i + 1, i) = 1.0;
    }
    g.coords.resize(n);
    for (int i = 0; i < n; ++i) g.coords[i] = {static_cast<double>(i), 0.0};
    return g;
}

// Vertices 0..head-1 are the star leaves; head..n-1 form the tail path whose
// first vertex is the star center.
Graph make_comet(int n, int head) {
    if (head < 1 || n - head < 1)
        throw ValidationError("comet needs head >= 1 and tail >= 1");
    Graph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    const int center = head;
    for (int i = 0; i < head; ++i) {
        g.weights(i, center) = 1.0;
        g.weights(center, i) = 1.0;
    }
    for (int i = center; i + 1 < n; ++i) {
        g.weights(i, i + 1) = 1.0;
        g.weights(i + 1, i) = 1.0;
    }
    g.coords.resize(n);
    for (int i = 0; i < head; ++i) {
        double t = 2.0 * M_PI * i / head;
        g.coords[i] = {-1.0 + 0.8 * std::cos(t), 0.8 * std::sin(t)};
    }
    for (int i = center; i < n; ++i) g.coords[i] = {static_cast<double>(i - center), 0.0};
    return g;
}

Graph try_sensor(int n, double radius, std::uint64_t seed) {
    auto rng = seeded_stream(seed, "graph_gen");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Graph g;
    g.n = n;
    g.coords.resize(n);
    for (int i = 0; i < n; ++i) g.coords[i] = {unif(rng), unif(rng)};
    g.weights = Eigen::MatrixXd::Zero(n, n);
    const double sigma_k = radius / 2.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dx = g.coords[i][0] - g.coords[j][0];
            double dy = g.coords[i][1] - g.coords[j][1];
            double dist = std::sqrt(dx * dx + dy * dy);
            if (dist < radius) {
                double w = std::exp(-dist * dist / (2.0 * sigma_k * sigma_k));
                g.weights(i, j) = w;
                g.weights(j, i) = w;
            }
        }
    }
    return g;
}

Graph try_bipartite(int na, int nb, double p, std::uint64_t seed) {
    auto rng = seeded_stream(seed, "graph_gen");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = na + nb;
    Graph g;
    g.n = n;
    g.weights = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < na; ++i) {
        for (int j = na; j < n; ++j) {
            if (unif(rng) < p) {
                g.weights(i, j) = 1.0;
                g.weights(j, i) = 1.0;
            }
        }
    }
    g.coords.resize(n);
    for (int i = 0; i < na; ++i) g.coords[i] = {0.0, static_cast<double>(i)};
    for (int j = na; j < n; ++j) g.coords[j] = {1.0, static_cast<double>(j - na)};
    return g;
}

constexpr int kConnectivityRetries = 50;

}  // namespace

Graph generate_graph(GraphKind kind, const GraphParams& params, std::uint64_t seed) {
    Graph g;
    switch (kind) {
        case GraphKind::ring:
            g = make_ring(params.n);
            break;
        case GraphKind::path:
            g = make_path(params.n);
            break;
        case GraphKind::comet:
            g = make_comet(params.n, params.head > 0 ? params.head : params.n / 2);
            break;
        case GraphKind::random_sensor: {
            if (params.n < 2 || params.radius <= 0.0)
                throw ValidationError("random_sensor needs n >= 2 and radius > 0");
            bool ok = false;
            for (int t = 0; t < kConnectivityRetries && !ok; ++t) {
                g = try_sensor(params.n, params.radius, seed + t);
                ok = is_connected(g.weights);
            }
            if (!ok)
                throw ValidationError("random_sensor: no connected sample after " +
                                      std::to_string(kConnectivityRetries) + " retries");
            break;
        }
        case GraphKind::random_bipartite: {
            if (params.part_a < 1 || params.part_b < 1 || params.edge_prob <= 0.0 ||
                params.edge_prob > 1.0)
                throw ValidationError("random_bipartite needs positive part sizes and p in (0, 1]");
            bool ok = false;
            for (int t = 0; t < kConnectivityRetries && !ok; ++t) {
                g = try_bipartite(params.part_a, params.part_b, params.edge_prob, seed + t);
                ok = is_connected(g.weights);
            }
            if (!ok)
                throw ValidationError("random_bipartite: no connected sample after " +
                                      std::to_string(kConnectivityRetries) + " retries");
            break;
        }
    }
    validate_graph(g);
    return g;
}

NormalizedGraph normalize(const Graph& g) {
    validate_graph(g);
    NormalizedGraph ng;
    ng.graph = g;
    ng.deg = degrees(g);
    Eigen::VectorXd inv_sqrt = ng.deg.array().rsqrt();
    ng.a_sym = inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal();
    // Exact symmetry matters downstream (self-adjoint eigensolver).
    ng.a_sym = 0.5 * (ng.a_sym + ng.a_sym.transpose()).eval();
    return ng;
}

}  // namespace gwfb
