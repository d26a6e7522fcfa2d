#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gwfb {

// Connected weighted undirected graph without self-loops. Immutable after
// construction; validate() is called by every factory in this module.
struct Graph {
    int n = 0;
    Eigen::MatrixXd weights;                   // symmetric, zero diagonal, >= 0
    std::vector<std::string> labels;           // optional vertex ids
    std::vector<std::array<double, 2>> coords; // optional, for generators/plots

    bool has_coords() const { return static_cast<int>(coords.size()) == n; }
};

// Throws ValidationError on asymmetry, self-loops, negative weights,
// isolated vertices or disconnectedness.
void validate_graph(const Graph& g);

bool is_connected(const Eigen::MatrixXd& weights);

// Vertex degrees d_i = sum_j w(i,j).
Eigen::VectorXd degrees(const Graph& g);

// Edge-list ingestion: one edge per line "u v w" (w optional, default 1.0),
// 0-based ids, '#' comment lines ignored.
Graph load_graph(const std::string& path);

// Optional per-vertex coordinate file, "x y" per line.
std::vector<std::array<double, 2>> load_coords(const std::string& path, int n);

enum class GraphKind { ring, path, comet, random_sensor, random_bipartite };

struct GraphParams {
    int n = 0;
    // comet: star of `head` leaves attached to a path tail of n - head vertices
    int head = 0;
    // random_sensor: Gaussian kernel of Euclidean distance, cut at radius
    double radius = 0.3;
    // random_bipartite: part sizes and cross-edge probability
    int part_a = 0;
    int part_b = 0;
    double edge_prob = 0.3;
};

GraphKind parse_graph_kind(const std::string& name);

// Deterministic for a fixed seed. Random families retry (bounded) until the
// sample is connected.
Graph generate_graph(GraphKind kind, const GraphParams& params, std::uint64_t seed);

// Degree-normalized view: a_sym = D^{-1/2} W D^{-1/2}, spectrum in [-1, 1].
struct NormalizedGraph {
    Graph graph;
    Eigen::VectorXd deg;
    Eigen::MatrixXd a_sym;
};

NormalizedGraph normalize(const Graph& g);

}  // namespace gwfb
