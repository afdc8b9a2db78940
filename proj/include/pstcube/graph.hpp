#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pstcube {

using Vertex = std::uint32_t;

// Vertex of an n-dimensional hypercube, an n-tuple of bits. Position 1 is the
// most significant bit of the integer encoding, so the tuple (b1,...,bn) maps
// to the index b1*2^(n-1) + ... + bn.
struct VertexLabel {
    int n = 0;
    std::uint32_t index = 0;

    static VertexLabel from_index(int n, std::uint32_t index);
    static VertexLabel from_bits(const std::vector<int>& bits);
    // Accepts an n-character bit string ("0101") or a decimal integer.
    static VertexLabel parse(int n, const std::string& text);

    // 1-based position; position 1 = most significant bit.
    int bit(int position) const;
    std::string to_string() const;

    bool operator==(const VertexLabel& other) const = default;
};

int hamming_distance(const VertexLabel& x, const VertexLabel& y);

// Undirected graph with symmetric real edge weights and zero diagonal.
// Weights are dimensionless (units of the reference coupling).
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t num_vertices);

    std::size_t num_vertices() const { return num_vertices_; }
    std::size_t num_edges() const { return weights_.size(); }

    double weight(Vertex i, Vertex j) const;
    // Symmetric assignment; setting a weight to zero removes the edge.
    void set_weight(Vertex i, Vertex j, double w);

    // Edge map keyed by (min(i,j), max(i,j)); deterministic iteration order.
    const std::map<std::pair<Vertex, Vertex>, double>& edges() const { return weights_; }

    double degree(Vertex i) const;

    Eigen::MatrixXd adjacency_matrix() const;
    Eigen::MatrixXd laplacian_matrix() const;

    std::optional<std::vector<VertexLabel>> labels;

private:
    std::size_t num_vertices_ = 0;
    std::map<std::pair<Vertex, Vertex>, double> weights_;
};

// Unweighted hypercube Q_n: 2^n vertices, edge iff Hamming distance 1.
// 1 <= n <= 16.
WeightedGraph make_hypercube(int n);

// Path graph P_n on n vertices (dynamics test cases).
WeightedGraph make_path(int n);

// Cartesian product: vertices (u,v) with index u*|G2|+v; edges inherit weights.
WeightedGraph cartesian_product(const WeightedGraph& g1, const WeightedGraph& g2);

// The unique induced sub-hypercube in which a given vertex pair is antipodal:
// fix every position where the endpoints agree, free the rest.
struct SubcubeSpec {
    int ambient_n = 0;
    int d = 0;
    std::vector<std::pair<int, int>> fixed_positions;  // (1-based position, bit)
    std::vector<int> free_positions;                   // 1-based, ascending
    std::vector<VertexLabel> vertices;                 // 2^d entries, ascending index
    VertexLabel x, y;

    bool contains(Vertex v) const;
};

SubcubeSpec induced_subcube(const VertexLabel& x, const VertexLabel& y);

// Classical address memory: cell k stores the n-bit expansion of k.
struct MemoryRegister {
    int n = 0;

    explicit MemoryRegister(int n);
    std::size_t size() const { return std::size_t{1} << n; }
    VertexLabel word(std::uint32_t k) const;
};

// All vertex indices whose stored word matches `pattern` at `fixed_positions`
// (1-based). An empty position set matches everything.
std::vector<Vertex> memory_select(const MemoryRegister& reg,
                                  const std::vector<int>& fixed_positions,
                                  const std::vector<int>& pattern);

// Switching: zero out every coupling incident to a vertex outside the subcube.
// Vertex count is preserved; vertices outside V_d become isolated.
WeightedGraph apply_switching(const WeightedGraph& ambient, const SubcubeSpec& spec);

// True iff the switched adjacency is exactly block-diagonal with the subcube
// block first (after permutation) and that block is a standard d-hypercube
// under the free-position relabeling.
bool verify_block_structure(const WeightedGraph& switched, const SubcubeSpec& spec);

}  // namespace pstcube
