#include "pstcube/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace pstcube {

namespace {

constexpr int kMaxDimension = 16;          // 2^16 vertices, edge-map storage
constexpr std::size_t kDenseCap = 4096;    // dense matrix materialization cap

void check_dimension(int n) {
    if (n < 1 || n > kMaxDimension)
        throw std::invalid_argument("hypercube dimension must be in [1, 16], got " +
                                    std::to_string(n));
}

}  // namespace

VertexLabel VertexLabel::from_index(int n, std::uint32_t index) {
    check_dimension(n);
    if (index >= (std::uint32_t{1} << n))
        throw std::invalid_argument("vertex index " + std::to_string(index) +
                                    " out of range for dimension " + std::to_string(n));
    return VertexLabel{n, index};
}

VertexLabel VertexLabel::from_bits(const std::vector<int>& bits) {
    check_dimension(static_cast<int>(bits.size()));
    std::uint32_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("vertex bits must be 0 or 1");
        index = (index << 1) | static_cast<std::uint32_t>(b);
    }
    return VertexLabel{static_cast<int>(bits.size()), index};
}

VertexLabel VertexLabel::parse(int n, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty vertex label");
    const bool bitstring =
        text.size() == static_cast<std::size_t>(n) &&
        std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; });
    if (bitstring) {
        std::vector<int> bits;
        bits.reserve(text.size());
        for (char c : text) bits.push_back(c - '0');
        return from_bits(bits);
    }
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("vertex label '" + text +
                                    "' is neither a bit string of length " + std::to_string(n) +
                                    " nor an integer");
    }
    if (pos != text.size())
        throw std::invalid_argument("trailing characters in vertex label '" + text + "'");
    return from_index(n, static_cast<std::uint32_t>(value));
}

int VertexLabel::bit(int position) const {
    if (position < 1 || position > n)
        throw std::out_of_range("bit position " + std::to_string(position) +
                                " out of range [1, " + std::to_string(n) + "]");
    return static_cast<int>((index >> (n - position)) & 1u);
}

std::string VertexLabel::to_string() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int p = 1; p <= n; ++p)
        if (bit(p)) s[static_cast<std::size_t>(p - 1)] = '1';
    return s;
}

int hamming_distance(const VertexLabel& x, const VertexLabel& y) {
    if (x.n != y.n)
        throw std::invalid_argument("hamming_distance: label lengths differ (" +
                                    std::to_string(x.n) + " vs " + std::to_string(y.n) + ")");
    return std::popcount(x.index ^ y.index);
}

WeightedGraph::WeightedGraph(std::size_t num_vertices) : num_vertices_(num_vertices) {
    if (num_vertices == 0) throw std::invalid_argument("graph needs at least one vertex");
}

double WeightedGraph::weight(Vertex i, Vertex j) const {
    if (i == j) return 0.0;
    auto it = weights_.find({std::min(i, j), std::max(i, j)});
    return it == weights_.end() ? 0.0 : it->second;
}

void WeightedGraph::set_weight(Vertex i, Vertex j, double w) {
    if (i >= num_vertices_ || j >= num_vertices_)
        throw std::out_of_range("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    const std::pair<Vertex, Vertex> key{std::min(i, j), std::max(i, j)};
    if (w == 0.0)
        weights_.erase(key);
    else
        weights_[key] = w;
}

double WeightedGraph::degree(Vertex i) const {
    double d = 0.0;
    for (const auto& [e, w] : weights_)
        if (e.first == i || e.second == i) d += w;
    return d;
}

Eigen::MatrixXd WeightedGraph::adjacency_matrix() const {
    if (num_vertices_ > kDenseCap)
        throw std::invalid_argument("graph too large for a dense matrix (" +
                                    std::to_string(num_vertices_) + " vertices)");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_vertices_),
                                              static_cast<Eigen::Index>(num_vertices_));
    for (const auto& [e, w] : weights_) {
        a(e.first, e.second) = w;
        a(e.second, e.first) = w;
    }
    return a;
}

Eigen::MatrixXd WeightedGraph::laplacian_matrix() const {
    Eigen::MatrixXd l = -adjacency_matrix();
    for (Eigen::Index i = 0; i < l.rows(); ++i) l(i, i) = -l.row(i).sum();
    return l;
}

WeightedGraph make_hypercube(int n) {
    check_dimension(n);
    const std::uint32_t count = std::uint32_t{1} << n;
    WeightedGraph g(count);
    for (std::uint32_t v = 0; v < count; ++v)
        for (int b = 0; b < n; ++b) {
            const std::uint32_t u = v ^ (std::uint32_t{1} << b);
            if (u > v) g.set_weight(v, u, 1.0);
        }
    std::vector<VertexLabel> labels;
    labels.reserve(count);
    for (std::uint32_t v = 0; v < count; ++v) labels.push_back(VertexLabel::from_index(n, v));
    g.labels = std::move(labels);
    return g;
}

WeightedGraph make_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs at least one vertex");
    WeightedGraph g(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i)
        g.set_weight(static_cast<Vertex>(i), static_cast<Vertex>(i + 1), 1.0);
    return g;
}

WeightedGraph cartesian_product(const WeightedGraph& g1, const WeightedGraph& g2) {
    const std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
    WeightedGraph g(n1 * n2);
    for (std::size_t u = 0; u < n1; ++u)
        for (const auto& [e, w] : g2.edges())
            g.set_weight(static_cast<Vertex>(u * n2 + e.first),
                         static_cast<Vertex>(u * n2 + e.second), w);
    for (const auto& [e, w] : g1.edges())
        for (std::size_t v = 0; v < n2; ++v)
            g.set_weight(static_cast<Vertex>(e.first * n2 + v),
                         static_cast<Vertex>(e.second * n2 + v), w);
    return g;
}

bool SubcubeSpec::contains(Vertex v) const {
    for (const auto& [pos, bit] : fixed_positions)
        if (static_cast<int>((v >> (ambient_n - pos)) & 1u) != bit) return false;
    return true;
}

SubcubeSpec induced_subcube(const VertexLabel& x, const VertexLabel& y) {
    if (x.n != y.n) throw std::invalid_argument("induced_subcube: label lengths differ");
    if (x == y)
        throw std::invalid_argument("induced_subcube: endpoints coincide; a transfer "
                                    "needs a pair of distinct vertices");
    SubcubeSpec spec;
    spec.ambient_n = x.n;
    spec.x = x;
    spec.y = y;
    for (int p = 1; p <= x.n; ++p) {
        if (x.bit(p) == y.bit(p))
            spec.fixed_positions.emplace_back(p, x.bit(p));
        else
            spec.free_positions.push_back(p);
    }
    spec.d = static_cast<int>(spec.free_positions.size());

    // Enumerate V_d: all assignments of the free positions, fixed bits from x.
    std::uint32_t base = 0;
    for (const auto& [pos, bit] : spec.fixed_positions)
        if (bit) base |= std::uint32_t{1} << (x.n - pos);
    const std::uint32_t combos = std::uint32_t{1} << spec.d;
    spec.vertices.reserve(combos);
    for (std::uint32_t m = 0; m < combos; ++m) {
        std::uint32_t v = base;
        for (int k = 0; k < spec.d; ++k)
            if ((m >> (spec.d - 1 - k)) & 1u)
                v |= std::uint32_t{1} << (x.n - spec.free_positions[static_cast<std::size_t>(k)]);
        spec.vertices.push_back(VertexLabel::from_index(x.n, v));
    }
    std::sort(spec.vertices.begin(), spec.vertices.end(),
              [](const VertexLabel& a, const VertexLabel& b) { return a.index < b.index; });
    return spec;
}

MemoryRegister::MemoryRegister(int n_) : n(n_) { check_dimension(n_); }

VertexLabel MemoryRegister::word(std::uint32_t k) const { return VertexLabel::from_index(n, k); }

std::vector<Vertex> memory_select(const MemoryRegister& reg,
                                  const std::vector<int>& fixed_positions,
                                  const std::vector<int>& pattern) {
    if (fixed_positions.size() != pattern.size())
        throw std::invalid_argument("memory_select: pattern length must match the "
                                    "number of fixed positions");
    for (int pos : fixed_positions)
        if (pos < 1 || pos > reg.n)
            throw std::out_of_range("memory_select: position " + std::to_string(pos) +
                                    " out of range [1, " + std::to_string(reg.n) + "]");
    std::vector<Vertex> out;
    for (std::uint32_t k = 0; k < reg.size(); ++k) {
        const VertexLabel w = reg.word(k);
        bool match = true;
        for (std::size_t p = 0; p < fixed_positions.size(); ++p)
            if (w.bit(fixed_positions[p]) != pattern[p]) {
                match = false;
                break;
            }
        if (match) out.push_back(k);
    }
    return out;
}

WeightedGraph apply_switching(const WeightedGraph& ambient, const SubcubeSpec& spec) {
    if (ambient.num_vertices() != (std::size_t{1} << spec.ambient_n))
        throw std::invalid_argument("apply_switching: graph has " +
                                    std::to_string(ambient.num_vertices()) +
                                    " vertices but the subcube selection expects 2^" +
                                    std::to_string(spec.ambient_n));
    WeightedGraph switched(ambient.num_vertices());
    switched.labels = ambient.labels;
    for (const auto& [e, w] : ambient.edges())
        if (spec.contains(e.first) && spec.contains(e.second))
            switched.set_weight(e.first, e.second, w);
    return switched;
}

bool verify_block_structure(const WeightedGraph& switched, const SubcubeSpec& spec) {
    if (switched.num_vertices() != (std::size_t{1} << spec.ambient_n)) return false;

    // Off-block and isolated-block entries must be exactly zero: every edge
    // must live inside V_d.
    for (const auto& [e, w] : switched.edges()) {
        (void)w;
        if (!spec.contains(e.first) || !spec.contains(e.second)) return false;
    }

    // Relabel V_d by its free-position bits and compare against a standard
    // d-hypercube: weight 1 exactly on Hamming-distance-1 pairs.
    const auto sub_index = [&spec](std::uint32_t v) {
        std::uint32_t s = 0;
        for (int k = 0; k < spec.d; ++k) {
            const int pos = spec.free_positions[static_cast<std::size_t>(k)];
            s = (s << 1) | ((v >> (spec.ambient_n - pos)) & 1u);
        }
        return s;
    };
    for (std::size_t a = 0; a < spec.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < spec.vertices.size(); ++b) {
            const std::uint32_t va = spec.vertices[a].index, vb = spec.vertices[b].index;
            const double w = switched.weight(va, vb);
            const bool adjacent = std::popcount(sub_index(va) ^ sub_index(vb)) == 1;
            if (adjacent ? (w != 1.0) : (w != 0.0)) return false;
        }
    return true;
}

}  // namespace pstcube
