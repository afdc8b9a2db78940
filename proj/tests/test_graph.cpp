#include <doctest.h>

#include <algorithm>
#include <bit>
#include <queue>
#include <set>
#include <vector>

#include "pstcube/graph.hpp"

using namespace pstcube;

namespace {

VertexLabel label(int n, std::uint32_t index) { return VertexLabel::from_index(n, index); }

// Enumeration oracle for the subcube vertex set: keep every vertex of Q_n that
// agrees with x wherever x and y agree.
std::set<std::uint32_t> subcube_oracle(const VertexLabel& x, const VertexLabel& y) {
    std::set<std::uint32_t> verts;
    for (std::uint32_t z = 0; z < (std::uint32_t{1} << x.n); ++z) {
        bool ok = true;
        for (int p = 1; p <= x.n; ++p)
            if (x.bit(p) == y.bit(p) && label(x.n, z).bit(p) != x.bit(p)) ok = false;
        if (ok) verts.insert(z);
    }
    return verts;
}

std::set<std::uint32_t> vertex_set(const SubcubeSpec& spec) {
    std::set<std::uint32_t> s;
    for (const auto& v : spec.vertices) s.insert(v.index);
    return s;
}

}  // namespace

TEST_CASE("vertex labels encode MSB-first") {
    const VertexLabel v = VertexLabel::from_bits({0, 1, 0, 1});
    CHECK(v.index == 5);
    CHECK(v.bit(1) == 0);
    CHECK(v.bit(2) == 1);
    CHECK(v.bit(4) == 1);
    CHECK(v.to_string() == "0101");
    CHECK(VertexLabel::parse(4, "0101") == v);
    CHECK(VertexLabel::parse(4, "5") == v);
    CHECK_THROWS_AS(VertexLabel::parse(4, "012x"), std::invalid_argument);
    CHECK_THROWS_AS(VertexLabel::parse(4, "16"), std::invalid_argument);
    CHECK_THROWS_AS(v.bit(0), std::out_of_range);
    CHECK_THROWS_AS(v.bit(5), std::out_of_range);
}

TEST_CASE("hamming distance") {
    CHECK(hamming_distance(label(4, 0b0000), label(4, 0b0101)) == 2);
    CHECK(hamming_distance(label(4, 7), label(4, 7)) == 0);
    CHECK(hamming_distance(label(4, 0b0000), label(4, 0b1111)) == 4);
    CHECK_THROWS_AS(hamming_distance(label(3, 0), label(4, 0)), std::invalid_argument);
}

TEST_CASE("hypercube construction") {
    const WeightedGraph k2 = make_hypercube(1);
    CHECK(k2.num_vertices() == 2);
    CHECK(k2.num_edges() == 1);

    const WeightedGraph q4 = make_hypercube(4);
    CHECK(q4.num_vertices() == 16);
    CHECK(q4.num_edges() == 32);

    const WeightedGraph q3 = make_hypercube(3);
    for (Vertex v = 0; v < 8; ++v) CHECK(q3.degree(v) == doctest::Approx(3.0));

    for (const auto& [e, w] : q4.edges()) {
        CHECK(w == 1.0);
        CHECK(std::popcount(e.first ^ e.second) == 1);
    }

    CHECK_THROWS_AS(make_hypercube(0), std::invalid_argument);
    CHECK_THROWS_AS(make_hypercube(17), std::invalid_argument);
}

TEST_CASE("graph construction guards") {
    WeightedGraph g(3);
    CHECK_THROWS_AS(g.set_weight(1, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.set_weight(0, 3, 1.0), std::out_of_range);
    CHECK_THROWS_AS(VertexLabel::from_bits({0, 2, 1}), std::invalid_argument);
    g.set_weight(0, 1, 0.5);
    g.set_weight(1, 0, 0.0);  // symmetric removal
    CHECK(g.num_edges() == 0);
    CHECK_THROWS_AS(make_hypercube(13).adjacency_matrix(), std::invalid_argument);
}

TEST_CASE("graph matrices") {
    const WeightedGraph q2 = make_hypercube(2);
    const Eigen::MatrixXd a = q2.adjacency_matrix();
    CHECK(a == a.transpose());
    CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXd l = q2.laplacian_matrix();
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(l.diagonal().minCoeff() == 2.0);
}

TEST_CASE("induced subcube matches the worked example") {
    const SubcubeSpec spec = induced_subcube(label(4, 0b0000), label(4, 0b0101));
    CHECK(spec.d == 2);
    CHECK(vertex_set(spec) == std::set<std::uint32_t>{0b0000, 0b0001, 0b0100, 0b0101});
    CHECK(spec.fixed_positions == std::vector<std::pair<int, int>>{{1, 0}, {3, 0}});
    CHECK(spec.free_positions == std::vector<int>{2, 4});
}

TEST_CASE("induced subcube edge cases") {
    const SubcubeSpec full = induced_subcube(label(3, 0), label(3, 7));
    CHECK(full.d == 3);
    CHECK(full.vertices.size() == 8);
    CHECK(full.fixed_positions.empty());

    const SubcubeSpec edge = induced_subcube(label(3, 0b000), label(3, 0b001));
    CHECK(edge.d == 1);
    CHECK(vertex_set(edge) == subcube_oracle(label(3, 0b000), label(3, 0b001)));
    CHECK(vertex_set(edge) == std::set<std::uint32_t>{0, 1});

    CHECK_THROWS_AS(induced_subcube(label(4, 3), label(4, 3)), std::invalid_argument);
}

TEST_CASE("subcube properties over all pairs up to n = 8") {
    for (int n = 1; n <= 8; ++n) {
        const std::uint32_t count = std::uint32_t{1} << n;
        for (std::uint32_t a = 0; a < count; ++a)
            for (std::uint32_t b = a + 1; b < count; ++b) {
                const VertexLabel x = label(n, a), y = label(n, b);
                const SubcubeSpec spec = induced_subcube(x, y);
                const int d = hamming_distance(x, y);
                REQUIRE(spec.d == d);
                REQUIRE(spec.vertices.size() == (std::size_t{1} << d));
                const auto verts = vertex_set(spec);
                REQUIRE(verts.count(a) == 1);
                REQUIRE(verts.count(b) == 1);

                // x and y antipodal inside the subcube: they differ on every
                // free position.
                for (int pos : spec.free_positions) REQUIRE(x.bit(pos) != y.bit(pos));

                // induced subgraph: d-regular and connected.
                std::vector<std::uint32_t> vs(verts.begin(), verts.end());
                std::vector<int> deg(vs.size(), 0);
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j)
                        if (std::popcount(vs[i] ^ vs[j]) == 1) {
                            ++deg[i];
                            ++deg[j];
                        }
                REQUIRE(std::all_of(deg.begin(), deg.end(),
                                    [d](int k) { return k == d; }));
                std::vector<bool> seen(vs.size(), false);
                std::queue<std::size_t> frontier;
                frontier.push(0);
                seen[0] = true;
                std::size_t reached = 1;
                while (!frontier.empty()) {
                    const std::size_t i = frontier.front();
                    frontier.pop();
                    for (std::size_t j = 0; j < vs.size(); ++j)
                        if (!seen[j] && std::popcount(vs[i] ^ vs[j]) == 1) {
                            seen[j] = true;
                            ++reached;
                            frontier.push(j);
                        }
                }
                REQUIRE(reached == vs.size());
            }
    }
}

TEST_CASE("subcube selection is symmetric in its endpoints") {
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = 0; b < 16; ++b) {
            if (a == b) continue;
            const SubcubeSpec xy = induced_subcube(label(4, a), label(4, b));
            const SubcubeSpec yx = induced_subcube(label(4, b), label(4, a));
            CHECK(vertex_set(xy) == vertex_set(yx));
            CHECK(xy.free_positions == yx.free_positions);
        }
}

TEST_CASE("memory select") {
    const MemoryRegister reg(4);
    CHECK(memory_select(reg, {1, 3}, {0, 0}) ==
          std::vector<Vertex>{0b0000, 0b0001, 0b0100, 0b0101});

    const auto everything = memory_select(reg, {}, {});
    CHECK(everything.size() == 16);

    const auto unique = memory_select(reg, {1, 2, 3, 4}, {1, 0, 1, 1});
    CHECK(unique == std::vector<Vertex>{0b1011});

    CHECK_THROWS_AS(memory_select(reg, {0}, {0}), std::out_of_range);
    CHECK_THROWS_AS(memory_select(reg, {5}, {0}), std::out_of_range);
    CHECK_THROWS_AS(memory_select(reg, {1, 2}, {0}), std::invalid_argument);
}

TEST_CASE("memory select agrees with subcube selection on every Q4 pair") {
    const MemoryRegister reg(4);
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = a + 1; b < 16; ++b) {
            const VertexLabel x = label(4, a), y = label(4, b);
            const SubcubeSpec spec = induced_subcube(x, y);
            std::vector<int> positions, pattern;
            for (const auto& [pos, bit] : spec.fixed_positions) {
                positions.push_back(pos);
                pattern.push_back(bit);
            }
            const auto selected = memory_select(reg, positions, pattern);
            const std::set<std::uint32_t> from_memory(selected.begin(), selected.end());
            CHECK(from_memory == vertex_set(spec));
        }
}

TEST_CASE("switching") {
    const WeightedGraph q4 = make_hypercube(4);
    const SubcubeSpec spec = induced_subcube(label(4, 0b0000), label(4, 0b0101));
    const WeightedGraph switched = apply_switching(q4, spec);

    CHECK(switched.num_vertices() == 16);
    CHECK(switched.num_edges() == 4);
    std::size_t isolated = 0;
    for (Vertex v = 0; v < 16; ++v)
        if (switched.degree(v) == 0.0) ++isolated;
    CHECK(isolated == 12);

    SUBCASE("full-cube spec leaves the graph unchanged") {
        const SubcubeSpec all = induced_subcube(label(4, 0), label(4, 15));
        const WeightedGraph same = apply_switching(q4, all);
        CHECK(same.edges() == q4.edges());
    }

    SUBCASE("d = 1 leaves a single edge") {
        const SubcubeSpec one = induced_subcube(label(4, 0), label(4, 1));
        CHECK(apply_switching(q4, one).num_edges() == 1);
    }

    SUBCASE("idempotence") {
        const WeightedGraph twice = apply_switching(switched, spec);
        CHECK(twice.edges() == switched.edges());
    }

    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(apply_switching(make_hypercube(3), spec), std::invalid_argument);
    }
}

TEST_CASE("block structure verification") {
    const WeightedGraph q4 = make_hypercube(4);
    const SubcubeSpec spec = induced_subcube(label(4, 0b0000), label(4, 0b0101));
    WeightedGraph switched = apply_switching(q4, spec);
    CHECK(verify_block_structure(switched, spec));

    SUBCASE("a leftover cross edge breaks the block form") {
        switched.set_weight(0b0000, 0b0010, 1.0);  // endpoint outside V_d
        CHECK_FALSE(verify_block_structure(switched, spec));
    }

    SUBCASE("a missing subcube edge breaks the block form") {
        switched.set_weight(0b0000, 0b0001, 0.0);
        CHECK_FALSE(verify_block_structure(switched, spec));
    }

    SUBCASE("full-dimension spec has an empty zero block") {
        const SubcubeSpec all = induced_subcube(label(4, 0), label(4, 15));
        CHECK(verify_block_structure(apply_switching(q4, all), all));
    }
}

TEST_CASE("path and cartesian product") {
    const WeightedGraph p3 = make_path(3);
    CHECK(p3.num_vertices() == 3);
    CHECK(p3.num_edges() == 2);

    const WeightedGraph grid = cartesian_product(p3, p3);
    CHECK(grid.num_vertices() == 9);
    CHECK(grid.num_edges() == 12);  // 2*3 + 3*2
    CHECK(grid.degree(4) == doctest::Approx(4.0));  // center of the 3x3 grid

    // Q2 is K2 x K2.
    const WeightedGraph q2 = cartesian_product(make_hypercube(1), make_hypercube(1));
    CHECK(q2.edges() == make_hypercube(2).edges());
}
