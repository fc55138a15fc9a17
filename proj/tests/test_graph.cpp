#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "qecx/graph.hpp"

using namespace qecx;

TEST_CASE("cycle graph") {
    Graph g = cycle_graph(9);
    auto e = g.edges();
    CHECK(e.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(g.adj[i].popcount() == 2);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(9, 1));
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK(cycle_graph(3).edges().size() == 3);
    CHECK_THROWS(cycle_graph(2));
}

TEST_CASE("cycle graph rotation symmetry") {
    Graph g = cycle_graph(9);
    PermutationMap rot;
    for (int i = 1; i <= 9; ++i) rot.mapping[i] = (i - 1 + 3) % 9 + 1;
    rot.validate();
    CHECK(is_automorphism(g, rot));
    CHECK(is_automorphism(g, PermutationMap()));
    // a lone transposition breaks the cycle
    CHECK_FALSE(is_automorphism(g, PermutationMap::from_swaps({{1, 2}})));
    // domain mismatch
    CHECK_THROWS(is_automorphism(g, PermutationMap::from_swaps({{1, 42}})));
}

TEST_CASE("permutation composition") {
    auto pi = PermutationMap::from_swaps({{1, 4}, {2, 3}, {6, 9}, {7, 8}});
    auto tau = PermutationMap::from_swaps({{1, 2}, {3, 4}, {6, 7}, {8, 9}});
    CHECK(pi.compose(pi).is_identity());
    CHECK(tau.compose(tau).is_identity());
    auto pt = pi.compose(tau);
    CHECK(pt.apply(1) == 3);  // tau: 1->2, pi: 2->3
    CHECK(pt.apply(0) == 0);
    CHECK(pt.apply(5) == 5);
    CHECK(pi.compose(tau) == tau.compose(pi).compose(PermutationMap()));
}

/* Independent brute-force orbit oracle: union-find over pairs, joining each
   pair with its image under each generator directly. */
static std::size_t orbit_count_oracle(const std::vector<int>& verts,
                                      const std::vector<PermutationMap>& gens) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            pairs.emplace_back(std::min(verts[i], verts[j]), std::max(verts[i], verts[j]));
    std::map<std::pair<int, int>, std::size_t> id;
    for (std::size_t k = 0; k < pairs.size(); ++k) id[pairs[k]] = k;
    std::vector<std::size_t> parent(pairs.size());
    for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = k;
    auto find = [&](std::size_t k) {
        while (parent[k] != k) k = parent[k] = parent[parent[k]];
        return k;
    };
    for (std::size_t k = 0; k < pairs.size(); ++k)
        for (const auto& g : gens) {
            int a = g.apply(pairs[k].first), b = g.apply(pairs[k].second);
            auto img = std::make_pair(std::min(a, b), std::max(a, b));
            std::size_t r1 = find(k), r2 = find(id.at(img));
            if (r1 != r2) parent[r1] = r2;
        }
    std::set<std::size_t> roots;
    for (std::size_t k = 0; k < parent.size(); ++k) roots.insert(find(k));
    return roots.size();
}

TEST_CASE("edge orbits") {
    std::vector<int> verts10;
    for (int v = 0; v <= 9; ++v) verts10.push_back(v);

    auto trivial = edge_orbits(verts10, {});
    CHECK(trivial.size() == 45);
    for (auto& orb : trivial) CHECK(orb.size() == 1);

    auto pi = PermutationMap::from_swaps({{1, 4}, {2, 3}, {6, 9}, {7, 8}});
    auto tau = PermutationMap::from_swaps({{1, 2}, {3, 4}, {6, 7}, {8, 9}});
    auto orbits = edge_orbits(verts10, {pi, tau});

    // {0,5} is fixed by both generators
    bool found05 = false;
    for (auto& orb : orbits)
        if (orb.size() == 1 && orb[0] == std::make_pair(0, 5)) found05 = true;
    CHECK(found05);

    // partition: disjoint and covering all 45 pairs
    std::set<std::pair<int, int>> all;
    std::size_t total = 0;
    for (auto& orb : orbits) {
        total += orb.size();
        for (auto& p : orb) CHECK(all.insert(p).second);
    }
    CHECK(total == 45);

    // closure under each generator
    for (auto& orb : orbits) {
        std::set<std::pair<int, int>> s(orb.begin(), orb.end());
        for (auto& p : orb)
            for (const auto* g : {&pi, &tau}) {
                int a = g->apply(p.first), b = g->apply(p.second);
                CHECK(s.count({std::min(a, b), std::max(a, b)}) == 1);
            }
    }

    std::size_t oracle = orbit_count_oracle(verts10, {pi, tau});
    CHECK(orbits.size() == oracle);
    CHECK(oracle >= 12);
    CHECK(oracle <= 45);
    // hand count: singleton {0,5}; 4 orbits joining 0/5 to the two 4-blocks;
    // 3 orbits inside each 4-block; 4 cross orbits between the 4-blocks
    CHECK(oracle == 15);
}

TEST_CASE("graph state stabilizers") {
    Graph edgeless(std::vector<int>{1, 2, 3});
    CHECK(graph_state_stabilizer(edgeless, 2) == PauliOperator::single(3, 1, 'X'));

    Graph g = cycle_graph(9);
    auto s1 = graph_state_stabilizer(g, 1);
    // label 1 -> qubit 0; neighbors 2, 9 -> qubits 1, 8
    CHECK(s1 == PauliOperator(9, BinaryVector::from_indices(9, {0}),
                              BinaryVector::from_indices(9, {1, 8}), 0));
    for (int v = 1; v <= 9; ++v)
        for (int u = 1; u <= 9; ++u)
            CHECK(commutes(graph_state_stabilizer(g, v), graph_state_stabilizer(g, u)));

    Graph pair_graph(std::vector<int>{4, 7});
    pair_graph.add_edge(4, 7);
    CHECK(graph_state_stabilizer(pair_graph, 4) ==
          PauliOperator(2, BinaryVector::from_indices(2, {0}), BinaryVector::from_indices(2, {1}), 0));
    CHECK_THROWS(graph_state_stabilizer(g, 10));
}
