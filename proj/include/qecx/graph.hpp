#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qecx/pauli.hpp"

namespace qecx {

/* Simple undirected graph on integer vertex labels.  Qubit index of a label
   is its position in the sorted label list; adjacency is kept per vertex as a
   GF(2) neighbor row over those indices. */
struct Graph {
    std::vector<int> labels;              // sorted, unique
    std::vector<BinaryVector> adj;        // adj[i].get(j): edge between labels[i], labels[j]

    Graph() = default;
    explicit Graph(std::vector<int> verts) : labels(std::move(verts)) {
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            throw std::invalid_argument("Graph: duplicate vertex label");
        adj.assign(labels.size(), BinaryVector(labels.size()));
    }

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(int label) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        if (it == labels.end() || *it != label)
            throw std::invalid_argument("Graph: unknown vertex " + std::to_string(label));
        return std::size_t(it - labels.begin());
    }

    void add_edge(int a, int b) {
        std::size_t i = index_of(a), j = index_of(b);
        if (i == j) throw std::invalid_argument("Graph: self-loop rejected");
        adj[i].set(j);
        adj[j].set(i);
    }
    bool has_edge(int a, int b) const {
        std::size_t i = index_of(a), j = index_of(b);
        return i != j && adj[i].get(j);
    }

    /* Sorted list of label pairs (a < b within each pair, lexicographic). */
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (adj[i].get(j)) e.emplace_back(labels[i], labels[j]);
        return e;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.labels == b.labels && a.adj == b.adj;
    }
};

/* Bijection on vertex labels; labels absent from the map are fixed points. */
struct PermutationMap {
    std::map<int, int> mapping;

    PermutationMap() = default;
    /* From a list of disjoint transposition pairs, e.g. {{1,4},{2,3}}. */
    static PermutationMap from_swaps(const std::vector<std::pair<int, int>>& swaps) {
        PermutationMap p;
        for (auto [a, b] : swaps) {
            if (a == b || p.mapping.count(a) || p.mapping.count(b))
                throw std::invalid_argument("PermutationMap: overlapping swaps");
            p.mapping[a] = b;
            p.mapping[b] = a;
        }
        return p;
    }

    int apply(int label) const {
        auto it = mapping.find(label);
        return it == mapping.end() ? label : it->second;
    }
    std::set<int> apply(const std::set<int>& s) const {
        std::set<int> out;
        for (int v : s) out.insert(apply(v));
        return out;
    }
    /* this o other (apply other first). */
    PermutationMap compose(const PermutationMap& other) const {
        PermutationMap r;
        std::set<int> domain;
        for (auto& [k, v] : mapping) { domain.insert(k); (void)v; }
        for (auto& [k, v] : other.mapping) { domain.insert(k); (void)v; }
        for (int k : domain) {
            int img = apply(other.apply(k));
            if (img != k) r.mapping[k] = img;
        }
        r.validate();
        return r;
    }
    bool is_identity() const { return mapping.empty(); }

    void validate() const {
        std::set<int> images;
        for (auto& [k, v] : mapping) {
            (void)k;
            if (!images.insert(v).second)
                throw std::invalid_argument("PermutationMap: not a bijection");
        }
        for (auto& [k, v] : mapping)
            if (v != k && !mapping.count(v))
                throw std::invalid_argument("PermutationMap: image outside domain");
    }

    friend bool operator<(const PermutationMap& a, const PermutationMap& b) {
        return a.mapping < b.mapping;
    }
    friend bool operator==(const PermutationMap& a, const PermutationMap& b) {
        return a.mapping == b.mapping;
    }
};

/* Vertices 1..n, edges {i, i+1} and {n, 1}. */
inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<int> verts;
    for (int i = 1; i <= n; ++i) verts.push_back(i);
    Graph g(std::move(verts));
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    g.add_edge(n, 1);
    return g;
}

inline bool is_automorphism(const Graph& g, const PermutationMap& perm) {
    for (auto& [k, v] : perm.mapping) {
        (void)v;
        g.index_of(k);  // throws on domain mismatch
    }
    for (auto [a, b] : g.edges())
        if (!g.has_edge(perm.apply(a), perm.apply(b))) return false;
    // permutations preserve edge count, so edge->edge implies the converse
    return true;
}

/* Orbit partition of all C(|V|,2) unordered vertex pairs under a permutation
   group given by any generating set (closed internally).  Orbits and their
   members come out sorted. */
inline std::vector<std::vector<std::pair<int, int>>> edge_orbits(
        const std::vector<int>& vertices, const std::vector<PermutationMap>& group) {
    std::set<PermutationMap> closed{PermutationMap()};
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<PermutationMap> cur(closed.begin(), closed.end());
        for (const auto& a : cur)
            for (const auto& g : group)
                if (closed.insert(g.compose(a)).second) grew = true;
    }
    std::vector<int> vs(vertices);
    std::sort(vs.begin(), vs.end());
    auto norm = [](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<std::pair<int, int>>> orbits;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            auto p = norm(vs[i], vs[j]);
            if (seen.count(p)) continue;
            std::set<std::pair<int, int>> orbit;
            for (const auto& g : closed)
                orbit.insert(norm(g.apply(p.first), g.apply(p.second)));
            for (auto& q : orbit) seen.insert(q);
            orbits.emplace_back(orbit.begin(), orbit.end());
        }
    return orbits;
}

/* Standard graph-state stabilizer X_v Z_N(v) (equals U_G X_v U_G). */
inline PauliOperator graph_state_stabilizer(const Graph& g, int v) {
    std::size_t i = g.index_of(v);
    BinaryVector x(g.size()), z = g.adj[i];
    x.set(i);
    return PauliOperator(g.size(), x, z, 0);
}

}  // namespace qecx
