#pragma once

#include <array>
#include <bit>
#include <bitset>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecx/dense.hpp"
#include "qecx/graph.hpp"
#include "qecx/kl.hpp"
#include "qecx/parallel.hpp"
#include "qecx/pauli_sum.hpp"

namespace qecx {

/* Seed codes of the two families: a ((9,12,3)) code built on the 9-cycle
   graph and a ((10,24,3)) code built on a 10-vertex graph that is itself
   recovered by exhaustive search over symmetry-respecting candidates. */

struct SmallCode {
    Graph graph;
    std::vector<std::string> names;          // six observable tags
    std::vector<PauliSum> sums;              // symbolic forms, same order
    std::vector<DenseOperator> observables;  // dense forms, same order
    DenseOperator projector;
    int declared_dimension = 0;
    std::map<std::string, PauliSum> products;  // extra named products (A_0)

    /* Look up an observable (or named product) by tag. */
    const PauliSum& named(const std::string& tag) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == tag) return sums[i];
        auto it = products.find(tag);
        if (it != products.end()) return it->second;
        throw std::invalid_argument("SmallCode: unknown observable tag " + tag);
    }
};

/* Involution negating the joint -1 eigenspace of X_a and X_b:
   (1 + X_a + X_b - X_a X_b) / 2. */
inline PauliSum v_sum(std::size_t n, std::size_t qa, std::size_t qb) {
    if (qa == qb || qa >= n || qb >= n)
        throw std::invalid_argument("v_sum: bad qubit pair");
    PauliSum s(n);
    DyadicComplex h = DyadicComplex::half_pow(1);
    std::uint64_t a = std::uint64_t(1) << qa, b = std::uint64_t(1) << qb;
    s.add_term(0, 0, h);
    s.add_term(a, 0, h);
    s.add_term(b, 0, h);
    s.add_term(a | b, 0, -h);
    return s;
}

namespace detail {

/* X on the qubits carrying the given vertex labels. */
inline PauliSum x_sum(const Graph& g, const std::vector<int>& labels) {
    std::vector<std::size_t> qs;
    for (int l : labels) qs.push_back(g.index_of(l));
    return PauliSum::from_pauli(PauliOperator::x_set(g.size(), qs));
}

/* Shared tail: realize dense forms, build the projector and check its trace. */
inline SmallCode finish_small_code(Graph g, std::vector<std::string> names,
                                   std::vector<PauliSum> sums, int dim) {
    SmallCode c;
    c.graph = std::move(g);
    c.names = std::move(names);
    c.sums = std::move(sums);
    for (const auto& s : c.sums) c.observables.push_back(s.to_dense());
    c.projector = projector_from_involutions(c.observables);
    c.declared_dimension = dim;
    DyadicComplex tr = c.projector.trace();
    if (tr != DyadicComplex(dim))
        throw std::logic_error("small code projector trace " + tr.str() +
                               ", expected " + std::to_string(dim));
    return c;
}

}  // namespace detail

/* The ((9,12,3)) code.  All six observables are conjugations by the edge
   layer of the 9-cycle: three X-pair involutions and three X-set times
   v-factor involutions. */
inline SmallCode build_code9() {
    Graph g = cycle_graph(9);
    auto q = [&](int l) { return g.index_of(l); };
    auto obs = [&](std::vector<int> xlabels) {
        return conj_ug(detail::x_sum(g, xlabels), g);
    };
    auto obs_v = [&](std::vector<int> xlabels, int va, int vb) {
        return conj_ug(detail::x_sum(g, xlabels) * v_sum(9, q(va), q(vb)), g);
    };
    std::vector<PauliSum> sums = {
        obs({3, 8}),
        obs({6, 2}),
        obs({9, 5}),
        obs_v({4, 7, 3, 6, 9}, 6, 9),
        obs_v({1, 7, 3, 6}, 3, 9),
        obs_v({1, 4, 3, 9}, 3, 6),
    };
    SmallCode c = detail::finish_small_code(
        std::move(g), {"alpha_1", "alpha_2", "alpha_3", "A_1", "A_2", "A_3"},
        std::move(sums), 12);
    c.products.emplace("A_0", c.sums[3] * c.sums[4] * c.sums[5]);
    return c;
}

/* The two commuting symmetries of the 10-vertex graph, on labels 0..9. */
inline PermutationMap perm_pi() {
    return PermutationMap::from_swaps({{1, 4}, {2, 3}, {6, 9}, {7, 8}});
}
inline PermutationMap perm_tau() {
    return PermutationMap::from_swaps({{1, 2}, {3, 4}, {6, 7}, {8, 9}});
}

/* The 24 vertex subsets indexing the basis codewords Z_C |G>.  Entry
   ((i-1)*2 + mu)*2 + nu holds C^i_(mu,nu) for i = 1..6, mu, nu in {0,1}. */
struct CodewordSet {
    std::vector<std::set<int>> subsets;
};

inline std::set<int> sym_diff(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out = a;
    for (int x : b) {
        auto [it, inserted] = out.insert(x);
        if (!inserted) out.erase(it);
    }
    return out;
}

inline CodewordSet codeword_subsets() {
    const PermutationMap pi = perm_pi(), tau = perm_tau();
    const std::set<int> A{0, 2, 3}, B{5, 1, 2};
    const std::vector<std::set<int>> C = {
        {},           {1, 2, 3, 9},    {1, 2, 7, 8},
        {1, 2, 6, 7, 9}, {1, 3, 7, 8, 9}, {1, 3, 4, 6, 7, 9}};
    CodewordSet out;
    for (int i = 0; i < 6; ++i)
        for (int mu = 0; mu <= 1; ++mu)
            for (int nu = 0; nu <= 1; ++nu) {
                std::set<int> s = C[std::size_t(i)];
                if (nu) s = tau.apply(s);
                if (mu) s = pi.apply(s);
                if (nu) s = sym_diff(s, B);
                if (mu) s = sym_diff(s, nu ? tau.apply(A) : A);
                out.subsets.push_back(std::move(s));
            }
    std::set<std::set<int>> uniq(out.subsets.begin(), out.subsets.end());
    if (uniq.size() != 24)
        throw std::logic_error("codeword_subsets: expected 24 distinct subsets, got " +
                               std::to_string(uniq.size()));
    return out;
}

namespace detail {

/* Operator diagonal in the graph basis with the given +-1 eigenvalue per
   basis subset (bit l of the index is vertex label l's qubit): Fourier
   transform of the table as an X-type sum conjugated by the edge layer. */
inline PauliSum diagonal_sum(const Graph& g, const std::array<int, 1024>& f) {
    PauliSum s(10);
    for (std::uint32_t m = 0; m < 1024; ++m) {
        long acc = 0;
        for (std::uint32_t c = 0; c < 1024; ++c)
            acc += (std::popcount(m & c) & 1u) ? -f[c] : f[c];
        if (acc) s.add_term(m, 0, DyadicComplex(Int(acc), Int(0), 10));
    }
    return conj_ug(s, g);
}

}  // namespace detail

/* The ((10,24,3)) code on a given 10-vertex graph.  Translating the 24-word
   basis by Z on any subset of the qubits {0,1,2,6,7} gives 32 pairwise
   disjoint copies covering 768 of the 1024 basis subsets (that is the
   lexicographically first coordinate set with this property).  All six
   observables are diagonal in the graph basis: the five traceless ones read
   off one translate coordinate each (eigenvalue (-1)^{t_k} on the copy
   displaced by t), and B_0 is the indicator of the cover (trace 2^9).  The
   joint +1 eigenspace is exactly the codeword span, and conjugating by a
   displacing Z operator maps the family to itself up to the matching signs,
   so every joint sign sector of the five traceless observables is a Pauli
   translate of the code space.  The pasted-code purity sweep rests on that
   covariance. */
inline SmallCode build_code10(const Graph& g) {
    std::vector<int> want;
    for (int i = 0; i < 10; ++i) want.push_back(i);
    if (g.labels != want)
        throw std::invalid_argument("build_code10: vertices must be labeled 0..9");
    if (!is_automorphism(g, perm_pi()) || !is_automorphism(g, perm_tau()))
        throw std::invalid_argument("build_code10: graph must admit both symmetries");

    auto q = [&](int l) { return g.index_of(l); };
    CodewordSet cw0 = codeword_subsets();
    std::array<std::uint16_t, 24> words{};
    for (std::size_t i = 0; i < 24; ++i)
        for (int l : cw0.subsets[i]) words[i] ^= std::uint16_t(1u << q(l));

    const std::array<int, 5> shift_labels = {0, 1, 2, 6, 7};
    std::array<std::uint16_t, 32> tmask{};
    for (unsigned t = 0; t < 32; ++t)
        for (unsigned k = 0; k < 5; ++k)
            if ((t >> k) & 1u) tmask[t] |= std::uint16_t(1u << q(shift_labels[k]));

    std::array<int, 1024> coord{};
    std::array<bool, 1024> cover{};
    coord.fill(-1);
    for (std::uint16_t w : words)
        for (unsigned t = 0; t < 32; ++t) {
            std::uint16_t c = std::uint16_t(w ^ tmask[t]);
            if (coord[std::size_t(c)] != -1)
                throw std::logic_error("build_code10: codeword translates collide");
            coord[std::size_t(c)] = int(t);
            cover[std::size_t(c)] = true;
        }
    for (std::size_t c = 0; c < 1024; ++c)  // coordinates on the 8 uncovered
        if (coord[c] == -1)                 // orbits, anchored at the orbit min
            for (unsigned t = 0; t < 32; ++t)
                coord[c ^ tmask[t]] = int(t);

    std::array<std::array<int, 1024>, 6> table{};
    for (std::size_t c = 0; c < 1024; ++c) {
        for (unsigned k = 0; k < 5; ++k)
            table[k][c] = ((unsigned(coord[c]) >> k) & 1u) ? -1 : 1;
        table[5][c] = cover[c] ? 1 : -1;
    }
    std::vector<PauliSum> sums = {
        detail::diagonal_sum(g, table[0]),
        detail::diagonal_sum(g, table[1]),
        detail::diagonal_sum(g, table[2]),
        detail::diagonal_sum(g, table[5]),
        detail::diagonal_sum(g, table[3]),
        detail::diagonal_sum(g, table[4]),
    };
    SmallCode c = detail::finish_small_code(
        g, {"beta_1", "beta_2", "beta_3", "B_0", "B_1", "B_2"}, std::move(sums), 24);

    StateVector base = StateVector::graph_state_signs(g);
    for (std::size_t idx = 0; idx < cw0.subsets.size(); ++idx) {
        StateVector v = base;
        v.apply_z_subset(g, cw0.subsets[idx]);
        for (std::size_t j = 0; j < c.sums.size(); ++j)
            if (!(apply(c.sums[j], v) == v))
                throw std::logic_error(
                    "build_code10: codeword i=" + std::to_string(idx / 4 + 1) +
                    " mu=" + std::to_string((idx / 2) % 2) +
                    " nu=" + std::to_string(idx % 2) + " not stabilized by " +
                    c.names[j]);
    }
    return c;
}

/* --- graph recovery ------------------------------------------------------ */

struct RecoverySolution {
    std::uint32_t orbit_mask = 0;
    Graph graph;
};

struct RecoveryReport {
    std::vector<std::vector<std::pair<int, int>>> orbits;  // canonical order
    std::size_t candidates_tested = 0;
    std::vector<RecoverySolution> solutions;  // ascending orbit_mask
    Graph chosen;                             // solutions.front(), fully validated
};

namespace detail {

/* For every candidate graph G the span of the 24 codewords Z_C |G> equals
   the range of the projector: the codewords are stabilized for any graph
   (the graph's edge layer cancels against the one inside the encoding
   operator), the projector trace is graph-independently 24, and distinct
   subsets C give orthogonal codewords.  A weight <= 2 sweep over the span is
   therefore decisive, and on graph-basis states it is combinatorial:

       <c_i| X^x Z^z |c_j>  =  +-2^10 [ N(x) ^ z ^ C_i ^ C_j = 0 ]

   where N(x) is the XOR of adjacency rows over the support of x (X on a
   vertex acts on |G> as Z on its neighborhood).  So a candidate passes the
   purity sweep exactly when N(x) ^ z avoids every pairwise difference
   C_i ^ C_j, including the empty difference. */
struct RecoveryTables {
    std::bitset<1024> diff;                          // {C_i ^ C_j}
    std::vector<std::array<std::uint16_t, 10>> row_delta;  // per-orbit adjacency rows
    std::vector<std::pair<std::uint16_t, std::uint16_t>> errors;  // (x, z) masks
};

inline RecoveryTables recovery_tables(
        const std::vector<std::vector<std::pair<int, int>>>& orbits) {
    RecoveryTables t;
    CodewordSet cw = codeword_subsets();
    std::array<std::uint16_t, 24> cmask{};
    for (std::size_t i = 0; i < 24; ++i)
        for (int l : cw.subsets[i]) cmask[i] ^= std::uint16_t(1u << l);
    for (std::size_t i = 0; i < 24; ++i)
        for (std::size_t j = i; j < 24; ++j) t.diff.set(cmask[i] ^ cmask[j]);
    for (const auto& orbit : orbits) {
        std::array<std::uint16_t, 10> d{};
        for (auto [a, b] : orbit) {
            d[std::size_t(a)] ^= std::uint16_t(1u << b);
            d[std::size_t(b)] ^= std::uint16_t(1u << a);
        }
        t.row_delta.push_back(d);
    }
    for (const auto& e : enumerate_errors(10, 2))
        t.errors.emplace_back(std::uint16_t(low_word(e.x)), std::uint16_t(low_word(e.z)));
    return t;
}

inline bool candidate_passes(const RecoveryTables& t, std::uint32_t mask) {
    std::array<std::uint16_t, 10> row{};
    for (std::size_t k = 0; k < t.row_delta.size(); ++k)
        if ((mask >> k) & 1u)
            for (std::size_t v = 0; v < 10; ++v) row[v] ^= t.row_delta[k][v];
    for (auto [x, z] : t.errors) {
        std::uint16_t nb = z;
        for (std::uint16_t w = x; w;) {
            unsigned v = unsigned(std::countr_zero(w));
            nb ^= row[v];
            w &= std::uint16_t(w - 1);
        }
        if (t.diff[nb]) return false;
    }
    return true;
}

}  // namespace detail

/* Exhaustive search over all graphs on vertices 0..9 built from whole edge
   orbits of the two symmetries (one bit per orbit, ascending bitmask is the
   canonical candidate order).  Returns every candidate passing the weight
   <= 2 purity sweep; the smallest one is then rebuilt densely and put
   through the full independent check. */
inline RecoveryReport recover_graph10_report(unsigned threads = 1) {
    RecoveryReport rep;
    std::vector<int> verts;
    for (int i = 0; i < 10; ++i) verts.push_back(i);
    rep.orbits = edge_orbits(verts, {perm_pi(), perm_tau()});
    if (rep.orbits.size() >= 25)
        throw std::logic_error("recover_graph10: orbit count out of range");
    const std::size_t total = std::size_t(1) << rep.orbits.size();
    rep.candidates_tested = total;
    detail::RecoveryTables tables = detail::recovery_tables(rep.orbits);

    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    if (std::size_t(nthreads) > total) nthreads = unsigned(total);
    std::vector<std::vector<std::uint32_t>> hits(nthreads);
    parallel_chunks(total, threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        for (std::size_t m = begin; m < end; ++m)
                            if (detail::candidate_passes(tables, std::uint32_t(m)))
                                hits[chunk].push_back(std::uint32_t(m));
                    });
    std::vector<std::uint32_t> masks;
    for (const auto& h : hits) masks.insert(masks.end(), h.begin(), h.end());
    std::sort(masks.begin(), masks.end());
    for (std::uint32_t m : masks) {
        Graph g(verts);
        for (std::size_t k = 0; k < rep.orbits.size(); ++k)
            if ((m >> k) & 1u)
                for (auto [a, b] : rep.orbits[k]) g.add_edge(a, b);
        rep.solutions.push_back({m, std::move(g)});
    }
    if (rep.solutions.empty())
        throw std::runtime_error(
            "recover_graph10: exhaustive search found no graph; "
            "a transcribed constant upstream must be wrong");

    rep.chosen = rep.solutions.front().graph;
    SmallCode code = build_code10(rep.chosen);  // throws if any check fails
    KlReport kl = kl_check(code.projector, enumerate_errors(10, 2), threads);
    if (!kl.all_pass || !kl.pure)
        throw std::logic_error("recover_graph10: chosen graph failed the dense purity check");
    return rep;
}

inline Graph recover_graph10(unsigned threads = 1) {
    return recover_graph10_report(threads).chosen;
}

}  // namespace qecx
