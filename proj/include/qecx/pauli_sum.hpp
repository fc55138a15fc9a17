#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "qecx/dense.hpp"
#include "qecx/dyadic.hpp"
#include "qecx/graph.hpp"
#include "qecx/pauli.hpp"

namespace qecx {

/* Exact linear combination  sum_(x,z) c_(x,z) W(x,z)  with W(x,z) = X^x Z^z
   (phase-free word; coefficients absorb all phases).  Keyed by packed masks,
   kept in a sorted map so iteration order is deterministic.  This is the
   symbolic workhorse for conjugating observables through the encoding layers
   and for blockwise trace evaluation. */
struct PauliSum {
    std::size_t n = 0;
    std::map<std::uint64_t, DyadicComplex> terms;

    PauliSum() = default;
    explicit PauliSum(std::size_t n_) : n(n_) {
        if (n_ > 31) throw std::invalid_argument("PauliSum: more than 31 qubits");
    }

    std::uint64_t key(std::uint64_t x, std::uint64_t z) const { return (x << 32) | z; }
    static std::uint64_t key_x(std::uint64_t k) { return k >> 32; }
    static std::uint64_t key_z(std::uint64_t k) { return k & 0xFFFFFFFFu; }

    void add_term(std::uint64_t x, std::uint64_t z, const DyadicComplex& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.try_emplace(key(x, z), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    static PauliSum from_pauli(const PauliOperator& p) {
        PauliSum s(p.n);
        s.add_term(low_word(p.x), low_word(p.z), DyadicComplex(1).times_phase(p.phase_exp));
        return s;
    }
    static PauliSum identity_sum(std::size_t n) {
        PauliSum s(n);
        s.add_term(0, 0, DyadicComplex(1));
        return s;
    }

    PauliSum& operator+=(const PauliSum& o) {
        check(o);
        for (auto& [k, c] : o.terms) add_term(key_x(k), key_z(k), c);
        return *this;
    }
    PauliSum& operator-=(const PauliSum& o) {
        check(o);
        for (auto& [k, c] : o.terms) add_term(key_x(k), key_z(k), -c);
        return *this;
    }
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }

    PauliSum scaled(const DyadicComplex& c) const {
        PauliSum r(n);
        if (c.is_zero()) return r;
        for (auto& [k, v] : terms) r.terms.emplace(k, v * c);
        return r;
    }

    /* W(x1,z1) W(x2,z2) = (-1)^{z1.x2} W(x1^x2, z1^z2). */
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
        a.check(b);
        PauliSum r(a.n);
        for (auto& [ka, ca] : a.terms)
            for (auto& [kb, cb] : b.terms) {
                std::uint64_t sign = std::uint64_t(std::popcount(key_z(ka) & key_x(kb))) & 1u;
                DyadicComplex c = ca * cb;
                r.add_term(key_x(ka) ^ key_x(kb), key_z(ka) ^ key_z(kb), sign ? -c : c);
            }
        return r;
    }

    /* W(x,z)^dag = (-1)^{x.z} W(x,z); coefficients conjugate. */
    PauliSum adjoint() const {
        PauliSum r(n);
        for (auto& [k, c] : terms) {
            bool s = std::popcount(key_x(k) & key_z(k)) & 1;
            r.terms.emplace(k, s ? -c.conj() : c.conj());
        }
        return r;
    }

    DyadicComplex trace() const {
        auto it = terms.find(0);
        DyadicComplex t = it == terms.end() ? DyadicComplex() : it->second;
        return t * DyadicComplex(Int(1) << n, 0, 0);
    }

    bool is_hermitian_sum() const { return *this == adjoint(); }

    DenseOperator to_dense() const {
        DenseOperator m(n);
        for (auto& [k, c] : terms) {
            std::uint64_t x = key_x(k), z = key_z(k);
            for (std::size_t b = 0; b < m.dim; ++b) {
                if (std::popcount(b & z) & 1) m.at(b ^ x, b) -= c;
                else m.at(b ^ x, b) += c;
            }
        }
        return m;
    }

    friend bool operator==(const PauliSum& a, const PauliSum& b) {
        return a.n == b.n && a.terms == b.terms;
    }

  private:
    void check(const PauliSum& o) const {
        if (n != o.n) throw std::invalid_argument("PauliSum: dimension mismatch");
    }
};

/* Conjugation  Z_C S Z_C: terms pick up (-1)^{|x & C|}. */
inline PauliSum conj_diag_z(const PauliSum& s, std::uint64_t cmask) {
    PauliSum r(s.n);
    for (auto& [k, c] : s.terms) {
        bool flip = std::popcount(PauliSum::key_x(k) & cmask) & 1;
        r.terms.emplace(k, flip ? -c : c);
    }
    return r;
}

/* Conjugation by the controlled-Z on edge (a,b):
   sign (-1)^{x_a x_b}; z_a ^= x_b, z_b ^= x_a. */
inline PauliSum conj_cz_edge(const PauliSum& s, std::size_t qa, std::size_t qb) {
    PauliSum r(s.n);
    for (auto& [k, c] : s.terms) {
        std::uint64_t x = PauliSum::key_x(k), z = PauliSum::key_z(k);
        bool xa = (x >> qa) & 1u, xb = (x >> qb) & 1u;
        if (xb) z ^= std::uint64_t(1) << qa;
        if (xa) z ^= std::uint64_t(1) << qb;
        r.add_term(x, z, (xa && xb) ? -c : c);
    }
    return r;
}

/* Conjugation by all edges of a graph (the U_G layer); vertex labels are
   mapped to qubit indices by the graph's own label order. */
inline PauliSum conj_ug(const PauliSum& s, const Graph& g) {
    PauliSum r = s;
    for (auto [u, v] : g.edges()) r = conj_cz_edge(r, g.index_of(u), g.index_of(v));
    return r;
}

/* Qubit relabeling q -> perm(q) (conjugation by the permutation operator). */
inline PauliSum conj_perm(const PauliSum& s, const PermutationMap& perm) {
    PauliSum r(s.n);
    for (auto& [k, c] : s.terms) {
        std::uint64_t x = PauliSum::key_x(k), z = PauliSum::key_z(k);
        std::uint64_t nx = 0, nz = 0;
        for (std::size_t q = 0; q < s.n; ++q) {
            std::size_t img = std::size_t(perm.apply(int(q)));
            if ((x >> q) & 1u) nx |= std::uint64_t(1) << img;
            if ((z >> q) & 1u) nz |= std::uint64_t(1) << img;
        }
        r.add_term(nx, nz, c);
    }
    return r;
}

/* The permutation operator itself as a Pauli expansion; requires an
   involution (product of disjoint transpositions), each contributing a
   SWAP = (1 + XX + YY + ZZ)/2 factor. */
inline PauliSum perm_op_sum(const PermutationMap& perm, std::size_t n) {
    perm.validate();
    PauliSum m = PauliSum::identity_sum(n);
    for (auto& [a, b] : perm.mapping) {
        if (perm.apply(b) != a) throw std::invalid_argument("perm_op_sum: not an involution");
        if (a < 0 || b < 0 || std::size_t(a) >= n || std::size_t(b) >= n)
            throw std::invalid_argument("perm_op_sum: label outside qubit range");
        if (a >= b) continue;
        PauliSum swap(n);
        std::uint64_t ia = std::uint64_t(1) << a, ib = std::uint64_t(1) << b;
        swap.add_term(0, 0, DyadicComplex::half_pow(1));
        swap.add_term(ia | ib, 0, DyadicComplex::half_pow(1));
        swap.add_term(0, ia | ib, DyadicComplex::half_pow(1));
        // Y_a Y_b = (i X_a Z_a)(i X_b Z_b) = - W(ab, ab)
        swap.add_term(ia | ib, ia | ib, -DyadicComplex::half_pow(1));
        m = m * swap;
    }
    return m;
}

/* Conjugation by T = (1 + X_s + (1 - X_s) M_perm)/2 (Hermitian involution;
   perm must be an involution fixing s).  Splitting S by the commutation of
   each term with X_s (the z_s bit):
     commuting part  S_c:  T S_c T = (S_c + S_c^perm)/2 + X_s (S_c - S_c^perm)/2
     anticommuting   S_a:  T S_a T = (S_a M + M S_a)/2 + X_s (S_a M - M S_a)/2
   The anticommuting branch needs M as an explicit Pauli expansion. */
inline PauliSum conj_t_controlled(const PauliSum& s, std::size_t source,
                                  const PermutationMap& perm) {
    for (auto& [k, v] : perm.mapping)
        if (k == int(source) || v == int(source))
            throw std::invalid_argument("conj_t_controlled: source inside perm support");
    PauliSum sc(s.n), sa(s.n);
    for (auto& [k, c] : s.terms) {
        if ((PauliSum::key_z(k) >> source) & 1u) sa.terms.emplace(k, c);
        else sc.terms.emplace(k, c);
    }
    PauliSum xs = PauliSum::from_pauli(PauliOperator::single(s.n, source, 'X'));
    PauliSum out(s.n);
    if (!sc.terms.empty()) {
        PauliSum scp = conj_perm(sc, perm);
        out += (sc + scp).scaled(DyadicComplex::half_pow(1));
        out += xs * (sc - scp).scaled(DyadicComplex::half_pow(1));
    }
    if (!sa.terms.empty()) {
        PauliSum m = perm_op_sum(perm, s.n);

        PauliSum am = sa * m, ma = m * sa;
        out += (am + ma).scaled(DyadicComplex::half_pow(1));
        out += xs * (am - ma).scaled(DyadicComplex::half_pow(1));
    }
    return out;
}

/* Exact statevector with dyadic amplitudes, for codeword checks. */
struct StateVector {
    std::size_t n = 0;
    std::vector<DyadicComplex> amp;

    explicit StateVector(std::size_t n_) : n(n_), amp(std::size_t(1) << n_) {}

    /* |G> = U_G |+>^V: amplitudes (-1)^{#edges inside b} / 2^{n/2}... kept
       unnormalized as integer signs; normalization is irrelevant for
       eigenvector and orthogonality checks, so amplitudes here are +-1. */
    static StateVector graph_state_signs(const Graph& g) {
        StateVector v(g.size());
        auto edges = g.edges();
        std::vector<std::pair<std::size_t, std::size_t>> eidx;
        for (auto [a, b] : edges) eidx.emplace_back(g.index_of(a), g.index_of(b));
        for (std::size_t b = 0; b < v.amp.size(); ++b) {
            unsigned par = 0;
            for (auto [i, j] : eidx) par ^= unsigned((b >> i) & (b >> j) & 1u);
            v.amp[b] = DyadicComplex(par ? -1 : 1);
        }
        return v;
    }

    /* Z_C in the label indexing of graph g. */
    void apply_z_subset(const Graph& g, const std::set<int>& labels) {
        std::uint64_t mask = 0;
        for (int l : labels) mask |= std::uint64_t(1) << g.index_of(l);
        for (std::size_t b = 0; b < amp.size(); ++b)
            if (std::popcount(b & mask) & 1) amp[b] = -amp[b];
    }

    friend StateVector apply(const PauliSum& s, const StateVector& v) {
        if (s.n != v.n) throw std::invalid_argument("apply: dimension mismatch");
        StateVector out(v.n);
        for (auto& [k, c] : s.terms) {
            std::uint64_t x = PauliSum::key_x(k), z = PauliSum::key_z(k);
            for (std::size_t b = 0; b < v.amp.size(); ++b) {
                if (v.amp[b].is_zero()) continue;
                DyadicComplex t = c * v.amp[b];
                if (std::popcount(b & z) & 1) out.amp[b ^ x] -= t;
                else out.amp[b ^ x] += t;
            }
        }
        return out;
    }

    friend bool operator==(const StateVector& a, const StateVector& b) {
        return a.n == b.n && a.amp == b.amp;
    }
};

}  // namespace qecx
