#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qecx/dyadic.hpp"
#include "qecx/graph.hpp"
#include "qecx/pauli.hpp"

namespace qecx {

/* Truncate a mask to one machine word; valid because dense operators cap at
   12 qubits. */
inline std::uint64_t low_word(const BinaryVector& v) { return v.w.empty() ? 0 : v.w[0]; }

inline constexpr std::size_t kDenseQubitCap = 12;

/* Exact 2^n x 2^n operator with complex dyadic entries, row major. */
struct DenseOperator {
    std::size_t num_qubits = 0;
    std::size_t dim = 1;
    std::vector<DyadicComplex> a;

    DenseOperator() : a(1) {}
    explicit DenseOperator(std::size_t n) : num_qubits(n), dim(std::size_t(1) << n) {
        if (n > kDenseQubitCap) throw std::invalid_argument("DenseOperator: more than 12 qubits");
        a.assign(dim * dim, DyadicComplex());
    }

    DyadicComplex& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    const DyadicComplex& at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

    static DenseOperator identity_op(std::size_t n) {
        DenseOperator m(n);
        for (std::size_t i = 0; i < m.dim; ++i) m.at(i, i) = DyadicComplex(1);
        return m;
    }

    /* i^k X^x Z^z as a signed basis permutation: entry [b^x][b] = i^k (-1)^{z.b}. */
    static DenseOperator from_pauli(const PauliOperator& p) {
        DenseOperator m(p.n);
        std::uint64_t x = low_word(p.x), z = low_word(p.z);
        for (std::size_t b = 0; b < m.dim; ++b) {
            unsigned ph = (p.phase_exp + 2u * unsigned(std::popcount(b & z) & 1)) & 3u;
            m.at(b ^ x, b) = DyadicComplex(1).times_phase(ph);
        }
        return m;
    }

    DenseOperator& operator+=(const DenseOperator& o) {
        check_dim(o);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    DenseOperator& operator-=(const DenseOperator& o) {
        check_dim(o);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    friend DenseOperator operator+(DenseOperator x, const DenseOperator& y) { return x += y; }
    friend DenseOperator operator-(DenseOperator x, const DenseOperator& y) { return x -= y; }

    DenseOperator scaled(const DyadicComplex& c) const {
        DenseOperator r(*this);
        for (auto& e : r.a) e *= c;
        return r;
    }

    DenseOperator adjoint() const {
        DenseOperator r(num_qubits);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) r.at(j, i) = at(i, j).conj();
        return r;
    }

    DyadicComplex trace() const {
        DyadicComplex t;
        for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    friend bool operator==(const DenseOperator& x, const DenseOperator& y) {
        return x.num_qubits == y.num_qubits && x.a == y.a;
    }

    bool is_hermitian() const {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j)
                if (!(at(i, j) == at(j, i).conj())) return false;
        return true;
    }

  private:
    void check_dim(const DenseOperator& o) const {
        if (num_qubits != o.num_qubits) throw std::invalid_argument("DenseOperator: dim mismatch");
    }
};

/* C = A B, skipping zero entries of A and walking precomputed nonzero columns
   of B's rows; cost nnz(A) x avg row fill of B. */
inline DenseOperator matmul(const DenseOperator& A, const DenseOperator& B) {
    if (A.num_qubits != B.num_qubits) throw std::invalid_argument("matmul: dim mismatch");
    std::size_t d = A.dim;
    std::vector<std::vector<std::uint32_t>> brow(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j)
            if (!B.at(k, j).is_zero()) brow[k].push_back(std::uint32_t(j));
    DenseOperator C(A.num_qubits);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const DyadicComplex& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (std::uint32_t j : brow[k]) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

inline DyadicComplex trace_product(const DenseOperator& A, const DenseOperator& B) {
    if (A.num_qubits != B.num_qubits) throw std::invalid_argument("trace_product: dim mismatch");
    DyadicComplex t;
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) {
            const DyadicComplex& x = A.at(i, j);
            if (!x.is_zero()) t += x * B.at(j, i);
        }
    return t;
}

inline bool is_involution(const DenseOperator& A) {
    return matmul(A, A) == DenseOperator::identity_op(A.num_qubits);
}

inline bool do_commute(const DenseOperator& A, const DenseOperator& B) {
    return matmul(A, B) == matmul(B, A);
}

/* Product over edges of (1 + Z_a + Z_b - Z_a Z_b)/2: the controlled-Z
   circuit of the graph.  Diagonal with entries (-1)^{#edges inside b}. */
inline DenseOperator build_ug(const Graph& g) {
    if (g.size() > kDenseQubitCap) throw std::invalid_argument("build_ug: too many vertices");
    DenseOperator m(g.size());
    auto edges = g.edges();
    std::vector<std::pair<std::size_t, std::size_t>> eidx;
    eidx.reserve(edges.size());
    for (auto [u, v] : edges) eidx.emplace_back(g.index_of(u), g.index_of(v));
    for (std::size_t b = 0; b < m.dim; ++b) {
        unsigned par = 0;
        for (auto [i, j] : eidx) par ^= unsigned((b >> i) & (b >> j) & 1u);
        m.at(b, b) = DyadicComplex(par ? -1 : 1);
    }
    return m;
}

/* V_ab = (1 + X_a + X_b - X_a X_b)/2: diagonal in the X basis, eigenvalue -1
   exactly on the X_a = X_b = -1 sector; an involution. */
inline DenseOperator build_v(std::size_t qa, std::size_t qb, std::size_t n) {
    if (qa == qb || qa >= n || qb >= n) throw std::invalid_argument("build_v: bad qubits");
    DenseOperator m(n);
    m += DenseOperator::identity_op(n);
    m += DenseOperator::from_pauli(PauliOperator::single(n, qa, 'X'));
    m += DenseOperator::from_pauli(PauliOperator::single(n, qb, 'X'));
    m -= DenseOperator::from_pauli(PauliOperator::x_set(n, {qa, qb}));
    return m.scaled(DyadicComplex::half_pow(1));
}

/* Basis permutation moving qubit content q -> perm(q):
   M Z_C M^-1 = Z_perm(C), hence M Z_C |+>^n = Z_perm(C) |+>^n. */
inline DenseOperator build_perm_op(const PermutationMap& perm, std::size_t n) {
    perm.validate();
    for (auto& [k, v] : perm.mapping) {
        (void)v;
        if (k < 0 || std::size_t(k) >= n) throw std::invalid_argument("build_perm_op: label range");
    }
    DenseOperator m(n);
    for (std::size_t b = 0; b < m.dim; ++b) {
        std::size_t img = 0;
        for (std::size_t q = 0; q < n; ++q)
            if ((b >> q) & 1u) img |= std::size_t(1) << std::size_t(perm.apply(int(q)));
        m.at(img, b) = DyadicComplex(1);
    }
    return m;
}

/* T = (1 + X_s + (1 - X_s) M_perm)/2: applies the qubit permutation
   conditioned on the X_s = -1 sector.  Hermitian unitary involution whenever
   M_perm is (perm an involution). */
inline DenseOperator build_t_controlled(std::size_t source, const PermutationMap& perm,
                                        std::size_t n) {
    for (auto& [k, v] : perm.mapping)
        if (k == int(source) || v == int(source))
            throw std::invalid_argument("build_t_controlled: source inside perm support");
    DenseOperator xs = DenseOperator::from_pauli(PauliOperator::single(n, source, 'X'));
    DenseOperator mp = build_perm_op(perm, n);
    DenseOperator t = DenseOperator::identity_op(n) + xs + mp - matmul(xs, mp);
    return t.scaled(DyadicComplex::half_pow(1));
}

/* Projector  prod_i (1 + O_i)/2  onto the joint +1 eigenspace.  Inputs are
   verified eagerly: each O_i Hermitian and an involution, all pairs commute;
   these facts make the product Hermitian idempotent (verified separately on
   small instances; a full dense idempotence product is not affordable at 10
   qubits). */
inline DenseOperator projector_from_involutions(const std::vector<DenseOperator>& obs) {
    if (obs.empty()) throw std::invalid_argument("projector_from_involutions: empty input");
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!obs[i].is_hermitian())
            throw std::invalid_argument("observable " + std::to_string(i) + " is not Hermitian");
        if (!is_involution(obs[i]))
            throw std::invalid_argument("observable " + std::to_string(i) + " is not an involution");
    }
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j)
            if (!do_commute(obs[i], obs[j]))
                throw std::invalid_argument("observables " + std::to_string(i) + "," +
                                            std::to_string(j) + " do not commute");
    DenseOperator p = DenseOperator::identity_op(obs[0].num_qubits);
    for (const auto& o : obs) {
        p = matmul(p, DenseOperator::identity_op(o.num_qubits) + o);
        p = p.scaled(DyadicComplex::half_pow(1));
    }
    return p;
}

/* Tr(p E p E^dag) for a Pauli E.  With E|b> = phi(b)|b^x>, the i^k phase of E
   cancels against E^dag, leaving sign flips only:
   Tr = sum_{i,j} (-1)^{z.i + z.j} p[i][j] p[j^x][i^x]. */
inline DyadicComplex trace_sandwich(const DenseOperator& p, const PauliOperator& e) {
    if (p.num_qubits != e.n) throw std::invalid_argument("trace_sandwich: dim mismatch");
    std::uint64_t x = low_word(e.x), z = low_word(e.z);
    DyadicComplex t;
    for (std::size_t i = 0; i < p.dim; ++i) {
        unsigned si = unsigned(std::popcount(i & z) & 1);
        for (std::size_t j = 0; j < p.dim; ++j) {
            const DyadicComplex& pij = p.at(i, j);
            if (pij.is_zero()) continue;
            const DyadicComplex& q = p.at(j ^ x, i ^ x);
            if (q.is_zero()) continue;
            unsigned s = si ^ unsigned(std::popcount(j & z) & 1);
            DyadicComplex prod = pij * q;
            if (s) t -= prod; else t += prod;
        }
    }
    return t;
}

/* Tr(p E) = sum_b i^k (-1)^{z.b} p[b][b^x]. */
inline DyadicComplex trace_with_pauli(const DenseOperator& p, const PauliOperator& e) {
    if (p.num_qubits != e.n) throw std::invalid_argument("trace_with_pauli: dim mismatch");
    std::uint64_t x = low_word(e.x), z = low_word(e.z);
    DyadicComplex t;
    for (std::size_t b = 0; b < p.dim; ++b) {
        const DyadicComplex& v = p.at(b, b ^ x);
        if (v.is_zero()) continue;
        if (std::popcount(b & z) & 1) t -= v; else t += v;
    }
    return t.times_phase(e.phase_exp);
}

}  // namespace qecx
