#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecx/binary.hpp"

namespace qecx {

/* An n-qubit Pauli operator  i^phase_exp * X^x_mask * Z^z_mask  in the GF(2)
   symplectic representation.  The per-qubit factor at a position set in both
   masks is XZ = -iY, so the phase exponent absorbs all Y bookkeeping and
   Hermiticity is exactly  phase_exp == |x & z| (mod 2). */
struct PauliOperator {
    std::size_t n = 0;
    BinaryVector x, z;
    unsigned phase_exp = 0;  // mod 4

    PauliOperator() = default;
    PauliOperator(std::size_t n_, BinaryVector x_, BinaryVector z_, unsigned phase)
        : n(n_), x(std::move(x_)), z(std::move(z_)), phase_exp(phase & 3u) {
        if (x.n != n || z.n != n) throw std::invalid_argument("PauliOperator: mask length");
    }

    static PauliOperator identity(std::size_t n) {
        return PauliOperator(n, BinaryVector(n), BinaryVector(n), 0);
    }
    /* Hermitian single-qubit letter at qubit q; Y carries phase i. */
    static PauliOperator single(std::size_t n, std::size_t q, char letter) {
        BinaryVector x(n), z(n);
        unsigned ph = 0;
        switch (letter) {
            case 'X': x.set(q); break;
            case 'Z': z.set(q); break;
            case 'Y': x.set(q); z.set(q); ph = 1; break;
            case 'I': break;
            default: throw std::invalid_argument("PauliOperator::single: bad letter");
        }
        return PauliOperator(n, x, z, ph);
    }
    static PauliOperator x_set(std::size_t n, const std::vector<std::size_t>& qs) {
        return PauliOperator(n, BinaryVector::from_indices(n, qs), BinaryVector(n), 0);
    }
    static PauliOperator z_set(std::size_t n, const std::vector<std::size_t>& qs) {
        return PauliOperator(n, BinaryVector(n), BinaryVector::from_indices(n, qs), 0);
    }

    friend bool operator==(const PauliOperator& a, const PauliOperator& b) {
        return a.n == b.n && a.phase_exp == b.phase_exp && a.x == b.x && a.z == b.z;
    }
};

/* Group product.  Moving Z^z_p past X^x_q contributes (-1)^{|z_p & x_q|}. */
inline PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
    if (p.n != q.n) throw std::invalid_argument("multiply: dimension mismatch");
    unsigned ph = (p.phase_exp + q.phase_exp + 2u * (unsigned)((p.z & q.x).popcount() & 1u)) & 3u;
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, ph);
}

/* Symplectic form x_p.z_q + x_q.z_p = 0 (mod 2); independent of phases. */
inline bool commutes(const PauliOperator& p, const PauliOperator& q) {
    if (p.n != q.n) throw std::invalid_argument("commutes: dimension mismatch");
    return p.x.dot(q.z) == q.x.dot(p.z);
}

/* Number of qubits with a non-identity factor. */
inline std::size_t weight(const PauliOperator& p) { return (p.x | p.z).popcount(); }

inline PauliOperator dagger(const PauliOperator& p) {
    // (i^a X Z)^dag = i^-a Z X = i^(-a + 2|x&z|) X Z.
    unsigned ph = (4u - p.phase_exp + 2u * (unsigned)((p.x & p.z).popcount() & 1u)) & 3u;
    return PauliOperator(p.n, p.x, p.z, ph);
}

inline bool is_hermitian(const PauliOperator& p) {
    // dagger flips the phase to -a + 2|x&z|; equality mod 4 is a == |x&z| mod 2.
    return (p.phase_exp & 1u) == ((p.x & p.z).popcount() & 1u);
}

/* String form "i^k " + per-qubit letters in ascending qubit order, where the
   letters are the usual Hermitian I/X/Y/Z, i.e. the printed phase is the
   operator's phase relative to the tensor product of letters. */
inline std::string to_string(const PauliOperator& p) {
    unsigned y = (unsigned)((p.x & p.z).popcount() & 3u);
    unsigned ph = (p.phase_exp + 4u - y) & 3u;  // X^x Z^z = (-i)^y * (letter product)
    std::string s = "i^" + std::to_string(ph) + " ";
    for (std::size_t q = 0; q < p.n; ++q) {
        bool xb = p.x.get(q), zb = p.z.get(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

inline PauliOperator parse_pauli(const std::string& s) {
    if (s.size() < 4 || s[0] != 'i' || s[1] != '^' || s[3] != ' ')
        throw std::invalid_argument("parse_pauli: expected \"i^k \" prefix");
    unsigned ph = unsigned(s[2] - '0');
    if (ph > 3) throw std::invalid_argument("parse_pauli: bad phase digit");
    std::size_t n = s.size() - 4;
    BinaryVector x(n), z(n);
    unsigned y = 0;
    for (std::size_t q = 0; q < n; ++q) {
        switch (s[4 + q]) {
            case 'I': break;
            case 'X': x.set(q); break;
            case 'Z': z.set(q); break;
            case 'Y': x.set(q); z.set(q); ++y; break;
            default: throw std::invalid_argument("parse_pauli: bad letter");
        }
    }
    return PauliOperator(n, x, z, (ph + y) & 3u);
}

/* All non-identity Paulis of weight 1..max_weight with phase_exp 0, ordered by
   ascending weight, then ascending support tuple, then per-qubit letters in
   X < Y < Z order (most significant choice on the lowest qubit of the
   support).  Count: sum_w C(n,w) 3^w. */
inline std::vector<PauliOperator> enumerate_errors(std::size_t n, std::size_t max_weight) {
    if (max_weight > n) throw std::invalid_argument("enumerate_errors: max_weight > n");
    std::vector<PauliOperator> out;
    std::vector<std::size_t> support;
    // letters encoded 0=X, 1=Y, 2=Z; Y as masks only (phase_exp stays 0)
    auto emit_letters = [&](auto&& self, std::size_t pos, BinaryVector& x, BinaryVector& z) -> void {
        if (pos == support.size()) {
            out.emplace_back(n, x, z, 0);
            return;
        }
        std::size_t q = support[pos];
        for (unsigned l = 0; l < 3; ++l) {
            if (l != 2) x.set(q);
            if (l != 0) z.set(q);
            self(self, pos + 1, x, z);
            x.set(q, false);
            z.set(q, false);
        }
    };
    auto choose = [&](auto&& self, std::size_t next, std::size_t remaining) -> void {
        if (remaining == 0) {
            BinaryVector x(n), z(n);
            emit_letters(emit_letters, 0, x, z);
            return;
        }
        for (std::size_t q = next; q + remaining <= n; ++q) {
            support.push_back(q);
            self(self, q + 1, remaining - 1);
            support.pop_back();
        }
    };
    for (std::size_t w = 1; w <= max_weight; ++w) choose(choose, 0, w);
    return out;
}

}  // namespace qecx
