#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qecx {

/* Fixed-length GF(2) vector packed into 64-bit words.  Bit q of the vector
   (qubit / column index q) is bit q%64 of word q/64, so index 0 is the lowest
   bit of the first word.  XOR is the group operation. */
struct BinaryVector {
    std::size_t n = 0;
    std::vector<std::uint64_t> w;

    BinaryVector() = default;
    explicit BinaryVector(std::size_t bits) : n(bits), w((bits + 63) / 64, 0) {}

    static BinaryVector from_indices(std::size_t bits, const std::vector<std::size_t>& idx) {
        BinaryVector v(bits);
        for (std::size_t i : idx) v.set(i);
        return v;
    }

    bool get(std::size_t i) const {
        if (i >= n) throw std::out_of_range("BinaryVector::get: index " + std::to_string(i));
        return (w[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        if (i >= n) throw std::out_of_range("BinaryVector::set: index " + std::to_string(i));
        if (v) w[i >> 6] |= std::uint64_t(1) << (i & 63);
        else   w[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) { set(i, !get(i)); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t x : w) c += std::popcount(x);
        return c;
    }
    bool none() const {
        for (std::uint64_t x : w) if (x) return false;
        return true;
    }

    BinaryVector& operator^=(const BinaryVector& o) {
        check_len(o);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
        return *this;
    }
    BinaryVector& operator&=(const BinaryVector& o) {
        check_len(o);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
        return *this;
    }
    BinaryVector& operator|=(const BinaryVector& o) {
        check_len(o);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
        return *this;
    }
    friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }
    friend BinaryVector operator&(BinaryVector a, const BinaryVector& b) { return a &= b; }
    friend BinaryVector operator|(BinaryVector a, const BinaryVector& b) { return a |= b; }
    friend bool operator==(const BinaryVector& a, const BinaryVector& b) {
        return a.n == b.n && a.w == b.w;
    }

    /* Parity of the GF(2) dot product <this, o>. */
    bool dot(const BinaryVector& o) const {
        check_len(o);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w.size(); ++i) acc ^= w[i] & o.w[i];
        return std::popcount(acc) & 1u;
    }

    /* Hex form of the vector read as an integer (bit q has value 2^q), most
       significant digit first, no leading zeros, "0" for the zero vector. */
    std::string hex() const {
        std::string s;
        bool leading = true;
        for (std::size_t i = w.size(); i-- > 0;) {
            for (int shift = 60; shift >= 0; shift -= 4) {
                unsigned d = (w[i] >> shift) & 0xF;
                if (leading && d == 0) continue;
                leading = false;
                s += "0123456789abcdef"[d];
            }
        }
        return s.empty() ? "0" : s;
    }
    static BinaryVector parse_hex(std::size_t bits, const std::string& s) {
        BinaryVector v(bits);
        std::size_t bit = 0;
        for (std::size_t i = s.size(); i-- > 0;) {
            char c = s[i];
            unsigned d;
            if (c >= '0' && c <= '9') d = unsigned(c - '0');
            else if (c >= 'a' && c <= 'f') d = unsigned(c - 'a') + 10;
            else if (c >= 'A' && c <= 'F') d = unsigned(c - 'A') + 10;
            else throw std::invalid_argument("BinaryVector::parse_hex: bad digit");
            for (unsigned b = 0; b < 4; ++b)
                if ((d >> b) & 1u) {
                    if (bit + b >= bits)
                        throw std::out_of_range("BinaryVector::parse_hex: value exceeds length");
                    v.set(bit + b);
                }
            bit += 4;
        }
        return v;
    }

  private:
    void check_len(const BinaryVector& o) const {
        if (n != o.n) throw std::invalid_argument("BinaryVector: length mismatch");
    }
};

/* GF(2) rank of a list of equal-length rows, by Gaussian elimination on
   copies.  Rows may be arbitrary bit vectors (e.g. symplectic (x|z) rows). */
inline std::size_t gf2_rank(std::vector<BinaryVector> rows) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    std::size_t len = rows[0].n;
    for (std::size_t col = 0; col < len && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

/* Basis of the kernel of the linear map  e_i -> rows[i]  (subsets of row
   indices whose XOR is zero), as bit vectors over the row index set. */
inline std::vector<BinaryVector> gf2_kernel_basis(const std::vector<BinaryVector>& rows) {
    std::size_t m = rows.size();
    std::vector<BinaryVector> work(rows);
    std::vector<BinaryVector> tag(m, BinaryVector(m));
    for (std::size_t i = 0; i < m; ++i) tag[i].set(i);
    std::size_t rank = 0;
    std::size_t len = m ? rows[0].n : 0;
    for (std::size_t col = 0; col < len && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && !work[piv].get(col)) ++piv;
        if (piv == m) continue;
        std::swap(work[rank], work[piv]);
        std::swap(tag[rank], tag[piv]);
        for (std::size_t r = 0; r < m; ++r)
            if (r != rank && work[r].get(col)) { work[r] ^= work[rank]; tag[r] ^= tag[rank]; }
        ++rank;
    }
    std::vector<BinaryVector> basis;
    for (std::size_t r = rank; r < m; ++r)
        if (work[r].none()) basis.push_back(tag[r]);
    return basis;
}

}  // namespace qecx
