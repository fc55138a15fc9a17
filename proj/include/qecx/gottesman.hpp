#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecx/binary.hpp"
#include "qecx/parallel.hpp"
#include "qecx/pauli.hpp"

namespace qecx {

/* Stabilizer code blocks of length 2^(2r+3), r >= 1, with 2r+5 generators:
   a full X row, a full Z row, and 2r+3 mixed rows read off a bit matrix
   whose column q is the binary representation of q.  Every block is a pure
   distance-3 stabilizer code; these are the U-blocks that longer codes are
   pasted from. */

struct CheckMatrix {
    int r = 0;
    std::size_t n = 0;                // 2^(2r+3) columns
    std::vector<BinaryVector> rows;   // 2r+3 rows; rows[k-1] is h_k
};

/* Row k holds bit (2r+3-k) of the column index, so column 1 is
   (0,...,0,1)^T and the last column is all-ones. */
inline CheckMatrix h_matrix(int r) {
    if (r < 1) throw std::invalid_argument("h_matrix: need r >= 1");
    if (r > 10) throw std::invalid_argument("h_matrix: r out of range");
    CheckMatrix m;
    m.r = r;
    int nrows = 2 * r + 3;
    m.n = std::size_t(1) << nrows;
    for (int k = 1; k <= nrows; ++k) {
        BinaryVector row(m.n);
        int bit = nrows - k;
        for (std::size_t q = 0; q < m.n; ++q)
            if ((q >> bit) & 1u) row.set(q);
        m.rows.push_back(std::move(row));
    }
    return m;
}

struct StabilizerCode {
    std::size_t n = 0;
    std::vector<PauliOperator> generators;
};

/* The 2r+5 generators: X and Z on the whole block plus the mixed rows
   S_k = X^(h_k) Z^(h_(k-1) + h_1 + h_(2r+3)) for k = 1..2r+3, with h_0 = 0
   and GF(2) addition in the exponent.  Distinct rows of the bit matrix
   intersect in an even number of positions, so every generator is Hermitian
   with no phase factor.  Mutual commutation and GF(2) independence are
   checked eagerly. */
inline StabilizerCode generators(int r) {
    CheckMatrix m = h_matrix(r);
    const int nrows = 2 * r + 3;
    StabilizerCode code;
    code.n = m.n;
    BinaryVector ones(m.n), zero(m.n);
    for (std::size_t q = 0; q < m.n; ++q) ones.set(q);
    code.generators.emplace_back(m.n, ones, zero, 0);
    code.generators.emplace_back(m.n, zero, ones, 0);
    for (int k = 1; k <= nrows; ++k) {
        BinaryVector x = m.rows[std::size_t(k - 1)];
        BinaryVector z(m.n);
        if (k >= 2) z ^= m.rows[std::size_t(k - 2)];
        z ^= m.rows[0];
        z ^= m.rows[std::size_t(nrows - 1)];
        PauliOperator s(m.n, x, z, 0);
        if (!is_hermitian(s))
            throw std::logic_error("generators: row " + std::to_string(k) + " not Hermitian");
        code.generators.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        for (std::size_t j = i + 1; j < code.generators.size(); ++j)
            if (!commutes(code.generators[i], code.generators[j]))
                throw std::logic_error("generators: rows " + std::to_string(i) + " and " +
                                       std::to_string(j) + " anticommute");
    std::vector<BinaryVector> sympl;
    for (const auto& g : code.generators) {
        BinaryVector row(2 * m.n);
        for (std::size_t q = 0; q < m.n; ++q) {
            if (g.x.get(q)) row.set(q);
            if (g.z.get(q)) row.set(m.n + q);
        }
        sympl.push_back(std::move(row));
    }
    if (gf2_rank(sympl) != code.generators.size())
        throw std::logic_error("generators: GF(2)-dependent generator set");
    return code;
}

struct PurityReport {
    std::size_t errors_checked = 0;
    bool all_pass = false;
    std::vector<PauliOperator> violations;  // weight <= 2 errors with zero syndrome
};

/* Exhaustive syndrome sweep over all weight-1 and weight-2 errors: a pure
   distance-3 stabilizer code gives every such error a nonzero syndrome.
   Errors are generated on the fly grouped by lowest support qubit, so the
   sweep never materializes the full error list. */
inline PurityReport verify_pure_distance3(const StabilizerCode& code, unsigned threads = 1) {
    const std::size_t n = code.n;
    const char letters[3] = {'X', 'Y', 'Z'};
    auto zero_syndrome = [&](const PauliOperator& e) {
        for (const auto& g : code.generators)
            if (!commutes(g, e)) return false;
        return true;
    };

    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    if (std::size_t(nthreads) > n) nthreads = unsigned(n);
    std::vector<std::vector<PauliOperator>> viol(nthreads);
    std::vector<std::size_t> counts(nthreads, 0);
    parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            for (char la : letters) {
                PauliOperator e = PauliOperator::single(n, a, la);
                ++counts[chunk];
                if (zero_syndrome(e)) viol[chunk].push_back(e);
            }
            for (std::size_t b = a + 1; b < n; ++b)
                for (char la : letters)
                    for (char lb : letters) {
                        PauliOperator e =
                            multiply(PauliOperator::single(n, a, la),
                                     PauliOperator::single(n, b, lb));
                        ++counts[chunk];
                        if (zero_syndrome(e)) viol[chunk].push_back(e);
                    }
        }
    });
    PurityReport rep;
    for (std::size_t c = 0; c < nthreads; ++c) {
        rep.errors_checked += counts[c];
        rep.violations.insert(rep.violations.end(), viol[c].begin(), viol[c].end());
    }
    rep.all_pass = rep.violations.empty();
    return rep;
}

}  // namespace qecx
