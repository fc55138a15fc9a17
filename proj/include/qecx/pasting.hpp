#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qecx/binary.hpp"
#include "qecx/dyadic.hpp"
#include "qecx/gottesman.hpp"
#include "qecx/parallel.hpp"
#include "qecx/pauli.hpp"
#include "qecx/small_codes.hpp"

namespace qecx {

/* Pasted code families: m stabilizer blocks of lengths 2^(2k+3), k = m..1,
   glued to a 9- or 10-qubit seed block by 2m+6 commuting observable rows.
   The projector is the product of (1+row)/2 over all rows; dimension and the
   purity sweep are evaluated exactly by collapsing the row-subset sums
   blockwise: U-block factors are symbolic Paulis whose traces are 0 or
   +-2^|U|, and only the seed block needs its small operator algebra. */

struct PastedParams {
    int m = 0, a = 0;
    long long N = 0;
    Int K;  // (3/2) * 2^(N - 2m - 6)
    long long optimal_stabilizer_k = 0;
};

inline PastedParams params(int m, int a) {
    if (m < 0 || m > 12) throw std::invalid_argument("params: m out of range");
    if (a != 0 && a != 1) throw std::invalid_argument("params: a must be 0 or 1");
    PastedParams p;
    p.m = m;
    p.a = a;
    Int pow = Int(1) << unsigned(2 * m + 5);
    if ((pow - 5) % 3 != 0) throw std::logic_error("params: 3 must divide 2^(2m+5)-5");
    p.N = ((pow - 5) / 3 + a).convert_to<long long>();
    p.optimal_stabilizer_k = p.N - 2 * m - 6;
    p.K = Int(3) << unsigned(p.N - 2 * m - 7);
    return p;
}

struct BlockLayout {
    int m = 0, a = 0;
    std::vector<std::size_t> sizes;    // [ |U_m|, ..., |U_1|, seed size ]
    std::vector<std::size_t> offsets;  // global start of each block
    std::size_t total = 0;             // N
};

/* One cell of an observable row: a symbolic Pauli on a stabilizer block, or
   a named seed-block operator ("identity" for blank cells). */
struct BlockFactor {
    bool is_named = false;
    PauliOperator pauli;  // valid when !is_named
    std::string tag;      // valid when is_named
};

struct BlockObservable {
    std::vector<BlockFactor> factors;  // one per block
    int sign = 1;
};

struct PastedCode {
    int m = 0, a = 0;
    BlockLayout layout;
    std::vector<BlockObservable> observables;  // 2m+6 rows
    SmallCode seed;                            // realizes the named factors
    bool family = false;                       // built by assemble()
};

inline std::vector<std::string> seed_row_tags(int a) {
    if (a == 0) return {"alpha_1", "alpha_2", "alpha_3", "A_1", "A_2", "A_0"};
    return {"beta_1", "beta_2", "beta_3", "B_1", "B_2", "B_0"};
}

/* The row pattern: block U_r carries its full-X row in observable 2(m-r)+1,
   its full-Z row in 2(m-r)+2, and its mixed rows S_1..S_(2r+3) in the
   remaining observables up to 2m+5; the seed block carries its six operators
   in rows 2m+1..2m+6, the last one alone in row 2m+6.  Blank cells are
   identities.  Per-block commutation and involution of every factor set is
   already enforced by the block constructors; the seed operators are
   re-checked pairwise here because the row 2m+6 product operator is not part
   of the seed's own projector checks. */
inline PastedCode assemble(int m, int a, const SmallCode& seed) {
    if (m < 1) throw std::invalid_argument("assemble: need m >= 1");
    if (a != 0 && a != 1) throw std::invalid_argument("assemble: a must be 0 or 1");
    if (seed.graph.size() != std::size_t(9 + a) ||
        seed.declared_dimension != (a == 0 ? 12 : 24))
        throw std::invalid_argument("assemble: seed block does not match a");

    PastedCode code;
    code.m = m;
    code.a = a;
    code.seed = seed;
    code.family = true;
    code.layout.m = m;
    code.layout.a = a;
    for (int r = m; r >= 1; --r) code.layout.sizes.push_back(std::size_t(1) << (2 * r + 3));
    code.layout.sizes.push_back(seed.graph.size());
    std::size_t off = 0;
    for (std::size_t s : code.layout.sizes) {
        code.layout.offsets.push_back(off);
        off += s;
    }
    code.layout.total = off;
    PastedParams p = params(m, a);
    if (code.layout.total != std::size_t(p.N))
        throw std::logic_error("assemble: block sizes do not sum to N");

    const int R = 2 * m + 6;
    std::vector<std::string> vtags = seed_row_tags(a);
    std::vector<StabilizerCode> blocks;
    for (int r = m; r >= 1; --r) blocks.push_back(generators(r));

    // seed operators used by the rows: Hermitian involutions, pairwise commuting
    for (std::size_t i = 0; i < vtags.size(); ++i) {
        const PauliSum& si = seed.named(vtags[i]);
        if (!si.is_hermitian_sum() || !(si * si == PauliSum::identity_sum(si.n)))
            throw std::logic_error("assemble: seed operator " + vtags[i] +
                                   " is not a Hermitian involution");
        for (std::size_t j = i + 1; j < vtags.size(); ++j) {
            const PauliSum& sj = seed.named(vtags[j]);
            if (!(si * sj == sj * si))
                throw std::logic_error("assemble: seed operators " + vtags[i] + " and " +
                                       vtags[j] + " do not commute");
        }
    }

    for (int row = 1; row <= R; ++row) {
        BlockObservable obs;
        for (int c = 0; c < m; ++c) {
            int r = m - c;  // block U_r
            std::size_t bn = code.layout.sizes[std::size_t(c)];
            BlockFactor f;
            f.is_named = false;
            if (row == 2 * c + 1)
                f.pauli = blocks[std::size_t(c)].generators[0];
            else if (row == 2 * c + 2)
                f.pauli = blocks[std::size_t(c)].generators[1];
            else if (row >= 2 * c + 3 && row <= 2 * m + 5)
                f.pauli = blocks[std::size_t(c)].generators[std::size_t(row - 2 * c - 1)];
            else
                f.pauli = PauliOperator::identity(bn);
            if (f.pauli.n != bn) throw std::logic_error("assemble: block size mismatch");
            (void)r;
            obs.factors.push_back(std::move(f));
        }
        BlockFactor v;
        v.is_named = true;
        v.tag = (row <= 2 * m) ? "identity" : vtags[std::size_t(row - 2 * m - 1)];
        obs.factors.push_back(std::move(v));
        code.observables.push_back(std::move(obs));
    }
    return code;
}

struct PastedSweepReport {
    std::size_t errors_checked = 0;
    bool all_pass = false;
    std::vector<PauliOperator> violations;
    double elapsed_ms = 0.0;
};

namespace detail {

/* Exact evaluator for Tr(P E P E^dag) and Tr(P).

   Writing P = 2^(-R) sum_T O_T over row subsets T, each term factorizes over
   blocks.  On a stabilizer block every factor is a Pauli, so a (T,T') pair
   contributes only if T xor T' lies in the GF(2) kernel of the stacked
   block masks; for genuine family members that kernel is {0, {last row}}
   since the last row is blank on every stabilizer block.  For the surviving
   pairs the stabilizer-block traces reduce to per-row anticommutation bits
   against the error: rows with a blank seed cell must all commute with the
   error (or the whole trace vanishes), and the bits of seed-carrying rows
   just flip signs in the remaining seed-block sum.  The seed-block sums use
   the Pauli expansions of the row-subset products with coefficients twisted
   to t_w = c_w / i^(popcount(x&z)), which makes every table entry a real
   dyadic number and the whole accumulation integer arithmetic. */
struct PastingEngine {
    std::size_t R = 0, nV = 0, N = 0, offV = 0;
    long long sumU = 0;              // total stabilizer-block qubits
    std::size_t nB = 0;              // rows with a non-identity seed factor
    std::vector<int> bpos;           // row -> seed-row position, or -1
    std::vector<BinaryVector> row_x, row_z;        // global masks, seed part zero
    std::vector<std::pair<std::uint32_t, int>> span;  // kernel subsets with signs
    std::vector<std::vector<std::pair<std::uint64_t, long long>>> vtab;
    unsigned D = 0;                  // common denominator exponent of vtab
    Rational dimension_value;

    using Memo = std::unordered_map<std::uint64_t, long long>;

    explicit PastingEngine(const PastedCode& code) {
        R = code.observables.size();
        if (R == 0 || R > 30) throw std::invalid_argument("engine: bad row count");
        const std::size_t nblocks = code.layout.sizes.size();
        nV = code.layout.sizes.back();
        offV = code.layout.offsets.back();
        N = code.layout.total;
        if (nV > 28) throw std::invalid_argument("engine: seed block too large");
        for (std::size_t c = 0; c + 1 < nblocks; ++c) sumU += (long long)code.layout.sizes[c];

        for (const auto& obs : code.observables) {
            if (obs.sign != 1) throw std::invalid_argument("engine: rows must carry sign +1");
            if (obs.factors.size() != nblocks)
                throw std::invalid_argument("engine: row factor count mismatch");
        }

        // per-row global masks over the stabilizer blocks; involution and
        // commutation checks for manually built instances
        for (std::size_t i = 0; i < R; ++i) {
            BinaryVector x(N), z(N);
            for (std::size_t c = 0; c + 1 < nblocks; ++c) {
                const BlockFactor& f = code.observables[i].factors[c];
                if (f.is_named) throw std::invalid_argument("engine: named factor on stabilizer block");
                if (!is_hermitian(f.pauli) ||
                    !(multiply(f.pauli, f.pauli) == PauliOperator::identity(f.pauli.n)))
                    throw std::logic_error("engine: factor is not a Hermitian involution");
                for (std::size_t q = 0; q < f.pauli.n; ++q) {
                    if (f.pauli.x.get(q)) x.set(code.layout.offsets[c] + q);
                    if (f.pauli.z.get(q)) z.set(code.layout.offsets[c] + q);
                }
            }
            row_x.push_back(std::move(x));
            row_z.push_back(std::move(z));
        }
        for (std::size_t c = 0; c + 1 < nblocks; ++c)
            for (std::size_t i = 0; i < R; ++i)
                for (std::size_t j = i + 1; j < R; ++j)
                    if (!commutes(code.observables[i].factors[c].pauli,
                                  code.observables[j].factors[c].pauli))
                        throw std::logic_error("engine: rows " + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + " anticommute on block " +
                                               std::to_string(c));

        // seed-carrying rows
        std::vector<std::string> tags;
        for (std::size_t i = 0; i < R; ++i) {
            const BlockFactor& f = code.observables[i].factors.back();
            if (!f.is_named) throw std::invalid_argument("engine: seed factor must be named");
            if (f.tag == "identity") {
                bpos.push_back(-1);
            } else {
                bpos.push_back(int(nB++));
                tags.push_back(f.tag);
            }
        }
        if (nB > 8) throw std::invalid_argument("engine: too many seed-carrying rows");

        // kernel of the stacked stabilizer-block masks, expanded to a full
        // subgroup with per-subset scalar signs
        std::vector<BinaryVector> rel;
        for (std::size_t i = 0; i < R; ++i) {
            BinaryVector v(2 * N);
            for (std::size_t q = 0; q < N; ++q) {
                if (row_x[i].get(q)) v.set(q);
                if (row_z[i].get(q)) v.set(N + q);
            }
            rel.push_back(std::move(v));
        }
        std::vector<BinaryVector> basis = gf2_kernel_basis(rel);
        if (basis.size() > 12) throw std::logic_error("engine: kernel dimension too large");
        std::vector<std::uint32_t> kmasks{0};
        for (const auto& b : basis) {
            std::uint32_t mb = 0;
            for (std::size_t i = 0; i < R; ++i)
                if (b.get(i)) mb |= std::uint32_t(1) << i;
            std::size_t sz = kmasks.size();
            for (std::size_t s = 0; s < sz; ++s) kmasks.push_back(kmasks[s] ^ mb);
        }
        std::sort(kmasks.begin(), kmasks.end());
        for (std::uint32_t km : kmasks) {
            int phi = 1;
            for (std::size_t c = 0; c + 1 < nblocks; ++c) {
                PauliOperator prod = PauliOperator::identity(code.layout.sizes[c]);
                for (std::size_t i = 0; i < R; ++i)
                    if ((km >> i) & 1u)
                        prod = multiply(prod, code.observables[i].factors[c].pauli);
                if (!prod.x.none() || !prod.z.none() || (prod.phase_exp & 1))
                    throw std::logic_error("engine: kernel subset is not a real scalar on block");
                if (prod.phase_exp == 2) phi = -phi;
            }
            span.emplace_back(km, phi);
        }

        // seed-block subset-product tables with real twisted coefficients
        std::vector<PauliSum> prods;
        prods.push_back(PauliSum::identity_sum(nV));
        for (std::size_t tb = 1; tb < (std::size_t(1) << nB); ++tb) {
            std::size_t low = std::size_t(std::countr_zero(tb));
            prods.push_back(prods[tb & (tb - 1)] * code.seed.named(tags[low]));
        }
        for (const auto& p : prods)
            for (const auto& [k, c] : p.terms) D = std::max(D, c.den_exp);
        for (const auto& p : prods) {
            std::vector<std::pair<std::uint64_t, long long>> tab;
            for (const auto& [k, c] : p.terms) {
                std::uint64_t wx = PauliSum::key_x(k), wz = PauliSum::key_z(k);
                unsigned s = unsigned(std::popcount(wx & wz)) & 3u;
                DyadicComplex t = c.times_phase((4u - s) & 3u);
                if (!t.is_real())
                    throw std::logic_error("engine: seed product is not Hermitian");
                Int scaled = t.re << (D - t.den_exp);
                if (scaled > Int(1) << 40 || scaled < -(Int(1) << 40))
                    throw std::logic_error("engine: seed coefficient out of range");
                tab.emplace_back(k, scaled.convert_to<long long>());
            }
            // map iteration order is already key-sorted
            vtab.push_back(std::move(tab));
        }

        dimension_value = compute_dimension();
        Memo memo;
        Rational at_identity =
            scaled_total(evaluate(PauliOperator::identity(N), memo));
        if (at_identity != dimension_value)
            throw std::logic_error("engine: Tr(P*P) disagrees with Tr(P)");
    }

    /* Tr(P): only row subsets in the kernel survive the stabilizer-block
       traces; each contributes its sign times the seed-block product trace. */
    Rational compute_dimension() const {
        Int num = 0;
        for (auto [km, phi] : span) {
            std::uint32_t tb = gather_b(km);
            long long t0 = 0;
            for (auto& [k, t] : vtab[tb])
                if (k == 0) t0 = t;
            num += Int(phi) * t0;
        }
        Rational dim = Rational(num);
        dim *= Rational(Int(1) << unsigned(sumU + (long long)nV));
        dim /= Rational(Int(1) << unsigned(R + D));
        return dim;
    }

    std::uint32_t gather_b(std::uint32_t rowmask) const {
        std::uint32_t out = 0;
        for (std::size_t i = 0; i < R; ++i)
            if (((rowmask >> i) & 1u) && bpos[i] >= 0) out |= std::uint32_t(1) << bpos[i];
        return out;
    }

    /* Scaled value of Tr(P E P E^dag): the returned integer times
       2^(sumU + |blank-seed rows| + nV - 2R - 2D).  Zero iff P E P = 0. */
    long long evaluate(const PauliOperator& e, Memo& memo) const {
        std::uint32_t bB = 0;
        for (std::size_t i = 0; i < R; ++i) {
            unsigned bit = unsigned(row_x[i].dot(e.z)) ^ unsigned(row_z[i].dot(e.x));
            if (!bit) continue;
            if (bpos[i] < 0) return 0;  // a blank-seed row anticommutes: trace vanishes
            bB |= std::uint32_t(1) << bpos[i];
        }
        std::uint64_t xv = 0, zv = 0;
        for (std::size_t q = 0; q < nV; ++q) {
            if (e.x.get(offV + q)) xv |= std::uint64_t(1) << q;
            if (e.z.get(offV + q)) zv |= std::uint64_t(1) << q;
        }
        std::uint64_t key = bB | (xv << 8) | (zv << (8 + nV));
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        long long total = 0;
        for (auto [km, phi] : span) {
            std::uint32_t kb = gather_b(km);
            for (std::uint32_t tb = 0; tb < (std::uint32_t(1) << nB); ++tb) {
                const auto& s1 = vtab[tb];
                const auto& s2 = vtab[tb ^ kb];
                long long acc = 0;
                std::size_t i = 0, j = 0;
                while (i < s1.size() && j < s2.size()) {
                    if (s1[i].first < s2[j].first) ++i;
                    else if (s2[j].first < s1[i].first) ++j;
                    else {
                        std::uint64_t wx = PauliSum::key_x(s1[i].first);
                        std::uint64_t wz = PauliSum::key_z(s1[i].first);
                        unsigned sgn = (unsigned(std::popcount(wx & zv)) ^
                                        unsigned(std::popcount(wz & xv))) & 1u;
                        long long term = s1[i].second * s2[j].second;
                        acc += sgn ? -term : term;
                        ++i;
                        ++j;
                    }
                }
                int rowsgn = (std::popcount(tb & bB) & 1) ? -phi : phi;
                total += rowsgn * acc;
            }
        }
        memo.emplace(key, total);
        return total;
    }

    Rational scaled_total(long long val) const {
        long long blanks = (long long)(R - nB);
        Rational v = Rational(val);
        v *= Rational(Int(1) << unsigned(sumU + blanks + (long long)nV));
        v /= Rational(Int(1) << unsigned(2 * R + 2 * D));
        return v;
    }
};

}  // namespace detail

/* Exact Tr(P), checked against the closed-form value for family members. */
inline Rational code_dimension(const PastedCode& code) {
    detail::PastingEngine engine(code);
    if (code.family) {
        PastedParams p = params(code.m, code.a);
        if (engine.dimension_value != Rational(p.K))
            throw std::logic_error("code_dimension: trace does not match the family value");
    }
    return engine.dimension_value;
}

/* Exact trace of a single observable row (times identity on blank blocks). */
inline Rational row_trace(const PastedCode& code, std::size_t row_index) {
    if (row_index >= code.observables.size())
        throw std::invalid_argument("row_trace: row out of range");
    Rational tr(1);
    const std::size_t nblocks = code.layout.sizes.size();
    for (std::size_t c = 0; c + 1 < nblocks; ++c) {
        const PauliOperator& p = code.observables[row_index].factors[c].pauli;
        if (!p.x.none() || !p.z.none()) return Rational(0);
        DyadicComplex ph = DyadicComplex(1).times_phase(p.phase_exp);
        tr *= ph.real_rational() * Rational(Int(1) << p.n);
    }
    const BlockFactor& f = code.observables[row_index].factors.back();
    if (f.tag == "identity") {
        tr *= Rational(Int(1) << code.layout.sizes.back());
        return tr;
    }
    DyadicComplex vt = code.seed.named(f.tag).trace();
    if (!vt.is_real()) throw std::logic_error("row_trace: non-real seed trace");
    tr *= vt.real_rational();
    return tr;
}

/* Exhaustive sweep of all errors with 1 <= weight <= max_weight: for a pure
   distance-3 code every Tr(P E P E^dag) is exactly zero. */
inline PastedSweepReport verify_distance3_pure(const PastedCode& code, int max_weight = 2,
                                               unsigned threads = 1) {
    if (max_weight < 1 || max_weight > 2)
        throw std::invalid_argument("verify_distance3_pure: max_weight must be 1 or 2");
    auto t0 = std::chrono::steady_clock::now();
    detail::PastingEngine engine(code);
    std::vector<PauliOperator> errors = enumerate_errors(code.layout.total,
                                                         std::size_t(max_weight));
    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    if (std::size_t(nthreads) > errors.size()) nthreads = unsigned(errors.size());
    std::vector<std::vector<PauliOperator>> viol(nthreads);
    parallel_chunks(errors.size(), threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        detail::PastingEngine::Memo memo;
                        for (std::size_t idx = begin; idx < end; ++idx)
                            if (engine.evaluate(errors[idx], memo) != 0)
                                viol[chunk].push_back(errors[idx]);
                    });
    PastedSweepReport rep;
    rep.errors_checked = errors.size();
    for (auto& v : viol) rep.violations.insert(rep.violations.end(), v.begin(), v.end());
    rep.all_pass = rep.violations.empty();
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace qecx
