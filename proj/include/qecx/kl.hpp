#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qecx/dense.hpp"
#include "qecx/parallel.hpp"
#include "qecx/pauli.hpp"

namespace qecx {

struct KlEntry {
    std::size_t error_index = 0;
    std::string error;     // string form of the Pauli
    std::string c;         // Tr(pE)/Tr(p), exact
    bool pass = false;
};

struct KlReport {
    std::size_t errors_checked = 0;
    bool all_pass = false;
    bool pure = false;                 // every c_E == 0
    std::vector<KlEntry> violations;   // failed errors
    std::vector<KlEntry> nonzero_c;    // passed but with c_E != 0 (degenerate directions)
};

namespace detail {

/* Integer snapshot of a dense operator: entries v = num/2^den with num in
   int64.  Usable when numerators stay small; keeps the hot sweep loops in
   machine integers without losing exactness (bounds checked up front). */
struct ScaledIntMatrix {
    std::size_t dim = 0;
    unsigned den = 0;
    std::vector<std::int64_t> re, im;

    static std::optional<ScaledIntMatrix> build(const DenseOperator& p) {
        ScaledIntMatrix m;
        m.dim = p.dim;
        unsigned dmax = 0;
        for (const auto& e : p.a)
            if (e.den_exp > dmax) dmax = e.den_exp;
        if (dmax > 24) return std::nullopt;
        m.den = dmax;
        m.re.resize(p.a.size());
        m.im.resize(p.a.size());
        const Int bound = Int(1) << 20;
        for (std::size_t i = 0; i < p.a.size(); ++i) {
            Int r = p.a[i].re << (dmax - p.a[i].den_exp);
            Int s = p.a[i].im << (dmax - p.a[i].den_exp);
            if (abs(r) > bound || abs(s) > bound) return std::nullopt;
            m.re[i] = std::int64_t(r);
            m.im[i] = std::int64_t(s);
        }
        return m;
    }
};

}  // namespace detail

/* Knill-Laflamme check at the projector level, specialized to the exact
   dyadic ring.  For Hermitian idempotent p and each Pauli error E, with
   c_E = Tr(pE)/Tr(p) and M = pEp - c_E p, expanding Tr(M M^dag) gives
       Tr(M M^dag) = Tr(p E p E^dag) - |c_E|^2 Tr(p),
   so  pEp == c_E p  exactly iff  Tr(pEpE^dag) * Tr(p) == |Tr(pE)|^2.
   This keeps the test scalar (O(4^n) per error) while remaining equivalent
   to the operator identity. */
inline KlReport kl_check(const DenseOperator& p, const std::vector<PauliOperator>& errors,
                         unsigned threads = 1) {
    DyadicComplex K = p.trace();
    if (!K.is_real() || K.re <= 0)
        throw std::invalid_argument("kl_check: trace must be real positive");
    if (!p.is_hermitian()) throw std::invalid_argument("kl_check: p not Hermitian");
    // Sanity gate against transcription bugs; the construction path
    // (projector_from_involutions) is what guarantees idempotence.
    if (!(trace_product(p, p) == K))
        throw std::invalid_argument("kl_check: Tr(p^2) != Tr(p); p not a projector");

    auto fast = detail::ScaledIntMatrix::build(p);

    KlReport rep;
    rep.errors_checked = errors.size();
    std::size_t nchunks = threads ? threads : std::thread::hardware_concurrency();
    if (nchunks == 0) nchunks = 1;
    if (nchunks > errors.size()) nchunks = errors.size() ? errors.size() : 1;
    std::vector<std::vector<KlEntry>> viol(nchunks), nonz(nchunks);

    auto run_range = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const PauliOperator& e = errors[idx];
            DyadicComplex tn;       // Tr(pE)
            bool pass;
            if (fast) {
                const auto& f = *fast;
                std::uint64_t xm = low_word(e.x), zm = low_word(e.z);
                std::int64_t tr_re = 0, tr_im = 0;
                for (std::size_t b = 0; b < f.dim; ++b) {
                    std::size_t k = b * f.dim + (b ^ xm);
                    if (std::popcount(b & zm) & 1) { tr_re -= f.re[k]; tr_im -= f.im[k]; }
                    else { tr_re += f.re[k]; tr_im += f.im[k]; }
                }
                // numerators of Tr(pEpE^dag) at scale 2^(2 den)
                __int128 t_re = 0, t_im = 0;
                for (std::size_t i = 0; i < f.dim; ++i) {
                    unsigned si = unsigned(std::popcount(i & zm) & 1);
                    std::size_t ix = i ^ xm;
                    for (std::size_t j = 0; j < f.dim; ++j) {
                        std::size_t k1 = i * f.dim + j;
                        std::int64_t ar = f.re[k1], ai = f.im[k1];
                        if (!(ar | ai)) continue;
                        std::size_t k2 = (j ^ xm) * f.dim + ix;
                        std::int64_t br = f.re[k2], bi = f.im[k2];
                        if (!(br | bi)) continue;
                        std::int64_t pr = ar * br - ai * bi;
                        std::int64_t pi = ar * bi + ai * br;
                        if (si ^ unsigned(std::popcount(j & zm) & 1)) { t_re -= pr; t_im -= pi; }
                        else { t_re += pr; t_im += pi; }
                    }
                }
                if (t_im != 0)
                    throw std::logic_error("kl_check: Tr(pEpE^dag) not real for Hermitian p");
                // K at scale 2^den (real by the gate above)
                Int Ks_big = K.re << (f.den - K.den_exp);
                auto Ks = std::int64_t(Ks_big);
                __int128 lhs = t_re * __int128(Ks);
                __int128 rhs = (__int128(tr_re) * tr_re + __int128(tr_im) * tr_im)
                               << f.den;
                pass = lhs == rhs;
                tn = DyadicComplex(Int(std::int64_t(tr_re)), Int(std::int64_t(tr_im)), f.den);
                tn = tn.times_phase(e.phase_exp);
            } else {
                tn = trace_with_pauli(p, e);
                DyadicComplex t = trace_sandwich(p, e);
                pass = (t * K == tn.abs_sq());
            }
            if (!pass || !tn.is_zero()) {
                KlEntry ent;
                ent.error_index = idx;
                ent.error = to_string(e);
                DyadicComplex c = tn;  // report c_E = Tr(pE)/K as a pair
                ent.c = c.str() + " / " + K.str();
                ent.pass = pass;
                (pass ? nonz : viol)[chunk].push_back(std::move(ent));
            }
        }
    };
    parallel_chunks(errors.size(), unsigned(viol.size()), run_range);
    for (auto& v : viol)
        for (auto& e : v) rep.violations.push_back(std::move(e));
    for (auto& v : nonz)
        for (auto& e : v) rep.nonzero_c.push_back(std::move(e));
    rep.all_pass = rep.violations.empty();
    rep.pure = rep.all_pass && rep.nonzero_c.empty();
    return rep;
}

}  // namespace qecx
