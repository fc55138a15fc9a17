#pragma once

#include <cstddef>
#include <cstdint>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qecx/dense.hpp"
#include "qecx/dyadic.hpp"
#include "qecx/parallel.hpp"

namespace qecx {

/* Exact Pauli weight distribution A_0..A_n of a code projector: A_i is the
   normalized sum of |Tr(P E)|^2 over the 3^i * C(n,i) Pauli words E of weight
   i.  For a projector of rank K the values are nonnegative rationals with
   A_0 = 1 and total 2^n / K. */
struct WeightEnumerator {
    std::size_t n = 0;
    std::vector<Rational> values;

    Rational total() const {
        Rational t = 0;
        for (const auto& v : values) t += v;
        return t;
    }
};

/* Average of f over the weight distribution: sum f(i) A_i / sum A_i. */
template <typename F>
Rational average(const WeightEnumerator& w, F f) {
    if (w.values.size() != w.n + 1)
        throw std::invalid_argument("average: enumerator size mismatch");
    Rational den = w.total();
    if (den == 0) throw std::invalid_argument("average: empty enumerator");
    Rational num = 0;
    for (std::size_t i = 0; i <= w.n; ++i)
        num += Rational(f(static_cast<int>(i))) * w.values[i];
    return num / den;
}

/* One linear condition over the variables A_1..A_n.  A_0 = 1 is folded into
   the right-hand side, so a constraint reads: sum_i coeffs[i-1] * A_i  (= or
   >=)  rhs. */
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
    bool equality = true;
};

/* Feasibility system encoding the conditions a length-n distance-3 code
   with a rank-2^(n-s) projector places on its weight distribution:

     (1)  sum A_i = 2^s           (normalization)
     (2)  <3n - 4x> = A_1 * 2^s / sum A_i  i.e.  sum (3n-4i) A_i = 2^s A_1
     (3)  sum ((4i-3n+1)^2 - 3n - 1) A_i = 2^(s+1) A_2
     (4)  sum over even i of A_i >= 2^(s-1)

   together with A_i >= 0 and A_0 = 1.  Distance 3 itself enters as the
   side condition A_1 = A_2 = 0; the system here is stated for general
   enumerators so known codes can be checked against it directly. */
struct LPInstance {
    std::size_t n = 0;
    int s = 0;
    std::vector<LinearConstraint> constraints;
};

inline LPInstance restricted_constraints(std::size_t n, int s) {
    if (n < 1 || s < 1 || static_cast<std::size_t>(s) > n)
        throw std::invalid_argument("restricted_constraints: need 1 <= s <= n");
    Int pow_s = Int(1) << static_cast<unsigned>(s);
    Int n3 = Int(3) * Int(n);
    LPInstance lp;
    lp.n = n;
    lp.s = s;
    LinearConstraint norm, mean, square, even;
    norm.coeffs.assign(n, Rational(1));
    norm.rhs = Rational(pow_s - 1);
    norm.equality = true;
    mean.coeffs.resize(n);
    square.coeffs.resize(n);
    even.coeffs.assign(n, Rational(0));
    for (std::size_t i = 1; i <= n; ++i) {
        Int ii = Int(i);
        mean.coeffs[i - 1] = Rational(n3 - 4 * ii);
        square.coeffs[i - 1] = Rational((4 * ii - n3 + 1) * (4 * ii - n3 + 1) - n3 - 1);
        if (i % 2 == 0) even.coeffs[i - 1] = 1;
    }
    mean.coeffs[0] -= Rational(pow_s);
    mean.rhs = Rational(-n3);
    mean.equality = true;
    square.coeffs[1] -= Rational(2 * pow_s);
    square.rhs = Rational(-((n3 - 1) * (n3 - 1) - n3 - 1));
    square.equality = true;
    even.rhs = Rational(pow_s / 2 - 1);
    even.equality = false;
    lp.constraints = {std::move(norm), std::move(mean), std::move(square), std::move(even)};
    return lp;
}

/* Exact substitution check of a full enumerator (A_0 included) against the
   instance: nonnegativity, A_0 = 1, and every constraint row. */
inline bool satisfies(const LPInstance& lp, const WeightEnumerator& w) {
    if (w.n != lp.n || w.values.size() != lp.n + 1) return false;
    if (w.values[0] != 1) return false;
    for (const auto& v : w.values)
        if (v < 0) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < lp.n; ++i) lhs += c.coeffs[i] * w.values[i + 1];
        if (c.equality ? (lhs != c.rhs) : (lhs < c.rhs)) return false;
    }
    return true;
}

/* Outcome of the exact feasibility decision.  When feasible, point holds
   values for A_1..A_n satisfying every constraint with A_i >= 0.  When
   infeasible, certificate holds one multiplier per constraint row such that
   the combination refutes the system: multipliers on inequality rows are
   nonnegative, the combined coefficient of every variable is <= 0, and the
   combined right-hand side is > 0.  Any x >= 0 satisfying the rows would
   give 0 >= (sum y_i a_i) . x >= sum y_i rhs_i > 0. */
struct LpResult {
    bool feasible = false;
    std::vector<Rational> point;
    std::vector<Rational> certificate;
};

inline bool verify_feasible_point(const LPInstance& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.n) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < lp.n; ++i) lhs += c.coeffs[i] * x[i];
        if (c.equality ? (lhs != c.rhs) : (lhs < c.rhs)) return false;
    }
    return true;
}

inline bool verify_infeasibility_certificate(const LPInstance& lp,
                                             const std::vector<Rational>& y) {
    if (y.size() != lp.constraints.size()) return false;
    for (std::size_t r = 0; r < y.size(); ++r)
        if (!lp.constraints[r].equality && y[r] < 0) return false;
    for (std::size_t i = 0; i < lp.n; ++i) {
        Rational combined = 0;
        for (std::size_t r = 0; r < y.size(); ++r)
            combined += y[r] * lp.constraints[r].coeffs[i];
        if (combined > 0) return false;
    }
    Rational rhs = 0;
    for (std::size_t r = 0; r < y.size(); ++r) rhs += y[r] * lp.constraints[r].rhs;
    return rhs > 0;
}

namespace detail {

/* Phase-1 simplex over exact rationals with Bland's rule.  Decides whether
   {x >= 0 : rows hold} is nonempty; returns either a feasible point or the
   dual multipliers of the infeasibility proof (one per row, oriented
   against the original row senses). */
inline LpResult phase1_simplex(const LPInstance& lp) {
    std::size_t m = lp.constraints.size(), n = lp.n;
    std::size_t num_surplus = 0;
    for (const auto& c : lp.constraints)
        if (!c.equality) ++num_surplus;
    std::size_t cols = n + num_surplus + m;

    /* Row layout: structural | surplus | artificial, right-hand side last.
       Inequality rows a.x >= b become a.x - t = b with t >= 0; rows are then
       negated as needed so every right-hand side is nonnegative, and sign[r]
       records the flip so the multipliers can be mapped back. */
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<int> sign(m, 1);
    std::size_t surplus_at = n;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& c = lp.constraints[r];
        if (c.rhs < 0) sign[r] = -1;
        for (std::size_t i = 0; i < n; ++i) t[r][i] = Rational(sign[r]) * c.coeffs[i];
        if (!c.equality) t[r][surplus_at++] = Rational(-sign[r]);
        t[r][n + num_surplus + r] = 1;
        t[r][cols] = Rational(sign[r]) * c.rhs;
    }

    /* Reduced-cost row for minimizing the artificial sum: cost[j] = c_j -
       sum_r t[r][j] with artificial costs 1.  The last entry carries the
       negated objective value and is updated by the same row operations, so
       feasibility is reached exactly when it returns to zero. */
    std::vector<Rational> cost(cols + 1, Rational(0));
    for (std::size_t j = 0; j <= cols; ++j)
        for (std::size_t r = 0; r < m; ++r) cost[j] -= t[r][j];
    for (std::size_t r = 0; r < m; ++r) cost[n + num_surplus + r] += 1;

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + num_surplus + r;

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= 0) continue;
            Rational ratio = t[r][cols] / t[r][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[r] < basis[leave]))
                leave = r, best = ratio;
        }
        if (leave == m)
            throw std::logic_error("phase1_simplex: unbounded artificial objective");
        Rational pivot = t[leave][enter];
        for (auto& v : t[leave]) v /= pivot;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || t[r][enter] == 0) continue;
            Rational factor = t[r][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= factor * t[leave][j];
        }
        if (cost[enter] != 0) {
            Rational factor = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
    }

    LpResult result;
    if (cost[cols] == 0) {
        result.feasible = true;
        result.point.assign(n, Rational(0));
        for (std::size_t r = 0; r < m; ++r)
            if (basis[r] < n) result.point[basis[r]] = t[r][cols];
        if (!verify_feasible_point(lp, result.point))
            throw std::logic_error("phase1_simplex: claimed point fails substitution");
    } else {
        /* At optimum the dual solution is read off the artificial columns:
           y_r = 1 - cost[artificial r], then re-oriented by the row flips. */
        result.feasible = false;
        result.certificate.resize(m);
        for (std::size_t r = 0; r < m; ++r)
            result.certificate[r] =
                Rational(sign[r]) * (Rational(1) - cost[n + num_surplus + r]);
        if (!verify_infeasibility_certificate(lp, result.certificate))
            throw std::logic_error("phase1_simplex: claimed certificate fails recombination");
    }
    return result;
}

}  // namespace detail

inline LpResult lp_feasible(const LPInstance& lp) {
    for (const auto& c : lp.constraints)
        if (c.coeffs.size() != lp.n)
            throw std::invalid_argument("lp_feasible: constraint width mismatch");
    return detail::phase1_simplex(lp);
}

/* Lengths n = (2^(2m+5) - 5)/3 + a with a in {0,1}; returns (m, a) or
   throws. */
inline std::pair<int, int> admissible_length(std::size_t n) {
    for (int m = 0; m <= 12; ++m) {
        Int base = ((Int(1) << static_cast<unsigned>(2 * m + 5)) - 5) / 3;
        for (int a = 0; a <= 1; ++a)
            if (base + a == Int(n)) return {m, a};
    }
    throw std::invalid_argument("admissible_length: n is not (2^(2m+5)-5)/3 + a");
}

/* Step-by-step record of the lower-bound argument: the family decomposition
   of n, one line per verified inequality with its exact integers, and the
   concluded minimal generator count. */
struct BoundReplay {
    int m = 0, a = 0, s = 0;
    std::vector<std::string> steps;
};

/* Replays the inequality chain proving that a distance-3 stabilizer code of
   admissible length n needs at least s = 2m+6 stabilizer generators, i.e.
   2^s must exceed 3n+5 (even case a = 0) or 3n+2 (odd case a = 1).

   For a = 0 the certificate polynomial is f(x) = (3n+1-4x)^2: its zero
   (3n+1)/4 must be an odd integer so f >= 16 at even integers and f >= 4 at
   odd ones away from the zero, and the moment identities give <f> = 3n+1 +
   4 A_1 + 2 A_2, which the pointwise floor pushes past the claimed value
   unless 2^s > 3n+5.  For a = 1 the polynomial g(x) = (3n+2-4x)(3n-2-4x)
   has integer zeros one x-step apart, so g >= 0 on integers, with the
   analogous identity <g> = 3n-4 + 2 A_1 + 2 A_2 forcing 2^s > 3n+2.  Every
   pointwise inequality the argument uses is checked on exact integers. */
inline BoundReplay theorem_lower_bound_replay(std::size_t n) {
    auto [m, a] = admissible_length(n);
    if (n < 5) throw std::invalid_argument("theorem_lower_bound: n < 5");
    BoundReplay rep;
    rep.m = m;
    rep.a = a;
    Int n3 = Int(3) * Int(n);
    Int threshold;
    auto ineq = [&rep](const std::string& label, const Int& lhs, const std::string& cmp,
                       const Int& rhs) {
        rep.steps.push_back(label + " = " + lhs.str() + " " + cmp + " " + rhs.str());
    };
    rep.steps.push_back("n = " + std::to_string(n) + " = (2^" + std::to_string(2 * m + 5) +
                        " - 5)/3 + " + std::to_string(a));
    if (a == 0) {
        Int zero4 = n3 + 1;
        if (zero4 % 4 != 0)
            throw std::logic_error("theorem_lower_bound: (3n+1)/4 not an integer");
        if ((zero4 / 4) % 2 != 1)
            throw std::logic_error("theorem_lower_bound: (3n+1)/4 not odd");
        rep.steps.push_back("(3n+1)/4 = " + Int(zero4 / 4).str() +
                            " is an odd integer, so (3n+1-4x)^2 >= 16 at even x and >= 4 at odd x");
        if (!((n3 + 1) * (n3 + 1) > (n3 + 5) * (n3 - 7) + 16))
            throw std::logic_error("theorem_lower_bound: f(0) slack fails");
        ineq("f(0) = (3n+1)^2", (n3 + 1) * (n3 + 1), "> (3n+5)(3n-7) + 16 =",
             (n3 + 5) * (n3 - 7) + 16);
        if (!((n3 - 3) * (n3 - 3) > 4 * (n3 + 5)))
            throw std::logic_error("theorem_lower_bound: f(1) slack fails");
        ineq("f(1) = (3n-3)^2", (n3 - 3) * (n3 - 3), "> 4(3n+5) =", 4 * (n3 + 5));
        if (!((n3 - 7) * (n3 - 7) > 2 * (n3 + 5) + 16))
            throw std::logic_error("theorem_lower_bound: f(2) slack fails");
        ineq("f(2) = (3n-7)^2", (n3 - 7) * (n3 - 7), "> 2(3n+5) + 16 =", 2 * (n3 + 5) + 16);
        threshold = n3 + 5;
        rep.steps.push_back(
            "sum f(i) A_i = 2^s (3n+1 + 4 A_1 + 2 A_2) must reach the floor f(0) + f(1) A_1 + "
            "(f(2)-16) A_2 + 16 (2^(s-1) - 1), which the slacks refute at every 2^s <= 3n+5 = " +
            threshold.str());
    } else {
        if ((n3 + 2) % 4 != 0)
            throw std::logic_error("theorem_lower_bound: (3n+2)/4 not an integer");
        rep.steps.push_back("(3n+2)/4 = " + Int((n3 + 2) / 4).str() +
                            " is an integer, so g(x) = (3n+2-4x)(3n-2-4x) >= 0 at integers");
        if (!((n3 + 2) * (n3 - 2) > (n3 + 2) * (n3 - 4)))
            throw std::logic_error("theorem_lower_bound: g(0) slack fails");
        ineq("g(0) = (3n+2)(3n-2)", (n3 + 2) * (n3 - 2), "> (3n+2)(3n-4) =",
             (n3 + 2) * (n3 - 4));
        if (!((n3 - 2) * (n3 - 6) > 2 * (n3 + 2)))
            throw std::logic_error("theorem_lower_bound: g(1) slack fails");
        ineq("g(1) = (3n-2)(3n-6)", (n3 - 2) * (n3 - 6), "> 2(3n+2) =", 2 * (n3 + 2));
        if (!((n3 - 6) * (n3 - 10) > 2 * (n3 + 2)))
            throw std::logic_error("theorem_lower_bound: g(2) slack fails");
        ineq("g(2) = (3n-6)(3n-10)", (n3 - 6) * (n3 - 10), "> 2(3n+2) =", 2 * (n3 + 2));
        threshold = n3 + 2;
        rep.steps.push_back(
            "sum g(i) A_i = 2^s (3n-4 + 2 A_1 + 2 A_2) must reach the floor g(0) + g(1) A_1 + "
            "g(2) A_2, which the slacks refute at every 2^s <= 3n+2 = " + threshold.str());
    }
    int s = 0;
    Int p = 1;
    while (p <= threshold) {
        p <<= 1;
        ++s;
    }
    if (s != 2 * m + 6)
        throw std::logic_error("theorem_lower_bound: chain does not close at 2m+6");
    rep.s = s;
    rep.steps.push_back("minimal s with 2^s > " + threshold.str() + " is s = " +
                        std::to_string(s) + " = 2m+6");
    return rep;
}

inline int theorem_lower_bound(std::size_t n) { return theorem_lower_bound_replay(n).s; }

/* Smallest s with 2^s >= 3n+1: a distance-3 length-n stabilizer code cannot
   have fewer generators (counting every weight-<=1 syndrome). */
inline int hamming_bound(std::size_t n) {
    if (n < 1) throw std::invalid_argument("hamming_bound: n < 1");
    Int target = Int(3) * Int(n) + 1;
    int s = 0;
    Int p = 1;
    while (p < target) {
        p <<= 1;
        ++s;
    }
    return s;
}

/* Exact weight distribution of a rank-K projector on up to 10 qubits,
   A_i = (1/K^2) sum over weight-i Pauli words E of |Tr(p E)|^2.  For the
   fixed x-mask the traces over all z-masks come from one Walsh-Hadamard
   transform of the diagonal slice j -> p(j, j xor x).  The final total is
   required to equal 2^n / K, which holds iff Tr(p^2) = Tr(p) K-consistently,
   so the sweep doubles as an idempotence check. */
inline WeightEnumerator weight_distribution(const DenseOperator& p, const Rational& K,
                                            std::size_t threads = 1) {
    if (p.num_qubits > 10)
        throw std::invalid_argument("weight_distribution: more than 10 qubits");
    if (K <= 0) throw std::invalid_argument("weight_distribution: rank must be positive");
    std::size_t n = p.num_qubits, dim = p.dim;
    unsigned chunk_count = threads ? unsigned(threads) : std::thread::hardware_concurrency();
    if (chunk_count == 0) chunk_count = 1;
    if (std::size_t(chunk_count) > dim) chunk_count = unsigned(dim);
    std::vector<std::vector<DyadicComplex>> partial(
        chunk_count, std::vector<DyadicComplex>(n + 1));
    parallel_chunks(dim, unsigned(threads),
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& acc = partial[chunk];
        std::vector<DyadicComplex> v(dim);
        for (std::size_t x = begin; x < end; ++x) {
            for (std::size_t j = 0; j < dim; ++j) v[j] = p.at(j, j ^ x);
            for (std::size_t len = 1; len < dim; len <<= 1)
                for (std::size_t base = 0; base < dim; base += 2 * len)
                    for (std::size_t j = base; j < base + len; ++j) {
                        DyadicComplex lo = v[j], hi = v[j + len];
                        v[j] = lo + hi;
                        v[j + len] = lo - hi;
                    }
            for (std::size_t z = 0; z < dim; ++z) {
                unsigned w = unsigned(std::popcount(x | z));
                acc[w] += v[z].abs_sq();
            }
        }
    });
    WeightEnumerator result;
    result.n = n;
    result.values.assign(n + 1, Rational(0));
    Rational norm = K * K;
    for (const auto& acc : partial)
        for (std::size_t i = 0; i <= n; ++i)
            result.values[i] += acc[i].real_rational() / norm;
    Rational expected = Rational(Int(1) << static_cast<unsigned>(n)) / K;
    if (result.total() != expected)
        throw std::logic_error("weight_distribution: total differs from 2^n / rank");
    return result;
}

}  // namespace qecx
