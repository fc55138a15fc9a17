/* End-to-end acceptance harness: exercises every verified claim with exact
   arithmetic and prints one PASS/FAIL line per criterion.  Exit code 0 only
   if all eight pass. */

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qecx/gottesman.hpp"
#include "qecx/kl.hpp"
#include "qecx/lp.hpp"
#include "qecx/pasting.hpp"
#include "qecx/serialize.hpp"
#include "qecx/small_codes.hpp"

using namespace qecx;

namespace {

const std::string kDataDir = std::string(QECX_SOURCE_DIR) + "/data";
const std::string kCli = QECX_CLI_PATH;

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

void require(bool ok, const std::string& what) {
    if (!ok) note(what);
}

template <typename F>
void criterion(int idx, const char* what, double budget_s, F f) {
    notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
        f();
    } catch (const std::exception& e) {
        note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s)
        note("runtime " + std::to_string(secs) + " s exceeds budget " +
             std::to_string(budget_s) + " s");
    bool ok = notes.empty();
    if (!ok) ++failures;
    std::printf("criterion %d: %s  %s (%.1f s)\n", idx, ok ? "PASS" : "FAIL", what, secs);
    for (const auto& n : notes) std::printf("  - %s\n", n.c_str());
    std::fflush(stdout);
}

/* Shared artifacts built once and reused across criteria. */
SmallCode code9;
SmallCode code10;
Graph recovered;

/* ---- criterion 5 support: a two-block instance small enough to compare
   the factorized evaluator against dense traces entry for entry. */

PauliOperator word(std::size_t n, std::uint64_t x, std::uint64_t z, unsigned ph = 0) {
    PauliOperator p = PauliOperator::identity(n);
    for (std::size_t q = 0; q < n; ++q) {
        if ((x >> q) & 1) p.x.set(q);
        if ((z >> q) & 1) p.z.set(q);
    }
    p.phase_exp = ph;
    return p;
}

PastedCode synthetic_two_block() {
    Graph g4 = cycle_graph(4);
    SmallCode seed;
    seed.graph = g4;
    seed.names = {"v1", "v2", "v3"};
    seed.sums.push_back(conj_ug(detail::x_sum(g4, {1, 3}), g4));
    seed.sums.push_back(conj_ug(detail::x_sum(g4, {2, 4}), g4));
    seed.sums.push_back(conj_ug(detail::x_sum(g4, {1}) * v_sum(4, 1, 3), g4));
    seed.products["w0"] = (seed.sums[0] * seed.sums[1] * seed.sums[2]).scaled(DyadicComplex(-1));
    seed.declared_dimension = 8;

    PastedCode code;
    code.m = 0;
    code.a = 0;
    code.layout.sizes = {4, 4};
    code.layout.offsets = {0, 4};
    code.layout.total = 8;
    code.seed = seed;
    code.family = false;

    auto row = [&](PauliOperator u, const std::string& tag) {
        BlockObservable obs;
        BlockFactor fu;
        fu.pauli = std::move(u);
        obs.factors.push_back(std::move(fu));
        BlockFactor fv;
        fv.is_named = true;
        fv.tag = tag;
        obs.factors.push_back(std::move(fv));
        return obs;
    };
    code.observables.push_back(row(word(4, 0xF, 0x0), "identity"));
    code.observables.push_back(row(word(4, 0x0, 0xF), "identity"));
    code.observables.push_back(row(word(4, 0x3, 0x0), "v1"));
    code.observables.push_back(row(word(4, 0x0, 0x3), "v2"));
    code.observables.push_back(row(word(4, 0x3, 0x3, 2), "v3"));
    code.observables.push_back(row(PauliOperator::identity(4), "w0"));
    return code;
}

PauliSum row_as_sum(const PastedCode& code, std::size_t i) {
    const PauliOperator& u = code.observables[i].factors[0].pauli;
    std::size_t off = code.layout.offsets[1];
    const std::string& tag = code.observables[i].factors[1].tag;
    PauliSum v = tag == "identity" ? PauliSum::identity_sum(code.layout.sizes[1])
                                   : code.seed.named(tag);
    PauliSum out(code.layout.total);
    for (const auto& [k, c] : v.terms)
        out.add_term(low_word(u.x) | (PauliSum::key_x(k) << off),
                     low_word(u.z) | (PauliSum::key_z(k) << off),
                     c.times_phase(u.phase_exp));
    return out;
}

/* ---- criterion 7 support: the [[5,1,3]] reference enumerator. */

PauliOperator five_word(const char* s) {
    std::vector<std::size_t> xs, zs;
    for (std::size_t q = 0; q < 5; ++q) {
        if (s[q] == 'X') xs.push_back(q);
        if (s[q] == 'Z') zs.push_back(q);
    }
    return PauliOperator(5, BinaryVector::from_indices(5, xs),
                         BinaryVector::from_indices(5, zs), 0);
}

/* ---- criterion 8 support: run the CLI and capture canonical payloads. */

std::string run_cli(const std::string& args, int* exit_code) {
    std::string out;
    FILE* p = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
    if (!p) {
        *exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t nread;
    while ((nread = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, nread);
    int status = pclose(p);
    *exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string canonical_payload(const std::string& raw, bool* ok) {
    try {
        Json j = Json::parse(raw);
        j.erase("elapsed_ms");
        j.erase("threads");
        *ok = true;
        return j.dump();
    } catch (const std::exception&) {
        *ok = false;
        return {};
    }
}

}  // namespace

int main() {
    criterion(1, "((9,12,3)): trace 12, 351 errors clean, nondegenerate, Tr(A_0) = 2^8", 30, [] {
        code9 = build_code9();
        require(code9.projector.trace() == DyadicComplex(12), "projector trace != 12");
        require(code9.named("A_0").trace() == DyadicComplex(256), "Tr(A_0) != 2^8");
        KlReport kl = kl_check(code9.projector, enumerate_errors(9, 2), 1);
        require(kl.errors_checked == 351, "expected 351 errors");
        require(kl.all_pass, std::to_string(kl.violations.size()) + " correction violations");
        require(kl.pure, "degenerate directions found");
    });

    criterion(2, "((10,24,3)): graph recovered, trace 24, Tr(B_0) = 2^9, 24 codewords, 435 errors clean",
              1860, [] {
        RecoveryReport rec = recover_graph10_report(1);
        require(!rec.solutions.empty(), "no symmetry-invariant graph found");
        recovered = rec.chosen;
        require(graph_to_json(recovered) == load_json_file(kDataDir + "/g1.json"),
                "recovered graph differs from the frozen file");
        code10 = build_code10(recovered);
        require(code10.projector.trace() == DyadicComplex(24), "projector trace != 24");
        require(code10.named("B_0").trace() == DyadicComplex(512), "Tr(B_0) != 2^9");
        CodewordSet cw = codeword_subsets();
        StateVector base = StateVector::graph_state_signs(recovered);
        std::size_t stabilized = 0;
        for (const auto& subset : cw.subsets) {
            StateVector v = base;
            v.apply_z_subset(recovered, subset);
            bool all = true;
            for (const auto& s : code10.sums) all = all && (apply(s, v) == v);
            if (all) ++stabilized;
        }
        require(stabilized == 24,
                std::to_string(stabilized) + "/24 codewords stabilized by all six observables");
        KlReport kl = kl_check(code10.projector, enumerate_errors(10, 2), 1);
        require(kl.errors_checked == 435, "expected 435 errors");
        require(kl.all_pass, std::to_string(kl.violations.size()) + " correction violations");
    });

    criterion(3, "stabilizer family r=1,2: 2r+5 commuting independent generators, pure sweeps clean",
              60, [] {
        for (int r = 1; r <= 2; ++r) {
            StabilizerCode code = generators(r);
            std::size_t want_n = std::size_t(1) << (2 * r + 3);
            require(code.n == want_n, "wrong block length for r=" + std::to_string(r));
            require(code.generators.size() == std::size_t(2 * r + 5),
                    "wrong generator count for r=" + std::to_string(r));
            for (std::size_t i = 0; i < code.generators.size(); ++i)
                for (std::size_t j = i + 1; j < code.generators.size(); ++j)
                    require(commutes(code.generators[i], code.generators[j]),
                            "generators " + std::to_string(i) + "," + std::to_string(j) +
                                " anticommute at r=" + std::to_string(r));
            std::vector<BinaryVector> sympl;
            for (const auto& g : code.generators) {
                BinaryVector row(2 * code.n);
                for (std::size_t q = 0; q < code.n; ++q) {
                    if (g.x.get(q)) row.set(q);
                    if (g.z.get(q)) row.set(code.n + q);
                }
                sympl.push_back(row);
            }
            require(gf2_rank(sympl) == code.generators.size(),
                    "GF(2)-dependent generators at r=" + std::to_string(r));
            PurityReport rep = verify_pure_distance3(code, 1);
            std::size_t want_errors = r == 1 ? 4560 : 73536;
            require(rep.errors_checked == want_errors,
                    "wrong error count for r=" + std::to_string(r));
            require(rep.all_pass, std::to_string(rep.violations.size()) +
                                      " zero-syndrome errors at r=" + std::to_string(r));
        }
    });

    criterion(4, "pasted 41/42: dimensions 3*2^32 and 3*2^33 by blockwise trace, sweeps clean",
              900, [] {
        PastedCode c41 = assemble(1, 0, code9);
        require(code_dimension(c41) == Rational(Int(3) << 32), "41-qubit dimension != 3*2^32");
        PastedSweepReport s41 = verify_distance3_pure(c41, 2, 1);
        require(s41.errors_checked == 7503, "expected 7503 errors at N=41");
        require(s41.all_pass,
                std::to_string(s41.violations.size()) + " violations at N=41");
        PastedCode c42 = assemble(1, 1, code10);
        require(code_dimension(c42) == Rational(Int(3) << 33), "42-qubit dimension != 3*2^33");
        PastedSweepReport s42 = verify_distance3_pure(c42, 2, 1);
        require(s42.errors_checked == 7875, "expected 7875 errors at N=42");
        require(s42.all_pass,
                std::to_string(s42.violations.size()) + " violations at N=42");
    });

    criterion(5, "factorized evaluator matches dense Tr(PEPE') on a synthetic two-block code", 0, [] {
        PastedCode code = synthetic_two_block();
        detail::PastingEngine engine(code);
        std::vector<DenseOperator> rows;
        for (std::size_t i = 0; i < code.observables.size(); ++i)
            rows.push_back(row_as_sum(code, i).to_dense());
        DenseOperator p = projector_from_involutions(rows);
        require(p.trace() == DyadicComplex(8), "dense trace != 8");
        require(engine.dimension_value == Rational(8), "engine trace != 8");
        detail::PastingEngine::Memo memo;
        std::vector<PauliOperator> errors = enumerate_errors(8, 2);
        require(errors.size() == 276, "expected 276 errors");
        std::size_t mismatches = 0, nonzero = 0;
        for (const PauliOperator& e : errors) {
            Rational ref = trace_sandwich(p, e).real_rational();
            if (engine.scaled_total(engine.evaluate(e, memo)) != ref) ++mismatches;
            if (ref != 0) ++nonzero;
        }
        require(mismatches == 0, std::to_string(mismatches) + " engine/dense mismatches");
        require(nonzero > 0 && nonzero < errors.size(),
                "sweep did not exercise both zero and nonzero traces");
    });

    criterion(6, "bounds: replayed minimum 8 at n=41,42 and 6 at n=9,10; LP verdicts certified",
              10, [] {
        require(theorem_lower_bound(41) == 8, "bound at 41 != 8");
        require(theorem_lower_bound(42) == 8, "bound at 42 != 8");
        require(theorem_lower_bound(9) == 6, "bound at 9 != 6");
        require(theorem_lower_bound(10) == 6, "bound at 10 != 6");
        require(hamming_bound(41) == 7 && hamming_bound(42) == 7, "packing bound != 7");
        for (std::size_t n : {std::size_t(41), std::size_t(42)}) {
            LPInstance inst = restricted_constraints(n, 7);
            LpResult res = lp_feasible(inst);
            require(!res.feasible, "s=7 unexpectedly feasible at n=" + std::to_string(n));
            require(verify_infeasibility_certificate(inst, res.certificate),
                    "refutation fails recombination at n=" + std::to_string(n));
        }
        LPInstance inst41 = restricted_constraints(41, 8);
        LpResult res41 = lp_feasible(inst41);
        require(res41.feasible, "s=8 unexpectedly infeasible at n=41");
        require(verify_feasible_point(inst41, res41.point), "s=8 point fails substitution");
    });

    criterion(7, "enumerators: A_0=1, A_1=A_2=0, totals 2^n/K; [[5,1,3]] satisfies its system",
              0, [] {
        WeightEnumerator w9 = weight_distribution(code9.projector, Rational(12));
        require(w9.values[0] == 1 && w9.values[1] == 0 && w9.values[2] == 0,
                "9-qubit enumerator head wrong");
        require(w9.total() == Rational(128) / 3, "9-qubit total != 128/3");
        WeightEnumerator w10 = weight_distribution(code10.projector, Rational(24));
        require(w10.values[0] == 1 && w10.values[1] == 0 && w10.values[2] == 0,
                "10-qubit enumerator head wrong");
        require(w10.total() == Rational(128) / 3, "10-qubit total != 128/3");
        std::vector<DenseOperator> gens;
        for (const char* s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})
            gens.push_back(DenseOperator::from_pauli(five_word(s)));
        WeightEnumerator w5 = weight_distribution(projector_from_involutions(gens), Rational(2));
        require(w5.values == std::vector<Rational>({1, 0, 0, 0, 15, 0}),
                "[[5,1,3]] enumerator wrong");
        require(satisfies(restricted_constraints(5, 4), w5),
                "[[5,1,3]] fails its feasibility system");
    });

    criterion(8, "determinism: every command yields identical canonical payloads across runs and threads",
              0, [] {
        struct Case {
            const char* label;
            const char* args;
            bool threaded;
        };
        const Case cases[] = {
            {"params", "params --m 1 --a 1", false},
            {"verify", "verify small9", true},
            {"lpbound-theorem", "lpbound --n 42 --mode theorem", false},
            {"lpbound-lp", "lpbound --n 41 --mode lp --s 7", false},
            {"export", "export gottesman --r 1", false},
            {"recover-graph10", "recover-graph10 --out acceptance_g1.json", true},
        };
        for (const Case& c : cases) {
            std::string a1 = std::string(c.args) + (c.threaded ? " --threads 1" : "");
            std::string a2 = std::string(c.args) + (c.threaded ? " --threads 3" : "");
            int e1 = 0, e2 = 0;
            std::string r1 = run_cli(a1, &e1), r2 = run_cli(a2, &e2);
            require(e1 == 0 && e2 == 0, std::string(c.label) + ": nonzero exit");
            bool ok1 = false, ok2 = false;
            std::string p1 = canonical_payload(r1, &ok1), p2 = canonical_payload(r2, &ok2);
            require(ok1 && ok2, std::string(c.label) + ": unparsable report");
            require(ok1 && ok2 && p1 == p2,
                    std::string(c.label) + ": canonical payloads differ");
        }
    });

    std::printf("%s\n", failures == 0 ? "ACCEPTANCE: all criteria pass"
                                      : "ACCEPTANCE: FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
