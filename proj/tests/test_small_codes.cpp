#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "qecx/serialize.hpp"
#include "qecx/small_codes.hpp"

using namespace qecx;

static const std::string kDataDir = std::string(QECX_SOURCE_DIR) + "/data";

/* Frozen result of the exhaustive ten-vertex recovery: the search space of
   32768 orbit-closed graphs contains exactly one graph passing the weight
   <= 2 purity sweep. */
static const std::uint32_t kG1Mask = 10379;
static const std::vector<std::pair<int, int>> kG1Edges = {
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 6}, {2, 7}, {3, 4},
    {3, 8}, {4, 9}, {5, 6}, {5, 7}, {5, 8}, {5, 9}, {6, 8}, {7, 9}};

static Graph frozen_g1() {
    return graph_from_json(load_json_file(kDataDir + "/g1.json"));
}

/* Shared across sections: Catch2 re-enters a test case once per leaf section,
   and the recovery sweep and code builds are too slow to repeat. */
static const SmallCode& code9_once() {
    static const SmallCode c = build_code9();
    return c;
}
static const SmallCode& code10_once() {
    static const SmallCode c = build_code10(frozen_g1());
    return c;
}
static const RecoveryReport& recovery_once() {
    static const RecoveryReport r = recover_graph10_report(1);
    return r;
}

TEST_CASE("nine-qubit code construction") {
    const SmallCode& c = code9_once();
    REQUIRE(c.declared_dimension == 12);
    REQUIRE(c.projector.trace() == DyadicComplex(12));
    REQUIRE(c.observables.size() == 6);

    SECTION("observables are commuting Hermitian involutions") {
        for (std::size_t i = 0; i < 6; ++i) {
            REQUIRE(c.observables[i].is_hermitian());
            REQUIRE(is_involution(c.observables[i]));
            for (std::size_t j = i + 1; j < 6; ++j)
                REQUIRE(do_commute(c.observables[i], c.observables[j]));
        }
    }

    SECTION("X-pair observables equal products of graph-state stabilizers") {
        // conjugating X_a X_b by the edge layer gives the product of the
        // single-vertex stabilizers X_v Z_N(v)
        Graph g = cycle_graph(9);
        auto pair_obs = [&](int a, int b) {
            return PauliSum::from_pauli(
                multiply(graph_state_stabilizer(g, a), graph_state_stabilizer(g, b)));
        };
        REQUIRE(c.sums[0] == pair_obs(3, 8));
        REQUIRE(c.sums[1] == pair_obs(6, 2));
        REQUIRE(c.sums[2] == pair_obs(9, 5));
    }

    SECTION("product of the three v-type observables has trace 2^8") {
        const PauliSum& a0 = c.named("A_0");
        REQUIRE(a0.trace() == DyadicComplex(256));
        DenseOperator d = matmul(matmul(c.observables[3], c.observables[4]),
                                 c.observables[5]);
        REQUIRE(d.trace() == DyadicComplex(256));
        REQUIRE(d == a0.to_dense());
    }

    SECTION("unknown tag lookup throws") {
        REQUIRE_THROWS_AS(c.named("B_0"), std::invalid_argument);
    }

    SECTION("pure distance-3: all weight <= 2 errors vanish on the code") {
        auto errors = enumerate_errors(9, 2);
        REQUIRE(errors.size() == 351);
        KlReport r = kl_check(c.projector, errors, 1);
        REQUIRE(r.errors_checked == 351);
        REQUIRE(r.all_pass);
        REQUIRE(r.pure);
        REQUIRE(r.violations.empty());
        REQUIRE(r.nonzero_c.empty());
    }
}

TEST_CASE("codeword subsets") {
    CodewordSet cw = codeword_subsets();
    REQUIRE(cw.subsets.size() == 24);

    // index ((i-1)*2 + mu)*2 + nu
    REQUIRE((cw.subsets[0] == std::set<int>{}));                    // i=1 mu=0 nu=0
    REQUIRE((cw.subsets[1] == std::set<int>{1, 2, 5}));             // i=1 mu=0 nu=1
    REQUIRE((cw.subsets[2] == std::set<int>{0, 2, 3}));             // i=1 mu=1 nu=0
    REQUIRE((cw.subsets[3] == std::set<int>{0, 2, 4, 5}));          // i=1 mu=1 nu=1
    REQUIRE((cw.subsets[4] == std::set<int>{1, 2, 3, 9}));          // i=2 mu=0 nu=0

    SECTION("all 24 subsets distinct") {
        std::set<std::set<int>> uniq(cw.subsets.begin(), cw.subsets.end());
        REQUIRE(uniq.size() == 24);
    }

    SECTION("hand-computed entry i=2 mu=1 nu=0") {
        // pi(C_2) ^ A = pi({1,2,3,9}) ^ {0,2,3} = {4,3,2,6} ^ {0,2,3} = {0,4,6}
        REQUIRE((cw.subsets[6] == std::set<int>{0, 4, 6}));
    }
}

TEST_CASE("symmetries of the ten-vertex graph") {
    PermutationMap pi = perm_pi(), tau = perm_tau();
    SECTION("both are involutions") {
        REQUIRE(pi.compose(pi).is_identity());
        REQUIRE(tau.compose(tau).is_identity());
    }
    SECTION("they commute") {
        REQUIRE(pi.compose(tau) == tau.compose(pi));
    }
    SECTION("frozen graph admits both") {
        Graph g = frozen_g1();
        REQUIRE(is_automorphism(g, pi));
        REQUIRE(is_automorphism(g, tau));
    }
}

TEST_CASE("ten-vertex graph recovery") {
    const RecoveryReport& rep = recovery_once();
    REQUIRE(rep.orbits.size() == 15);
    REQUIRE(rep.candidates_tested == 32768);

    SECTION("the solution is unique and matches the frozen data file") {
        REQUIRE(rep.solutions.size() == 1);
        REQUIRE(rep.solutions[0].orbit_mask == kG1Mask);
        REQUIRE(rep.chosen.edges() == kG1Edges);
        REQUIRE(rep.chosen == frozen_g1());
    }

    SECTION("thread count does not change the outcome") {
        RecoveryReport rep3 = recover_graph10_report(3);
        REQUIRE(rep3.solutions.size() == rep.solutions.size());
        REQUIRE(rep3.solutions[0].orbit_mask == rep.solutions[0].orbit_mask);
        REQUIRE(rep3.chosen == rep.chosen);
    }
}

TEST_CASE("ten-qubit code construction") {
    Graph g = frozen_g1();
    const SmallCode& c = code10_once();  // build verifies all 24 codewords
    REQUIRE(c.declared_dimension == 24);
    REQUIRE(c.projector.trace() == DyadicComplex(24));

    SECTION("trace of the bare-letter observable B_0 is 2^9") {
        REQUIRE(c.named("B_0").trace() == DyadicComplex(512));
        REQUIRE(c.observables[3].trace() == DyadicComplex(512));
    }

    SECTION("observables are commuting Hermitian involutions") {
        for (std::size_t i = 0; i < 6; ++i) {
            REQUIRE(c.observables[i].is_hermitian());
            REQUIRE(is_involution(c.observables[i]));
            for (std::size_t j = i + 1; j < 6; ++j)
                REQUIRE(do_commute(c.observables[i], c.observables[j]));
        }
    }

    SECTION("codewords with distinct subsets are orthogonal") {
        CodewordSet cw = codeword_subsets();
        StateVector base = StateVector::graph_state_signs(g);
        StateVector a = base, b = base;
        a.apply_z_subset(g, cw.subsets[0]);
        b.apply_z_subset(g, cw.subsets[7]);
        DyadicComplex ip;
        for (std::size_t i = 0; i < a.amp.size(); ++i)
            ip = ip + a.amp[i].conj() * b.amp[i];
        REQUIRE(ip.is_zero());
    }

    SECTION("pure distance-3: all weight <= 2 errors vanish on the code") {
        auto errors = enumerate_errors(10, 2);
        REQUIRE(errors.size() == 435);
        KlReport r = kl_check(c.projector, errors, 1);
        REQUIRE(r.errors_checked == 435);
        REQUIRE(r.all_pass);
        REQUIRE(r.pure);
    }

    SECTION("graphs without the symmetries are rejected") {
        Graph bad(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
        bad.add_edge(0, 1);
        REQUIRE_THROWS_AS(build_code10(bad), std::invalid_argument);
        REQUIRE_THROWS_AS(build_code10(cycle_graph(10)), std::invalid_argument);
    }

    /* Conjugation by Z on one of the displacement qubits {0,1,2,6,7} must
       negate exactly the observable reading that coordinate and fix the
       other five; this covariance is what the pasted-code sweeps rely on. */
    SECTION("Z displacements map the family to itself with matching signs") {
        const char* flipped[5] = {"beta_1", "beta_2", "beta_3", "B_1", "B_2"};
        const int qubit[5] = {0, 1, 2, 6, 7};
        for (int k = 0; k < 5; ++k) {
            std::uint64_t mask = std::uint64_t(1) << qubit[k];
            for (std::size_t j = 0; j < 6; ++j) {
                PauliSum moved = conj_diag_z(c.sums[j], mask);
                if (c.names[j] == flipped[k])
                    REQUIRE(moved == c.sums[j].scaled(DyadicComplex(-1)));
                else
                    REQUIRE(moved == c.sums[j]);
            }
        }
    }

    /* Z on a non-displacement qubit has no reason to normalize the family;
       check one does not, so the displacement set is not vacuous. */
    SECTION("Z on a non-displacement qubit moves some observable") {
        std::uint64_t mask = std::uint64_t(1) << 3;
        bool moved = false;
        for (std::size_t j = 0; j < 6 && !moved; ++j) {
            PauliSum s = conj_diag_z(c.sums[j], mask);
            if (!(s == c.sums[j]) && !(s == c.sums[j].scaled(DyadicComplex(-1))))
                moved = true;
        }
        REQUIRE(moved);
    }
}

TEST_CASE("graph JSON round trip") {
    Graph g = cycle_graph(9);
    Json j = graph_to_json(g);
    REQUIRE(j.at("vertices").size() == 9);
    REQUIRE(j.at("edges").size() == 9);
    REQUIRE(j.at("edges")[0] == Json::array({1, 2}));
    REQUIRE(graph_from_json(j) == g);

    SECTION("malformed edge rejected") {
        Json bad = j;
        bad["edges"][0] = Json::array({1, 2, 3});
        REQUIRE_THROWS_AS(graph_from_json(bad), std::invalid_argument);
    }
}
