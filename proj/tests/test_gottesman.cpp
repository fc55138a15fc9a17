#include <catch2/catch_amalgamated.hpp>

#include "qecx/gottesman.hpp"
#include "qecx/serialize.hpp"

using namespace qecx;

/* Minimal s with 2^s >= 3n+1: the distance-3 quantum Hamming bound. */
static int hamming_s(std::size_t n) {
    int s = 0;
    while ((std::size_t(1) << s) < 3 * n + 1) ++s;
    return s;
}

TEST_CASE("bit matrix columns are binary representations") {
    REQUIRE_THROWS_AS(h_matrix(0), std::invalid_argument);
    CheckMatrix m = h_matrix(1);
    REQUIRE(m.n == 32);
    REQUIRE(m.rows.size() == 5);

    SECTION("column 1 is (0,0,0,0,1)^T and the last column all-ones") {
        for (int k = 1; k <= 5; ++k) {
            REQUIRE(m.rows[std::size_t(k - 1)].get(1) == (k == 5));
            REQUIRE(m.rows[std::size_t(k - 1)].get(31));
        }
        for (int k = 1; k <= 5; ++k) REQUIRE(!m.rows[std::size_t(k - 1)].get(0));
    }

    SECTION("every column reconstructs its own index") {
        for (std::size_t q = 0; q < 32; ++q) {
            std::size_t val = 0;
            for (int k = 1; k <= 5; ++k)
                if (m.rows[std::size_t(k - 1)].get(q)) val |= std::size_t(1) << (5 - k);
            REQUIRE(val == q);
        }
    }

    SECTION("row weights are half the block size") {
        for (const auto& row : m.rows) REQUIRE(row.popcount() == 16);
        CheckMatrix m2 = h_matrix(2);
        REQUIRE(m2.n == 128);
        for (const auto& row : m2.rows) REQUIRE(row.popcount() == 64);
    }
}

TEST_CASE("stabilizer generators of the length-32 block") {
    StabilizerCode code = generators(1);
    REQUIRE(code.n == 32);
    REQUIRE(code.generators.size() == 7);

    SECTION("leading X and Z rows span the whole block") {
        REQUIRE(code.generators[0].x.popcount() == 32);
        REQUIRE(code.generators[0].z.none());
        REQUIRE(code.generators[1].x.none());
        REQUIRE(code.generators[1].z.popcount() == 32);
    }

    SECTION("mixed rows follow the bit-matrix recipe with no phase") {
        CheckMatrix m = h_matrix(1);
        for (int k = 1; k <= 5; ++k) {
            const PauliOperator& s = code.generators[std::size_t(k + 1)];
            REQUIRE(s.phase_exp == 0);
            REQUIRE(is_hermitian(s));
            REQUIRE(s.x == m.rows[std::size_t(k - 1)]);
            BinaryVector z(32);
            if (k >= 2) z ^= m.rows[std::size_t(k - 2)];
            z ^= m.rows[0];
            z ^= m.rows[4];
            REQUIRE(s.z == z);
        }
    }

    SECTION("all 21 generator pairs commute and the set has full rank") {
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = i + 1; j < 7; ++j)
                REQUIRE(commutes(code.generators[i], code.generators[j]));
        // independence is enforced in the constructor; a dependent set throws
        std::vector<BinaryVector> sympl;
        for (const auto& g : code.generators) {
            BinaryVector row(64);
            for (std::size_t q = 0; q < 32; ++q) {
                if (g.x.get(q)) row.set(q);
                if (g.z.get(q)) row.set(32 + q);
            }
            sympl.push_back(row);
        }
        REQUIRE(gf2_rank(sympl) == 7);
    }

    SECTION("generators square to +identity") {
        for (const auto& g : code.generators) {
            PauliOperator sq = multiply(g, g);
            REQUIRE(sq == PauliOperator::identity(32));
        }
    }

    SECTION("a single X anticommutes with the full Z row") {
        REQUIRE(!commutes(code.generators[1], PauliOperator::single(32, 1, 'X')));
    }
}

TEST_CASE("purity sweeps across the block family") {
    SECTION("length 32: all 4560 low-weight errors are detected") {
        PurityReport r = verify_pure_distance3(generators(1), 1);
        REQUIRE(r.errors_checked == 4560);
        REQUIRE(r.all_pass);
        REQUIRE(r.violations.empty());
    }

    SECTION("length 128: all 73536 low-weight errors are detected") {
        PurityReport r = verify_pure_distance3(generators(2), 1);
        REQUIRE(r.errors_checked == 73536);
        REQUIRE(r.all_pass);
    }

    SECTION("length 512: all 1178880 low-weight errors are detected") {
        PurityReport r = verify_pure_distance3(generators(3), 0);
        REQUIRE(r.errors_checked == 1178880);
        REQUIRE(r.all_pass);
    }

    SECTION("thread count does not change the outcome") {
        PurityReport a = verify_pure_distance3(generators(1), 1);
        PurityReport b = verify_pure_distance3(generators(1), 3);
        REQUIRE(a.errors_checked == b.errors_checked);
        REQUIRE(a.all_pass == b.all_pass);
        REQUIRE(a.violations.size() == b.violations.size());
    }

    SECTION("a deliberately weak code is caught") {
        StabilizerCode weak;
        weak.n = 32;
        BinaryVector ones(32), zero(32);
        for (std::size_t q = 0; q < 32; ++q) ones.set(q);
        weak.generators.emplace_back(32, ones, zero, 0);
        PurityReport r = verify_pure_distance3(weak, 1);
        REQUIRE(!r.all_pass);
        REQUIRE(r.violations.front() == PauliOperator::single(32, 0, 'X'));
    }

    SECTION("generator count matches the Hamming-bound minimum") {
        for (int r = 1; r <= 3; ++r) {
            std::size_t n = std::size_t(1) << (2 * r + 3);
            REQUIRE(2 * r + 5 == hamming_s(n));
            REQUIRE(generators(r).generators.size() == std::size_t(2 * r + 5));
        }
    }
}

TEST_CASE("stabilizer JSON round trip") {
    StabilizerCode code = generators(1);
    Json j = stabilizer_to_json(code);
    REQUIRE(j.at("n") == 32);
    REQUIRE(j.at("generators").size() == 7);
    REQUIRE(j.at("generators")[0].at("x_mask_hex") == "ffffffff");
    REQUIRE(j.at("generators")[0].at("z_mask_hex") == "0");
    REQUIRE(j.at("generators")[0].at("phase_exp") == 0);

    StabilizerCode back = stabilizer_from_json(j);
    REQUIRE(back.n == code.n);
    REQUIRE(back.generators.size() == code.generators.size());
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        REQUIRE(back.generators[i] == code.generators[i]);
}
