#include "sq2/invariants.hpp"
#include "sq2/modfile.hpp"
#include "sq2/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sq2;

namespace {

GradedModule joker()
{
    auto A1 = alg_A(1);
    return cyclic_module(A1, { *A1->elem(parse_element("Sq(3)")) });
}

} // namespace

TEST_CASE("module files round-trip byte-exactly")
{
    auto A1 = alg_A(1);
    std::vector<GradedModule> mods;
    mods.push_back(free_module(A1, { 0 }));
    mods.push_back(joker());
    mods.push_back(tensor(joker(), trivial_module(A1)));
    mods.push_back(dual(joker()));
    mods.push_back(shift_module(trivial_module(A1), -3));
    for (const auto& M : mods) {
        std::string text = write_module(M);
        GradedModule back = read_module(text);
        REQUIRE(write_module(back) == text);
        REQUIRE(back.basis() == M.basis());
        REQUIRE(validate_module(back).ok);
    }
}

TEST_CASE("modules over quotient algebras serialize through their descriptor")
{
    auto A1 = alg_A(1), E1 = alg_E(1);
    auto Q = make_quotient(A1, milnor_embedding(E1, A1));
    GradedModule inv = invariant_module(free_module(A1, { 0 }), Q).mod;
    std::string text = write_module(inv);
    REQUIRE(text.find("algebra quotient:A:1/E:1") == 0);
    GradedModule back = read_module(text);
    REQUIRE(write_module(back) == text);
}

TEST_CASE("missing action lines are rejected unless degrees force zero")
{
    /* k over A(1): every action is degree-forced, no lines needed. */
    REQUIRE(read_module("algebra A:1\nbasis k0 0\n").dim() == 1);

    /* Dropping a required action line fails. */
    std::string text = write_module(joker());
    std::string cut;
    bool dropped = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!dropped && line.rfind("action Sq(1) ", 0) == 0) {
            dropped = true;
            continue;
        }
        cut += line + "\n";
    }
    REQUIRE(dropped);
    REQUIRE_THROWS_WITH(read_module(cut), Catch::Matchers::ContainsSubstring("missing"));

    /* An explicit zero line is fine where degrees allow a nonzero action. */
    std::string zeros = "algebra A:1\nbasis a 0\nbasis b 3\n"
                        "action Sq(0,1)\naction Sq(3)\n";
    GradedModule M = read_module(zeros);
    REQUIRE(M.dim() == 2);
    REQUIRE(validate_module(M).ok);
    REQUIRE(write_module(M) == zeros);
}

TEST_CASE("malformed module files raise typed errors")
{
    REQUIRE_THROWS_AS(read_module("basis x 0\n"), Error);
    REQUIRE_THROWS_AS(read_module("algebra A:1\nbasis x\n"), Error);
    REQUIRE_THROWS_AS(read_module("algebra A:1\nbasis x 0\naction Sq(9) 0,0\n"), Error);
    REQUIRE_THROWS_AS(read_module("algebra A:1\nbasis x 0\nbogus\n"), Error);
    REQUIRE_THROWS_AS(read_module("algebra A:1\nbasis x 0\nbasis x 0\n"), Error);
    REQUIRE_THROWS_AS(
        read_module("algebra A:1\nbasis a 0\nbasis b 1\naction Sq(1) 0,1\n"), Error);

    /* Seeded corruptions either fail with a typed error or stay canonical. */
    std::string good = write_module(joker());
    std::mt19937_64 rng(77);
    for (int t = 0; t < 60; ++t) {
        std::string bad = good;
        std::size_t pos = rng() % bad.size();
        switch (rng() % 3) {
        case 0:
            bad[pos] = char('0' + rng() % 10);
            break;
        case 1:
            bad.erase(pos, 1 + rng() % 3);
            break;
        default:
            bad.insert(pos, "9");
            break;
        }
        try {
            GradedModule M = read_module(bad);
            std::string re = write_module(M);
            REQUIRE(write_module(read_module(re)) == re);
        } catch (const Error&) {
            /* typed rejection is the expected outcome */
        }
    }
}

TEST_CASE("stable class serialization")
{
    StableClass c = picard_element(alg_A(1), 1, -1);
    std::string text = write_stable_class(c);
    REQUIRE(text.rfind("stableclass\n", 0) == 0);
    REQUIRE(text.find("provenance m=1 l=-1\n") != std::string::npos);
    REQUIRE(text.find("sig ") != std::string::npos);
    REQUIRE(text.find("module\nalgebra A:1\n") != std::string::npos);
    REQUIRE(text.find("end\n") != std::string::npos);

    /* Digests are stable across rebuilds. */
    StableClass c2 = picard_element(alg_A(1), 1, -1);
    REQUIRE(fnv1a64_hex(write_module(c.minimalRep)) ==
            fnv1a64_hex(write_module(c2.minimalRep)));
}
