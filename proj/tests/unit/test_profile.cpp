#include "sq2/profile.hpp"
#include "sq2/descriptors.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sq2;

TEST_CASE("profile validity")
{
    REQUIRE(validate_profile(Profile({ 3, 2, 1 })).valid);         // A(2)
    REQUIRE(validate_profile(Profile({ 0, 2 })).valid);            // J(2)
    REQUIRE(validate_profile(Profile({ 1 })).valid);               // A(0)
    REQUIRE_FALSE(validate_profile(Profile({ 2 })).valid);
    REQUIRE(validate_profile(Profile({})).valid);

    /* B_1 carries a constant tail and is normal in the ambient algebra;
     * its finite truncations are not. */
    REQUIRE(validate_profile(profile_B(1)).normal_in_ambient);
    REQUIRE(validate_profile(profile_B(3)).normal_in_ambient);
    REQUIRE_FALSE(validate_profile(profile_E(2)).normal_in_ambient);
    REQUIRE(validate_profile(profile_B(2)).valid);
}

TEST_CASE("named families")
{
    REQUIRE(profile_A(2) == Profile({ 3, 2, 1 }));
    REQUIRE(profile_A(0) == Profile({ 1 }));
    REQUIRE(profile_E(1) == Profile({ 1, 1 }));
    REQUIRE(profile_J(2) == Profile({ 0, 2 }));
    REQUIRE(profile_J(1) == Profile({ 1 }));

    /* B'_1(2) = D_1(2) = (2,2,1). */
    REQUIRE(profile_Bprime(2, 1) == Profile({ 2, 2, 1 }));
    REQUIRE(profile_D(2, 1) == Profile({ 2, 2, 1 }));
    REQUIRE(profile_Bprime(3, 1) == Profile({ 2, 2, 2, 1 }));
    REQUIRE(profile_Bprime(3, 2) == Profile({ 1, 3, 2, 1 }));
    REQUIRE(profile_D(3, 2) == Profile({ 0, 3, 2, 1 }));
    REQUIRE(profile_Y(3, 2) == Profile({ 0, 0, 2 }));
    REQUIRE(profile_X(3, 2) == Profile({ 0, 3, 0, 1 }));

    /* O_{a+1}(3): generators P^0_2, P^0_3, P^0_4; dimension 8. */
    REQUIRE(profile_O(3, 2) == Profile({ 0, 1, 1, 1 }));
    REQUIRE(profile_O(3, 2).dimension() == 8);

    REQUIRE_THROWS_AS(profile_Bprime(1, 1), Error);
    REQUIRE_THROWS_AS(profile_Bprime(2, 2), Error); // a+1 = 1
    REQUIRE_THROWS_AS(profile_D(3, 3), Error);
    REQUIRE_THROWS_AS(profile_O(2, 4), Error);
    REQUIRE_THROWS_AS(profile_J(0), Error);
}

TEST_CASE("intersection")
{
    REQUIRE(profile_intersect(profile_B(2), profile_A(2)) == Profile({ 0, 2, 1 }));
    Profile p({ 2, 1 });
    REQUIRE(profile_intersect(p, p) == p);
    REQUIRE(profile_intersect(p, Profile({})) == Profile({}));
    REQUIRE(profile_intersect(profile_B(1), profile_A(1)) == profile_E(1));
}

TEST_CASE("dimension and top degree formulas")
{
    REQUIRE(profile_A(1).dimension() == 8);
    REQUIRE(profile_A(1).top_degree() == 6);
    REQUIRE(profile_A(2).dimension() == 64);
    REQUIRE(profile_A(2).top_degree() == 23);
    REQUIRE(profile_E(1).dimension() == 4);
    REQUIRE(profile_E(1).top_degree() == 4);
    REQUIRE(profile_A(3).dimension() == 1024);
    REQUIRE(profile_A(3).top_degree() == 72);
}

TEST_CASE("profile sufficiency shortcuts for the named families")
{
    /* D_i(n) from B'_i(n) by zeroing below i, agreeing from t = i on. */
    REQUIRE(profile_extension_hypotheses(profile_D(2, 1), profile_Bprime(2, 1), 1));
    REQUIRE(profile_extension_hypotheses(profile_D(3, 2), profile_Bprime(3, 2), 2));
    REQUIRE(profile_extension_hypotheses(profile_Bprime(3, 2), profile_A(3), 2));
    /* B'_1(n) agrees with A(n) only from t = n, not from t = i = 1. */
    REQUIRE_FALSE(profile_extension_hypotheses(profile_Bprime(2, 1), profile_A(2), 1));
    REQUIRE(profile_extension_hypotheses(profile_Bprime(2, 1), profile_A(2), 2));

    /* Zeroing a slot. */
    REQUIRE(profile_slot_zeroing_hypotheses(Profile({ 0, 0 }), profile_J(2), 2));
    REQUIRE(profile_slot_zeroing_hypotheses(profile_Y(3, 2), Profile({ 0, 2, 2 }), 2));
}

TEST_CASE("maximal elementary profiles")
{
    auto m1 = maximal_elementary_profiles(profile_A(1));
    REQUIRE(m1.size() == 1);
    REQUIRE(m1[0] == profile_E(1));

    auto m2 = maximal_elementary_profiles(profile_A(2));
    REQUIRE(m2.size() == 2);

    auto m4 = maximal_elementary_profiles(profile_A(4));
    REQUIRE(m4.size() == 3);

    auto mx = maximal_elementary_profiles(profile_X(3, 2));
    REQUIRE(mx.size() == 1);
    REQUIRE(mx[0] == Profile({ 0, 2, 0, 1 }));
}

TEST_CASE("descriptors")
{
    REQUIRE(profile_from_descriptor("A:2") == profile_A(2));
    REQUIRE(profile_from_descriptor("Bprime:3,2") == profile_Bprime(3, 2));
    REQUIRE(profile_from_descriptor("profile:3,2,1") == profile_A(2));
    REQUIRE(profile_from_descriptor("Bi:2") == profile_B(2));
    REQUIRE_THROWS_AS(profile_from_descriptor("Q:1"), Error);
    REQUIRE_THROWS_AS(profile_from_descriptor("profile:2"), Error);
    REQUIRE_THROWS_AS(resolve_algebra("Bi:1"), Error); // infinite
    REQUIRE(resolve_algebra("quotient:A:1/E:1")->dim() == 2);
    REQUIRE_THROWS_AS(resolve_algebra("quotient:A:1/A:0"), Error); // not normal
}
