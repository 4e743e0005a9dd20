#include "sq2/algebra.hpp"
#include "sq2/verify.hpp"
#include "support/hopf_checks.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sq2;

TEST_CASE("built algebras match the profile formulas")
{
    auto A1 = alg_A(1);
    REQUIRE(A1->dim() == 8);
    REQUIRE(A1->top_degree() == 6);
    REQUIRE(A1->label(A1->top_class()) == "Sq(3,1)");

    auto A2 = alg_A(2);
    REQUIRE(A2->dim() == 64);
    REQUIRE(A2->top_degree() == 23);
    REQUIRE(A2->label(A2->top_class()) == "Sq(7,3,1)");
    REQUIRE(A2->generator_labels().size() == 6);

    auto E1 = alg_E(1);
    REQUIRE(E1->dim() == 4);
    REQUIRE(E1->top_degree() == 4);
    REQUIRE(E1->generator_labels() ==
            std::vector<std::string>{ "Sq(1)", "Sq(0,1)" });

    REQUIRE_THROWS_AS(MilnorAlgebra(Profile({ 2 }), "bad"), Error);
}

TEST_CASE("products stay inside the basis span (closure)")
{
    for (const auto& A : { alg_A(1), alg_A(2), alg_E(2), alg_D(2, 1) })
        for (int i = 0; i < A->dim(); ++i)
            for (int j = 0; j < A->dim(); ++j) {
                Gf2Vec p = A->mul(i, j); // throws if a term escapes
                if (A->degree(i) + A->degree(j) > A->top_degree())
                    REQUIRE(p.none());
            }
}

TEST_CASE("basis is sorted by degree then lexicographically")
{
    auto A2 = alg_A(2);
    for (int i = 1; i < A2->dim(); ++i) {
        REQUIRE(A2->degree(i - 1) <= A2->degree(i));
        if (A2->degree(i - 1) == A2->degree(i))
            REQUIRE(A2->monomial(i - 1) < A2->monomial(i));
    }
    REQUIRE(A2->degree(0) == 0);
}

TEST_CASE("hopf axioms on small algebras and their quotients")
{
    REQUIRE(sq2::testing::hopf_axioms(*alg_A(1)));
    REQUIRE(sq2::testing::hopf_axioms(*alg_E(2)));
    REQUIRE(sq2::testing::hopf_axioms(*alg_A(2), /*withCompat=*/false));
}

TEST_CASE("antipode is an involution on A(2)")
{
    auto A2 = alg_A(2);
    for (int i = 0; i < A2->dim(); ++i)
        REQUIRE(A2->antipode_elem(A2->antipode(i)) ==
                Gf2Vec::unit(std::size_t(A2->dim()), std::size_t(i)));
}

TEST_CASE("poincare pairing is nonsingular")
{
    REQUIRE(poincare_pairing_nonsingular(*alg_A(1)));
    REQUIRE(poincare_pairing_nonsingular(*alg_A(2)));
    REQUIRE(poincare_pairing_nonsingular(*alg_E(2)));
    REQUIRE(poincare_pairing_nonsingular(*alg_D(2, 1)));
}

TEST_CASE("elementary detection")
{
    REQUIRE(is_elementary(*alg_E(2)));
    REQUIRE_FALSE(is_elementary(*alg_A(1)));
    REQUIRE(is_elementary(*alg_profile(profile_intersect(profile_B(2), profile_A(2)))));
    REQUIRE(is_elementary(*alg_O(3, 2)));
}

TEST_CASE("ordered generator product is nonzero with its leading term")
{
    for (const auto& p : { profile_A(2), profile_E(3), profile_J(3), profile_D(3, 2) }) {
        MilnorElement prod = ordered_generator_product(p);
        REQUIRE_FALSE(prod.is_zero());
        REQUIRE(prod.contains(profile_top_monomial(p)));
        REQUIRE(prod.degree() == p.top_degree());
    }
}

TEST_CASE("embeddings")
{
    auto A1 = alg_A(1), A2 = alg_A(2), E1 = alg_E(1);
    SubalgebraEmbedding e = milnor_embedding(E1, A1);
    for (int k = 0; k < E1->dim(); ++k)
        REQUIRE(A1->monomial(e.index[std::size_t(k)]) == E1->monomial(k));
    REQUIRE_THROWS_AS(milnor_embedding(A2, A1), Error);
}

TEST_CASE("element helpers")
{
    auto A1 = alg_A(1);
    auto v = A1->elem(parse_element("Sq(3)+Sq(0,1)"));
    REQUIRE(v.has_value());
    REQUIRE(A1->homogeneous_degree(*v) == 3);
    REQUIRE(A1->to_milnor(*v) == parse_element("Sq(3)+Sq(0,1)"));
    REQUIRE(A1->format_elem(*v) == "Sq(0,1)+Sq(3)");
    REQUIRE_FALSE(A1->elem(parse_element("Sq(4)")).has_value());
    auto mixed = A1->elem(parse_element("Sq(1)+Sq(2)"));
    REQUIRE_FALSE(A1->homogeneous_degree(*mixed).has_value());
}
