#include "sq2/gf2.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sq2;

namespace {

Gf2Vec random_vec(std::mt19937_64& rng, std::size_t n)
{
    Gf2Vec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1)
            v.set(i);
    return v;
}

Gf2Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c)
{
    Gf2Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        m.row(i) = random_vec(rng, c);
    return m;
}

} // namespace

TEST_CASE("bit vector basics")
{
    Gf2Vec v(130);
    REQUIRE(v.none());
    v.set(0);
    v.set(64);
    v.set(129);
    REQUIRE(v.count() == 3);
    REQUIRE(v.lowest() == 0);
    v.flip(0);
    REQUIRE(v.lowest() == 64);
    Gf2Vec w(130);
    w.set(64);
    v ^= w;
    REQUIRE(v.count() == 1);
    REQUIRE(v.get(129));

    Gf2Vec a(8), b(8);
    a.set(1);
    a.set(3);
    b.set(3);
    b.set(5);
    REQUIRE(a.dot(b) == true);
    b.set(1);
    REQUIRE(a.dot(b) == false);
}

TEST_CASE("xor_shifted and slice")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 100, off = rng() % 80;
        Gf2Vec src = random_vec(rng, n);
        Gf2Vec dst = random_vec(rng, off + n + rng() % 30);
        Gf2Vec expect = dst;
        src.for_each_set([&](std::size_t i) { expect.flip(off + i); });
        dst.xor_shifted(src, off);
        REQUIRE(dst == expect);
        REQUIRE(dst.slice(off, n).size() == n);
    }
}

TEST_CASE("matrix multiply, transpose, apply")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 20, c = 1 + rng() % 20, c2 = 1 + rng() % 20;
        Gf2Mat A = random_mat(rng, r, c), B = random_mat(rng, c, c2);
        Gf2Vec v = random_vec(rng, c2);
        REQUIRE(A.mul(B).apply(v) == A.apply(B.apply(v)));
        REQUIRE(A.transposed().transposed() == A);
        REQUIRE(A.rank() == A.transposed().rank());
    }
}

TEST_CASE("kernel, solve, inverse")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng() % 16, c = 1 + rng() % 16;
        Gf2Mat A = random_mat(rng, r, c);
        for (const auto& k : A.kernel_basis())
            REQUIRE(A.apply(k).none());
        REQUIRE(A.kernel_basis().size() == c - A.rank());

        Gf2Vec x = random_vec(rng, c);
        Gf2Vec b = A.apply(x);
        auto sol = A.solve(b);
        REQUIRE(sol.has_value());
        REQUIRE(A.apply(*sol) == b);

        if (r == c) {
            auto inv = A.inverse();
            REQUIRE(inv.has_value() == (A.rank() == r));
            if (inv)
                REQUIRE(A.mul(*inv) == Gf2Mat::identity(r));
        }
    }
}

TEST_CASE("echelon subspaces")
{
    std::mt19937_64 rng(31);
    Echelon e(24);
    std::vector<Gf2Vec> inserted;
    for (int k = 0; k < 40; ++k) {
        Gf2Vec v = random_vec(rng, 24);
        e.insert(v);
        inserted.push_back(v);
    }
    for (const auto& v : inserted)
        REQUIRE(e.contains(v));
    for (const auto& v : inserted)
        REQUIRE_FALSE(e.insert(v));
    REQUIRE(e.dim() <= 24);
    Gf2Vec sum(24);
    for (const auto& v : inserted)
        sum ^= v;
    REQUIRE(e.contains(sum));
}

TEST_CASE("coset reducer expresses vectors in representative coordinates")
{
    std::mt19937_64 rng(37);
    CosetReducer r(20);
    std::vector<Gf2Vec> kernel, reps;
    for (int k = 0; k < 6; ++k) {
        Gf2Vec v = random_vec(rng, 20);
        if (r.add_kernel(v))
            kernel.push_back(v);
    }
    for (int k = 0; k < 20 && r.dim() < 20; ++k) {
        Gf2Vec v = random_vec(rng, 20);
        if (r.try_add_rep(v))
            reps.push_back(v);
    }
    REQUIRE(reps.size() >= 2);
    for (int trial = 0; trial < 50; ++trial) {
        Gf2Vec combo(20);
        Gf2Vec coordsWant{ reps.size() };
        for (std::size_t k = 0; k < reps.size(); ++k)
            if (rng() & 1) {
                combo ^= reps[k];
                coordsWant.flip(k);
            }
        for (const auto& v : kernel)
            if (rng() & 1)
                combo ^= v;
        auto [coords, exact] = r.reduce(combo);
        REQUIRE(exact);
        REQUIRE(coords == coordsWant);
    }
}
