#pragma once

#include "sq2/invariants.hpp"
#include "sq2/module.hpp"
#include "sq2/quotient.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace sq2 {

constexpr int kDefaultDimCap = 20000;

/* H+ M, the radical: closure of { g m } under the generator action. */
inline ModSubspace radical(const GradedModule& M)
{
    std::vector<HomVec> seeds;
    for (const auto& g : M.algebra()->generators())
        for (int m = 0; m < M.dim(); ++m) {
            HomVec y = M.apply_elem(g, M.basis_vec(m));
            if (y.v.any())
                seeds.push_back(std::move(y));
        }
    return submodule_closure(M, seeds);
}

/* Lifts of a basis of M / H+M, scanning unit vectors in degree order
 * (descending local order when reversePivot). */
inline std::vector<HomVec> min_generators(const GradedModule& M, bool reversePivot = false)
{
    ModSubspace rad = radical(M);
    std::vector<HomVec> lifts;
    for (const auto& [q, slot] : M.layout()) {
        CosetReducer r{ std::size_t(slot.second) };
        if (auto it = rad.byDeg.find(q); it != rad.byDeg.end())
            for (const auto& row : it->second.rows())
                r.add_kernel(row);
        for (int c = 0; c < slot.second; ++c) {
            int col = reversePivot ? slot.second - 1 - c : c;
            Gf2Vec v = Gf2Vec::unit(std::size_t(slot.second), std::size_t(col));
            if (r.try_add_rep(v))
                lifts.push_back({ q, std::move(v) });
        }
    }
    return lifts;
}

/* Freeness via the top class (multiplication by t^H_1 on k tensor_H M is a
 * monomorphism iff M is free). The verdict is computed for two different
 * pivoting orders and must agree. */
inline bool is_free(const GradedModule& M)
{
    int t = M.algebra()->top_class();
    auto verdict = [&](bool rev) {
        ModSubspace images;
        for (const auto& m : min_generators(M, rev)) {
            HomVec y = M.apply(t, m);
            if (y.v.none() || !images.insert(M, y))
                return false;
        }
        return true;
    };
    bool a = verdict(false), b = verdict(true);
    if (a != b)
        throw Error("is_free verdict depended on the lift (internal)");
    if (a && std::int64_t(M.dim()) !=
                 std::int64_t(min_generators(M).size()) * M.algebra()->dim())
        throw Error("free module dimension mismatch (internal)");
    return a;
}

struct FreeSplit {
    std::vector<int> shifts; // degrees of the stripped free generators
    GradedModule reduced;    // minimal: the top class annihilates it
};

/* Strips free summands: in each pass, take the least-degree basis vectors
 * whose top-class images are independent, split off the free submodule they
 * generate, and continue on the quotient. Stops when t^H_1 M = 0. */
inline FreeSplit split_free(const GradedModule& M)
{
    FreeSplit out;
    out.reduced = M;
    const AlgebraPtr alg = M.algebra();
    int t = alg->top_class();
    for (;;) {
        const GradedModule& cur = out.reduced;
        ModSubspace images;
        std::vector<HomVec> chosen;
        for (const auto& [q, slot] : cur.layout())
            for (int c = 0; c < slot.second; ++c) {
                HomVec x{ q, Gf2Vec::unit(std::size_t(slot.second), std::size_t(c)) };
                HomVec y = cur.apply(t, x);
                if (y.v.any() && images.insert(cur, y))
                    chosen.push_back(std::move(x));
            }
        if (chosen.empty())
            break;
        ModSubspace L = submodule_closure(cur, chosen);
        if (L.dim() != int(chosen.size()) * alg->dim())
            throw Error("free submodule has wrong dimension (invalid module?)");
        for (const auto& x : chosen)
            out.shifts.push_back(x.deg);
        out.reduced = quotient_module(cur, L).mod;
    }
    std::sort(out.shifts.begin(), out.shifts.end());
    return out;
}

inline GradedModule minimal_representative(const GradedModule& M)
{
    return split_free(M).reduced;
}

/* ker(epsilon) with the left multiplication action. */
inline GradedModule augmentation_ideal_module(const AlgebraPtr& alg)
{
    std::vector<ModuleBasisVec> basis;
    for (int i = 1; i < alg->dim(); ++i)
        basis.push_back({ "i." + alg->label(i), alg->degree(i) });
    std::map<int, std::pair<int, int>> layout;
    for (int g = 0; g < int(basis.size()); ++g) {
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        for (int c = 1; c < alg->dim(); ++c) {
            int q = alg->degree(c);
            if (q + da > alg->top_degree() || !layout.count(q + da))
                continue;
            Gf2Vec prod = alg->mul(a, c);
            if (prod.none())
                continue;
            auto& blk = act[std::size_t(a)][q];
            if (blk.rows() == 0)
                blk = Gf2Mat(std::size_t(layout[q + da].second), std::size_t(layout[q].second));
            int col = (c - 1) - (layout[q].first);
            prod.for_each_set([&](std::size_t m) {
                blk.set(std::size_t(int(m) - 1 - layout[q + da].first), std::size_t(col));
            });
        }
    }
    return GradedModule(alg, std::move(basis), std::move(act));
}

inline void check_dim_cap(std::int64_t dim, int cap, const std::string& what)
{
    if (dim > cap)
        throw ResourceLimitError(what + " would have dimension " + std::to_string(dim) +
                                 " > cap " + std::to_string(cap));
}

/* Omega M = minimal representative of ker(epsilon) tensor M. */
inline GradedModule omega(const GradedModule& M, int cap = kDefaultDimCap)
{
    check_dim_cap(std::int64_t(M.algebra()->dim() - 1) * M.dim(), cap, "Omega tensor");
    GradedModule I = augmentation_ideal_module(M.algebra());
    return minimal_representative(tensor(I, M));
}

/* Omega^{-1} M = (Omega(M*))*. */
inline GradedModule omega_inverse(const GradedModule& M, int cap = kDefaultDimCap)
{
    return minimal_representative(dual(omega(dual(M), cap)));
}

inline GradedModule omega_power(const GradedModule& M, int l, int cap = kDefaultDimCap)
{
    GradedModule cur = minimal_representative(M);
    for (int k = 0; k < std::abs(l); ++k)
        cur = l > 0 ? omega(cur, cap) : omega_inverse(cur, cap);
    return cur;
}

inline bool is_endotrivial(const GradedModule& M, int cap = kDefaultDimCap)
{
    check_dim_cap(std::int64_t(M.dim()) * M.dim(), cap, "End(M)");
    GradedModule E = minimal_representative(tensor(M, dual(M)));
    return E.dim() == 1 && E.dim_at(0) == 1;
}

/* Isomorphism-invariant signature: graded dimensions plus, per algebra
 * generator, the rank of its action out of each degree. */
struct Signature {
    std::vector<std::tuple<int, int, std::vector<int>>> rows;

    bool operator==(const Signature&) const = default;

    std::string to_string() const
    {
        std::ostringstream os;
        for (const auto& [q, d, ranks] : rows) {
            os << q << ":" << d;
            for (int r : ranks)
                os << "," << r;
            os << ";";
        }
        return os.str();
    }
};

inline Signature signature_of(const GradedModule& M)
{
    Signature sig;
    const auto& gens = M.algebra()->generators();
    for (const auto& [q, slot] : M.layout()) {
        std::vector<int> ranks;
        for (const auto& g : gens) {
            int e = *M.algebra()->homogeneous_degree(g);
            Gf2Mat A(std::size_t(M.dim_at(q + e)), std::size_t(slot.second));
            g.for_each_set([&](std::size_t a) {
                if (const Gf2Mat* b = M.block(int(a), q))
                    for (std::size_t r = 0; r < A.rows(); ++r)
                        A.row(r) ^= b->row(r);
            });
            ranks.push_back(int(A.rank()));
        }
        sig.rows.emplace_back(q, slot.second, std::move(ranks));
    }
    return sig;
}

struct StableClass {
    std::string algebra;
    GradedModule minimalRep;
    Signature sig;
    std::optional<std::pair<int, int>> provenance; // (shift m, omega power l)
};

/* sigma(m) Omega^l (k), minimized, with provenance. */
inline StableClass picard_element(const AlgebraPtr& alg, int m, int l, int cap = kDefaultDimCap)
{
    GradedModule rep = shift_module(omega_power(trivial_module(alg), l, cap), m);
    StableClass c;
    c.algebra = alg->descriptor();
    c.sig = signature_of(rep);
    c.minimalRep = std::move(rep);
    c.provenance = { m, l };
    return c;
}

enum class StableVerdict { Yes, No, Unknown };

inline const char* to_string(StableVerdict v)
{
    switch (v) {
    case StableVerdict::Yes:
        return "yes";
    case StableVerdict::No:
        return "no";
    default:
        return "unknown";
    }
}

inline StableVerdict stably_iso(const GradedModule& M, const GradedModule& N)
{
    if (!same_algebra(M, N))
        return StableVerdict::No;
    GradedModule a = minimal_representative(M);
    GradedModule b = minimal_representative(N);
    if (!(signature_of(a) == signature_of(b)))
        return StableVerdict::No;
    if (a.dim() == 0 && b.dim() == 0)
        return StableVerdict::Yes;
    if (modules_identical(a, b))
        return StableVerdict::Yes;
    if (find_graded_iso(a, b))
        return StableVerdict::Yes;
    return StableVerdict::Unknown;
}

/* Conjunction of freeness over the restrictions. Whether this equals
 * is_free(M) is itself a tested property, not assumed. */
inline bool detect_freeness_via(const GradedModule& M,
                                const std::vector<SubalgebraEmbedding>& subs)
{
    for (const auto& Z : subs)
        if (!is_free(restrict_module(M, Z)))
            return false;
    return true;
}

/* Hypothesis checker for the degree-comparison freeness lemma. */
struct ReductionCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReductionReport {
    std::vector<ReductionCheck> checks;

    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

inline ReductionReport check_reduction_hypotheses(const AlgebraPtr& H, const GradedSubspace& E1,
                                                  const GradedSubspace& E2, const Gf2Vec& t1,
                                                  const Gf2Vec& t2,
                                                  const std::optional<Gf2Vec>& z,
                                                  int enumCap = 20)
{
    ReductionReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({ std::move(name), pass, std::move(detail) });
    };

    if (t1.none()) {
        add("t1-nonzero", false, "t1 zero");
        return rep;
    }
    add("t1-nonzero", true);
    if (t2.none()) {
        add("t2-nonzero", false, "t2 zero");
        return rep;
    }
    add("t2-nonzero", true);

    int d1 = *H->homogeneous_degree(t1);
    int d2 = *H->homogeneous_degree(t2);
    add("t1-in-E1", E1.contains_elem(t1));
    add("t2-in-E2", E2.contains_elem(t2));
    add("t1t2-nonzero", H->mul_elem(t1, t2).any());
    add("degree-sum |t1|+|t2|=|H|", d1 + d2 == H->top_degree(),
        std::to_string(d1) + "+" + std::to_string(d2) + " vs " +
            std::to_string(H->top_degree()));

    int zDeg = -1;
    if (z) {
        auto dz = H->homogeneous_degree(*z);
        if (!dz || z->none()) {
            add("z-nonzero-homogeneous", false);
            return rep;
        }
        zDeg = *dz;
    }

    bool cond2 = true;
    std::string cond2detail;
    for (const auto& [q, e] : E2.byDeg) {
        if (q <= 0 || q > d1 || e.dim() == 0)
            continue;
        if (int(e.dim()) > enumCap) {
            cond2 = false;
            cond2detail = "degree " + std::to_string(q) + " slice too large to enumerate";
            break;
        }
        std::uint64_t total = std::uint64_t(1) << e.dim();
        for (std::uint64_t mask = 1; mask < total; ++mask) {
            Gf2Vec y(std::size_t(H->dim()));
            for (std::size_t k = 0; k < e.dim(); ++k)
                if ((mask >> k) & 1)
                    y ^= e.rows()[k];
            if (!z || q != zDeg || !(y == *z)) {
                cond2 = false;
                cond2detail = "nonzero y in E2+ of degree " + std::to_string(q) +
                              " <= |t1| that is not z";
                break;
            }
        }
        if (!cond2)
            break;
    }
    add("condition-2 low-degree", cond2, cond2detail);

    if (z) {
        add("z-in-E2", E2.contains_elem(*z));
        add("z-square-zero", H->mul_elem(*z, *z).none());
        Gf2Vec zt1 = H->mul_elem(*z, t1);
        add("zt1-nonzero", zt1.any());
        add("zt1-in-E1", E1.contains_elem(zt1));
        add("z-in-E1 (informational)", true,
            E1.contains_elem(*z) ? "z in E1: yes" : "z in E1: no");
    }
    return rep;
}

} // namespace sq2
