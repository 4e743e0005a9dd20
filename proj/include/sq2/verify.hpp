#pragma once

#include "sq2/descriptors.hpp"
#include "sq2/invariants.hpp"
#include "sq2/modfile.hpp"
#include "sq2/module.hpp"
#include "sq2/quotient.hpp"
#include "sq2/stable.hpp"
#include "sq2/version.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace sq2 {

struct CheckResult {
    std::string name;
    std::string status; // pass | fail | skipped
    std::string detail;
};

struct Report {
    std::string job;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> digests;
    std::string note;
    double elapsedSec = 0;

    bool passed() const
    {
        for (const auto& c : checks)
            if (c.status == "fail")
                return false;
        return true;
    }

    std::string to_text(bool withTimings = true) const
    {
        std::ostringstream os;
        os << "job: " << job << "\n";
        os << "params:";
        for (const auto& [k, v] : params)
            os << " " << k << "=" << v;
        os << "\n";
        os << "seed: " << seed << "\n";
        os << "version: " << version << "\n";
        for (const auto& c : checks) {
            os << "check: " << c.name << " | " << c.status;
            if (!c.detail.empty())
                os << " | " << c.detail;
            os << "\n";
        }
        for (const auto& [k, v] : digests)
            os << "digest: " << k << " " << v << "\n";
        if (!note.empty())
            os << "note: " << note << "\n";
        os << "result: " << (passed() ? "pass" : "fail") << "\n";
        if (withTimings) {
            std::ostringstream t;
            t.setf(std::ios::fixed);
            t.precision(2);
            t << elapsedSec;
            os << "elapsed-sec: " << t.str() << "\n";
        }
        return os.str();
    }
};

struct JobParams {
    std::string kind;
    std::optional<int> n;
    std::optional<int> i;
    std::uint64_t seed = 0;
    int maxDim = kDefaultDimCap;
    double timeCapSec = 0;
};

/* Runs checks sequentially; a resource-cap or time-cap hit is reported as
 * skipped, never as a pass. */
class JobRun {
public:
    JobRun(Report& rep, double timeCapSec)
        : rep_(rep), cap_(timeCapSec), start_(std::chrono::steady_clock::now())
    {
    }

    bool expired() const
    {
        if (cap_ <= 0)
            return false;
        auto dt = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double>(dt).count() > cap_;
    }

    void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn)
    {
        if (expired()) {
            rep_.checks.push_back({ name, "skipped", "time cap exceeded" });
            return;
        }
        try {
            auto [ok, detail] = fn();
            rep_.checks.push_back({ name, ok ? "pass" : "fail", detail });
        } catch (const ResourceLimitError& e) {
            rep_.checks.push_back({ name, "skipped", e.what() });
        } catch (const Error& e) {
            rep_.checks.push_back({ name, "fail", e.what() });
        }
    }

    void simple(const std::string& name, bool ok, const std::string& detail = "")
    {
        rep_.checks.push_back({ name, ok ? "pass" : "fail", detail });
    }

    void fold(const std::string& prefix, const ReductionReport& r)
    {
        for (const auto& c : r.checks)
            rep_.checks.push_back({ prefix + c.name, c.pass ? "pass" : "fail", c.detail });
    }

    double seconds() const
    {
        auto dt = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double>(dt).count();
    }

private:
    Report& rep_;
    double cap_;
    std::chrono::steady_clock::time_point start_;
};

/* Named-family constructors with canonical descriptors. */
inline MilnorAlgebraPtr alg_A(int n) { return make_milnor_algebra(profile_A(n), "A:" + std::to_string(n)); }
inline MilnorAlgebraPtr alg_E(int n) { return make_milnor_algebra(profile_E(n), "E:" + std::to_string(n)); }
inline MilnorAlgebraPtr alg_Bprime(int n, int i)
{
    return make_milnor_algebra(profile_Bprime(n, i),
                               "Bprime:" + std::to_string(n) + "," + std::to_string(i));
}
inline MilnorAlgebraPtr alg_D(int n, int i)
{
    return make_milnor_algebra(profile_D(n, i), "D:" + std::to_string(n) + "," + std::to_string(i));
}
inline MilnorAlgebraPtr alg_X(int n, int i)
{
    return make_milnor_algebra(profile_X(n, i), "X:" + std::to_string(n) + "," + std::to_string(i));
}
inline MilnorAlgebraPtr alg_Y(int n, int i)
{
    return make_milnor_algebra(profile_Y(n, i), "Y:" + std::to_string(n) + "," + std::to_string(i));
}
inline MilnorAlgebraPtr alg_O(int n, int i)
{
    return make_milnor_algebra(profile_O(n, i), "O:" + std::to_string(n) + "," + std::to_string(i));
}
inline MilnorAlgebraPtr alg_profile(const Profile& p)
{
    return make_milnor_algebra(p, "profile:" + p.label());
}

inline Gf2Vec project_pst(const QuotientAlgebraPtr& Q, const MilnorAlgebra& amb, int s, int t)
{
    auto idx = amb.index_of(milnor_pst(s, t));
    if (!idx)
        throw Error("P^" + std::to_string(s) + "_" + std::to_string(t) +
                    " is not in the ambient algebra");
    return Q->project_at(amb.degree(*idx),
                         Gf2Vec::unit(std::size_t(amb.dim()), std::size_t(*idx)));
}

inline Gf2Vec q_fold_product(const AlgebraPtr& Q, const std::vector<Gf2Vec>& factors)
{
    Gf2Vec acc = Gf2Vec::unit(std::size_t(Q->dim()), 0);
    for (const auto& f : factors)
        acc = Q->mul_elem(acc, f);
    return acc;
}

/* Seeded random module: a random quotient of a random free module; valid by
 * construction. */
inline GradedModule random_module(const AlgebraPtr& alg, std::mt19937_64& rng, int maxDim)
{
    int maxRank = std::max<int>(1, maxDim / alg->dim());
    int rank = 1 + int(rng() % std::uint64_t(std::min(3, maxRank)));
    std::vector<int> shifts;
    for (int k = 0; k < rank; ++k)
        shifts.push_back(int(rng() % 5));
    GradedModule F = free_module(alg, shifts);
    std::vector<HomVec> seeds;
    int nSeeds = 1 + int(rng() % 3);
    std::vector<int> degs;
    for (const auto& [q, slot] : F.layout())
        if (q > *shifts.begin())
            degs.push_back(q);
    for (int k = 0; k < nSeeds && !degs.empty(); ++k) {
        int q = degs[std::size_t(rng() % degs.size())];
        Gf2Vec v(std::size_t(F.dim_at(q)));
        for (std::size_t b = 0; b < v.size(); ++b)
            if (rng() & 1)
                v.set(b);
        if (v.any())
            seeds.push_back({ q, std::move(v) });
    }
    return quotient_module(F, submodule_closure(F, seeds)).mod;
}

struct NestedPair {
    std::string zdesc;
    std::string hdesc;
    bool normal;
};

/* The nested (Z, H) pairs the reduction arguments walk through at a given n. */
inline std::vector<NestedPair> nested_family_pairs(int n)
{
    if (n < 2)
        throw Error("nested_family_pairs needs n >= 2");
    int a = steenrod_a_of(n);
    auto P = [](const Profile& p) { return "profile:" + p.label(); };
    std::string nstr = std::to_string(n);
    std::string pz = "O:" + nstr + "," + std::to_string(n + 1);
    std::vector<NestedPair> out;
    out.push_back({ "E:" + nstr, "A:" + nstr, true });
    for (int i = 1; i <= a + 1; ++i)
        out.push_back({ pz, "Bprime:" + nstr + "," + std::to_string(i), true });
    out.push_back({ pz, "D:" + nstr + ",1", true });
    for (int i = 2; i <= a + 1; ++i) {
        std::string d = "D:" + nstr + "," + std::to_string(i);
        out.push_back({ "Y:" + nstr + "," + std::to_string(i), d, true });
        out.push_back({ P(profile_intersect(profile_B(i), profile_D(n, i))), d, false });
        out.push_back({ P(profile_intersect(profile_B(i + 1), profile_D(n, i))), d, false });
        out.push_back({ "X:" + nstr + "," + std::to_string(i), d, false });
        out.push_back({ P(profile_intersect(profile_B(i), profile_X(n, i))),
                        "X:" + nstr + "," + std::to_string(i), false });
    }
    out.push_back({ "A:1", "D:" + nstr + ",1", false });
    out.push_back({ "E:1", "A:1", true });
    out.push_back({ "O:" + nstr + "," + std::to_string(a + 1), "E:" + nstr, true });
    for (int i = 1; i <= n / 2 + 1; ++i)
        out.push_back({ P(profile_intersect(profile_B(i), profile_A(n))), "A:" + nstr, false });
    return out;
}

namespace jobs {

inline void lemma_2_9(JobRun& run, int bound)
{
    auto commutator = [](const MilnorElement& x, const MilnorElement& y) {
        return milnor_mul(x, y) + milnor_mul(y, x);
    };
    auto pt = [](int t, std::int64_t r) { return MilnorElement::monomial(milnor_pt(t, r)); };
    const std::int64_t degCap = 200;

    run.check("lemma-2.9(1) [P_t(r),P_v(u)]=0", [&] {
        long cases = 0;
        for (int t = 1; t <= bound; ++t)
            for (int v = 1; v <= bound; ++v)
                for (std::int64_t r = 0; r < (std::int64_t(1) << v); ++r)
                    for (std::int64_t u = 0; u < (std::int64_t(1) << t); ++u) {
                        ++cases;
                        if (!commutator(pt(t, r), pt(v, u)).is_zero())
                            return std::pair(false, "failed at t=" + std::to_string(t) +
                                                        " v=" + std::to_string(v));
                    }
        return std::pair(true, std::to_string(cases) + " cases");
    });

    run.check("lemma-2.9(2) P_t(r)P_t(s)=(r,s)P_t(r+s)", [&] {
        long cases = 0;
        for (int t = 1; t <= bound; ++t) {
            std::int64_t w = (std::int64_t(1) << t) - 1;
            for (std::int64_t r = 0; r < (std::int64_t(1) << t); ++r)
                for (std::int64_t s = 0; s * w <= degCap; ++s) {
                    ++cases;
                    MilnorElement lhs = milnor_mul(pt(t, r), pt(t, s));
                    MilnorElement rhs = binom2(r, s) ? pt(t, r + s) : MilnorElement::zero();
                    if (!(lhs == rhs))
                        return std::pair(false, "failed at t=" + std::to_string(t) +
                                                    " r=" + std::to_string(r) +
                                                    " s=" + std::to_string(s));
                    if (r >= 1 && r == s && !milnor_mul(pt(t, r), pt(t, r)).is_zero())
                        return std::pair(false, "square nonzero at t=" + std::to_string(t));
                }
        }
        return std::pair(true, std::to_string(cases) + " cases");
    });

    run.check("lemma-2.9(3) P^t_t P^t_t = P_t(2^t-1) P^0_{2t}", [&] {
        for (int t = 1; t <= bound; ++t) {
            MilnorElement lhs = milnor_mul(pt(t, std::int64_t(1) << t), pt(t, std::int64_t(1) << t));
            MilnorElement rhs =
                milnor_mul(pt(t, (std::int64_t(1) << t) - 1), pt(2 * t, 1));
            if (!(lhs == rhs))
                return std::pair(false, "failed at t=" + std::to_string(t));
        }
        return std::pair(true, std::to_string(bound) + " cases");
    });

    run.check("lemma-2.9(4) [P^t_t,P_t(r)]=P_t(r-1)P^0_{2t}", [&] {
        long cases = 0;
        for (int t = 1; t <= bound; ++t)
            for (std::int64_t r = 1; r < (std::int64_t(1) << t); ++r) {
                ++cases;
                MilnorElement lhs = commutator(pt(t, std::int64_t(1) << t), pt(t, r));
                MilnorElement rhs = milnor_mul(pt(t, r - 1), pt(2 * t, 1));
                if (!(lhs == rhs))
                    return std::pair(false, "failed at t=" + std::to_string(t) +
                                                " r=" + std::to_string(r));
            }
        return std::pair(true, std::to_string(cases) + " cases");
    });

    run.check("lemma-2.9(5) [P_i(r),P^i_t]=P_i(r-1)P^0_{t+i}", [&] {
        long cases = 0;
        for (int i = 1; i <= bound; ++i)
            for (int t = i; t <= bound; ++t)
                for (std::int64_t r = 1;
                     r <= (std::int64_t(1) << i) && r < (std::int64_t(1) << t); ++r) {
                    ++cases;
                    MilnorElement lhs = commutator(pt(i, r), pt(t, std::int64_t(1) << i));
                    MilnorElement rhs = milnor_mul(pt(i, r - 1), pt(t + i, 1));
                    if (!(lhs == rhs))
                        return std::pair(false, "failed at i=" + std::to_string(i) +
                                                    " t=" + std::to_string(t) +
                                                    " r=" + std::to_string(r));
                }
        return std::pair(true, std::to_string(cases) + " cases");
    });

    run.check("lemma-2.9(6) [P^0_i,P_t(r)]=P_t(r-2^i)P^0_{t+i}", [&] {
        long cases = 0;
        for (int i = 1; i <= bound; ++i)
            for (int t = 1; t <= bound; ++t)
                for (std::int64_t r = std::int64_t(1) << i; r <= (std::int64_t(1) << t); ++r) {
                    ++cases;
                    MilnorElement lhs = commutator(pt(i, 1), pt(t, r));
                    MilnorElement rhs =
                        milnor_mul(pt(t, r - (std::int64_t(1) << i)), pt(t + i, 1));
                    if (!(lhs == rhs))
                        return std::pair(false, "failed at i=" + std::to_string(i) +
                                                    " t=" + std::to_string(t) +
                                                    " r=" + std::to_string(r));
                }
        return std::pair(true, std::to_string(cases) + " cases");
    });
}

inline std::vector<std::pair<std::string, Profile>> family_profiles(int n)
{
    std::vector<std::pair<std::string, Profile>> fam;
    for (int m = 0; m <= n; ++m)
        fam.emplace_back("A:" + std::to_string(m), profile_A(m));
    for (int m = 0; m <= n; ++m)
        fam.emplace_back("E:" + std::to_string(m), profile_E(m));
    for (int t = 1; t <= std::min(n + 1, 4); ++t)
        fam.emplace_back("J:" + std::to_string(t), profile_J(t));
    if (n >= 2) {
        int a = steenrod_a_of(n);
        for (int i = 1; i <= a + 1; ++i) {
            fam.emplace_back("Bprime:" + std::to_string(n) + "," + std::to_string(i),
                             profile_Bprime(n, i));
            fam.emplace_back("D:" + std::to_string(n) + "," + std::to_string(i),
                             profile_D(n, i));
        }
        for (int i = 2; i <= a + 1; ++i) {
            fam.emplace_back("X:" + std::to_string(n) + "," + std::to_string(i),
                             profile_X(n, i));
            fam.emplace_back("Y:" + std::to_string(n) + "," + std::to_string(i),
                             profile_Y(n, i));
        }
        for (int i = 1; i <= n + 1; ++i)
            fam.emplace_back("O:" + std::to_string(n) + "," + std::to_string(i),
                             profile_O(n, i));
    }
    return fam;
}

inline void corollary_2_16(JobRun& run, int n)
{
    for (const auto& [name, p] : family_profiles(n)) {
        run.check("nonzero-generator-product " + name, [&, prof = p] {
            MilnorElement prod = ordered_generator_product(prof);
            if (prod.is_zero())
                return std::pair(false, std::string("product vanished"));
            if (!prod.contains(profile_top_monomial(prof)))
                return std::pair(false, std::string("leading term missing"));
            return std::pair(true, "degree " + std::to_string(prof.top_degree()) + ", " +
                                       std::to_string(prod.term_count()) + " terms");
        });
    }
}

inline void lagrange(JobRun& run, int n)
{
    for (const auto& pair : nested_family_pairs(n)) {
        std::string tag = pair.hdesc + " over " + pair.zdesc;
        run.check("free " + tag, [&] {
            auto H = resolve_milnor(pair.hdesc);
            auto Z = resolve_milnor(pair.zdesc);
            auto emb = milnor_embedding(Z, H);
            bool free = is_free(regular_module_over(H, emb));
            int rank = H->dim() - right_ideal_span(H, emb).dim();
            bool dims = std::int64_t(H->dim()) == std::int64_t(Z->dim()) * rank;
            if (!free)
                return std::pair(false, std::string("restriction not free"));
            if (!dims)
                return std::pair(false, "dim " + std::to_string(H->dim()) + " != " +
                                            std::to_string(Z->dim()) + " * " +
                                            std::to_string(rank));
            return std::pair(true, "rank " + std::to_string(rank));
        });
        if (pair.normal) {
            run.check("quotient " + tag, [&] {
                auto H = resolve_milnor(pair.hdesc);
                auto Z = resolve_milnor(pair.zdesc);
                auto Q = make_quotient(H, milnor_embedding(Z, H));
                bool ok = std::int64_t(H->dim()) == std::int64_t(Z->dim()) * Q->dim() &&
                          Q->top_degree() == H->top_degree() - Z->top_degree();
                return std::pair(ok, "dim " + std::to_string(Q->dim()) + ", top " +
                                         std::to_string(Q->top_degree()));
            });
        }
    }
}

inline void poincare(JobRun& run, int n)
{
    run.check("poincare-pairing A:" + std::to_string(n), [&] {
        auto A = alg_A(n);
        int bad = -1;
        bool ok = poincare_pairing_nonsingular(*A, &bad);
        return std::pair(ok, ok ? std::to_string(A->top_degree() + 1) + " degrees"
                                : "singular at degree " + std::to_string(bad));
    });
}

inline void doubling(JobRun& run, int n)
{
    run.check("E-normal-in-A n=" + std::to_string(n), [&] {
        auto A = alg_A(n), E = alg_E(n);
        return std::pair(is_normal_in(milnor_embedding(E, A), A), std::string());
    });
    run.check("A//E-even-degrees n=" + std::to_string(n), [&] {
        auto A = alg_A(n), E = alg_E(n);
        auto Q = make_quotient(A, milnor_embedding(E, A));
        for (const auto& [q, slot] : Q->layout())
            if (q % 2)
                return std::pair(false, "odd degree " + std::to_string(q));
        return std::pair(true, "dim " + std::to_string(Q->dim()));
    });
    run.check("doubling-iso n=" + std::to_string(n), [&] {
        auto A = alg_A(n), E = alg_E(n);
        auto small = alg_A(n - 1);
        auto Q = make_quotient(A, milnor_embedding(E, A));
        DoublingReport r = doubling_iso_check(*small, *Q);
        return std::pair(r.ok, "path: " + r.path + (r.detail.empty() ? "" : "; " + r.detail));
    });
}

inline void prop_4_1(JobRun& run, int n, std::optional<int> iOpt)
{
    int a = steenrod_a_of(n);
    doubling(run, n);
    run.check("maximal-elementaries-of-A(n-1)", [&] {
        auto got = maximal_elementary_profiles(profile_A(n - 1));
        if (int(got.size()) != a + 1)
            return std::pair(false, "count " + std::to_string(got.size()) + " != " +
                                        std::to_string(a + 1));
        for (int i = 1; i <= a + 1; ++i) {
            Profile want = profile_intersect(profile_B(i), profile_A(n - 1));
            bool found = false;
            for (const auto& g : got)
                found = found || g == want;
            if (!found)
                return std::pair(false, "missing B_" + std::to_string(i) + " ∩ A(n-1)");
        }
        return std::pair(true, std::to_string(a + 1) + " subalgebras");
    });
    int lo = iOpt.value_or(1), hi = iOpt.value_or(a + 1);
    if (iOpt && (*iOpt < 1 || *iOpt > a + 1))
        throw Error("prop-4.1: i out of range 1.." + std::to_string(a + 1));
    for (int i = lo; i <= hi; ++i) {
        std::string si = " i=" + std::to_string(i);
        run.check("Bprime-profile-valid" + si, [&] {
            Profile p = profile_Bprime(n, i);
            int t0 = n + 1 - i;
            bool mono = true;
            for (int t = 1; t < t0; ++t)
                mono = mono && p.at(t) <= p.at(t + 1);
            bool agree = true;
            for (int t = t0; t <= n + 2; ++t)
                agree = agree && p.at(t) == profile_A(n).at(t);
            bool lem = profile_extension_hypotheses(p, profile_A(n), t0);
            return std::pair(validate_profile(p).valid && mono && agree && lem,
                             "profile " + p.label() + ", agrees with A(n) from t=" +
                                 std::to_string(t0));
        });
        run.check("E-normal-in-Bprime" + si, [&] {
            auto B = alg_Bprime(n, i), E = alg_E(n);
            return std::pair(is_normal_in(milnor_embedding(E, B), B), std::string());
        });
        run.check("Bprime//E-doubles-BiA(n-1)" + si, [&] {
            auto B = alg_Bprime(n, i), E = alg_E(n);
            auto Q = make_quotient(B, milnor_embedding(E, B));
            for (const auto& [q, slot] : Q->layout())
                if (q % 2)
                    return std::pair(false, std::string("odd degree in quotient"));
            auto small = alg_profile(profile_intersect(profile_B(i), profile_A(n - 1)));
            DoublingReport r = doubling_iso_check(*small, *Q);
            return std::pair(r.ok, "path: " + r.path +
                                       (r.detail.empty() ? "" : "; " + r.detail));
        });
    }
}

inline void prop_4_2(JobRun& run, int n, std::optional<int> iOpt)
{
    int a = steenrod_a_of(n);
    if (a + 1 < 2 && !iOpt) {
        run.simple("admissible-range", true, "no admissible i (needs 2 <= i <= a+1 = " +
                                                 std::to_string(a + 1) + ")");
        return;
    }
    if (iOpt && (*iOpt < 2 || *iOpt > a + 1))
        throw Error("prop-4.2: i out of range 2.." + std::to_string(a + 1));
    for (int i = iOpt.value_or(2); i <= iOpt.value_or(a + 1); ++i) {
        std::string si = " i=" + std::to_string(i);
        auto B = alg_Bprime(n, i);
        auto Z = alg_O(n, n + 1);
        auto zIdx = B->index_of(milnor_pst(0, n + 1));
        run.check("P0_{n+1}-central" + si, [&] {
            for (int b = 0; b < B->dim(); ++b)
                if (!(B->mul(b, *zIdx) == B->mul(*zIdx, b)))
                    return std::pair(false, "does not commute with " + B->label(b));
            return std::pair(true, std::string());
        });
        auto emb = milnor_embedding(Z, B);
        run.check("Z-normal" + si,
                  [&] { return std::pair(is_normal_in(emb, B), std::string()); });
        auto Q = make_quotient(B, emb);
        run.check("H-top-degree" + si, [&] {
            std::int64_t want = 0;
            for (int t = 1; t <= n; ++t)
                want += ((std::int64_t(1) << B->profile().at(t)) - 1) *
                        ((std::int64_t(1) << t) - 1);
            return std::pair(std::int64_t(Q->top_degree()) == want,
                             "|H| = " + std::to_string(Q->top_degree()));
        });
        GradedSubspace E1 = pi_image(Q, milnor_embedding(alg_E(n), B));
        GradedSubspace E2 = pi_image(Q, milnor_embedding(alg_D(n, i), B));
        run.check("E1-dim" + si, [&] {
            return std::pair(2 * E1.dim() == alg_E(n)->dim(),
                             "dim " + std::to_string(E1.dim()));
        });
        run.check("E2-dim" + si, [&] {
            return std::pair(2 * E2.dim() == alg_D(n, i)->dim(),
                             "dim " + std::to_string(E2.dim()));
        });
        std::vector<Gf2Vec> f1, f2;
        for (int j = 1; j < i; ++j)
            f1.push_back(project_pst(Q, *B, 0, j));
        for (int t = i; t <= n; ++t)
            for (int s = 0; s < B->profile().at(t); ++s)
                f2.push_back(project_pst(Q, *B, s, t));
        Gf2Vec t1 = q_fold_product(Q, f1), t2 = q_fold_product(Q, f2);
        run.check("t1-degree" + si, [&] {
            auto d = Q->homogeneous_degree(t1);
            std::int64_t want = (std::int64_t(1) << i) - i - 1;
            bool ok = t1.any() && d && *d == want;
            return std::pair(ok, "computed " + std::to_string(d ? *d : -1) +
                                     " = 2^i-i-1 = sum of |P^0_j|, j < i");
        });
        run.fold("reduction" + si + " ", check_reduction_hypotheses(Q, E1, E2, t1, t2, std::nullopt));
    }
}

inline void prop_4_5(JobRun& run, int n, std::optional<int> iOpt)
{
    int a = steenrod_a_of(n);
    if (a + 1 < 2 && !iOpt) {
        run.simple("admissible-range", true, "no admissible i (needs 2 <= i <= a+1 = " +
                                                 std::to_string(a + 1) + ")");
        return;
    }
    if (iOpt && (*iOpt < 2 || *iOpt > a + 1))
        throw Error("prop-4.5: i out of range 2.." + std::to_string(a + 1));
    for (int i = iOpt.value_or(2); i <= iOpt.value_or(a + 1); ++i) {
        std::string si = " i=" + std::to_string(i);
        auto D = alg_D(n, i);
        auto Y = alg_Y(n, i);
        run.check("Y-subalgebra-of-A(2i-1)" + si, [&] {
            return std::pair(profile_Y(n, i).leq(profile_A(2 * i - 1)),
                             "profile " + profile_Y(n, i).label());
        });
        run.check("Y-central-in-D" + si, [&] {
            auto emb = milnor_embedding(Y, D);
            for (int k = 1; k < Y->dim(); ++k)
                for (int b = 0; b < D->dim(); ++b) {
                    int z = emb.index[std::size_t(k)];
                    if (!(D->mul(b, z) == D->mul(z, b)))
                        return std::pair(false, D->label(b) + " vs " + Y->label(k));
                }
            return std::pair(true, std::string());
        });
        auto emb = milnor_embedding(Y, D);
        run.check("Y-normal" + si,
                  [&] { return std::pair(is_normal_in(emb, D), std::string()); });
        auto Q = make_quotient(D, emb);
        run.check("H-top-degree" + si, [&] {
            std::int64_t want = 0;
            for (int t = i; t <= n + 1; ++t)
                want += ((std::int64_t(1) << D->profile().at(t)) -
                         (std::int64_t(1) << Y->profile().at(t))) *
                        ((std::int64_t(1) << t) - 1);
            bool ok = Q->top_degree() == D->top_degree() - Y->top_degree() &&
                      std::int64_t(Q->top_degree()) == want;
            return std::pair(ok, "|H| = " + std::to_string(Q->top_degree()));
        });
        Profile pBiD = profile_intersect(profile_B(i), profile_D(n, i));
        Profile pBi1D = profile_intersect(profile_B(i + 1), profile_D(n, i));
        GradedSubspace E1p = pi_image(Q, milnor_embedding(alg_profile(pBiD), D));
        GradedSubspace E2 = pi_image(Q, milnor_embedding(alg_profile(pBi1D), D));
        GradedSubspace E1 = pi_image(Q, milnor_embedding(alg_X(n, i), D));
        run.check("E1'-dim" + si, [&] {
            std::int64_t overlap = profile_intersect(profile_Y(n, i), pBiD).dimension();
            return std::pair(std::int64_t(E1p.dim()) * overlap == pBiD.dimension(),
                             "dim " + std::to_string(E1p.dim()));
        });
        run.check("E2-dim" + si, [&] {
            std::int64_t overlap = profile_intersect(profile_Y(n, i), pBi1D).dimension();
            return std::pair(std::int64_t(E2.dim()) * overlap == pBi1D.dimension(),
                             "dim " + std::to_string(E2.dim()));
        });
        std::vector<Gf2Vec> f1, f2;
        for (int j = 0; j <= i; ++j)
            f1.push_back(project_pst(Q, *D, j, i));
        for (int t = i + 1; t <= n + 1; ++t)
            for (int s = Y->profile().at(t); s < D->profile().at(t); ++s)
                f2.push_back(project_pst(Q, *D, s, t));
        Gf2Vec t1 = q_fold_product(Q, f1), t2 = q_fold_product(Q, f2);
        run.check("t1-degree" + si, [&] {
            auto d = Q->homogeneous_degree(t1);
            std::int64_t want = ((std::int64_t(1) << (i + 1)) - 1) * ((std::int64_t(1) << i) - 1);
            return std::pair(t1.any() && d && *d == want,
                             "|t1| = " + std::to_string(d ? *d : -1) + " = (2^{i+1}-1)(2^i-1)");
        });
        Gf2Vec z = project_pst(Q, *D, 0, 2 * i);
        run.fold("reduction" + si + " ",
                 check_reduction_hypotheses(Q, E1, E2, t1, t2, z));
    }
}

inline void prop_4_6(JobRun& run, int n, std::optional<int> iOpt)
{
    int a = steenrod_a_of(n);
    if (a + 1 < 2 && !iOpt) {
        run.simple("admissible-range", true, "no admissible i (needs 2 <= i <= a+1 = " +
                                                 std::to_string(a + 1) + ")");
        return;
    }
    if (iOpt && (*iOpt < 2 || *iOpt > a + 1))
        throw Error("prop-4.6: i out of range 2.." + std::to_string(a + 1));
    for (int i = iOpt.value_or(2); i <= iOpt.value_or(a + 1); ++i) {
        std::string si = " i=" + std::to_string(i);
        auto D = alg_D(n, i);
        auto Y = alg_Y(n, i);
        auto X = alg_X(n, i);
        run.check("X-valid-subalgebra-of-D" + si, [&] {
            return std::pair(validate_profile(profile_X(n, i)).valid &&
                                 profile_X(n, i).leq(profile_D(n, i)),
                             "profile " + profile_X(n, i).label());
        });
        auto Q = make_quotient(D, milnor_embedding(Y, D));
        run.check("X-meets-ideal-trivially" + si, [&] {
            GradedSubspace img = pi_image(Q, milnor_embedding(X, D));
            return std::pair(img.dim() == X->dim(),
                             "dim pi(X) = " + std::to_string(img.dim()) + " of " +
                                 std::to_string(X->dim()));
        });
        Profile pBiX = profile_intersect(profile_B(i), profile_X(n, i));
        run.check("X-maximal-elementary-singleton" + si, [&] {
            auto got = maximal_elementary_profiles(profile_X(n, i));
            return std::pair(got.size() == 1 && got[0] == pBiX,
                             "B_i ∩ X = profile " + pBiX.label());
        });
        run.check("BiX-elementary" + si, [&] {
            return std::pair(is_elementary(*alg_profile(pBiX)), std::string());
        });
        run.check("piBiX-inside-piBiD" + si, [&] {
            Profile pBiD = profile_intersect(profile_B(i), profile_D(n, i));
            GradedSubspace big = pi_image(Q, milnor_embedding(alg_profile(pBiD), D));
            GradedSubspace small = pi_image(Q, milnor_embedding(alg_profile(pBiX), D));
            for (const auto& [q, e] : small.byDeg)
                for (const auto& row : e.rows())
                    if (!big.contains(q, row))
                        return std::pair(false, "escape at degree " + std::to_string(q));
            return std::pair(true, std::string());
        });
    }
}

inline void prop_4_7(JobRun& run, int n)
{
    auto D = alg_D(n, 1);
    auto Z = alg_O(n, n + 1);
    auto zIdx = D->index_of(milnor_pst(0, n + 1));
    run.check("P0_{n+1}-central", [&] {
        for (int b = 0; b < D->dim(); ++b)
            if (!(D->mul(b, *zIdx) == D->mul(*zIdx, b)))
                return std::pair(false, "does not commute with " + D->label(b));
        return std::pair(true, std::string());
    });
    auto emb = milnor_embedding(Z, D);
    run.check("Z-normal", [&] { return std::pair(is_normal_in(emb, D), std::string()); });
    run.check("D1-top-degree", [&] {
        std::int64_t want = (std::int64_t(1) << (n + 1)) - 1;
        for (int t = 1; t <= n; ++t)
            want += 3 * ((std::int64_t(1) << t) - 1);
        return std::pair(std::int64_t(D->top_degree()) == want,
                         "|D1(n)| = " + std::to_string(D->top_degree()));
    });
    auto Q = make_quotient(D, emb);
    run.check("H-top-degree", [&] {
        std::int64_t want = 0;
        for (int t = 1; t <= n; ++t)
            want += 3 * ((std::int64_t(1) << t) - 1);
        return std::pair(std::int64_t(Q->top_degree()) == want,
                         "|H| = " + std::to_string(Q->top_degree()));
    });
    run.check("A1-top-degree-small", [&] {
        auto A1 = alg_A(1);
        return std::pair(A1->top_degree() == 6 &&
                             A1->top_degree() < (1 << (n + 1)) - 1,
                         "|A(1)| = " + std::to_string(A1->top_degree()) + " < " +
                             std::to_string((1 << (n + 1)) - 1));
    });
    GradedSubspace E1 = pi_image(Q, milnor_embedding(alg_A(1), D));
    run.check("piA1-injective", [&] {
        return std::pair(E1.dim() == alg_A(1)->dim(), "dim " + std::to_string(E1.dim()));
    });
    GradedSubspace E1prime = pi_image(Q, milnor_embedding(alg_E(n), D));
    run.check("E1'-dim", [&] {
        return std::pair(2 * E1prime.dim() == alg_E(n)->dim(),
                         "dim " + std::to_string(E1prime.dim()));
    });
    run.check("piE1-inside-piEn", [&] {
        GradedSubspace small = pi_image(Q, milnor_embedding(alg_E(1), D));
        for (const auto& [q, e] : small.byDeg)
            for (const auto& row : e.rows())
                if (!E1prime.contains(q, row))
                    return std::pair(false, "escape at degree " + std::to_string(q));
        return std::pair(true, std::string());
    });
    Profile pB2D1 = profile_intersect(profile_B(2), profile_D(n, 1));
    GradedSubspace E2 = pi_image(Q, milnor_embedding(alg_profile(pB2D1), D));
    run.check("E2-dim", [&] {
        return std::pair(2 * E2.dim() == alg_profile(pB2D1)->dim(),
                         "dim " + std::to_string(E2.dim()));
    });
    std::vector<Gf2Vec> f1{ project_pst(Q, *D, 0, 1), project_pst(Q, *D, 1, 1) }, f2;
    for (int t = 2; t <= n; ++t) {
        f2.push_back(project_pst(Q, *D, 0, t));
        f2.push_back(project_pst(Q, *D, 1, t));
    }
    Gf2Vec t1 = q_fold_product(Q, f1), t2 = q_fold_product(Q, f2);
    run.check("t1-degree", [&] {
        auto d = Q->homogeneous_degree(t1);
        return std::pair(t1.any() && d && *d == 3, "|t1| = " + std::to_string(d ? *d : -1));
    });
    Gf2Vec z = project_pst(Q, *D, 0, 2);
    run.fold("reduction ", check_reduction_hypotheses(Q, E1, E2, t1, t2, z));
}

inline void picard_generators(JobRun& run, Report& rep, int n, int maxDim)
{
    auto A = alg_A(n);
    std::map<int, Signature> sigs;
    std::map<int, int> dims;
    bool allBuilt = true;
    for (int l = -2; l <= 2; ++l) {
        run.check("omega^" + std::to_string(l), [&] {
            StableClass c = picard_element(A, 0, l, maxDim);
            sigs[l] = c.sig;
            dims[l] = c.minimalRep.dim();
            rep.digests.emplace_back("omega^" + std::to_string(l),
                                     fnv1a64_hex(write_module(c.minimalRep)));
            return std::pair(true, "dim " + std::to_string(c.minimalRep.dim()));
        });
        allBuilt = allBuilt && sigs.count(l);
    }
    run.check("25-classes-pairwise-distinct", [&]() -> std::pair<bool, std::string> {
        if (!allBuilt)
            throw ResourceLimitError("omega powers unavailable");
        auto shifted = [](const Signature& s, int m) {
            Signature t = s;
            for (auto& [q, d, ranks] : t.rows)
                q += m;
            return t;
        };
        int count = 0;
        for (int m1 = -2; m1 <= 2; ++m1)
            for (int l1 = -2; l1 <= 2; ++l1)
                for (int m2 = -2; m2 <= 2; ++m2)
                    for (int l2 = -2; l2 <= 2; ++l2) {
                        if (std::pair(m1, l1) >= std::pair(m2, l2))
                            continue;
                        ++count;
                        if (shifted(sigs[l1], m1) == shifted(sigs[l2], m2))
                            return { false,
                                     "collision (" + std::to_string(m1) + "," +
                                         std::to_string(l1) + ") vs (" + std::to_string(m2) +
                                         "," + std::to_string(l2) + ")" };
                    }
        return { true, std::to_string(count) + " comparisons" };
    });
}

inline void detection_corpus(JobRun& run, std::uint64_t seed, int maxDim)
{
    int total = 0;
    for (int n = 1; n <= 2; ++n) {
        auto A = alg_A(n);
        std::vector<SubalgebraEmbedding> dets;
        for (const auto& p : maximal_elementary_profiles(A->profile()))
            dets.push_back(milnor_embedding(alg_profile(p), A));
        std::string an = "A:" + std::to_string(n) + " ";
        auto checkOne = [&](const std::string& name, const GradedModule& M) {
            ++total;
            run.check(an + name, [&] {
                bool direct = is_free(M);
                bool via = detect_freeness_via(M, dets);
                return std::pair(direct == via,
                                 std::string(direct ? "free" : "not free") + ", dim " +
                                     std::to_string(M.dim()));
            });
        };
        checkOne("free{0}", free_module(A, { 0 }));
        checkOne("free{1,3}", free_module(A, { 1, 3 }));
        checkOne("k", trivial_module(A));
        if (n == 1)
            checkOne("joker", cyclic_module(A, { *A->elem(parse_element("Sq(3)")) }));
        try {
            GradedModule k = trivial_module(A);
            checkOne("omega^1", omega_power(k, 1, maxDim));
            checkOne("omega^-1", omega_power(k, -1, maxDim));
            checkOne("omega^2", omega_power(k, 2, maxDim));
            checkOne("omega^-2", omega_power(k, -2, maxDim));
        } catch (const ResourceLimitError& e) {
            run.simple(an + "omega-powers", true, std::string("skipped: ") + e.what());
        }
        std::mt19937_64 rng(seed + std::uint64_t(n));
        for (int k = 0; k < 10; ++k)
            checkOne("random-" + std::to_string(k), random_module(A, rng, 400));
    }
    run.simple("corpus-size", total >= 26, std::to_string(total) + " modules");
}

} // namespace jobs

inline Report run_job(const JobParams& p)
{
    Report rep;
    rep.job = p.kind;
    rep.seed = p.seed;
    auto addParam = [&](const std::string& k, int v) {
        rep.params.emplace_back(k, std::to_string(v));
    };

    JobRun run(rep, p.timeCapSec);
    auto needN = [&](int dflt, int lo, int hi) {
        int n = p.n.value_or(dflt);
        if (n < lo || n > hi)
            throw Error(p.kind + ": n must be in " + std::to_string(lo) + ".." +
                        std::to_string(hi));
        addParam("n", n);
        return n;
    };
    if (p.i)
        addParam("i", *p.i);
    addParam("max-dim", p.maxDim);

    if (p.kind == "lemma-2.9") {
        jobs::lemma_2_9(run, needN(4, 1, 6));
    } else if (p.kind == "corollary-2.16") {
        jobs::corollary_2_16(run, needN(4, 0, 4));
    } else if (p.kind == "lagrange") {
        jobs::lagrange(run, needN(3, 2, 3));
    } else if (p.kind == "poincare") {
        jobs::poincare(run, needN(3, 0, 4));
    } else if (p.kind == "doubling") {
        jobs::doubling(run, needN(3, 1, 4));
    } else if (p.kind == "prop-4.1") {
        jobs::prop_4_1(run, needN(2, 2, 3), p.i);
    } else if (p.kind == "prop-4.2") {
        jobs::prop_4_2(run, needN(2, 2, 3), p.i);
    } else if (p.kind == "prop-4.5") {
        jobs::prop_4_5(run, needN(2, 2, 3), p.i);
    } else if (p.kind == "prop-4.6") {
        jobs::prop_4_6(run, needN(2, 2, 3), p.i);
    } else if (p.kind == "prop-4.7") {
        jobs::prop_4_7(run, needN(2, 2, 3));
    } else if (p.kind == "picard-generators") {
        jobs::picard_generators(run, rep, needN(2, 1, 3), p.maxDim);
    } else if (p.kind == "detection-corpus") {
        jobs::detection_corpus(run, p.seed, p.maxDim);
    } else {
        throw Error("unknown verification job kind '" + p.kind + "'");
    }
    if (p.kind.rfind("prop-", 0) == 0) {
        std::string at = "(n=" + std::to_string(p.n.value_or(2)) +
                         (p.i ? ", i=" + std::to_string(*p.i) : ", all admissible i") + ")";
        rep.note = rep.passed()
                       ? "hypotheses verified at " + at +
                             "; instance checks only, no conclusion beyond these parameters"
                       : "hypothesis check failed at " + at;
    }
    rep.elapsedSec = run.seconds();
    return rep;
}

} // namespace sq2
