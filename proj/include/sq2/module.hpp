#pragma once

#include "sq2/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sq2 {

struct ModuleBasisVec {
    std::string name;
    int deg = 0;
    bool operator==(const ModuleBasisVec&) const = default;
};

/* Homogeneous module vector: coordinates within the degree-deg slice. */
struct HomVec {
    int deg = 0;
    Gf2Vec v;
};

/* Finite graded module over a GradedAlgebra. The action table stores, for
 * each algebra basis monomial, one GF(2) block per source degree; an absent
 * block is the zero matrix. Blocks are degree-homogeneous by construction. */
class GradedModule {
public:
    GradedModule() = default;

    GradedModule(AlgebraPtr alg, std::vector<ModuleBasisVec> basis,
                 std::vector<std::map<int, Gf2Mat>> action)
        : alg_(std::move(alg)), basis_(std::move(basis)), act_(std::move(action))
    {
        if (int(act_.size()) != alg_->dim())
            throw Error("module action table must cover every algebra basis element");
        std::set<std::string> names;
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (k && basis_[k].deg < basis_[k - 1].deg)
                throw Error("module basis not sorted by degree");
            if (basis_[k].name.empty() ||
                basis_[k].name.find_first_of(" \t\r\n") != std::string::npos)
                throw Error("module basis name empty or contains whitespace: '" +
                            basis_[k].name + "'");
            if (!names.insert(basis_[k].name).second)
                throw Error("duplicate module basis name: " + basis_[k].name);
        }
        for (int k = 0; k < int(basis_.size()); ++k) {
            auto& slot = layout_[basis_[std::size_t(k)].deg];
            if (slot.second == 0)
                slot.first = k;
            slot.second += 1;
        }
        for (int a = 0; a < alg_->dim(); ++a) {
            int da = alg_->degree(a);
            for (auto it = act_[std::size_t(a)].begin(); it != act_[std::size_t(a)].end();) {
                int q = it->first;
                const Gf2Mat& blk = it->second;
                if (blk.rows() != std::size_t(dim_at(q + da)) ||
                    blk.cols() != std::size_t(dim_at(q)))
                    throw Error("action block of " + alg_->label(a) + " at degree " +
                                std::to_string(q) + " has wrong shape");
                if (blk.zero())
                    it = act_[std::size_t(a)].erase(it);
                else
                    ++it;
            }
        }
        for (const auto& [q, slot] : layout_) {
            const Gf2Mat* idb = block(0, q);
            Gf2Mat expect = Gf2Mat::identity(std::size_t(slot.second));
            if (!idb || !(*idb == expect))
                throw Error("unit does not act as the identity at degree " + std::to_string(q));
        }
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<ModuleBasisVec>& basis() const { return basis_; }

    const std::map<int, std::pair<int, int>>& layout() const { return layout_; }

    int dim_at(int q) const
    {
        auto it = layout_.find(q);
        return it == layout_.end() ? 0 : it->second.second;
    }

    int offset_at(int q) const
    {
        auto it = layout_.find(q);
        return it == layout_.end() ? -1 : it->second.first;
    }

    std::map<int, int> graded_dims() const
    {
        std::map<int, int> d;
        for (const auto& [q, slot] : layout_)
            d[q] = slot.second;
        return d;
    }

    int global_index(int q, int local) const { return offset_at(q) + local; }

    const Gf2Mat* block(int a, int q) const
    {
        auto it = act_[std::size_t(a)].find(q);
        return it == act_[std::size_t(a)].end() ? nullptr : &it->second;
    }

    const std::map<int, Gf2Mat>& blocks_of(int a) const { return act_[std::size_t(a)]; }

    HomVec apply(int a, const HomVec& x) const
    {
        int da = alg_->degree(a);
        HomVec out{ x.deg + da, Gf2Vec(std::size_t(dim_at(x.deg + da))) };
        if (const Gf2Mat* b = block(a, x.deg))
            out.v = b->apply(x.v);
        return out;
    }

    HomVec apply_elem(const Gf2Vec& e, const HomVec& x) const
    {
        auto d = alg_->homogeneous_degree(e);
        if (!d)
            throw Error("apply_elem needs a homogeneous algebra element");
        HomVec out{ x.deg + *d, Gf2Vec(std::size_t(dim_at(x.deg + *d))) };
        e.for_each_set([&](std::size_t a) {
            if (const Gf2Mat* b = block(int(a), x.deg))
                out.v ^= b->apply(x.v);
        });
        return out;
    }

    HomVec basis_vec(int globalIndex) const
    {
        int q = basis_[std::size_t(globalIndex)].deg;
        return { q, Gf2Vec::unit(std::size_t(dim_at(q)), std::size_t(globalIndex - offset_at(q))) };
    }

private:
    AlgebraPtr alg_;
    std::vector<ModuleBasisVec> basis_;
    std::map<int, std::pair<int, int>> layout_;
    std::vector<std::map<int, Gf2Mat>> act_;
};

inline bool same_algebra(const GradedModule& a, const GradedModule& b)
{
    return a.algebra() == b.algebra() ||
           a.algebra()->descriptor() == b.algebra()->descriptor();
}

inline bool modules_identical(const GradedModule& a, const GradedModule& b)
{
    if (!same_algebra(a, b) || !(a.basis() == b.basis()))
        return false;
    for (int i = 0; i < a.algebra()->dim(); ++i)
        if (!(a.blocks_of(i) == b.blocks_of(i)))
            return false;
    return true;
}

/* Per-degree subspace of a module; bucket width is the degree's dimension. */
struct ModSubspace {
    std::map<int, Echelon> byDeg;

    int dim() const
    {
        int d = 0;
        for (const auto& [q, e] : byDeg)
            d += int(e.dim());
        return d;
    }

    int dim_at(int q) const
    {
        auto it = byDeg.find(q);
        return it == byDeg.end() ? 0 : int(it->second.dim());
    }

    bool insert(const GradedModule& M, const HomVec& x)
    {
        auto it = byDeg.find(x.deg);
        if (it == byDeg.end())
            it = byDeg.emplace(x.deg, Echelon(std::size_t(M.dim_at(x.deg)))).first;
        return it->second.insert(x.v);
    }

    bool contains(const HomVec& x) const
    {
        auto it = byDeg.find(x.deg);
        return it == byDeg.end() ? x.v.none() : it->second.contains(x.v);
    }
};

inline GradedModule trivial_module(const AlgebraPtr& alg)
{
    std::vector<ModuleBasisVec> basis{ { "k0", 0 } };
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    act[0][0] = Gf2Mat::identity(1);
    return GradedModule(alg, std::move(basis), std::move(act));
}

inline GradedModule zero_module(const AlgebraPtr& alg)
{
    return GradedModule(alg, {}, std::vector<std::map<int, Gf2Mat>>(std::size_t(alg->dim())));
}

namespace detail {

/* Shared builder for sums of shifted regular representations. The action is
 * left multiplication; pairs whose degrees exceed the ambient top degree are
 * zero by closure and are skipped. */
inline GradedModule regular_sum(const AlgebraPtr& actingAlg, const AlgebraPtr& H,
                                const std::vector<int>& actingIndexInH,
                                std::vector<int> shifts)
{
    std::sort(shifts.begin(), shifts.end());
    struct Slot {
        int deg, copy, i;
    };
    std::vector<Slot> slots;
    for (int k = 0; k < int(shifts.size()); ++k)
        for (int i = 0; i < H->dim(); ++i)
            slots.push_back({ shifts[std::size_t(k)] + H->degree(i), k, i });
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& a, const Slot& b) { return a.deg < b.deg; });

    std::vector<ModuleBasisVec> basis;
    std::map<std::pair<int, int>, int> globalOf;
    for (int g = 0; g < int(slots.size()); ++g) {
        const Slot& s = slots[std::size_t(g)];
        basis.push_back({ "g" + std::to_string(s.copy) + "." + H->label(s.i), s.deg });
        globalOf[{ s.copy, s.i }] = g;
    }
    std::map<int, std::pair<int, int>> layout;
    for (int g = 0; g < int(basis.size()); ++g) {
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }

    std::vector<std::map<int, Gf2Mat>> act(std::size_t(actingAlg->dim()));
    for (int a = 0; a < actingAlg->dim(); ++a) {
        int ambA = actingIndexInH[std::size_t(a)];
        int da = H->degree(ambA);
        for (int g = 0; g < int(slots.size()); ++g) {
            const Slot& s = slots[std::size_t(g)];
            if (H->degree(s.i) + da > H->top_degree())
                continue;
            Gf2Vec prod = H->mul(ambA, s.i);
            if (prod.none())
                continue;
            int q = s.deg, qt = s.deg + da;
            auto& blk = act[std::size_t(a)][q];
            if (blk.rows() == 0)
                blk = Gf2Mat(std::size_t(layout[qt].second), std::size_t(layout[q].second));
            int col = g - layout[q].first;
            prod.for_each_set([&](std::size_t m) {
                int row = globalOf[{ s.copy, int(m) }] - layout[qt].first;
                blk.set(std::size_t(row), std::size_t(col));
            });
        }
    }
    return GradedModule(actingAlg, std::move(basis), std::move(act));
}

} // namespace detail

/* Direct sum of shifted copies of H with the left multiplication action. */
inline GradedModule free_module(const AlgebraPtr& alg, std::vector<int> shifts)
{
    std::vector<int> self(std::size_t(alg->dim()));
    for (int i = 0; i < alg->dim(); ++i)
        self[std::size_t(i)] = i;
    return detail::regular_sum(alg, alg, self, std::move(shifts));
}

/* H as a module over a subalgebra Z, built directly (identical to
 * restrict(free_module(H, {0}), Z)). */
inline GradedModule regular_module_over(const AlgebraPtr& H, const SubalgebraEmbedding& Z)
{
    if (Z.amb != H)
        throw Error("regular_module_over: embedding does not target H");
    return detail::regular_sum(Z.sub, H, Z.index, { 0 });
}

/* Closure of the given homogeneous seeds under the algebra action. */
inline ModSubspace submodule_closure(const GradedModule& M, const std::vector<HomVec>& seeds)
{
    ModSubspace S;
    std::vector<HomVec> work;
    for (const auto& s : seeds)
        if (S.insert(M, s))
            work.push_back(s);
    const auto& gens = M.algebra()->generators();
    while (!work.empty()) {
        HomVec x = std::move(work.back());
        work.pop_back();
        for (const auto& g : gens) {
            HomVec y = M.apply_elem(g, x);
            if (y.v.any() && S.insert(M, y))
                work.push_back(y);
        }
    }
    return S;
}

/* Verifies a·S ⊂ S for all generators. */
inline bool subspace_closed(const GradedModule& M, const ModSubspace& S)
{
    for (const auto& g : M.algebra()->generators())
        for (const auto& [q, e] : S.byDeg)
            for (const auto& row : e.rows()) {
                HomVec y = M.apply_elem(g, HomVec{ q, row });
                if (y.v.any() && !S.contains(y))
                    return false;
            }
    return true;
}

struct QuotientModule {
    GradedModule mod;
    std::map<int, CosetReducer> red;           // per source degree of M
    std::map<int, std::vector<int>> repLocal;  // quotient-local -> M-local columns

    HomVec project(const HomVec& x) const
    {
        auto it = red.find(x.deg);
        if (it == red.end())
            return { x.deg, Gf2Vec(0) };
        auto [coords, exact] = it->second.reduce(x.v);
        if (!exact)
            throw Error("quotient projection failed (internal)");
        return { x.deg, coords };
    }
};

inline QuotientModule quotient_module(const GradedModule& M, const ModSubspace& S)
{
    if (!subspace_closed(M, S))
        throw Error("quotient_module: subspace is not closed under the action");
    QuotientModule out;
    for (const auto& [q, slot] : M.layout()) {
        auto& r = out.red.emplace(q, CosetReducer(std::size_t(slot.second))).first->second;
        if (auto it = S.byDeg.find(q); it != S.byDeg.end())
            for (const auto& row : it->second.rows())
                r.add_kernel(row);
    }
    std::vector<ModuleBasisVec> basis;
    for (const auto& [q, slot] : M.layout()) {
        auto& r = out.red.at(q);
        for (int c = 0; c < slot.second; ++c)
            if (r.try_add_rep(Gf2Vec::unit(std::size_t(slot.second), std::size_t(c)))) {
                out.repLocal[q].push_back(c);
                basis.push_back(M.basis()[std::size_t(slot.first + c)]);
            }
    }
    std::map<int, std::pair<int, int>> layout;
    for (int g = 0; g < int(basis.size()); ++g) {
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }
    const AlgebraPtr& alg = M.algebra();
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        for (const auto& [q, reps] : out.repLocal) {
            if (!layout.count(q + da))
                continue;
            Gf2Mat blk(std::size_t(layout[q + da].second), reps.size());
            bool nonzero = false;
            for (int c = 0; c < int(reps.size()); ++c) {
                HomVec x{ q, Gf2Vec::unit(std::size_t(M.dim_at(q)), std::size_t(reps[std::size_t(c)])) };
                HomVec y = M.apply(a, x);
                auto [coords, exact] = out.red.at(q + da).reduce(y.v);
                if (!exact)
                    throw Error("quotient action not well defined (internal)");
                coords.for_each_set([&](std::size_t r) {
                    blk.set(r, std::size_t(c));
                    nonzero = true;
                });
            }
            if (nonzero)
                act[std::size_t(a)][q] = std::move(blk);
        }
    }
    out.mod = GradedModule(alg, std::move(basis), std::move(act));
    return out;
}

struct SubmoduleModule {
    GradedModule mod;
    std::map<int, CosetReducer> coords; // expresses M-vectors in row coordinates
};

inline SubmoduleModule submodule_module(const GradedModule& M, const ModSubspace& S)
{
    SubmoduleModule out;
    std::vector<ModuleBasisVec> basis;
    int k = 0;
    for (const auto& [q, e] : S.byDeg) {
        auto& r = out.coords.emplace(q, CosetReducer(std::size_t(M.dim_at(q)))).first->second;
        for (const auto& row : e.rows()) {
            r.try_add_rep(row);
            basis.push_back({ "s" + std::to_string(k++), q });
        }
    }
    std::map<int, std::pair<int, int>> layout;
    for (int g = 0; g < int(basis.size()); ++g) {
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }
    const AlgebraPtr& alg = M.algebra();
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        for (const auto& [q, e] : S.byDeg) {
            if (e.dim() == 0 || !layout.count(q + da))
                continue;
            auto target = out.coords.find(q + da);
            Gf2Mat blk(std::size_t(layout[q + da].second), e.dim());
            bool nonzero = false;
            for (std::size_t c = 0; c < e.rows().size(); ++c) {
                HomVec y = M.apply(a, HomVec{ q, e.rows()[c] });
                if (y.v.none())
                    continue;
                if (target == out.coords.end())
                    throw Error("submodule not closed under the action");
                auto [coords, exact] = target->second.reduce(y.v);
                if (!exact)
                    throw Error("submodule not closed under the action");
                coords.for_each_set([&](std::size_t r) {
                    blk.set(r, c);
                    nonzero = true;
                });
            }
            if (nonzero)
                act[std::size_t(a)][q] = std::move(blk);
        }
    }
    out.mod = GradedModule(alg, std::move(basis), std::move(act));
    return out;
}

/* H / (left ideal generated by homogeneous relators). */
inline GradedModule cyclic_module(const AlgebraPtr& alg, const std::vector<Gf2Vec>& relators)
{
    GradedModule F = free_module(alg, { 0 });
    std::vector<HomVec> seeds;
    for (const auto& r : relators) {
        if (r.none())
            continue;
        auto d = alg->homogeneous_degree(r);
        if (!d)
            throw Error("cyclic_module: relator must be homogeneous");
        Gf2Vec local(std::size_t(F.dim_at(*d)));
        r.for_each_set([&](std::size_t i) {
            local.set(std::size_t(i) - std::size_t(F.offset_at(alg->degree(int(i)))));
        });
        seeds.push_back({ *d, std::move(local) });
    }
    return quotient_module(F, submodule_closure(F, seeds)).mod;
}

inline GradedModule shift_module(const GradedModule& M, int i)
{
    std::vector<ModuleBasisVec> basis = M.basis();
    for (auto& b : basis)
        b.deg += i;
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(M.algebra()->dim()));
    for (int a = 0; a < M.algebra()->dim(); ++a)
        for (const auto& [q, blk] : M.blocks_of(a))
            act[std::size_t(a)][q + i] = blk;
    return GradedModule(M.algebra(), std::move(basis), std::move(act));
}

inline GradedModule restrict_module(const GradedModule& M, const SubalgebraEmbedding& Z)
{
    if (!(Z.amb == M.algebra() || Z.amb->descriptor() == M.algebra()->descriptor()))
        throw Error("restrict: module is not over the ambient algebra");
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(Z.sub->dim()));
    for (int k = 0; k < Z.sub->dim(); ++k)
        act[std::size_t(k)] = M.blocks_of(Z.index[std::size_t(k)]);
    return GradedModule(Z.sub, M.basis(), std::move(act));
}

/* Direct sum, basis of a before b within every degree. */
inline GradedModule direct_sum(const GradedModule& A, const GradedModule& B)
{
    if (!same_algebra(A, B))
        throw Error("direct_sum: algebra mismatch");
    struct Slot {
        int deg, side, local;
    };
    std::vector<Slot> slots;
    for (const auto& [q, s] : A.layout())
        for (int c = 0; c < s.second; ++c)
            slots.push_back({ q, 0, c });
    for (const auto& [q, s] : B.layout())
        for (int c = 0; c < s.second; ++c)
            slots.push_back({ q, 1, c });
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& x, const Slot& y) { return x.deg < y.deg; });
    std::vector<ModuleBasisVec> basis;
    for (const auto& s : slots) {
        const GradedModule& src = s.side ? B : A;
        const auto& bv = src.basis()[std::size_t(src.offset_at(s.deg) + s.local)];
        basis.push_back({ (s.side ? "r." : "l.") + bv.name, s.deg });
    }
    std::map<int, std::pair<int, int>> layout;
    std::map<int, std::pair<int, int>> counts; // per degree: (dimA, dimB)
    for (int g = 0; g < int(basis.size()); ++g) {
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }
    for (const auto& [q, s] : A.layout())
        counts[q].first = s.second;
    for (const auto& [q, s] : B.layout())
        counts[q].second = s.second;

    const AlgebraPtr& alg = A.algebra();
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        for (const auto& [q, slot] : layout) {
            if (!layout.count(q + da))
                continue;
            const Gf2Mat* ba = A.block(a, q);
            const Gf2Mat* bb = B.block(a, q);
            if (!ba && !bb)
                continue;
            Gf2Mat blk(std::size_t(layout[q + da].second), std::size_t(slot.second));
            int rA = counts[q + da].first, cA = counts[q].first;
            if (ba)
                for (std::size_t r = 0; r < ba->rows(); ++r)
                    ba->row(r).for_each_set(
                        [&](std::size_t c) { blk.set(r, c); });
            if (bb)
                for (std::size_t r = 0; r < bb->rows(); ++r)
                    bb->row(r).for_each_set(
                        [&](std::size_t c) { blk.set(std::size_t(rA) + r, std::size_t(cA) + c); });
            act[std::size_t(a)][q] = std::move(blk);
        }
    }
    return GradedModule(alg, std::move(basis), std::move(act));
}

/* Tensor product with the action through the coproduct. Within one tensor
 * degree, columns are grouped by ascending left-factor degree, left index
 * major. */
inline GradedModule tensor(const GradedModule& M, const GradedModule& N)
{
    if (!same_algebra(M, N))
        throw Error("tensor: algebra mismatch");
    const AlgebraPtr& alg = M.algebra();

    struct Group {
        int qm, qn, off; // offset inside the tensor degree
    };
    std::map<int, std::vector<Group>> groups;
    std::map<int, int> dims;
    for (const auto& [qm, sm] : M.layout())
        for (const auto& [qn, sn] : N.layout()) {
            int q = qm + qn;
            groups[q].push_back({ qm, qn, 0 });
            dims[q] += sm.second * sn.second;
        }
    for (auto& [q, gs] : groups) {
        std::sort(gs.begin(), gs.end(), [](const Group& a, const Group& b) { return a.qm < b.qm; });
        int off = 0;
        for (auto& g : gs) {
            g.off = off;
            off += M.dim_at(g.qm) * N.dim_at(g.qn);
        }
    }

    std::vector<ModuleBasisVec> basis;
    for (const auto& [q, gs] : groups)
        for (const auto& g : gs)
            for (int im = 0; im < M.dim_at(g.qm); ++im)
                for (int jn = 0; jn < N.dim_at(g.qn); ++jn)
                    basis.push_back(
                        { "(" + M.basis()[std::size_t(M.offset_at(g.qm) + im)].name + "|" +
                              N.basis()[std::size_t(N.offset_at(g.qn) + jn)].name + ")",
                          q });

    auto groupOffset = [&](int q, int qm) -> int {
        auto it = groups.find(q);
        if (it == groups.end())
            return -1;
        for (const auto& g : it->second)
            if (g.qm == qm)
                return g.off;
        return -1;
    };

    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        for (const auto& [a1, a2] : alg->coproduct(a)) {
            int d1 = alg->degree(a1), d2 = alg->degree(a2);
            for (const auto& [qm, sm] : M.layout()) {
                const Gf2Mat* Am = M.block(a1, qm);
                if (!Am)
                    continue;
                Gf2Mat AmT = Am->transposed();
                for (const auto& [qn, sn] : N.layout()) {
                    const Gf2Mat* An = N.block(a2, qn);
                    if (!An)
                        continue;
                    Gf2Mat AnT = An->transposed();
                    int q = qm + qn, qt = q + da;
                    int sOff = groupOffset(q, qm);
                    int tOff = groupOffset(qt, qm + d1);
                    if (sOff < 0 || tOff < 0)
                        continue;
                    auto& blk = act[std::size_t(a)][q];
                    if (blk.rows() == 0)
                        blk = Gf2Mat(std::size_t(dims[qt]), std::size_t(dims[q]));
                    int wN = N.dim_at(qn + d2);
                    for (int im = 0; im < sm.second; ++im) {
                        const Gf2Vec& colM = AmT.row(std::size_t(im));
                        if (colM.none())
                            continue;
                        for (int jn = 0; jn < sn.second; ++jn) {
                            const Gf2Vec& colN = AnT.row(std::size_t(jn));
                            if (colN.none())
                                continue;
                            std::size_t col = std::size_t(sOff + im * sn.second + jn);
                            colM.for_each_set([&](std::size_t km) {
                                std::size_t base = std::size_t(tOff) + km * std::size_t(wN);
                                colN.for_each_set([&](std::size_t kn) {
                                    blk.row(base + kn).flip(col);
                                });
                            });
                        }
                    }
                }
            }
        }
        for (auto it = act[std::size_t(a)].begin(); it != act[std::size_t(a)].end();)
            it = it->second.zero() ? act[std::size_t(a)].erase(it) : std::next(it);
    }
    return GradedModule(alg, std::move(basis), std::move(act));
}

/* Dual module with (h f)(v) = f(S(h) v); basis in negated degrees, same
 * local order as the source degree's basis. */
inline GradedModule dual(const GradedModule& M)
{
    const AlgebraPtr& alg = M.algebra();
    std::vector<ModuleBasisVec> basis;
    std::vector<int> srcDegs;
    for (auto it = M.layout().rbegin(); it != M.layout().rend(); ++it) {
        srcDegs.push_back(it->first);
        for (int c = 0; c < it->second.second; ++c)
            basis.push_back({ M.basis()[std::size_t(it->second.first + c)].name + "~",
                              -it->first });
    }
    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        Gf2Vec Sa = alg->antipode(a);
        for (int srcQ : srcDegs) {
            int p = -srcQ;                    // dual source degree
            int msrc = -p - da;               // M source degree for S(a)
            if (M.dim_at(msrc) == 0 || M.dim_at(-p) == 0)
                continue;
            Gf2Mat acc(std::size_t(M.dim_at(-p)), std::size_t(M.dim_at(msrc)));
            bool nonzero = false;
            Sa.for_each_set([&](std::size_t c) {
                if (const Gf2Mat* b = M.block(int(c), msrc)) {
                    for (std::size_t r = 0; r < acc.rows(); ++r)
                        acc.row(r) ^= b->row(r);
                    nonzero = true;
                }
            });
            if (!nonzero || acc.zero())
                continue;
            act[std::size_t(a)][p] = acc.transposed();
        }
    }
    return GradedModule(alg, std::move(basis), std::move(act));
}

/* Graded map of modules over one algebra. */
struct ModuleMap {
    const GradedModule* src = nullptr;
    const GradedModule* tgt = nullptr;
    int shift = 0;
    std::map<int, Gf2Mat> blocks; // per source degree

    const Gf2Mat* block(int q) const
    {
        auto it = blocks.find(q);
        return it == blocks.end() ? nullptr : &it->second;
    }

    HomVec apply(const HomVec& x) const
    {
        HomVec out{ x.deg + shift, Gf2Vec(std::size_t(tgt->dim_at(x.deg + shift))) };
        if (const Gf2Mat* b = block(x.deg))
            out.v = b->apply(x.v);
        return out;
    }

    bool equivariant() const
    {
        for (const auto& g : src->algebra()->generators())
            for (const auto& [q, slot] : src->layout())
                for (int c = 0; c < slot.second; ++c) {
                    HomVec x{ q, Gf2Vec::unit(std::size_t(slot.second), std::size_t(c)) };
                    HomVec lhs = apply(src->apply_elem(g, x));
                    HomVec rhs = tgt->apply_elem(g, apply(x));
                    if (!(lhs.v == rhs.v))
                        return false;
                }
        return true;
    }

    ModSubspace kernel() const
    {
        ModSubspace K;
        for (const auto& [q, slot] : src->layout()) {
            const Gf2Mat* b = block(q);
            if (!b || tgt->dim_at(q + shift) == 0) {
                for (int c = 0; c < slot.second; ++c)
                    K.insert(*src, { q, Gf2Vec::unit(std::size_t(slot.second), std::size_t(c)) });
                continue;
            }
            for (auto& k : b->kernel_basis())
                K.insert(*src, { q, std::move(k) });
        }
        return K;
    }

    ModSubspace image() const
    {
        ModSubspace I;
        for (const auto& [q, blk] : blocks)
            for (std::size_t c = 0; c < blk.cols(); ++c)
                I.insert(*tgt, { q + shift, blk.column(c) });
        return I;
    }
};

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    if (f.tgt != g.src)
        throw Error("compose: maps not composable");
    ModuleMap h;
    h.src = f.src;
    h.tgt = g.tgt;
    h.shift = f.shift + g.shift;
    for (const auto& [q, fb] : f.blocks)
        if (const Gf2Mat* gb = g.block(q + f.shift)) {
            Gf2Mat c = gb->mul(fb);
            if (!c.zero())
                h.blocks[q] = std::move(c);
        }
    return h;
}

struct ValidationReport {
    bool ok = true;
    std::string mode;
    std::uint64_t seed = 0;
    std::int64_t checked = 0;
    std::string message;
};

/* Module validation: unit identity (already enforced structurally), degree
 * homogeneity (structural), and the action axiom a(b m) = (ab) m — checked on
 * every algebra pair when dim(H)^2 dim(M) <= 2^24, else on >= 10^5 seeded
 * random triples. */
inline ValidationReport validate_module(const GradedModule& M, std::uint64_t seed = 0)
{
    ValidationReport rep;
    rep.seed = seed;
    const AlgebraPtr& alg = M.algebra();
    std::int64_t H = alg->dim();
    std::int64_t full = H * H * std::max<std::int64_t>(1, M.dim());
    if (full <= (std::int64_t(1) << 24)) {
        rep.mode = "full";
        for (int a = 0; a < alg->dim() && rep.ok; ++a)
            for (int b = 0; b < alg->dim() && rep.ok; ++b) {
                Gf2Vec ab = alg->mul(a, b);
                int da = alg->degree(a), db = alg->degree(b);
                for (const auto& [q, slot] : M.layout()) {
                    if (M.dim_at(q + da + db) == 0)
                        continue;
                    Gf2Mat lhs(std::size_t(M.dim_at(q + da + db)), std::size_t(slot.second));
                    const Gf2Mat* bb = M.block(b, q);
                    const Gf2Mat* ba = M.block(a, q + db);
                    if (ba && bb)
                        lhs = ba->mul(*bb);
                    Gf2Mat rhs(lhs.rows(), lhs.cols());
                    ab.for_each_set([&](std::size_t c) {
                        if (const Gf2Mat* bc = M.block(int(c), q))
                            for (std::size_t r = 0; r < rhs.rows(); ++r)
                                rhs.row(r) ^= bc->row(r);
                    });
                    ++rep.checked;
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.message = "action violates a(b m)=(ab) m at (" + alg->label(a) +
                                      ", " + alg->label(b) + "), degree " + std::to_string(q);
                        break;
                    }
                }
            }
    } else {
        rep.mode = "randomized";
        std::mt19937_64 rng(seed);
        std::int64_t want = 100000;
        for (std::int64_t t = 0; t < want; ++t) {
            int a = int(rng() % std::uint64_t(H));
            int b = int(rng() % std::uint64_t(H));
            int m = int(rng() % std::uint64_t(M.dim()));
            HomVec x = M.basis_vec(m);
            HomVec lhs = M.apply(a, M.apply(b, x));
            HomVec rhs{ lhs.deg, Gf2Vec(lhs.v.size()) };
            alg->mul(a, b).for_each_set([&](std::size_t c) {
                if (const Gf2Mat* bc = M.block(int(c), x.deg))
                    rhs.v ^= bc->apply(x.v);
            });
            ++rep.checked;
            if (!(lhs.v == rhs.v)) {
                rep.ok = false;
                rep.message = "action violates a(b m)=(ab) m at (" + alg->label(a) + ", " +
                              alg->label(b) + ", m=" + std::to_string(m) + ")";
                break;
            }
        }
    }
    return rep;
}

/* Searches for a degree-0 equivariant isomorphism M -> N: solve the linear
 * equivariance system for the generators, then look for an invertible point
 * of the solution space (exhaustive up to dimension 20, else 2^16 seeded
 * random trials). */
inline std::optional<std::map<int, Gf2Mat>> find_graded_iso(const GradedModule& M,
                                                            const GradedModule& N)
{
    if (!same_algebra(M, N) || !(M.graded_dims() == N.graded_dims()))
        return std::nullopt;
    if (M.dim() == 0)
        return std::map<int, Gf2Mat>{};

    std::map<int, int> base;
    int vars = 0;
    for (const auto& [q, slot] : M.layout()) {
        base[q] = vars;
        vars += slot.second * slot.second;
    }
    auto varOf = [&](int q, int row, int col, int dq) { return base[q] + row * dq + col; };

    std::vector<Gf2Vec> eqs;
    const auto& gens = M.algebra()->generators();
    for (const auto& g : gens) {
        int e = *M.algebra()->homogeneous_degree(g);
        for (const auto& [q, slot] : M.layout()) {
            int dq = slot.second, dt = M.dim_at(q + e);
            if (dt == 0)
                continue;
            Gf2Mat AM{ std::size_t(dt), std::size_t(dq) }, AN{ std::size_t(dt), std::size_t(dq) };
            g.for_each_set([&](std::size_t a) {
                if (const Gf2Mat* b = M.block(int(a), q))
                    for (std::size_t r = 0; r < AM.rows(); ++r)
                        AM.row(r) ^= b->row(r);
                if (const Gf2Mat* b = N.block(int(a), q))
                    for (std::size_t r = 0; r < AN.rows(); ++r)
                        AN.row(r) ^= b->row(r);
            });
            for (int kn = 0; kn < dt; ++kn)
                for (int cm = 0; cm < dq; ++cm) {
                    Gf2Vec eq{ std::size_t(vars) };
                    for (int j = 0; j < dt; ++j)
                        if (AM.get(std::size_t(j), std::size_t(cm)))
                            eq.flip(std::size_t(varOf(q + e, kn, j, dt)));
                    for (int i = 0; i < dq; ++i)
                        if (AN.get(std::size_t(kn), std::size_t(i)))
                            eq.flip(std::size_t(varOf(q, i, cm, dq)));
                    if (eq.any())
                        eqs.push_back(std::move(eq));
                }
        }
    }
    Gf2Mat sys(eqs.size(), std::size_t(vars));
    for (std::size_t r = 0; r < eqs.size(); ++r)
        sys.row(r) = eqs[r];
    std::vector<Gf2Vec> kernel = sys.kernel_basis();
    std::size_t s = kernel.size();
    if (s == 0)
        return std::nullopt;

    auto buildAndTest = [&](const std::vector<bool>& pick) -> std::optional<std::map<int, Gf2Mat>> {
        Gf2Vec x{ std::size_t(vars) };
        for (std::size_t k = 0; k < s; ++k)
            if (pick[k])
                x ^= kernel[k];
        std::map<int, Gf2Mat> f;
        for (const auto& [q, slot] : M.layout()) {
            int dq = slot.second;
            Gf2Mat fq{ std::size_t(dq), std::size_t(dq) };
            for (int r = 0; r < dq; ++r)
                for (int c = 0; c < dq; ++c)
                    if (x.get(std::size_t(varOf(q, r, c, dq))))
                        fq.set(std::size_t(r), std::size_t(c));
            if (!fq.invertible())
                return std::nullopt;
            f[q] = std::move(fq);
        }
        return f;
    };

    if (s <= 20) {
        std::vector<bool> pick(s, false);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << s); ++mask) {
            for (std::size_t k = 0; k < s; ++k)
                pick[k] = (mask >> k) & 1;
            if (auto f = buildAndTest(pick))
                return f;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(0xC0FFEEULL);
    for (int t = 0; t < (1 << 16); ++t) {
        std::vector<bool> pick(s);
        for (std::size_t k = 0; k < s; ++k)
            pick[k] = rng() & 1;
        if (auto f = buildAndTest(pick))
            return f;
    }
    return std::nullopt;
}

} // namespace sq2
