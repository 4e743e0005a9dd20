#pragma once

/* Test-only independent oracles. These deliberately avoid the library's
 * top-class freeness route and closure tricks. */

#include "sq2/module.hpp"
#include "sq2/stable.hpp"

#include <map>
#include <vector>

namespace sq2::testing {

/* H+M computed directly from the definition: the span of a·m over every
 * positive-degree basis element a and every basis vector m. */
inline std::map<int, Echelon> radical_direct(const GradedModule& M)
{
    std::map<int, Echelon> rad;
    for (const auto& [q, slot] : M.layout())
        rad.emplace(q, Echelon(std::size_t(slot.second)));
    for (int a = 1; a < M.algebra()->dim(); ++a)
        for (const auto& [q, blk] : M.blocks_of(a))
            for (std::size_t c = 0; c < blk.cols(); ++c) {
                Gf2Vec col = blk.column(c);
                if (col.any())
                    rad.at(q + M.algebra()->degree(a)).insert(std::move(col));
            }
    return rad;
}

/* Exhaustive minimal-generator lifting: lift a basis of M/H+M, form the full
 * matrix of the cover map (+) sigma(d_j) H -> M, and decide freeness by rank
 * alone. */
inline bool brute_force_free(const GradedModule& M)
{
    const AlgebraPtr& alg = M.algebra();
    auto rad = radical_direct(M);
    std::vector<HomVec> gens;
    for (const auto& [q, slot] : M.layout()) {
        CosetReducer r{ std::size_t(slot.second) };
        for (const auto& row : rad.at(q).rows())
            r.add_kernel(row);
        for (int c = 0; c < slot.second; ++c) {
            Gf2Vec v = Gf2Vec::unit(std::size_t(slot.second), std::size_t(c));
            if (r.try_add_rep(v))
                gens.push_back({ q, std::move(v) });
        }
    }
    if (std::int64_t(gens.size()) * alg->dim() != M.dim())
        return false;
    Gf2Mat cover(std::size_t(M.dim()), gens.size() * std::size_t(alg->dim()));
    std::size_t col = 0;
    for (const auto& g : gens)
        for (int a = 0; a < alg->dim(); ++a, ++col) {
            HomVec y = M.apply(a, g);
            if (M.dim_at(y.deg) == 0)
                continue;
            int off = M.offset_at(y.deg);
            y.v.for_each_set([&](std::size_t r) { cover.set(std::size_t(off) + r, col); });
        }
    return cover.rank() == std::size_t(M.dim());
}

/* One step of a minimal free resolution: the kernel of the minimal free
 * cover. Independent route to the syzygy modules. */
inline GradedModule resolution_syzygy(const GradedModule& M)
{
    const AlgebraPtr& alg = M.algebra();
    auto rad = radical_direct(M);
    std::vector<HomVec> gens;
    std::vector<int> shifts;
    for (const auto& [q, slot] : M.layout()) {
        CosetReducer r{ std::size_t(slot.second) };
        for (const auto& row : rad.at(q).rows())
            r.add_kernel(row);
        for (int c = 0; c < slot.second; ++c) {
            Gf2Vec v = Gf2Vec::unit(std::size_t(slot.second), std::size_t(c));
            if (r.try_add_rep(v)) {
                gens.push_back({ q, std::move(v) });
                shifts.push_back(q);
            }
        }
    }
    GradedModule F = free_module(alg, shifts);

    /* The cover sends copy k's algebra slot a to a . m_k; copies are indexed
     * by ascending shift, matching free_module's deterministic naming. */
    std::vector<std::size_t> order(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gens[a].deg < gens[b].deg; });

    ModuleMap f;
    f.src = &F;
    f.tgt = &M;
    f.shift = 0;
    std::map<int, Gf2Mat> blocks;
    for (const auto& [q, slot] : F.layout())
        blocks.emplace(q, Gf2Mat(std::size_t(M.dim_at(q)), std::size_t(slot.second)));
    for (int g = 0; g < F.dim(); ++g) {
        const std::string& name = F.basis()[std::size_t(g)].name;
        std::size_t dot = name.find('.');
        int copy = std::stoi(name.substr(1, dot - 1));
        std::string lbl = name.substr(dot + 1);
        int a = -1;
        for (int i = 0; i < alg->dim(); ++i)
            if (alg->label(i) == lbl) {
                a = i;
                break;
            }
        HomVec y = M.apply(a, gens[order[std::size_t(copy)]]);
        int q = F.basis()[std::size_t(g)].deg;
        if (M.dim_at(q) == 0)
            continue;
        Gf2Mat& blk = blocks.at(q);
        int col = g - F.offset_at(q);
        y.v.for_each_set([&](std::size_t r) { blk.set(r, std::size_t(col)); });
    }
    for (auto& [q, blk] : blocks)
        if (!blk.zero())
            f.blocks[q] = blk;
    return submodule_module(F, f.kernel()).mod;
}

} // namespace sq2::testing
