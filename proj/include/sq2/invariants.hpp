#pragma once

#include "sq2/module.hpp"
#include "sq2/quotient.hpp"

namespace sq2 {

/* The invariant submodule M^Z = { x : z x = 0 for all z in Z+ } of a module
 * over Q's ambient algebra, as a module over Q = H//Z. The H//Z action goes
 * through coset representatives; well-definedness is asserted by checking
 * that every ideal basis element kills the invariant space. */
struct InvariantModule {
    GradedModule mod;                  // over the quotient algebra
    std::map<int, Echelon> space;      // rows in M-local coordinates per degree
};

inline InvariantModule invariant_module(const GradedModule& M, const QuotientAlgebraPtr& Q)
{
    if (!(M.algebra() == Q->ambient() ||
          M.algebra()->descriptor() == Q->ambient()->descriptor()))
        throw Error("invariants: module is not over the quotient's ambient algebra");
    const SubalgebraEmbedding& Z = Q->kernel_embedding();

    InvariantModule out;
    for (const auto& [q, slot] : M.layout()) {
        std::size_t rows = 0;
        for (int k = 1; k < Z.sub->dim(); ++k)
            rows += std::size_t(M.dim_at(q + Z.sub->degree(k)));
        Gf2Mat sys(rows, std::size_t(slot.second));
        std::size_t r0 = 0;
        for (int k = 1; k < Z.sub->dim(); ++k) {
            int z = Z.index[std::size_t(k)];
            int dt = M.dim_at(q + Z.sub->degree(k));
            if (const Gf2Mat* b = M.block(z, q))
                for (int r = 0; r < dt; ++r)
                    sys.row(r0 + std::size_t(r)) = b->row(std::size_t(r));
            r0 += std::size_t(dt);
        }
        Echelon e(std::size_t(slot.second));
        for (auto& k : sys.kernel_basis())
            e.insert(std::move(k));
        if (e.dim())
            out.space.emplace(q, std::move(e));
    }

    std::vector<ModuleBasisVec> basis;
    std::map<int, CosetReducer> coords;
    int k = 0;
    for (const auto& [q, e] : out.space) {
        auto& r = coords.emplace(q, CosetReducer(std::size_t(M.dim_at(q)))).first->second;
        for (const auto& row : e.rows()) {
            r.try_add_rep(row);
            basis.push_back({ "v" + std::to_string(k++), q });
        }
    }
    std::map<int, int> dimAt;
    for (const auto& [q, e] : out.space)
        dimAt[q] = int(e.dim());

    std::vector<std::map<int, Gf2Mat>> act(std::size_t(Q->dim()));
    for (int c = 0; c < Q->dim(); ++c) {
        int rep = Q->rep_index(c);
        int dc = Q->degree(c);
        for (const auto& [q, e] : out.space) {
            if (!dimAt.count(q + dc))
                continue;
            Gf2Mat blk(std::size_t(dimAt[q + dc]), e.dim());
            bool nonzero = false;
            for (std::size_t col = 0; col < e.rows().size(); ++col) {
                HomVec y = M.apply(rep, HomVec{ q, e.rows()[col] });
                if (y.v.none())
                    continue;
                auto [cc, exact] = coords.at(q + dc).reduce(y.v);
                if (!exact)
                    throw Error("invariant space not closed under coset action "
                                "(kernel not normal?)");
                cc.for_each_set([&](std::size_t r) {
                    blk.set(r, col);
                    nonzero = true;
                });
            }
            if (nonzero)
                act[std::size_t(c)][q] = std::move(blk);
        }
    }

    /* Representative independence on a spanning set of the ideal. */
    for (const auto& [dw, ech] : Q->ideal().byDeg)
        for (const auto& w : ech.rows())
            for (const auto& [q, e] : out.space)
                for (const auto& row : e.rows()) {
                    if (M.dim_at(q + dw) == 0)
                        continue;
                    HomVec y = M.apply_elem(w, HomVec{ q, row });
                    if (y.v.any())
                        throw Error("quotient action depends on the representative "
                                    "(ideal does not kill M^Z)");
                }

    out.mod = GradedModule(Q, std::move(basis), std::move(act));
    return out;
}

/* M^Z_1 = t^Z_1 . M, the image of the top class of Z. */
inline ModSubspace top_image(const GradedModule& M, const SubalgebraEmbedding& Z)
{
    int t = Z.index[std::size_t(Z.sub->top_class())];
    ModSubspace out;
    for (const auto& [q, slot] : M.layout())
        if (const Gf2Mat* b = M.block(t, q))
            for (int c = 0; c < slot.second; ++c) {
                Gf2Vec col = b->column(std::size_t(c));
                if (col.any())
                    out.insert(M, { q + M.algebra()->degree(t), std::move(col) });
            }
    return out;
}

} // namespace sq2
