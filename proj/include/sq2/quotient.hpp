#pragma once

#include "sq2/algebra.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sq2 {

/* Graded subspace of an algebra, bucketed by degree; rows are full-width. */
struct GradedSubspace {
    AlgebraPtr amb;
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

    bool insert(int q, Gf2Vec v)
    {
        auto it = byDeg.find(q);
        if (it == byDeg.end())
            it = byDeg.emplace(q, Echelon(std::size_t(amb->dim()))).first;
        return it->second.insert(std::move(v));
    }

    bool contains(int q, const Gf2Vec& v) const
    {
        auto it = byDeg.find(q);
        return it == byDeg.end() ? v.none() : it->second.contains(v);
    }

    /* Membership for a homogeneous element (zero is a member). */
    bool contains_elem(const Gf2Vec& v) const
    {
        auto d = amb->homogeneous_degree(v);
        if (!d)
            return v.none();
        return contains(*d, v);
    }
};

inline GradedSubspace left_ideal_span(const AlgebraPtr& H, const SubalgebraEmbedding& Z)
{
    GradedSubspace s;
    s.amb = H;
    for (int k = 1; k < Z.sub->dim(); ++k) {
        int z = Z.index[std::size_t(k)];
        for (int b = 0; b < H->dim(); ++b) {
            int q = H->degree(b) + H->degree(z);
            if (q > H->top_degree())
                continue;
            s.insert(q, H->mul(b, z));
        }
    }
    return s;
}

inline GradedSubspace right_ideal_span(const AlgebraPtr& H, const SubalgebraEmbedding& Z)
{
    GradedSubspace s;
    s.amb = H;
    for (int k = 1; k < Z.sub->dim(); ++k) {
        int z = Z.index[std::size_t(k)];
        for (int b = 0; b < H->dim(); ++b) {
            int q = H->degree(b) + H->degree(z);
            if (q > H->top_degree())
                continue;
            s.insert(q, H->mul(z, b));
        }
    }
    return s;
}

/* Normality decided semantically: HZ+ = Z+H as subspaces. */
inline bool is_normal_in(const SubalgebraEmbedding& Z, const AlgebraPtr& H)
{
    GradedSubspace l = left_ideal_span(H, Z);
    GradedSubspace r = right_ideal_span(H, Z);
    if (l.dim() != r.dim())
        return false;
    for (const auto& [q, e] : l.byDeg)
        for (const auto& row : e.rows())
            if (!r.contains(q, row))
                return false;
    return true;
}

/* The two-sided ideal HZ+ of a normal sub-Hopf algebra. */
inline GradedSubspace ideal_span(const AlgebraPtr& H, const SubalgebraEmbedding& Z)
{
    if (!is_normal_in(Z, H))
        throw Error("ideal_span: subalgebra is not normal");
    return left_ideal_span(H, Z);
}

/* Monomial criterion cross-check: when Z = C ∩ H for C normal in the full
 * Steenrod algebra, the ideal is spanned by the basis monomials Sq(r) having
 * some 2^s in r_t with s < h_C(t). Verifies span equality. */
inline bool ideal_matches_monomial_criterion(const MilnorAlgebra& H, const Profile& C,
                                             const GradedSubspace& ideal)
{
    if (!validate_profile(C).normal_in_ambient)
        return false;
    auto inCriterion = [&](const MilnorMonomial& m) {
        for (int t = 1; t <= m.slots(); ++t) {
            std::int64_t mask = (std::int64_t(1) << C.at(t)) - 1;
            if (m.exp(t) & mask)
                return true;
        }
        return false;
    };
    std::map<int, int> countByDeg;
    std::vector<bool> crit(std::size_t(H.dim()), false);
    for (int i = 0; i < H.dim(); ++i)
        if (inCriterion(H.monomial(i))) {
            crit[std::size_t(i)] = true;
            countByDeg[H.degree(i)] += 1;
        }
    int total = 0;
    for (const auto& [q, c] : countByDeg)
        total += c;
    if (total != ideal.dim())
        return false;
    for (const auto& [q, e] : ideal.byDeg) {
        if (int(e.dim()) != (countByDeg.count(q) ? countByDeg[q] : 0))
            return false;
        for (const auto& row : e.rows()) {
            bool ok = true;
            row.for_each_set([&](std::size_t i) { ok = ok && crit[i]; });
            if (!ok)
                return false;
        }
    }
    return true;
}

/* Quotient Hopf algebra H//Z = H / HZ+ for Z normal in H. Coset
 * representatives are the lexicographically least basis monomials (in the
 * ambient basis order) whose images complete a basis, scanned in degree order. */
class QuotientAlgebra : public GradedAlgebra {
public:
    QuotientAlgebra(AlgebraPtr amb, SubalgebraEmbedding kernelEmb)
        : amb_(std::move(amb)), emb_(std::move(kernelEmb))
    {
        if (emb_.amb != amb_)
            throw Error("kernel embedding does not target the ambient algebra");
        if (!is_normal_in(emb_, amb_))
            throw Error("quotient: kernel is not a normal sub-Hopf algebra");
        ideal_ = left_ideal_span(amb_, emb_);

        for (const auto& [q, slot] : amb_->layout())
            red_.emplace(q, CosetReducer(std::size_t(amb_->dim())));
        for (const auto& [q, e] : ideal_.byDeg)
            for (const auto& row : e.rows())
                red_.at(q).add_kernel(row);

        for (int i = 0; i < amb_->dim(); ++i) {
            int q = amb_->degree(i);
            if (red_.at(q).try_add_rep(Gf2Vec::unit(std::size_t(amb_->dim()), std::size_t(i)))) {
                repGlobal_[q].push_back(int(reps_.size()));
                reps_.push_back(i);
                degrees_.push_back(q);
            }
        }
        init_layout();

        if (std::int64_t(dim()) * emb_.sub->dim() != amb_->dim())
            throw Error("quotient dimension violates Lagrange (internal)");
        if (top_degree() != amb_->top_degree() - emb_.sub->top_degree())
            throw Error("quotient top degree mismatch (internal)");

        for (std::size_t g = 0; g < amb_->generators().size(); ++g) {
            Gf2Vec img = project(amb_->generators()[g]);
            if (img.any()) {
                gens_.push_back(std::move(img));
                genLabels_.push_back(amb_->generator_labels()[g]);
            }
        }
    }

    const AlgebraPtr& ambient() const { return amb_; }
    const AlgebraPtr& kernel() const { return emb_.sub; }
    const SubalgebraEmbedding& kernel_embedding() const { return emb_; }
    const GradedSubspace& ideal() const { return ideal_; }

    int rep_index(int i) const { return reps_[std::size_t(i)]; }

    /* Image of a homogeneous ambient element in quotient coordinates. */
    Gf2Vec project(const Gf2Vec& v) const
    {
        Gf2Vec out{ std::size_t(dim()) };
        auto d = amb_->homogeneous_degree(v);
        if (!d)
            return out;
        return project_at(*d, v);
    }

    Gf2Vec project_at(int q, const Gf2Vec& v) const
    {
        Gf2Vec out{ std::size_t(dim()) };
        auto it = red_.find(q);
        if (it == red_.end()) {
            if (v.any())
                throw Error("projection of element outside the algebra (internal)");
            return out;
        }
        auto [coords, exact] = it->second.reduce(v);
        if (!exact)
            throw Error("projection failed to reduce (internal)");
        auto git = repGlobal_.find(q);
        coords.for_each_set([&](std::size_t k) {
            if (git == repGlobal_.end())
                throw Error("projection hit a repless degree (internal)");
            out.set(std::size_t(git->second[k]));
        });
        return out;
    }

    std::string label(int i) const override { return amb_->label(rep_index(i)); }

    std::string descriptor() const override
    {
        return "quotient:" + amb_->descriptor() + "/" + emb_.sub->descriptor();
    }

protected:
    Gf2Vec compute_mul(int i, int j) const override
    {
        int q = degree(i) + degree(j);
        if (q > amb_->top_degree())
            return Gf2Vec(std::size_t(dim()));
        return project_at(q, amb_->mul(rep_index(i), rep_index(j)));
    }

    std::vector<std::pair<int, int>> compute_coproduct(int i) const override
    {
        std::map<std::pair<int, int>, int> acc;
        for (const auto& [u, v] : amb_->coproduct(rep_index(i))) {
            Gf2Vec pu = project_at(amb_->degree(u),
                                   Gf2Vec::unit(std::size_t(amb_->dim()), std::size_t(u)));
            Gf2Vec pv = project_at(amb_->degree(v),
                                   Gf2Vec::unit(std::size_t(amb_->dim()), std::size_t(v)));
            pu.for_each_set([&](std::size_t a) {
                pv.for_each_set([&](std::size_t b) { acc[{ int(a), int(b) }] ^= 1; });
            });
        }
        std::vector<std::pair<int, int>> out;
        for (const auto& [pair, c] : acc)
            if (c)
                out.push_back(pair);
        return out;
    }

private:
    AlgebraPtr amb_;
    SubalgebraEmbedding emb_;
    GradedSubspace ideal_;
    std::map<int, CosetReducer> red_;
    std::map<int, std::vector<int>> repGlobal_;
    std::vector<int> reps_;
};

using QuotientAlgebraPtr = std::shared_ptr<const QuotientAlgebra>;

inline QuotientAlgebraPtr make_quotient(AlgebraPtr amb, SubalgebraEmbedding kernelEmb)
{
    return std::make_shared<QuotientAlgebra>(std::move(amb), std::move(kernelEmb));
}

/* pi-image of a subalgebra of the ambient algebra, as a graded subspace of
 * the quotient. */
inline GradedSubspace pi_image(const QuotientAlgebraPtr& Q, const SubalgebraEmbedding& subInAmb)
{
    if (subInAmb.amb != Q->ambient())
        throw Error("pi_image: embedding does not target the ambient algebra");
    GradedSubspace s;
    s.amb = Q;
    int n = Q->ambient()->dim();
    for (int k = 0; k < subInAmb.sub->dim(); ++k) {
        int i = subInAmb.index[std::size_t(k)];
        Gf2Vec img = Q->project_at(Q->ambient()->degree(i),
                                   Gf2Vec::unit(std::size_t(n), std::size_t(i)));
        if (img.any())
            s.insert(subInAmb.sub->degree(k), img);
    }
    return s;
}

inline MilnorMonomial doubled_monomial(const MilnorMonomial& m)
{
    std::vector<std::int64_t> e(m.e);
    for (auto& r : e)
        r *= 2;
    return MilnorMonomial::make(std::move(e));
}

struct DoublingReport {
    bool ok = false;
    std::string path;
    std::string detail;
};

/* Degree-doubling algebra isomorphism small -> Q. Primary path: the basis
 * map Sq(r_1,r_2,...) -> pi(Sq(2r_1,2r_2,...)), which restricts to
 * P^s_t -> [P^{s+1}_t] on generators. Fallback (recorded): bounded search
 * over generator images using graph-subalgebra closure. */
inline DoublingReport doubling_iso_check(const MilnorAlgebra& small, const QuotientAlgebra& Q)
{
    DoublingReport rep;

    for (const auto& [q, slot] : Q.layout())
        if (q % 2 != 0) {
            rep.detail = "quotient has odd-degree classes";
            return rep;
        }
    for (const auto& [q, slot] : small.layout())
        if (Q.dim_at(2 * q) != slot.second) {
            rep.detail = "graded dimensions do not double";
            return rep;
        }

    const MilnorAlgebra* amb = dynamic_cast<const MilnorAlgebra*>(Q.ambient().get());
    bool primaryApplies = amb != nullptr;
    std::vector<Gf2Vec> phi;
    if (primaryApplies) {
        for (int i = 0; i < small.dim() && primaryApplies; ++i) {
            auto j = amb->index_of(doubled_monomial(small.monomial(i)));
            if (!j) {
                primaryApplies = false;
                break;
            }
            phi.push_back(Q.project_at(2 * small.degree(i),
                                       Gf2Vec::unit(std::size_t(amb->dim()), std::size_t(*j))));
        }
    }
    if (primaryApplies) {
        Echelon span(std::size_t(Q.dim()));
        for (const auto& v : phi)
            span.insert(v);
        if (int(span.dim()) == small.dim()) {
            auto phiElem = [&](const Gf2Vec& x) {
                Gf2Vec out(std::size_t(Q.dim()));
                x.for_each_set([&](std::size_t k) { out ^= phi[k]; });
                return out;
            };
            bool multOk = true;
            for (int i = 0; i < small.dim() && multOk; ++i)
                for (int j = 0; j < small.dim(); ++j) {
                    Gf2Vec lhs = phiElem(small.mul(i, j));
                    Gf2Vec rhs = Q.mul_elem(phi[std::size_t(i)], phi[std::size_t(j)]);
                    if (!(lhs == rhs)) {
                        multOk = false;
                        break;
                    }
                }
            if (multOk) {
                rep.ok = true;
                rep.path = "exponent-doubling";
                return rep;
            }
        }
    }

    /* Fallback: DFS over generator images; the graph of a candidate map is
     * closed under products iff the map is multiplicative. */
    rep.path = "generator-image search";
    int nS = small.dim(), nQ = Q.dim();
    auto graphOk = [&](const std::vector<Gf2Vec>& images) {
        Echelon graph(std::size_t(nS + nQ));
        std::vector<Gf2Vec> rows;
        auto pack = [&](const Gf2Vec& a, const Gf2Vec& b) {
            Gf2Vec v(std::size_t(nS + nQ));
            a.for_each_set([&](std::size_t k) { v.set(k); });
            b.for_each_set([&](std::size_t k) { v.set(std::size_t(nS) + k); });
            return v;
        };
        std::vector<std::pair<Gf2Vec, Gf2Vec>> work;
        work.emplace_back(Gf2Vec::unit(std::size_t(nS), 0), Gf2Vec::unit(std::size_t(nQ), 0));
        for (std::size_t g = 0; g < small.generators().size(); ++g)
            work.emplace_back(small.generators()[g], images[g]);
        std::vector<std::pair<Gf2Vec, Gf2Vec>> members;
        while (!work.empty()) {
            auto [a, b] = work.back();
            work.pop_back();
            if (!graph.insert(pack(a, b)))
                continue;
            if (int(graph.dim()) > nS)
                return false;
            members.emplace_back(a, b);
            for (const auto& [c, d] : members) {
                work.emplace_back(small.mul_elem(a, c), Q.mul_elem(b, d));
                work.emplace_back(small.mul_elem(c, a), Q.mul_elem(d, b));
            }
        }
        if (int(graph.dim()) != nS)
            return false;
        Gf2Mat proj1(graph.rows().size(), std::size_t(nS));
        Gf2Mat proj2(graph.rows().size(), std::size_t(nQ));
        for (std::size_t r = 0; r < graph.rows().size(); ++r) {
            proj1.row(r) = graph.rows()[r].slice(0, std::size_t(nS));
            proj2.row(r) = graph.rows()[r].slice(std::size_t(nS), std::size_t(nQ));
        }
        return proj1.rank() == std::size_t(nS) && proj2.rank() == std::size_t(nS);
    };

    const auto& gens = small.generators();
    std::vector<std::vector<Gf2Vec>> candidates;
    std::size_t combos = 1;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        int dg = *small.homogeneous_degree(gens[g]);
        int cnt = Q.dim_at(2 * dg), off = Q.offset_at(2 * dg);
        if (cnt <= 0 || cnt > 12) {
            rep.detail = "fallback search space unavailable";
            return rep;
        }
        std::vector<Gf2Vec> cs;
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << cnt); ++mask) {
            Gf2Vec v{ std::size_t(nQ) };
            for (int b = 0; b < cnt; ++b)
                if ((mask >> b) & 1)
                    v.set(std::size_t(off + b));
            cs.push_back(std::move(v));
        }
        combos *= cs.size();
        if (combos > 200000) {
            rep.detail = "fallback search space too large";
            return rep;
        }
        candidates.push_back(std::move(cs));
    }
    std::vector<Gf2Vec> images(gens.size(), Gf2Vec(std::size_t(nQ)));
    std::function<bool(std::size_t)> dfs = [&](std::size_t g) {
        if (g == gens.size())
            return graphOk(images);
        for (const auto& c : candidates[g]) {
            images[g] = c;
            if (dfs(g + 1))
                return true;
        }
        return false;
    };
    if (dfs(0)) {
        rep.ok = true;
        return rep;
    }
    rep.detail = "no degree-doubling isomorphism found by fallback search";
    return rep;
}

} // namespace sq2
