#pragma once

#include "sq2/gf2.hpp"
#include "sq2/milnor.hpp"
#include "sq2/profile.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sq2 {

/* Finite connected graded cocommutative Hopf algebra over GF(2) with a chosen
 * ordered basis (ascending degree, index 0 the unit, the last index the top
 * class). Multiplication, coproduct and antipode are memoized lazily; caches
 * are mutex-guarded and semantically invisible. */
class GradedAlgebra {
public:
    virtual ~GradedAlgebra() = default;

    int dim() const { return int(degrees_.size()); }
    int degree(int i) const { return degrees_[std::size_t(i)]; }
    int top_degree() const { return degrees_.back(); }
    int top_class() const { return dim() - 1; }
    int unit() const { return 0; }

    const std::vector<int>& basis_degrees() const { return degrees_; }

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

    const std::map<int, std::pair<int, int>>& layout() const { return layout_; }

    const std::vector<Gf2Vec>& generators() const { return gens_; }
    const std::vector<std::string>& generator_labels() const { return genLabels_; }

    virtual std::string label(int i) const = 0;
    virtual std::string descriptor() const = 0;

    Gf2Vec mul(int i, int j) const
    {
        if (i == 0)
            return Gf2Vec::unit(std::size_t(dim()), std::size_t(j));
        if (j == 0)
            return Gf2Vec::unit(std::size_t(dim()), std::size_t(i));
        if (dim() <= kCacheLimit) {
            std::lock_guard<std::mutex> lock(mu_);
            std::uint64_t key = (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
            auto it = mulCache_.find(key);
            if (it != mulCache_.end())
                return it->second;
            Gf2Vec v = compute_mul(i, j);
            mulCache_.emplace(key, v);
            return v;
        }
        return compute_mul(i, j);
    }

    Gf2Vec mul_elem(const Gf2Vec& a, const Gf2Vec& b) const
    {
        Gf2Vec out{ std::size_t(dim()) };
        a.for_each_set([&](std::size_t i) {
            b.for_each_set([&](std::size_t j) { out ^= mul(int(i), int(j)); });
        });
        return out;
    }

    const std::vector<std::pair<int, int>>& coproduct(int i) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = copCache_.find(i);
        if (it != copCache_.end())
            return it->second;
        return copCache_.emplace(i, compute_coproduct(i)).first->second;
    }

    /* S(e_i) by the connected-Hopf recursion over the reduced coproduct. */
    Gf2Vec antipode(int i) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = antCache_.find(i);
            if (it != antCache_.end())
                return it->second;
        }
        Gf2Vec s{ std::size_t(dim()) };
        if (i == 0) {
            s.set(0);
        } else {
            s.set(std::size_t(i));
            for (const auto& [u, v] : coproduct(i)) {
                if (u == 0 || v == 0)
                    continue;
                s ^= mul_elem(antipode(u), Gf2Vec::unit(std::size_t(dim()), std::size_t(v)));
            }
        }
        std::lock_guard<std::mutex> lock(mu_);
        return antCache_.emplace(i, std::move(s)).first->second;
    }

    Gf2Vec antipode_elem(const Gf2Vec& a) const
    {
        Gf2Vec out{ std::size_t(dim()) };
        a.for_each_set([&](std::size_t i) { out ^= antipode(int(i)); });
        return out;
    }

    /* Degree of a homogeneous nonzero element; nullopt for 0 or mixed. */
    std::optional<int> homogeneous_degree(const Gf2Vec& a) const
    {
        std::optional<int> d;
        bool mixed = false;
        a.for_each_set([&](std::size_t i) {
            if (!d)
                d = degree(int(i));
            else if (*d != degree(int(i)))
                mixed = true;
        });
        if (mixed)
            return std::nullopt;
        return d;
    }

    std::string format_elem(const Gf2Vec& a) const
    {
        if (a.none())
            return "0";
        std::string out;
        a.for_each_set([&](std::size_t i) {
            if (!out.empty())
                out += "+";
            out += label(int(i));
        });
        return out;
    }

    static constexpr int kCacheLimit = 256;

protected:
    virtual Gf2Vec compute_mul(int i, int j) const = 0;
    virtual std::vector<std::pair<int, int>> compute_coproduct(int i) const = 0;

    /* Subclasses call this after filling degrees_ (ascending). */
    void init_layout()
    {
        if (degrees_.empty() || degrees_[0] != 0)
            throw Error("algebra must be connected with unit in degree 0");
        for (std::size_t k = 1; k < degrees_.size(); ++k)
            if (degrees_[k] < degrees_[k - 1])
                throw Error("algebra basis not sorted by degree");
        layout_.clear();
        for (int i = 0; i < int(degrees_.size()); ++i) {
            auto& slot = layout_[degrees_[std::size_t(i)]];
            if (slot.second == 0)
                slot.first = i;
            slot.second += 1;
        }
        if (layout_[0].second != 1)
            throw Error("algebra not connected (degree 0 not one-dimensional)");
        if (layout_[top_degree()].second != 1)
            throw Error("top degree not one-dimensional");
    }

    std::vector<int> degrees_;
    std::vector<Gf2Vec> gens_;
    std::vector<std::string> genLabels_;

private:
    std::map<int, std::pair<int, int>> layout_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, Gf2Vec> mulCache_;
    mutable std::unordered_map<int, std::vector<std::pair<int, int>>> copCache_;
    mutable std::unordered_map<int, Gf2Vec> antCache_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/* Sub-Hopf algebra of the mod 2 Steenrod algebra cut out by a profile:
 * basis { Sq(r_1,r_2,...) : r_t < 2^{h(t)} }. */
class MilnorAlgebra : public GradedAlgebra {
public:
    MilnorAlgebra(Profile p, std::string desc) : p_(std::move(p)), desc_(std::move(desc))
    {
        auto flags = validate_profile(p_);
        if (!p_.finite())
            throw Error("cannot build an infinite profile algebra: " + p_.label());
        if (!flags.valid)
            throw Error("invalid profile: " + p_.label());
        (void)p_.dimension();

        std::vector<std::int64_t> exps(std::size_t(p_.support()), 0);
        std::vector<MilnorMonomial> basis;
        std::function<void(int)> rec = [&](int t) {
            if (t > p_.support()) {
                basis.push_back(MilnorMonomial::make(exps));
                return;
            }
            std::int64_t bound = std::int64_t(1) << p_.at(t);
            for (std::int64_t r = 0; r < bound; ++r) {
                exps[std::size_t(t - 1)] = r;
                rec(t + 1);
            }
            exps[std::size_t(t - 1)] = 0;
        };
        rec(1);
        std::sort(basis.begin(), basis.end());
        basis_ = std::move(basis);

        degrees_.reserve(basis_.size());
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (basis_[k].deg > (std::int64_t(1) << 31) - 1)
                throw ResourceLimitError("algebra top degree too large");
            degrees_.push_back(int(basis_[k].deg));
            index_.emplace(basis_[k], int(k));
        }
        init_layout();

        for (int t = 1; t <= p_.support(); ++t)
            for (int s = 0; s < p_.at(t); ++s) {
                int idx = index_.at(milnor_pst(s, t));
                gens_.push_back(Gf2Vec::unit(basis_.size(), std::size_t(idx)));
                genLabels_.push_back(milnor_pst(s, t).label());
            }

        if (top_degree() != int(p_.top_degree()))
            throw Error("top degree mismatch (internal)");
    }

    const Profile& profile() const { return p_; }
    const MilnorMonomial& monomial(int i) const { return basis_[std::size_t(i)]; }

    std::optional<int> index_of(const MilnorMonomial& m) const
    {
        auto it = index_.find(m);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<Gf2Vec> elem(const MilnorElement& x) const
    {
        Gf2Vec v(basis_.size());
        for (const auto& m : x) {
            auto i = index_of(m);
            if (!i)
                return std::nullopt;
            v.set(std::size_t(*i));
        }
        return v;
    }

    MilnorElement to_milnor(const Gf2Vec& v) const
    {
        MilnorElement x;
        v.for_each_set([&](std::size_t i) { x.toggle(basis_[i]); });
        return x;
    }

    std::string label(int i) const override { return basis_[std::size_t(i)].label(); }
    std::string descriptor() const override { return desc_; }

protected:
    Gf2Vec compute_mul(int i, int j) const override
    {
        MilnorElement prod = milnor_mul(basis_[std::size_t(i)], basis_[std::size_t(j)]);
        auto v = elem(prod);
        if (!v)
            throw Error("product escapes the basis span; profile is not a subalgebra: " +
                        p_.label());
        return *v;
    }

    std::vector<std::pair<int, int>> compute_coproduct(int i) const override
    {
        std::vector<std::pair<int, int>> out;
        for (const auto& [u, v] : milnor_coproduct(basis_[std::size_t(i)])) {
            auto iu = index_of(u), iv = index_of(v);
            if (!iu || !iv)
                throw Error("coproduct escapes the basis span (internal)");
            out.emplace_back(*iu, *iv);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Profile p_;
    std::string desc_;
    std::vector<MilnorMonomial> basis_;
    std::unordered_map<MilnorMonomial, int, MilnorMonomialHash> index_;
};

using MilnorAlgebraPtr = std::shared_ptr<const MilnorAlgebra>;

inline MilnorAlgebraPtr make_milnor_algebra(Profile p, std::string desc)
{
    return std::make_shared<MilnorAlgebra>(std::move(p), std::move(desc));
}

/* Inclusion of one algebra's basis into another's. */
struct SubalgebraEmbedding {
    AlgebraPtr sub;
    AlgebraPtr amb;
    std::vector<int> index; // sub basis index -> ambient basis index
};

inline SubalgebraEmbedding milnor_embedding(const MilnorAlgebraPtr& sub,
                                            const MilnorAlgebraPtr& amb)
{
    if (!sub->profile().leq(amb->profile()))
        throw Error("not a subalgebra: " + sub->profile().label() + " !<= " +
                    amb->profile().label());
    SubalgebraEmbedding e;
    e.sub = sub;
    e.amb = amb;
    e.index.reserve(std::size_t(sub->dim()));
    for (int i = 0; i < sub->dim(); ++i) {
        auto j = amb->index_of(sub->monomial(i));
        if (!j)
            throw Error("embedding failure (internal)");
        e.index.push_back(*j);
    }
    return e;
}

inline Gf2Vec embed_elem(const SubalgebraEmbedding& e, const Gf2Vec& v)
{
    Gf2Vec out(std::size_t(e.amb->dim()));
    v.for_each_set([&](std::size_t i) { out.set(std::size_t(e.index[i])); });
    return out;
}

/* Commutative with all positive squares zero (over GF(2): exterior). */
inline bool is_elementary(const GradedAlgebra& A)
{
    for (int i = 1; i < A.dim(); ++i) {
        Gf2Vec sq = A.mul(i, i);
        if (sq.any())
            return false;
        for (int j = i + 1; j < A.dim(); ++j)
            if (!(A.mul(i, j) == A.mul(j, i)))
                return false;
    }
    return true;
}

/* Poincare pairing H_q x H_{n-q} -> H_n = k, nonsingular in every degree. */
inline bool poincare_pairing_nonsingular(const GradedAlgebra& A, int* badDegree = nullptr)
{
    int n = A.top_degree();
    int top = A.top_class();
    for (const auto& [q, slot] : A.layout()) {
        int dq = slot.second;
        int dn = A.dim_at(n - q);
        if (dq != dn) {
            if (badDegree)
                *badDegree = q;
            return false;
        }
        Gf2Mat pairing{ std::size_t(dq), std::size_t(dn) };
        int offq = slot.first, offn = A.offset_at(n - q);
        for (int a = 0; a < dq; ++a)
            for (int b = 0; b < dn; ++b)
                if (A.mul(offq + a, offn + b).get(std::size_t(top)))
                    pairing.set(std::size_t(a), std::size_t(b));
        if (pairing.rank() != std::size_t(dq)) {
            if (badDegree)
                *badDegree = q;
            return false;
        }
    }
    return true;
}

/* Corollary 2.16 product prod_t prod_{s<h(t)} P^s_t in the ambient Steenrod
 * algebra. Nonzero with leading term Sq(2^{h(1)}-1, 2^{h(2)}-1, ...). */
inline MilnorElement ordered_generator_product(const Profile& p)
{
    MilnorElement prod = MilnorElement::one();
    for (int t = 1; t <= p.support(); ++t)
        for (int s = 0; s < p.at(t); ++s)
            prod = milnor_mul(prod, MilnorElement::monomial(milnor_pst(s, t)));
    return prod;
}

inline MilnorMonomial profile_top_monomial(const Profile& p)
{
    std::vector<std::int64_t> e(std::size_t(p.support()));
    for (int t = 1; t <= p.support(); ++t)
        e[std::size_t(t - 1)] = (std::int64_t(1) << p.at(t)) - 1;
    return MilnorMonomial::make(std::move(e));
}

} // namespace sq2
