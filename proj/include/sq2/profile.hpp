#pragma once

#include "sq2/milnor.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace sq2 {

/* Profile function of a sub-Hopf algebra: h(t) for t = 1..support, then a
 * constant tail (0 for finite algebras; B_i needs a positive tail). */
struct Profile {
    std::vector<int> h;
    int tail = 0;

    Profile() = default;
    Profile(std::initializer_list<int> values) : Profile(std::vector<int>(values)) {}
    Profile(std::vector<int> values, int tailValue = 0) : h(std::move(values)), tail(tailValue)
    {
        for (int v : h)
            if (v < 0)
                throw Error("negative profile value");
        if (tail < 0)
            throw Error("negative profile tail");
        trim();
    }

    void trim()
    {
        while (!h.empty() && h.back() == tail)
            h.pop_back();
    }

    int at(int t) const
    {
        if (t < 1)
            throw Error("profile argument must be >= 1");
        return t <= int(h.size()) ? h[std::size_t(t - 1)] : tail;
    }

    int support() const { return int(h.size()); }
    bool finite() const { return tail == 0; }
    bool trivial() const { return finite() && h.empty(); }

    int weight_sum() const
    {
        if (!finite())
            throw Error("infinite profile");
        int s = 0;
        for (int v : h)
            s += v;
        return s;
    }

    std::int64_t dimension() const
    {
        int s = weight_sum();
        if (s > 40)
            throw ResourceLimitError("algebra dimension 2^" + std::to_string(s) + " too large");
        return std::int64_t(1) << s;
    }

    std::int64_t top_degree() const
    {
        if (!finite())
            throw Error("infinite profile");
        std::int64_t d = 0;
        for (int t = 1; t <= support(); ++t)
            d += ((std::int64_t(1) << at(t)) - 1) * ((std::int64_t(1) << t) - 1);
        return d;
    }

    /* Pointwise <=, i.e. "is a sub-Hopf algebra of" at profile level. */
    bool leq(const Profile& o) const
    {
        int T = std::max(support(), o.support());
        for (int t = 1; t <= T; ++t)
            if (at(t) > o.at(t))
                return false;
        return tail <= o.tail;
    }

    std::string label() const
    {
        std::ostringstream os;
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (k)
                os << ",";
            os << h[k];
        }
        if (tail) {
            if (!h.empty())
                os << ",";
            os << tail << "...";
        }
        return os.str();
    }

    bool operator==(const Profile&) const = default;
};

struct ProfileFlags {
    bool valid = false;
    bool normal_in_ambient = false;
};

/* h is the profile of a sub-Hopf algebra iff for all u,v >= 1 either
 * h(u) <= v + h(u+v) or h(v) <= h(u+v); it cuts out a normal subalgebra of
 * the ambient Steenrod algebra when the latter condition holds for all u,v.
 * Both reduce to finitely many checks once h is constant beyond its
 * support. */
inline ProfileFlags validate_profile(const Profile& p)
{
    ProfileFlags f;
    f.valid = true;
    int T = p.support();
    for (int u = 1; u <= T && f.valid; ++u)
        for (int v = 1; v <= T; ++v)
            if (!(p.at(u) <= v + p.at(u + v) || p.at(v) <= p.at(u + v))) {
                f.valid = false;
                break;
            }
    f.normal_in_ambient = true;
    for (int v = 1; v <= T && f.normal_in_ambient; ++v) {
        int m = p.tail;
        for (int w = v + 1; w <= T; ++w)
            m = std::min(m, p.at(w));
        if (p.at(v) > m)
            f.normal_in_ambient = false;
    }
    return f;
}

/* Sufficiency shortcut for cutting a profile below a valid one: h1 <= h2
 * pointwise, h1 = h2 from t0 on, and the profile condition holds for
 * u+v <= t0. Returns whether the hypotheses are met (validity of h1 then
 * follows). */
inline bool profile_extension_hypotheses(const Profile& h1, const Profile& h2, int t0)
{
    if (!validate_profile(h2).valid || !h1.leq(h2))
        return false;
    int T = std::max(h1.support(), h2.support());
    for (int t = t0; t <= T + 1; ++t)
        if (h1.at(t) != h2.at(t))
            return false;
    for (int u = 1; u < t0; ++u)
        for (int v = 1; u + v <= t0; ++v)
            if (!(h1.at(u) <= v + h1.at(u + v) || h1.at(v) <= h1.at(u + v)))
                return false;
    return true;
}

/* Sufficiency shortcut for zeroing one slot: h1 equals a valid h except
 * h1(t0) = 0, and for 1 <= u < t0, h1(t0-u) > 0 implies h1(u) <= t0 - u. */
inline bool profile_slot_zeroing_hypotheses(const Profile& h1, const Profile& h, int t0)
{
    if (!validate_profile(h).valid || h1.at(t0) != 0)
        return false;
    int T = std::max(h1.support(), h.support()) + 1;
    for (int t = 1; t <= T; ++t)
        if (t != t0 && h1.at(t) != h.at(t))
            return false;
    for (int u = 1; u < t0; ++u)
        if (h1.at(t0 - u) > 0 && !(h1.at(u) <= t0 - u))
            return false;
    return true;
}

inline Profile profile_intersect(const Profile& a, const Profile& b)
{
    int T = std::max(a.support(), b.support());
    std::vector<int> h(std::size_t(T), 0);
    for (int t = 1; t <= T; ++t)
        h[std::size_t(t - 1)] = std::min(a.at(t), b.at(t));
    return Profile(std::move(h), std::min(a.tail, b.tail));
}

/* Named families. */

inline Profile profile_A(int n)
{
    if (n < 0)
        throw Error("A(n) needs n >= 0");
    std::vector<int> h;
    for (int t = 1; n + 2 - t > 0; ++t)
        h.push_back(n + 2 - t);
    return Profile(std::move(h));
}

inline Profile profile_E(int n)
{
    if (n < 0)
        throw Error("E(n) needs n >= 0");
    return Profile(std::vector<int>(std::size_t(n + 1), 1));
}

inline Profile profile_J(int t)
{
    if (t < 1)
        throw Error("J(t) needs t >= 1");
    std::vector<int> h(std::size_t(t), 0);
    h[std::size_t(t - 1)] = t;
    return Profile(std::move(h));
}

inline Profile profile_B(int i)
{
    if (i < 1)
        throw Error("B_i needs i >= 1");
    return Profile(std::vector<int>(std::size_t(i - 1), 0), i);
}

inline int steenrod_a_of(int n) { return (n - 1) / 2; }

inline void check_bprime_range(int n, int i)
{
    if (n < 2)
        throw Error("family needs n >= 2");
    int a = steenrod_a_of(n);
    if (i < 1 || i > a + 1)
        throw Error("index i out of range 1.." + std::to_string(a + 1));
}

inline Profile profile_Bprime(int n, int i)
{
    check_bprime_range(n, i);
    Profile base = profile_intersect(profile_B(i), profile_A(n - 1));
    std::vector<int> h(std::size_t(n + 1), 0);
    for (int t = 1; t <= n + 1; ++t)
        h[std::size_t(t - 1)] = base.at(t) + 1;
    Profile p(std::move(h));
    /* Increasing through t = n+1-i, equal to h_{A(n)} from there on. */
    if (!validate_profile(p).valid || !profile_extension_hypotheses(p, profile_A(n), n + 1 - i))
        throw Error("B'_i(n) profile failed validation");
    return p;
}

inline Profile profile_D(int n, int i)
{
    check_bprime_range(n, i);
    Profile bp = profile_Bprime(n, i);
    std::vector<int> h(std::size_t(n + 1), 0);
    for (int t = i; t <= n + 1; ++t)
        h[std::size_t(t - 1)] = bp.at(t);
    Profile p(std::move(h));
    if (!validate_profile(p).valid)
        throw Error("D_i(n) profile failed validation");
    return p;
}

inline Profile profile_Y(int n, int i)
{
    check_bprime_range(n, i);
    std::vector<int> h;
    for (int t = i + 1; t <= 2 * i - 1; ++t) {
        h.resize(std::size_t(t), 0);
        h[std::size_t(t - 1)] = 2 * i + 1 - t;
    }
    Profile p(std::move(h));
    if (!validate_profile(p).valid)
        throw Error("Y_i(n) profile failed validation");
    return p;
}

inline Profile profile_X(int n, int i)
{
    check_bprime_range(n, i);
    std::vector<int> h(std::size_t(2 * i), 0);
    h[std::size_t(i - 1)] = i + 1;
    h[std::size_t(2 * i - 1)] = 1;
    Profile p(std::move(h));
    if (!validate_profile(p).valid)
        throw Error("X_i(n) profile failed validation");
    return p;
}

inline Profile profile_O(int n, int i)
{
    if (n < 0 || i < 1 || i > n + 1)
        throw Error("O_i needs 1 <= i <= n+1");
    std::vector<int> h(std::size_t(n + 1), 0);
    for (int t = i; t <= n + 1; ++t)
        h[std::size_t(t - 1)] = 1;
    return Profile(std::move(h));
}

/* The single generator <P^0_{n+1}>: an exterior algebra on one class. */
inline Profile profile_single_p0(int t)
{
    std::vector<int> h(std::size_t(t), 0);
    h[std::size_t(t - 1)] = 1;
    return Profile(std::move(h));
}

/* Maximal elementary sub-Hopf algebras of the algebra with profile p, as the
 * maximal members of {B_i ∩ p}. For A(n) this is {B_i ∩ A(n) : i <= [n/2]+1}. */
inline std::vector<Profile> maximal_elementary_profiles(const Profile& p)
{
    std::vector<Profile> cand;
    for (int i = 1; i <= std::max(1, p.support()); ++i) {
        Profile q = profile_intersect(profile_B(i), p);
        if (q.trivial())
            continue;
        bool dup = false;
        for (const auto& old : cand)
            dup = dup || old == q;
        if (!dup)
            cand.push_back(std::move(q));
    }
    std::vector<Profile> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < cand.size(); ++j)
            if (i != j && cand[i].leq(cand[j]) && !(cand[j] == cand[i]))
                maximal = false;
        if (maximal)
            out.push_back(cand[i]);
    }
    return out;
}

} // namespace sq2
