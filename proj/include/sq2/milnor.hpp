#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sq2 {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& msg)
        : Error("parse error at position " + std::to_string(pos) + ": " + msg), pos(pos)
    {
    }
    std::size_t pos;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

constexpr std::int64_t kMaxDegree = std::int64_t(1) << 31;

/* Milnor basis element Sq(r_1,r_2,...), exponents trimmed so the last entry
 * is nonzero; the empty sequence is the unit. */
struct MilnorMonomial {
    std::vector<std::int64_t> e;
    std::int64_t deg = 0;

    MilnorMonomial() = default;

    static MilnorMonomial make(std::vector<std::int64_t> exps)
    {
        while (!exps.empty() && exps.back() == 0)
            exps.pop_back();
        std::int64_t d = 0;
        for (std::size_t k = 0; k < exps.size(); ++k) {
            std::int64_t r = exps[k];
            if (r < 0)
                throw Error("negative Milnor exponent");
            if (r == 0)
                continue;
            int t = int(k) + 1;
            if (t >= 62 || r > kMaxDegree)
                throw Error("Milnor exponent out of range");
            std::int64_t w = (std::int64_t(1) << t) - 1;
            if (r > (kMaxDegree - d) / w)
                throw Error("Milnor monomial degree exceeds 2^31");
            d += w * r;
        }
        MilnorMonomial m;
        m.e = std::move(exps);
        m.deg = d;
        return m;
    }

    bool is_unit() const { return e.empty(); }
    int slots() const { return int(e.size()); }

    /* 1-based slot access; zero beyond the stored length. */
    std::int64_t exp(int t) const
    {
        return (t >= 1 && t <= slots()) ? e[std::size_t(t - 1)] : 0;
    }

    std::int64_t excess() const
    {
        std::int64_t s = 0;
        for (auto r : e)
            s += r;
        return s;
    }

    std::string label() const
    {
        if (e.empty())
            return "1";
        std::ostringstream os;
        os << "Sq(";
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (k)
                os << ",";
            os << e[k];
        }
        os << ")";
        return os.str();
    }

    friend bool operator==(const MilnorMonomial& a, const MilnorMonomial& b)
    {
        return a.e == b.e;
    }

    /* Degree, then lexicographic on exponents. */
    friend bool operator<(const MilnorMonomial& a, const MilnorMonomial& b)
    {
        if (a.deg != b.deg)
            return a.deg < b.deg;
        std::size_t n = std::max(a.e.size(), b.e.size());
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t x = k < a.e.size() ? a.e[k] : 0;
            std::int64_t y = k < b.e.size() ? b.e[k] : 0;
            if (x != y)
                return x < y;
        }
        return false;
    }
};

struct MilnorMonomialHash {
    std::size_t operator()(const MilnorMonomial& m) const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto r : m.e) {
            h ^= std::size_t(r);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline std::int64_t degree(const MilnorMonomial& m) { return m.deg; }
inline std::int64_t excess(const MilnorMonomial& m) { return m.excess(); }

/* P_t(r): single exponent r in slot t. */
inline MilnorMonomial milnor_pt(int t, std::int64_t r)
{
    std::vector<std::int64_t> e(std::size_t(t), 0);
    e[std::size_t(t - 1)] = r;
    return MilnorMonomial::make(std::move(e));
}

/* P^s_t = P_t(2^s), degree 2^s(2^t - 1). */
inline MilnorMonomial milnor_pst(int s, int t)
{
    return milnor_pt(t, std::int64_t(1) << s);
}

/* GF(2) sum of Milnor monomials; terms kept strictly sorted, presence = 1. */
class MilnorElement {
public:
    MilnorElement() = default;

    static MilnorElement zero() { return {}; }
    static MilnorElement one() { return monomial(MilnorMonomial{}); }
    static MilnorElement monomial(MilnorMonomial m)
    {
        MilnorElement x;
        x.t_.push_back(std::move(m));
        return x;
    }

    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const { return t_.size(); }
    const std::vector<MilnorMonomial>& terms() const { return t_; }
    auto begin() const { return t_.begin(); }
    auto end() const { return t_.end(); }

    bool contains(const MilnorMonomial& m) const
    {
        return std::binary_search(t_.begin(), t_.end(), m);
    }

    /* XOR a single monomial in or out. */
    void toggle(const MilnorMonomial& m)
    {
        auto it = std::lower_bound(t_.begin(), t_.end(), m);
        if (it != t_.end() && *it == m)
            t_.erase(it);
        else
            t_.insert(it, m);
    }

    MilnorElement& operator+=(const MilnorElement& o)
    {
        std::vector<MilnorMonomial> r;
        r.reserve(t_.size() + o.t_.size());
        std::set_symmetric_difference(t_.begin(), t_.end(), o.t_.begin(), o.t_.end(),
                                      std::back_inserter(r));
        t_ = std::move(r);
        return *this;
    }

    friend MilnorElement operator+(MilnorElement a, const MilnorElement& b)
    {
        a += b;
        return a;
    }

    bool is_homogeneous() const
    {
        for (std::size_t k = 1; k < t_.size(); ++k)
            if (t_[k].deg != t_[0].deg)
                return false;
        return true;
    }

    /* Degree of a homogeneous nonzero element. */
    std::int64_t degree() const
    {
        if (t_.empty() || !is_homogeneous())
            throw Error("degree of non-homogeneous element");
        return t_[0].deg;
    }

    bool operator==(const MilnorElement&) const = default;

private:
    std::vector<MilnorMonomial> t_;
};

/* (n_1,...,n_r) mod 2: 1 iff the dyadic expansions are pairwise disjoint. */
inline int multinomial_mod2(const std::vector<std::int64_t>& parts)
{
    std::int64_t acc = 0;
    for (auto p : parts) {
        if (acc & p)
            return 0;
        acc |= p;
    }
    return 1;
}

/* (a+b choose a) mod 2. */
inline int binom2(std::int64_t a, std::int64_t b)
{
    return (a & b) ? 0 : 1;
}

/* Matrix of the Milnor product formula: rows follow the left factor, columns
 * the right one; entry (0,0) unused. Column sums equal s_j, weighted row sums
 * equal r_i. */
struct AllowableMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::int64_t>> x; // (rows+1) x (cols+1)

    std::int64_t at(int i, int j) const { return x[std::size_t(i)][std::size_t(j)]; }

    bool is_trivial() const
    {
        for (int i = 1; i <= rows; ++i)
            for (int j = 1; j <= cols; ++j)
                if (at(i, j))
                    return false;
        return true;
    }

    std::int64_t column_sum(int j) const
    {
        std::int64_t s = 0;
        for (int i = 0; i <= rows; ++i)
            if (i || j)
                s += at(i, j);
        return s;
    }

    std::int64_t weighted_row_sum(int i) const
    {
        std::int64_t s = 0;
        for (int j = 0; j <= cols; ++j)
            if (i || j)
                s += at(i, j) << j;
        return s;
    }
};

/* Enumerates every allowable matrix for r x s exactly once (depth first over
 * rows, spending each row's budget across the columns). */
template <class Fn>
void for_each_allowable(const MilnorMonomial& r, const MilnorMonomial& s, Fn&& fn)
{
    const int R = r.slots(), S = s.slots();
    AllowableMatrix X;
    X.rows = R;
    X.cols = S;
    X.x.assign(std::size_t(R + 1), std::vector<std::int64_t>(std::size_t(S + 1), 0));
    std::vector<std::int64_t> colRem(std::size_t(S + 1), 0);
    for (int j = 1; j <= S; ++j)
        colRem[std::size_t(j)] = s.exp(j);

    std::function<void(int)> doRow = [&](int i) {
        if (i > R) {
            for (int j = 1; j <= S; ++j)
                X.x[0][std::size_t(j)] = colRem[std::size_t(j)];
            fn(const_cast<const AllowableMatrix&>(X));
            return;
        }
        std::function<void(int, std::int64_t)> doCol = [&](int j, std::int64_t budget) {
            if (j > S) {
                X.x[std::size_t(i)][0] = budget;
                doRow(i + 1);
                return;
            }
            std::int64_t cap = std::min(budget >> j, colRem[std::size_t(j)]);
            for (std::int64_t v = 0; v <= cap; ++v) {
                X.x[std::size_t(i)][std::size_t(j)] = v;
                colRem[std::size_t(j)] -= v;
                doCol(j + 1, budget - (v << j));
                colRem[std::size_t(j)] += v;
            }
            X.x[std::size_t(i)][std::size_t(j)] = 0;
        };
        doCol(1, r.exp(i));
    };
    doRow(1);
}

inline std::vector<AllowableMatrix> allowable_matrices(const MilnorMonomial& r,
                                                       const MilnorMonomial& s)
{
    std::vector<AllowableMatrix> out;
    for_each_allowable(r, s, [&](const AllowableMatrix& X) { out.push_back(X); });
    return out;
}

/* beta(X) and the target monomial: t_k sums the k-th antidiagonal, beta is the
 * product of the antidiagonal multinomials mod 2. Returns nothing if beta = 0. */
inline std::optional<MilnorMonomial> allowable_term(const AllowableMatrix& X)
{
    std::vector<std::int64_t> t(std::size_t(X.rows + X.cols), 0);
    for (int k = 1; k <= X.rows + X.cols; ++k) {
        std::int64_t acc = 0, tk = 0;
        int jlo = std::max(0, k - X.rows), jhi = std::min(k, X.cols);
        for (int j = jlo; j <= jhi; ++j) {
            int i = k - j;
            if (i == 0 && j == 0)
                continue;
            std::int64_t v = X.at(i, j);
            tk += v;
            if (acc & v)
                return std::nullopt;
            acc |= v;
        }
        t[std::size_t(k - 1)] = tk;
    }
    return MilnorMonomial::make(std::move(t));
}

inline MilnorElement milnor_mul(const MilnorMonomial& a, const MilnorMonomial& b)
{
    MilnorElement out;
    for_each_allowable(a, b, [&](const AllowableMatrix& X) {
        if (auto t = allowable_term(X))
            out.toggle(*t);
    });
    return out;
}

inline MilnorElement milnor_mul(const MilnorElement& a, const MilnorElement& b)
{
    MilnorElement out;
    for (const auto& m : a)
        for (const auto& n : b)
            out += milnor_mul(m, n);
    return out;
}

/* All componentwise splittings r = s + t. */
inline std::vector<std::pair<MilnorMonomial, MilnorMonomial>>
milnor_coproduct(const MilnorMonomial& m)
{
    std::vector<std::pair<MilnorMonomial, MilnorMonomial>> out;
    std::vector<std::int64_t> left(m.e.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == m.e.size()) {
            std::vector<std::int64_t> right(m.e.size());
            for (std::size_t i = 0; i < m.e.size(); ++i)
                right[i] = m.e[i] - left[i];
            out.emplace_back(MilnorMonomial::make(left), MilnorMonomial::make(std::move(right)));
            return;
        }
        for (std::int64_t v = 0; v <= m.e[k]; ++v) {
            left[k] = v;
            rec(k + 1);
        }
        left[k] = 0;
    };
    rec(0);
    return out;
}

/* Antipode by degree recursion S(x) = x + sum S(x') x'' over the reduced
 * coproduct; over GF(2) all signs vanish. */
class AntipodeCache {
public:
    const MilnorElement& antipode(const MilnorMonomial& m)
    {
        auto it = memo_.find(m);
        if (it != memo_.end())
            return it->second;
        MilnorElement s;
        if (m.is_unit()) {
            s = MilnorElement::one();
        } else {
            s = MilnorElement::monomial(m);
            for (const auto& [u, v] : milnor_coproduct(m)) {
                if (u.is_unit() || v.is_unit())
                    continue;
                s += milnor_mul(antipode(u), MilnorElement::monomial(v));
            }
        }
        return memo_.emplace(m, std::move(s)).first->second;
    }

private:
    std::unordered_map<MilnorMonomial, MilnorElement, MilnorMonomialHash> memo_;
};

inline MilnorElement milnor_antipode(const MilnorElement& a)
{
    AntipodeCache cache;
    MilnorElement out;
    for (const auto& m : a)
        out += cache.antipode(m);
    return out;
}

inline std::int64_t counit(const MilnorElement& a)
{
    return a.contains(MilnorMonomial{}) ? 1 : 0;
}

/* Grammar: element := term ('+' term)*; term := 'Sq(' int (',' int)* ')' | '1';
 * whitespace ignored. */
inline MilnorElement parse_element(const std::string& s)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(pos, std::string("expected '") + c + "'");
        ++pos;
    };
    auto parse_int = [&]() -> std::int64_t {
        skip();
        std::size_t start = pos;
        std::int64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > kMaxDegree)
                throw ParseError(start, "integer exceeds 2^31");
            ++pos;
        }
        if (pos == start)
            throw ParseError(pos, "expected integer");
        return v;
    };
    auto parse_term = [&]() -> MilnorElement {
        skip();
        if (pos < s.size() && s[pos] == '1') {
            ++pos;
            return MilnorElement::one();
        }
        if (s.compare(pos, 2, "Sq") != 0)
            throw ParseError(pos, "expected 'Sq(' or '1'");
        pos += 2;
        expect('(');
        std::vector<std::int64_t> exps;
        exps.push_back(parse_int());
        skip();
        while (pos < s.size() && s[pos] == ',') {
            ++pos;
            exps.push_back(parse_int());
            skip();
        }
        expect(')');
        return MilnorElement::monomial(MilnorMonomial::make(std::move(exps)));
    };

    MilnorElement out = parse_term();
    skip();
    while (pos < s.size() && s[pos] == '+') {
        ++pos;
        out += parse_term();
        skip();
    }
    if (pos != s.size())
        throw ParseError(pos, "trailing input");
    return out;
}

inline std::string format_element(const MilnorElement& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& m : a) {
        if (!out.empty())
            out += "+";
        out += m.label();
    }
    return out;
}

} // namespace sq2
