#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sq2 {

/* Bit-packed vector over GF(2). */
class Gf2Vec {
public:
    Gf2Vec() = default;
    explicit Gf2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Gf2Vec unit(std::size_t n, std::size_t i)
    {
        Gf2Vec v(n);
        v.set(i);
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const
    {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool b = true)
    {
        assert(i < n_);
        if (b)
            w_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    void flip(std::size_t i)
    {
        assert(i < n_);
        w_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    Gf2Vec& operator^=(const Gf2Vec& o)
    {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k)
            w_[k] ^= o.w_[k];
        return *this;
    }

    friend Gf2Vec operator^(Gf2Vec a, const Gf2Vec& b)
    {
        a ^= b;
        return a;
    }

    bool any() const
    {
        for (auto w : w_)
            if (w)
                return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : w_)
            c += std::size_t(__builtin_popcountll(w));
        return c;
    }

    /* Index of the lowest set bit, or -1. */
    int lowest() const
    {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k])
                return int(k * 64 + std::size_t(__builtin_ctzll(w_[k])));
        return -1;
    }

    /* Parity of the AND with another vector. */
    bool dot(const Gf2Vec& o) const
    {
        assert(n_ == o.n_);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k)
            acc ^= w_[k] & o.w_[k];
        return __builtin_popcountll(acc) & 1;
    }

    template <class Fn>
    void for_each_set(Fn&& fn) const
    {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                fn(k * 64 + std::size_t(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
    }

    /* this ^= (src << off); src bits must fit inside this. */
    void xor_shifted(const Gf2Vec& src, std::size_t off)
    {
        assert(off + src.n_ <= n_);
        std::size_t word = off >> 6, sh = off & 63;
        for (std::size_t k = 0; k < src.w_.size(); ++k) {
            std::uint64_t w = src.w_[k];
            if (!w)
                continue;
            w_[word + k] ^= w << sh;
            if (sh && word + k + 1 < w_.size())
                w_[word + k + 1] ^= w >> (64 - sh);
        }
    }

    /* Sub-vector of `len` bits starting at `off`. */
    Gf2Vec slice(std::size_t off, std::size_t len) const
    {
        Gf2Vec r(len);
        for (std::size_t i = 0; i < len; ++i)
            if (get(off + i))
                r.set(i);
        return r;
    }

    bool operator==(const Gf2Vec&) const = default;

    std::string to_string() const
    {
        std::string s(n_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/* Row-major bit matrix over GF(2). */
class Gf2Mat {
public:
    Gf2Mat() = default;
    Gf2Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, Gf2Vec(cols))
    {
    }

    static Gf2Mat identity(std::size_t n)
    {
        Gf2Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Gf2Vec& row(std::size_t i) { return r_[i]; }
    const Gf2Vec& row(std::size_t i) const { return r_[i]; }

    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool b = true) { r_[i].set(j, b); }

    bool zero() const
    {
        for (const auto& r : r_)
            if (r.any())
                return false;
        return true;
    }

    /* A * v, with v indexed by columns. */
    Gf2Vec apply(const Gf2Vec& v) const
    {
        assert(v.size() == cols_);
        Gf2Vec out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (r_[i].dot(v))
                out.set(i);
        return out;
    }

    /* this(rows x cols) * b(cols x b.cols). */
    Gf2Mat mul(const Gf2Mat& b) const
    {
        assert(cols_ == b.rows_);
        Gf2Mat c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            r_[i].for_each_set([&](std::size_t k) { c.r_[i] ^= b.r_[k]; });
        return c;
    }

    Gf2Mat transposed() const
    {
        Gf2Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            r_[i].for_each_set([&](std::size_t j) { t.set(j, i); });
        return t;
    }

    Gf2Vec column(std::size_t j) const
    {
        Gf2Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (r_[i].get(j))
                c.set(i);
        return c;
    }

    std::size_t rank() const
    {
        Gf2Mat m(*this);
        return m.eliminate();
    }

    /* In-place row echelon; returns rank. */
    std::size_t eliminate()
    {
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols_ && rk < rows_; ++col) {
            std::size_t piv = rk;
            while (piv < rows_ && !r_[piv].get(col))
                ++piv;
            if (piv == rows_)
                continue;
            std::swap(r_[rk], r_[piv]);
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != rk && r_[i].get(col))
                    r_[i] ^= r_[rk];
            ++rk;
        }
        return rk;
    }

    /* Basis of { x : A x = 0 }. */
    std::vector<Gf2Vec> kernel_basis() const
    {
        Gf2Mat m(*this);
        std::vector<int> pivot_of_col(cols_, -1);
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols_ && rk < rows_; ++col) {
            std::size_t piv = rk;
            while (piv < rows_ && !m.r_[piv].get(col))
                ++piv;
            if (piv == rows_)
                continue;
            std::swap(m.r_[rk], m.r_[piv]);
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != rk && m.r_[i].get(col))
                    m.r_[i] ^= m.r_[rk];
            pivot_of_col[col] = int(rk);
            ++rk;
        }
        std::vector<Gf2Vec> basis;
        for (std::size_t col = 0; col < cols_; ++col) {
            if (pivot_of_col[col] >= 0)
                continue;
            Gf2Vec x(cols_);
            x.set(col);
            for (std::size_t c2 = 0; c2 < cols_; ++c2)
                if (pivot_of_col[c2] >= 0 && m.r_[std::size_t(pivot_of_col[c2])].get(col))
                    x.set(c2);
            basis.push_back(std::move(x));
        }
        return basis;
    }

    /* One solution of A x = b, if any. */
    std::optional<Gf2Vec> solve(const Gf2Vec& b) const
    {
        assert(b.size() == rows_);
        Gf2Mat m(*this);
        Gf2Vec rhs(b);
        std::vector<int> pivot_of_row(rows_, -1);
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols_ && rk < rows_; ++col) {
            std::size_t piv = rk;
            while (piv < rows_ && !m.r_[piv].get(col))
                ++piv;
            if (piv == rows_)
                continue;
            std::swap(m.r_[rk], m.r_[piv]);
            { bool t = rhs.get(rk); rhs.set(rk, rhs.get(piv)); rhs.set(piv, t); }
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != rk && m.r_[i].get(col)) {
                    m.r_[i] ^= m.r_[rk];
                    if (rhs.get(rk))
                        rhs.flip(i);
                }
            pivot_of_row[rk] = int(col);
            ++rk;
        }
        for (std::size_t i = rk; i < rows_; ++i)
            if (rhs.get(i))
                return std::nullopt;
        Gf2Vec x(cols_);
        for (std::size_t i = 0; i < rk; ++i)
            if (rhs.get(i))
                x.set(std::size_t(pivot_of_row[i]));
        return x;
    }

    std::optional<Gf2Mat> inverse() const
    {
        if (rows_ != cols_)
            return std::nullopt;
        Gf2Mat m(*this), inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t piv = col;
            while (piv < rows_ && !m.r_[piv].get(col))
                ++piv;
            if (piv == rows_)
                return std::nullopt;
            std::swap(m.r_[col], m.r_[piv]);
            std::swap(inv.r_[col], inv.r_[piv]);
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != col && m.r_[i].get(col)) {
                    m.r_[i] ^= m.r_[col];
                    inv.r_[i] ^= inv.r_[col];
                }
        }
        return inv;
    }

    bool invertible() const
    {
        return rows_ == cols_ && rank() == rows_;
    }

    bool operator==(const Gf2Mat&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Gf2Vec> r_;
};

/* Incrementally built subspace kept in reduced row echelon form. */
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(std::size_t width) : n_(width) {}

    std::size_t width() const { return n_; }
    std::size_t dim() const { return rows_.size(); }

    Gf2Vec reduce(Gf2Vec v) const
    {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.get(std::size_t(piv_[k])))
                v ^= rows_[k];
        return v;
    }

    bool contains(const Gf2Vec& v) const { return reduce(v).none(); }

    /* Returns true if the subspace grew. */
    bool insert(Gf2Vec v)
    {
        v = reduce(std::move(v));
        int p = v.lowest();
        if (p < 0)
            return false;
        for (auto& r : rows_)
            if (r.get(std::size_t(p)))
                r ^= v;
        std::size_t pos = 0;
        while (pos < piv_.size() && piv_[pos] < p)
            ++pos;
        rows_.insert(rows_.begin() + long(pos), std::move(v));
        piv_.insert(piv_.begin() + long(pos), p);
        return true;
    }

    const std::vector<Gf2Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

    bool operator==(const Echelon&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Gf2Vec> rows_;
    std::vector<int> piv_;
};

/* Echelon that tracks coordinates relative to designated representative rows.
 * Kernel rows reduce to zero coordinates; each representative row carries a
 * unit coordinate. reduce() then expresses a vector modulo the kernel in the
 * representatives' coordinates. */
class CosetReducer {
public:
    CosetReducer() = default;
    explicit CosetReducer(std::size_t width) : n_(width) {}

    std::size_t width() const { return n_; }
    std::size_t reps() const { return m_; }
    std::size_t dim() const { return rows_.size(); }

    bool add_kernel(Gf2Vec v) { return add(std::move(v), Gf2Vec(n_)); }

    /* Adds v as a representative if independent; returns whether it was. */
    bool try_add_rep(const Gf2Vec& v)
    {
        Gf2Vec c(n_);
        c.set(m_);
        Gf2Vec w(v);
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (w.get(std::size_t(piv_[k]))) {
                w ^= rows_[k];
                c ^= coord_[k];
            }
        if (w.none())
            return false;
        insert_row(std::move(w), std::move(c));
        ++m_;
        return true;
    }

    /* Coordinates (width = reps()) of v modulo the kernel; second = fully reduced. */
    std::pair<Gf2Vec, bool> reduce(Gf2Vec v) const
    {
        Gf2Vec c(n_);
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.get(std::size_t(piv_[k]))) {
                v ^= rows_[k];
                c ^= coord_[k];
            }
        return { c.slice(0, m_), v.none() };
    }

private:
    bool add(Gf2Vec v, Gf2Vec c)
    {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.get(std::size_t(piv_[k]))) {
                v ^= rows_[k];
                c ^= coord_[k];
            }
        if (v.none())
            return false;
        insert_row(std::move(v), std::move(c));
        return true;
    }

    void insert_row(Gf2Vec v, Gf2Vec c)
    {
        int p = v.lowest();
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (rows_[k].get(std::size_t(p))) {
                rows_[k] ^= v;
                coord_[k] ^= c;
            }
        std::size_t pos = 0;
        while (pos < piv_.size() && piv_[pos] < p)
            ++pos;
        rows_.insert(rows_.begin() + long(pos), std::move(v));
        coord_.insert(coord_.begin() + long(pos), std::move(c));
        piv_.insert(piv_.begin() + long(pos), p);
    }

    std::size_t n_ = 0, m_ = 0;
    std::vector<Gf2Vec> rows_;
    std::vector<Gf2Vec> coord_;
    std::vector<int> piv_;
};

} // namespace sq2
