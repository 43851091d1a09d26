#ifndef SALVETTI_POLYNOMIAL_HPP
#define SALVETTI_POLYNOMIAL_HPP

#include "rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace salvetti
{

/// Univariate polynomial over Q, coefficients from degree 0 upwards.
class QPoly
{
public:
    QPoly() = default;
    QPoly(Rational c) : c_{std::move(c)} { trim(); }
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly x_power(std::size_t k, Rational c = 1)
    {
        std::vector<Rational> v(k + 1);
        v[k] = std::move(c);
        return QPoly(std::move(v));
    }

    /// Clears negative exponents by multiplying with a power of t.
    static QPoly from_laurent(const std::map<int, Rational>& terms)
    {
        if (terms.empty())
            return QPoly();
        int low = terms.begin()->first;
        std::vector<Rational> v(static_cast<std::size_t>(terms.rbegin()->first - low) + 1);
        for (const auto& [e, c] : terms)
            v[static_cast<std::size_t>(e - low)] = c;
        return QPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& lead() const { return c_.back(); }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    QPoly monic() const
    {
        if (is_zero())
            return *this;
        QPoly p = *this;
        Rational l = lead();
        for (auto& x : p.c_)
            x /= l;
        return p;
    }

    /// Removes factors of t.
    QPoly strip_t() const
    {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0)
            ++k;
        return QPoly(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b)
    {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.coeff(i) + b.coeff(i);
        return QPoly(std::move(v));
    }

    QPoly operator-() const
    {
        QPoly p = *this;
        for (auto& x : p.c_)
            x = -x;
        return p;
    }

    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

    friend QPoly operator*(const QPoly& a, const QPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return QPoly();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(v));
    }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    /// (quotient, remainder)
    friend std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
    {
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = a.c_;
        if (a.degree() < b.degree())
            return {QPoly(), a};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
        for (std::size_t k = q.size(); k-- > 0;) {
            Rational f = r[k + b.c_.size() - 1] / b.lead();
            q[k] = f;
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[k + j] -= f * b.c_[j];
        }
        return {QPoly(std::move(q)), QPoly(std::move(r))};
    }

    friend QPoly gcd(QPoly a, QPoly b)
    {
        while (!b.is_zero()) {
            QPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// e.g. "t^3 - 1", "t - 1", "1"
    std::string to_string(const std::string& var = "t") const
    {
        if (is_zero())
            return "0";
        std::string s;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k] == 0)
                continue;
            Rational a = abs(c_[k]);
            std::string mono = k == 0 ? "" : k == 1 ? var : var + "^" + std::to_string(k);
            std::string body;
            if (mono.empty())
                body = salvetti::to_string(a);
            else if (a == 1)
                body = mono;
            else
                body = salvetti::to_string(a) + "*" + mono;
            if (first)
                s += (c_[k] < 0 ? "-" : "") + body;
            else
                s += (c_[k] < 0 ? " - " : " + ") + body;
            first = false;
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

using QPolyMatrix = std::vector<std::vector<QPoly>>;

struct SmithForm
{
    std::vector<QPoly> diagonal;  // nonzero, monic, each dividing the next
    std::size_t rank = 0;
    QPolyMatrix column_transform;          // Q with U A Q = D (only when requested)
    QPolyMatrix column_transform_inverse;  // Q^{-1}
};

namespace detail
{

inline void swap_columns(QPolyMatrix& m, std::size_t a, std::size_t b)
{
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// col_b -= f * col_a  on m; the inverse transform gets row_a += f * row_b
inline void column_axpy(QPolyMatrix& m, std::size_t a, std::size_t b, const QPoly& f)
{
    for (auto& row : m)
        row[b] = row[b] - f * row[a];
}

} // namespace detail

/// Smith normal form over Q[t] of an r x c matrix. Optionally tracks the
/// column operations as Q and Q^{-1}.
inline SmithForm smith_normal_form(QPolyMatrix a, std::size_t rows, std::size_t cols, bool track_columns = false)
{
    SmithForm out;
    QPolyMatrix q, qinv;
    if (track_columns) {
        q.assign(cols, std::vector<QPoly>(cols));
        qinv.assign(cols, std::vector<QPoly>(cols));
        for (std::size_t i = 0; i < cols; ++i)
            q[i][i] = qinv[i][i] = QPoly(Rational(1));
    }

    auto col_swap = [&](std::size_t x, std::size_t y) {
        detail::swap_columns(a, x, y);
        if (track_columns) {
            detail::swap_columns(q, x, y);
            std::swap(qinv[x], qinv[y]);
        }
    };
    // column y -= f * column x
    auto col_axpy = [&](std::size_t x, std::size_t y, const QPoly& f) {
        detail::column_axpy(a, x, y, f);
        if (track_columns) {
            detail::column_axpy(q, x, y, f);
            for (std::size_t k = 0; k < cols; ++k)
                qinv[x][k] = qinv[x][k] + f * qinv[y][k];
        }
    };
    auto row_axpy = [&](std::size_t x, std::size_t y, const QPoly& f) {
        for (std::size_t k = 0; k < cols; ++k)
            a[y][k] = a[y][k] - f * a[x][k];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: nonzero entry of least degree in the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!a[i][j].is_zero() && (pr == rows || a[i][j].degree() < a[pr][pc].degree())) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(a[t], a[pr]);
        col_swap(t, pc);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t].is_zero())
                    continue;
                row_axpy(t, i, divmod(a[i][t], a[t][t]).first);
                if (!a[i][t].is_zero()) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j].is_zero())
                    continue;
                col_axpy(t, j, divmod(a[t][j], a[t][t]).first);
                if (!a[t][j].is_zero()) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean)
                continue;
            // divisibility: fold in any entry not divisible by the pivot
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (!divmod(a[i][j], a[t][t]).second.is_zero()) {
                        for (std::size_t k = 0; k < cols; ++k)
                            a[t][k] = a[t][k] + a[i][k];
                        clean = false;
                    }
        }
        ++t;
    }
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i)
        out.diagonal.push_back(a[i][i].monic());
    if (track_columns) {
        out.column_transform = std::move(q);
        out.column_transform_inverse = std::move(qinv);
    }
    return out;
}

} // namespace salvetti

#endif
