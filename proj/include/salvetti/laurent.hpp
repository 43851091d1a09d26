#ifndef SALVETTI_LAURENT_HPP
#define SALVETTI_LAURENT_HPP

#include "index_set.hpp"
#include "rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace salvetti
{

/// Exponent vector over the variables t_1 ... t_m.
using Monomial = std::vector<int>;

/// Integer Laurent polynomial in m variables, stored as a sparse map of
/// nonzero terms.
class LaurentPoly
{
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t vars) : vars_(vars) {}

    static LaurentPoly constant(std::size_t vars, Integer c)
    {
        LaurentPoly p(vars);
        if (c != 0)
            p.terms_[Monomial(vars, 0)] = std::move(c);
        return p;
    }

    static LaurentPoly monomial(std::size_t vars, const Monomial& e, Integer c = 1)
    {
        LaurentPoly p(vars);
        if (c != 0)
            p.terms_[e] = std::move(c);
        return p;
    }

    /// prod_{i in s} t_i
    static LaurentPoly product_of(std::size_t vars, IndexSet s, Integer c = 1)
    {
        Monomial e(vars, 0);
        for (std::size_t i : s.elements())
            e[i] = 1;
        return monomial(vars, e, std::move(c));
    }

    static LaurentPoly variable(std::size_t vars, std::size_t i) { return product_of(vars, IndexSet::single(i)); }

    std::size_t variables() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Integer>& terms() const { return terms_; }

    /// Units of the ring are exactly the signed monomials.
    bool is_unit() const { return terms_.size() == 1 && abs(terms_.begin()->second) == 1; }

    LaurentPoly unit_inverse() const
    {
        if (!is_unit())
            throw std::domain_error("not a unit: " + to_string());
        Monomial e = terms_.begin()->first;
        for (auto& x : e)
            x = -x;
        return monomial(vars_, e, terms_.begin()->second);
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        adopt(o);
        for (const auto& [e0, c] : o.terms_) {
            Monomial e = e0;
            e.resize(vars_, 0);
            auto it = terms_.find(e);
            if (it == terms_.end())
                terms_.emplace(std::move(e), c);
            else if ((it->second += c) == 0)
                terms_.erase(it);
        }
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

    LaurentPoly operator-() const
    {
        LaurentPoly p = *this;
        for (auto& [e, c] : p.terms_)
            c = -c;
        return p;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly p(std::max(a.vars_, b.vars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Monomial e(p.vars_, 0);
                for (std::size_t i = 0; i < ea.size(); ++i)
                    e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i)
                    e[i] += eb[i];
                auto it = p.terms_.find(e);
                if (it == p.terms_.end())
                    p.terms_.emplace(std::move(e), ca * cb);
                else if ((it->second += ca * cb) == 0)
                    p.terms_.erase(it);
            }
        return p;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    /// Value at t_1 = ... = t_m = 1.
    Integer at_one() const
    {
        Integer s = 0;
        for (const auto& [e, c] : terms_)
            s += c;
        return s;
    }

    /// Image under t_i -> t for all i, as (exponent -> coefficient).
    std::map<int, Rational> specialize() const
    {
        std::map<int, Rational> out;
        for (const auto& [e, c] : terms_) {
            int d = std::accumulate(e.begin(), e.end(), 0);
            out[d] += Rational(c);
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
        return out;
    }

    /// Terms ordered by total degree, then with higher powers of earlier
    /// variables first; e.g. "1 - t3", "-t1*t2", "t2*t3 - 1".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::vector<std::pair<Monomial, Integer>> ts(terms_.begin(), terms_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
            int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
            int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
            if (dx != dy)
                return dx < dy;
            return x.first > y.first;
        });
        std::string s;
        bool first = true;
        for (const auto& [e, c] : ts) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += "t" + std::to_string(i + 1);
                if (e[i] != 1)
                    mono += "^" + std::to_string(e[i]);
            }
            Integer a = abs(c);
            std::string body;
            if (mono.empty())
                body = a.str();
            else if (a == 1)
                body = mono;
            else
                body = a.str() + "*" + mono;
            if (first)
                s += (c < 0 ? "-" : "") + body;
            else
                s += (c < 0 ? " - " : " + ") + body;
            first = false;
        }
        return s;
    }

private:
    void adopt(const LaurentPoly& o)
    {
        if (o.vars_ > vars_) {
            std::map<Monomial, Integer> widened;
            for (auto& [e, c] : terms_) {
                Monomial w = e;
                w.resize(o.vars_, 0);
                widened.emplace(std::move(w), c);
            }
            terms_ = std::move(widened);
            vars_ = o.vars_;
        }
    }

    std::size_t vars_ = 0;
    std::map<Monomial, Integer> terms_;
};

/// The unit u with a = u * b, if there is one.
inline std::optional<LaurentPoly> unit_ratio(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.terms().size() != b.terms().size() || b.is_zero())
        return std::nullopt;
    const auto& [eb, cb] = *b.terms().begin();
    std::size_t vars = std::max(a.variables(), b.variables());
    for (const auto& [ea, ca] : a.terms()) {
        if (abs(ca) != abs(cb))
            continue;
        Monomial e(vars, 0);
        for (std::size_t i = 0; i < vars; ++i)
            e[i] = (i < ea.size() ? ea[i] : 0) - (i < eb.size() ? eb[i] : 0);
        LaurentPoly u = LaurentPoly::monomial(vars, e, ca == cb ? 1 : -1);
        if (u * b == a)
            return u;
    }
    return std::nullopt;
}

/// Sparse matrix over LaurentPoly keyed by (row, column).
using LaurentMatrix = std::map<std::pair<std::size_t, std::size_t>, LaurentPoly>;

} // namespace salvetti

#endif
