#ifndef SALVETTI_FEASIBILITY_HPP
#define SALVETTI_FEASIBILITY_HPP

#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace salvetti
{

/// coeffs . u > rhs
struct StrictInequality
{
    RVector coeffs;
    Rational rhs;
};

namespace detail
{

// Scales so the last nonzero coefficient has absolute value 1; drops exact
// duplicates and, among equal coefficient rows, keeps the tightest bound.
inline std::vector<StrictInequality> normalize(std::vector<StrictInequality> in, std::size_t vars)
{
    std::vector<StrictInequality> out;
    for (auto& c : in) {
        std::size_t last = vars;
        for (std::size_t j = vars; j-- > 0;)
            if (c.coeffs[j] != 0) {
                last = j;
                break;
            }
        if (last != vars) {
            Rational s = 1 / boost::multiprecision::abs(c.coeffs[last]);
            for (std::size_t j = 0; j <= last; ++j)
                c.coeffs[j] *= s;
            c.rhs *= s;
        }
        bool merged = false;
        for (auto& o : out)
            if (o.coeffs == c.coeffs) {
                if (c.rhs > o.rhs)
                    o.rhs = c.rhs;
                merged = true;
                break;
            }
        if (!merged)
            out.push_back(std::move(c));
    }
    return out;
}

} // namespace detail

/// Finds an exact rational point satisfying every strict inequality, by
/// Fourier-Motzkin elimination and back substitution. nullopt if infeasible.
inline std::optional<RVector> strict_feasible_point(std::vector<StrictInequality> system, std::size_t vars)
{
    // stages[k] only involves variables 0..k-1.
    std::vector<std::vector<StrictInequality>> stages(vars + 1);
    stages[vars] = detail::normalize(std::move(system), vars);

    for (std::size_t k = vars; k-- > 0;) {
        const auto& cur = stages[k + 1];
        std::vector<StrictInequality> lower, upper, next;
        for (const auto& c : cur) {
            int s = sgn(c.coeffs[k]);
            if (s > 0)
                lower.push_back(c);  // x_k > rhs - rest
            else if (s < 0)
                upper.push_back(c);  // x_k < rest - rhs
            else
                next.push_back(c);
        }
        // coefficient of x_k is +1 in lower and -1 in upper after normalisation
        for (const auto& l : lower)
            for (const auto& u : upper) {
                StrictInequality c{l.coeffs + u.coeffs, l.rhs + u.rhs};
                c.coeffs[k] = 0;
                next.push_back(std::move(c));
            }
        stages[k] = detail::normalize(std::move(next), k);
    }

    for (const auto& c : stages[0])
        if (!(c.rhs < 0))
            return std::nullopt;

    RVector x(vars, Rational(0));
    for (std::size_t k = 0; k < vars; ++k) {
        std::optional<Rational> lo, hi;
        for (const auto& c : stages[k + 1]) {
            int s = sgn(c.coeffs[k]);
            if (s == 0)
                continue;
            Rational rest = 0;
            for (std::size_t j = 0; j < k; ++j)
                rest += c.coeffs[j] * x[j];
            Rational bound = (c.rhs - rest) / c.coeffs[k];
            if (s > 0) {
                if (!lo || bound > *lo)
                    lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi)
            x[k] = (*lo + *hi) / 2;
        else if (lo)
            x[k] = *lo + 1;
        else if (hi)
            x[k] = *hi - 1;
    }
    return x;
}

} // namespace salvetti

#endif
