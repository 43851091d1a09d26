#ifndef SALVETTI_RATIONAL_HPP
#define SALVETTI_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace salvetti
{

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Points and vectors of R^n with exact rational coordinates.
using RVector = std::vector<Rational>;
using RPoint = RVector;

inline int sgn(const Rational& q) { return q.sign(); }

/// Parses "7", "-3/4" or "0.25". Returns nullopt on anything else.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty())
        return std::nullopt;

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::size_t from) {
        std::size_t to = from;
        while (to < text.size() && text[to] >= '0' && text[to] <= '9')
            ++to;
        return to;
    };

    std::size_t int_end = digits(pos);
    std::string int_part(text.substr(pos, int_end - pos));
    Rational value;

    if (int_end == text.size()) {
        if (int_part.empty())
            return std::nullopt;
        value = Rational(Integer(int_part));
    } else if (text[int_end] == '/') {
        std::size_t den_end = digits(int_end + 1);
        std::string den_part(text.substr(int_end + 1, den_end - int_end - 1));
        if (int_part.empty() || den_part.empty() || den_end != text.size())
            return std::nullopt;
        Integer den(den_part);
        if (den == 0)
            return std::nullopt;
        value = Rational(Integer(int_part), den);
    } else if (text[int_end] == '.') {
        std::size_t frac_end = digits(int_end + 1);
        std::string frac_part(text.substr(int_end + 1, frac_end - int_end - 1));
        if ((int_part.empty() && frac_part.empty()) || frac_end != text.size())
            return std::nullopt;
        Integer scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        Integer whole = int_part.empty() ? Integer(0) : Integer(int_part);
        Integer frac = frac_part.empty() ? Integer(0) : Integer(frac_part);
        value = Rational(whole * scale + frac, scale);
    } else {
        return std::nullopt;
    }
    return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& q)
{
    std::ostringstream out;
    out << q;
    return out.str();
}

inline std::string to_string(const RVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

inline Rational dot(const RVector& a, const RVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RVector operator+(const RVector& a, const RVector& b)
{
    RVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

inline RVector operator-(const RVector& a, const RVector& b)
{
    RVector r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

inline RVector operator*(const Rational& s, const RVector& a)
{
    RVector r(a);
    for (auto& x : r)
        x *= s;
    return r;
}

inline Rational squared_norm(const RVector& a) { return dot(a, a); }

inline Rational squared_distance(const RPoint& a, const RPoint& b)
{
    return squared_norm(a - b);
}

} // namespace salvetti

#endif
