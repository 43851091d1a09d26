#ifndef SALVETTI_ARRANGEMENT_HPP
#define SALVETTI_ARRANGEMENT_HPP

#include "index_set.hpp"
#include "rational.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace salvetti
{

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// The affine hyperplane normal . x = offset, in canonical form: integral
/// coefficients with content 1 and positive leading normal coordinate.
struct Hyperplane
{
    RVector normal;
    Rational offset;

    static Hyperplane canonical(RVector normal, Rational offset)
    {
        Integer l = 1;
        auto lcm_in = [&](const Rational& q) {
            Integer d = boost::multiprecision::denominator(q);
            l = boost::multiprecision::lcm(l, d);
        };
        for (const auto& a : normal)
            lcm_in(a);
        lcm_in(offset);

        std::size_t lead = 0;
        while (lead < normal.size() && normal[lead] == 0)
            ++lead;
        if (lead == normal.size())
            throw std::invalid_argument("hyperplane with zero normal vector");

        Integer g = 0;
        auto gcd_in = [&](const Rational& q) {
            Integer v = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
        };
        for (const auto& a : normal)
            gcd_in(a);
        gcd_in(offset);

        Rational scale(l, g);
        if (normal[lead] < 0)
            scale = -scale;
        for (auto& a : normal)
            a *= scale;
        offset *= scale;
        return Hyperplane{std::move(normal), std::move(offset)};
    }

    /// normal . x - offset
    Rational evaluate(const RPoint& x) const { return dot(normal, x) - offset; }
    int side(const RPoint& x) const { return sgn(evaluate(x)); }

    bool operator==(const Hyperplane&) const = default;

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < normal.size(); ++i) {
            if (i)
                s += " ";
            s += salvetti::to_string(normal[i]);
        }
        return s + " " + salvetti::to_string(offset);
    }
};

/// A finite ordered arrangement of pairwise distinct affine hyperplanes in R^n.
class Arrangement
{
public:
    Arrangement() = default;

    Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes) : dim_(dim)
    {
        if (hyperplanes.size() > IndexSet::capacity)
            throw std::invalid_argument("at most 64 hyperplanes are supported");
        for (auto& h : hyperplanes) {
            if (h.normal.size() != dim)
                throw std::invalid_argument("hyperplane dimension mismatch");
            Hyperplane c = Hyperplane::canonical(std::move(h.normal), std::move(h.offset));
            for (const auto& existing : hyperplanes_)
                if (existing == c)
                    throw std::invalid_argument("duplicate hyperplane " + c.to_string());
            hyperplanes_.push_back(std::move(c));
        }
    }

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

    IndexSet all() const
    {
        return IndexSet::from_bits(size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1);
    }

    /// Keeps the hyperplanes of `keep`, in their original relative order.
    Arrangement subarrangement(IndexSet keep) const
    {
        std::vector<Hyperplane> hs;
        for (std::size_t i : keep.elements())
            hs.push_back(hyperplanes_[i]);
        return Arrangement(dim_, std::move(hs));
    }

private:
    std::size_t dim_ = 0;
    std::vector<Hyperplane> hyperplanes_;
};

namespace detail
{

inline std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

inline std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 1;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        out.emplace_back(number++, line);
        if (nl == std::string_view::npos)
            break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

} // namespace detail

/// Parses the text format: a `dim n` header, then one `a1 ... an b` line per
/// hyperplane a . x = b. `#` starts a comment.
inline Arrangement parse_arrangement(std::string_view text)
{
    std::optional<std::size_t> dim;
    std::vector<Hyperplane> hyperplanes;
    std::vector<std::size_t> origin_line;

    for (auto [number, raw] : detail::lines_of(text)) {
        std::string_view line = raw.substr(0, raw.find('#'));
        auto words = detail::split_words(line);
        if (words.empty())
            continue;

        if (!dim) {
            if (words.size() != 2 || words[0] != "dim")
                throw ParseError(number, "expected header `dim n`");
            std::size_t n = 0;
            for (char c : words[1]) {
                if (c < '0' || c > '9')
                    throw ParseError(number, "malformed dimension `" + std::string(words[1]) + "`");
                n = n * 10 + static_cast<std::size_t>(c - '0');
                if (n > 1000)
                    throw ParseError(number, "dimension too large");
            }
            if (n == 0)
                throw ParseError(number, "dimension must be positive");
            dim = n;
            continue;
        }

        if (words.size() != *dim + 1)
            throw ParseError(number, "expected " + std::to_string(*dim + 1) + " coefficients, found " +
                                         std::to_string(words.size()));
        RVector coeffs;
        for (auto w : words) {
            auto q = parse_rational(w);
            if (!q)
                throw ParseError(number, "malformed rational `" + std::string(w) + "`");
            coeffs.push_back(*q);
        }
        Rational offset = coeffs.back();
        coeffs.pop_back();
        bool zero = true;
        for (const auto& a : coeffs)
            zero = zero && a == 0;
        if (zero)
            throw ParseError(number, "zero normal vector");

        Hyperplane h = Hyperplane::canonical(std::move(coeffs), std::move(offset));
        for (std::size_t k = 0; k < hyperplanes.size(); ++k)
            if (hyperplanes[k] == h)
                throw ParseError(number, "duplicate of the hyperplane on line " + std::to_string(origin_line[k]));
        if (hyperplanes.size() == IndexSet::capacity)
            throw ParseError(number, "more than 64 hyperplanes");
        hyperplanes.push_back(std::move(h));
        origin_line.push_back(number);
    }
    if (!dim)
        throw ParseError(1, "missing header `dim n`");
    return Arrangement(*dim, std::move(hyperplanes));
}

/// Reads an optional `# basepoint x1 ... xn` comment.
inline std::optional<RPoint> parse_basepoint_hint(std::string_view text)
{
    for (auto [number, raw] : detail::lines_of(text)) {
        std::size_t hash = raw.find('#');
        if (hash == std::string_view::npos)
            continue;
        auto words = detail::split_words(raw.substr(hash + 1));
        if (words.empty() || words[0] != "basepoint")
            continue;
        RPoint p;
        for (std::size_t i = 1; i < words.size(); ++i) {
            auto q = parse_rational(words[i]);
            if (!q)
                throw ParseError(number, "malformed basepoint coordinate `" + std::string(words[i]) + "`");
            p.push_back(*q);
        }
        return p;
    }
    return std::nullopt;
}

} // namespace salvetti

#endif
