#ifndef SALVETTI_INDEX_SET_HPP
#define SALVETTI_INDEX_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace salvetti
{

/// Set of hyperplane indices. Arrangements are limited to 64 hyperplanes.
class IndexSet
{
public:
    static constexpr std::size_t capacity = 64;

    constexpr IndexSet() = default;
    static constexpr IndexSet from_bits(std::uint64_t bits) { return IndexSet(bits); }
    static constexpr IndexSet single(std::size_t i) { return IndexSet(std::uint64_t{1} << i); }

    constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
    constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
    constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }

    constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
    constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
    constexpr IndexSet operator-(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }

    constexpr auto operator<=>(const IndexSet&) const = default;

    std::vector<std::size_t> elements() const
    {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b; b &= b - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    /// Smallest element; the set must be nonempty.
    std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (std::size_t i : elements()) {
            if (!first)
                s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
        return s + "}";
    }

private:
    explicit constexpr IndexSet(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

} // namespace salvetti

#endif
