#ifndef SALVETTI_FLATS_HPP
#define SALVETTI_FLATS_HPP

#include "arrangement.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

namespace salvetti
{

/// An element of the intersection poset. The support is maximal, so two
/// flats are equal as subspaces iff their supports are equal.
struct Flat
{
    IndexSet support;
    std::size_t codim = 0;
    AffineSubspace space;
    long mobius = 0;  // mu(R^n, X)
};

namespace detail
{

inline std::optional<AffineSubspace> intersect(const Arrangement& a, IndexSet s)
{
    RMatrix rows;
    RVector rhs;
    for (std::size_t i : s.elements()) {
        rows.push_back(a[i].normal);
        rhs.push_back(a[i].offset);
    }
    return solve_affine(rows, rhs, a.dimension());
}

inline IndexSet hyperplanes_containing(const Arrangement& a, const AffineSubspace& x)
{
    IndexSet s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].evaluate(x.origin) != 0)
            continue;
        bool parallel = true;
        for (const auto& d : x.directions)
            parallel = parallel && dot(a[i].normal, d) == 0;
        if (parallel)
            s.insert(i);
    }
    return s;
}

} // namespace detail

class FlatLattice
{
public:
    FlatLattice() = default;

    /// Closes the ambient space under intersection with every hyperplane.
    static FlatLattice enumerate(const Arrangement& a)
    {
        FlatLattice lattice;
        std::map<IndexSet, std::size_t> seen;
        std::vector<Flat> flats;
        flats.push_back(Flat{IndexSet{}, 0, whole_space(a.dimension()), 0});
        seen[IndexSet{}] = 0;

        for (std::size_t cur = 0; cur < flats.size(); ++cur) {
            for (std::size_t h = 0; h < a.size(); ++h) {
                if (flats[cur].support.contains(h))
                    continue;
                IndexSet generators = flats[cur].support;
                generators.insert(h);
                auto space = detail::intersect(a, generators);
                if (!space)
                    continue;
                IndexSet support = detail::hyperplanes_containing(a, *space);
                if (seen.count(support))
                    continue;
                seen[support] = flats.size();
                std::size_t codim = space->codimension();
                flats.push_back(Flat{support, codim, std::move(*space), 0});
            }
        }

        std::sort(flats.begin(), flats.end(), [](const Flat& x, const Flat& y) {
            if (x.codim != y.codim)
                return x.codim < y.codim;
            return x.support < y.support;
        });
        lattice.flats_ = std::move(flats);
        for (std::size_t i = 0; i < lattice.flats_.size(); ++i)
            lattice.index_[lattice.flats_[i].support] = i;
        lattice.compute_mobius();
        return lattice;
    }

    std::size_t size() const { return flats_.size(); }
    const Flat& operator[](std::size_t i) const { return flats_[i]; }
    const std::vector<Flat>& flats() const { return flats_; }

    std::optional<std::size_t> find(IndexSet support) const
    {
        auto it = index_.find(support);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t at(IndexSet support) const
    {
        auto f = find(support);
        if (!f)
            throw std::logic_error("not the support of a flat: " + support.to_string());
        return *f;
    }

    /// X <= Y in the poset of flats (reverse inclusion), i.e. X contains Y.
    bool below(std::size_t x, std::size_t y) const { return flats_[x].support.subset_of(flats_[y].support); }

    std::size_t max_codim() const { return flats_.empty() ? 0 : flats_.back().codim; }

    /// Coefficients of sum_X |mu(X)| t^codim(X).
    std::vector<long> poincare_oracle() const
    {
        std::vector<long> p(max_codim() + 1, 0);
        for (const auto& f : flats_)
            p[f.codim] += std::labs(f.mobius);
        return p;
    }

private:
    void compute_mobius()
    {
        for (std::size_t x = 0; x < flats_.size(); ++x) {
            if (flats_[x].codim == 0) {
                flats_[x].mobius = 1;
                continue;
            }
            long sum = 0;
            for (std::size_t y = 0; y < x; ++y)
                if (flats_[y].support.subset_of(flats_[x].support) && flats_[y].support != flats_[x].support)
                    sum += flats_[y].mobius;
            flats_[x].mobius = -sum;
        }
    }

    std::vector<Flat> flats_;
    std::map<IndexSet, std::size_t> index_;
};

/// Squared distance and orthogonal projection of a base point onto each flat.
struct FlatDistances
{
    std::vector<RPoint> projection;
    std::vector<Rational> squared;

    static FlatDistances compute(const FlatLattice& flats, const RPoint& x0)
    {
        FlatDistances d;
        for (const auto& f : flats.flats()) {
            RPoint p = f.space.project(x0);
            d.squared.push_back(squared_distance(x0, p));
            d.projection.push_back(std::move(p));
        }
        return d;
    }
};

/// The arrangement A^X induced on a flat X, in the coordinates of X's
/// parametrisation. Hyperplanes meeting X in the same subspace are merged.
struct Contraction
{
    Arrangement arrangement;
    AffineSubspace space;
    std::vector<std::optional<std::size_t>> index_map;  // original index -> contraction index
    std::vector<int> orientation;                       // +-1 relative orientation, 0 if unmapped
};

inline Contraction contract(const Arrangement& a, const Flat& x)
{
    Contraction c;
    c.space = x.space;
    c.index_map.assign(a.size(), std::nullopt);
    c.orientation.assign(a.size(), 0);
    std::vector<Hyperplane> restricted;
    const std::size_t k = x.space.dimension();

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (x.support.contains(i))
            continue;
        RVector normal(k);
        bool zero = true;
        for (std::size_t j = 0; j < k; ++j) {
            normal[j] = dot(a[i].normal, x.space.directions[j]);
            zero = zero && normal[j] == 0;
        }
        if (zero)
            continue;  // parallel to X
        Rational offset = a[i].offset - dot(a[i].normal, x.space.origin);
        std::size_t lead = 0;
        while (normal[lead] == 0)
            ++lead;
        int orient = normal[lead] > 0 ? 1 : -1;
        Hyperplane h = Hyperplane::canonical(normal, offset);
        std::size_t idx = restricted.size();
        for (std::size_t r = 0; r < restricted.size(); ++r)
            if (restricted[r] == h)
                idx = r;
        if (idx == restricted.size())
            restricted.push_back(h);
        c.index_map[i] = idx;
        c.orientation[i] = orient;
    }
    c.arrangement = Arrangement(k, std::move(restricted));
    return c;
}

} // namespace salvetti

#endif
