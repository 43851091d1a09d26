#ifndef SALVETTI_PROJECTION_HPP
#define SALVETTI_PROJECTION_HPP

#include "faces.hpp"
#include "flats.hpp"

#include <algorithm>
#include <stdexcept>

namespace salvetti
{

/// An arrangement with its flats and faces.
struct Geometry
{
    Arrangement arrangement;
    FlatLattice flats;
    FacePoset faces;

    static Geometry build(Arrangement a)
    {
        Geometry g;
        g.flats = FlatLattice::enumerate(a);
        g.faces = FacePoset::enumerate(a, g.flats);
        g.arrangement = std::move(a);
        return g;
    }

    std::size_t dimension() const { return arrangement.dimension(); }
};

struct ChamberProjection
{
    RPoint point;        // nearest point of the closed chamber
    std::size_t face;    // the face containing it in its relative interior
    Rational squared;    // squared distance to the base point
};

/// Nearest point of the closed chamber to x0, using precomputed per-flat
/// orthogonal projections.
inline ChamberProjection project_chamber(const Geometry& g, const FlatDistances& d, std::size_t c)
{
    std::optional<ChamberProjection> best;
    for (std::size_t f : g.faces.closure(c)) {
        const Face& face = g.faces[f];
        const RPoint& p = d.projection[face.flat];
        if (sign_vector(g.arrangement, p) != face.sign)
            continue;
        const Rational& dist = d.squared[face.flat];
        if (!best || dist < best->squared)
            best = ChamberProjection{p, f, dist};
    }
    if (!best)
        throw std::logic_error("project_chamber: no candidate face");
    return *best;
}

inline ChamberProjection project_chamber(const Geometry& g, const RPoint& x0, std::size_t c)
{
    return project_chamber(g, FlatDistances::compute(g.flats, x0), c);
}

/// Pairwise distinct squared distances from x0 to all flats.
inline bool is_generic(const FlatLattice& flats, const RPoint& x0)
{
    auto d = FlatDistances::compute(flats, x0).squared;
    std::sort(d.begin(), d.end());
    return std::adjacent_find(d.begin(), d.end()) == d.end();
}

class SearchExhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::vector<long> perturbation_denominators(std::size_t n)
{
    std::vector<long> out{1};
    for (long p = 3; out.size() < n; p += 2) {
        bool prime = true;
        for (long q = 3; q * q <= p; q += 2)
            prime = prime && p % q != 0;
        if (prime)
            out.push_back(p);
    }
    out.resize(n);
    return out;
}

} // namespace detail

/// Returns hint if generic, otherwise the first generic point of
/// hint + 2^-k (1, 1/3, 1/5, 1/7, 1/11, ...), k = 1..attempts. When hint is
/// off every hyperplane, candidates must stay in its chamber.
inline RPoint find_generic_point(const Geometry& g, const RPoint& hint, std::size_t attempts = 64)
{
    if (hint.size() != g.dimension())
        throw std::invalid_argument("base point has dimension " + std::to_string(hint.size()) + ", expected " +
                                    std::to_string(g.dimension()));
    if (is_generic(g.flats, hint))
        return hint;
    SignVector s = sign_vector(g.arrangement, hint);
    bool interior = zero_set(s).empty();
    auto dens = detail::perturbation_denominators(hint.size());
    Rational scale = 1;
    for (std::size_t k = 1; k <= attempts; ++k) {
        scale /= 2;
        RPoint x = hint;
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] += scale / dens[j];
        if (interior && sign_vector(g.arrangement, x) != s)
            continue;
        if (is_generic(g.flats, x))
            return x;
    }
    throw SearchExhausted("no generic base point found near " + to_string(hint));
}

} // namespace salvetti

#endif
