#ifndef SALVETTI_PIPELINE_HPP
#define SALVETTI_PIPELINE_HPP

#include "morse_homology.hpp"

#include <optional>

namespace salvetti
{

/// Everything derived from an arrangement and a generic base point.
struct Pipeline
{
    Geometry geometry;
    SalvettiComplex complex;
    RPoint base_point;
    EuclideanMatching matching;

    /// Uses `point` if given, else the origin, made generic by find_generic_point.
    static Pipeline run(Arrangement a, std::optional<RPoint> point = std::nullopt, std::size_t attempts = 64,
                        TieBreak tie = TieBreak::lexicographic)
    {
        Pipeline p;
        p.geometry = Geometry::build(std::move(a));
        p.complex = SalvettiComplex::build(p.geometry);
        RPoint hint = point ? *point : RPoint(p.geometry.dimension(), Rational(0));
        p.base_point = find_generic_point(p.geometry, hint, attempts);
        p.matching = assemble_matching(p.geometry, p.complex, p.base_point, tie);
        return p;
    }

    std::vector<std::size_t> betti() const { return betti_numbers(geometry, matching); }

    TwistedComplex twisted() const
    {
        return twisted_chain_complex(geometry, complex, base_point, matching.base_chamber);
    }
};

} // namespace salvetti

#endif
