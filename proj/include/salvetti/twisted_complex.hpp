#ifndef SALVETTI_TWISTED_COMPLEX_HPP
#define SALVETTI_TWISTED_COMPLEX_HPP

#include "laurent.hpp"
#include "salvetti_complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace salvetti
{

class UnsupportedDimension : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_plane(const Geometry& g, const char* what)
{
    if (g.dimension() != 2)
        throw UnsupportedDimension(std::string(what) + " needs an arrangement of lines in the plane, got dimension " +
                                   std::to_string(g.dimension()));
}

/// prod of t_l over l in s(C0, Y) and s(X, Y)
inline LaurentPoly ubar(const Geometry& g, std::size_t c0, std::size_t x, std::size_t y)
{
    IndexSet s = g.faces.separators(c0, y) & g.faces.separators(x, y);
    return LaurentPoly::product_of(g.arrangement.size(), s);
}

/// The boundary 2k-gon of a 2-cell <D,p>, starting at <D,D>. Edge i joins
/// vertex i and vertex i+1; `traversal[i]` is +1 when the walk goes from the
/// tail of edge i to its head.
struct Polygon
{
    std::vector<std::size_t> chambers;
    std::vector<std::size_t> edge_faces;
    std::vector<std::size_t> vertex_cells;
    std::vector<std::size_t> edge_cells;
    std::vector<int> traversal;
};

namespace detail
{

// counterclockwise angular comparison of direction vectors
inline bool angle_less(const RVector& a, const RVector& b)
{
    auto half = [](const RVector& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb)
        return ha < hb;
    return a[0] * b[1] - a[1] * b[0] > 0;
}

} // namespace detail

inline Polygon polygon_cycle(const Geometry& g, const SalvettiComplex& s, std::size_t d, std::size_t p,
                             bool counterclockwise = true)
{
    require_plane(g, "polygon_cycle");
    const FacePoset& fp = g.faces;
    if (fp[p].codim != 2)
        throw std::invalid_argument("polygon_cycle: not a point face");
    if (!fp.relation(d, p))
        throw std::invalid_argument("polygon_cycle: chamber is not incident to the point");

    const RPoint& centre = fp[p].witness;
    std::vector<std::size_t> around;
    for (std::size_t f = 0; f < fp.size(); ++f)
        if (fp[f].codim < 2 && fp.relation(f, p))
            around.push_back(f);
    std::sort(around.begin(), around.end(), [&](std::size_t a, std::size_t b) {
        return detail::angle_less(fp[a].witness - centre, fp[b].witness - centre);
    });
    auto start = std::find(around.begin(), around.end(), d);
    std::rotate(around.begin(), start, around.end());
    if (!counterclockwise)
        std::reverse(around.begin() + 1, around.end());

    Polygon poly;
    for (std::size_t i = 0; i < around.size(); i += 2) {
        std::size_t chamber = around[i];
        std::size_t edge = around[i + 1];
        std::size_t next = around[(i + 2) % around.size()];
        poly.chambers.push_back(chamber);
        poly.edge_faces.push_back(edge);
        poly.vertex_cells.push_back(s.at(chamber, chamber));
        std::size_t tail = fp.project_face(d, edge);
        poly.edge_cells.push_back(s.at(tail, edge));
        poly.traversal.push_back(tail == chamber ? 1 : -1);
        if (tail != chamber && tail != next)
            throw std::logic_error("polygon edge not between its neighbours");
    }
    return poly;
}

/// Integral and twisted incidences of the Salvetti complex of a line
/// arrangement, for the base chamber C0 of a generic point x0.
struct TwistedComplex
{
    std::size_t base_chamber = 0;
    std::size_t variables = 0;
    std::map<std::pair<std::size_t, std::size_t>, int> integral;  // (cell, boundary cell) -> +-1
    LaurentMatrix boundary;                                        // (cell, boundary cell) -> entry
    std::vector<int> orientation;                                  // per 2-cell id: +-1 against the ccw walk
    std::vector<std::size_t> orientation_wall;                     // per 2-cell id: the line l used

    const LaurentPoly& entry(std::size_t high, std::size_t low) const
    {
        static const LaurentPoly zero;
        auto it = boundary.find({high, low});
        return it == boundary.end() ? zero : it->second;
    }

    int integral_entry(std::size_t high, std::size_t low) const
    {
        auto it = integral.find({high, low});
        return it == integral.end() ? 0 : it->second;
    }
};

/// Wall of D through p fixing the orientation of <D,p>.
inline std::size_t orientation_wall(const Geometry& g, const RPoint& x0, std::size_t c0, std::size_t d, std::size_t p)
{
    const FacePoset& fp = g.faces;
    std::vector<std::size_t> walls;
    for (std::size_t l : fp[p].support.elements()) {
        SignVector s = fp[d].sign;
        s[l] = 0;
        if (fp.find(s))
            walls.push_back(l);
    }
    if (walls.size() != 2)
        throw std::logic_error("chamber at a point without two walls through it");
    if (fp.project_face(c0, p) == d)
        return walls.front();  // inside N(C0): lowest index
    for (std::size_t l : walls)
        if (fp[d].sign[l] == fp[c0].sign[l])
            return l;
    auto dist = [&](std::size_t l) {
        const Hyperplane& h = g.arrangement[l];
        Rational v = h.evaluate(x0);
        return v * v / squared_norm(h.normal);
    };
    return dist(walls[0]) < dist(walls[1]) ? walls[0] : walls[1];
}

inline TwistedComplex twisted_chain_complex(const Geometry& g, const SalvettiComplex& s, const RPoint& x0,
                                            std::size_t c0)
{
    require_plane(g, "twisted_chain_complex");
    const FacePoset& fp = g.faces;
    TwistedComplex t;
    t.base_chamber = c0;
    t.variables = g.arrangement.size();
    t.orientation.assign(s.size(), 0);
    t.orientation_wall.assign(s.size(), 0);

    for (std::size_t e : s.of_dimension(1)) {
        const auto& [c, f, dim] = s[e];
        std::size_t head = fp.opposite(c, f);
        t.integral[{e, s.at(head, head)}] = 1;
        t.integral[{e, s.at(c, c)}] = -1;
    }
    for (std::size_t q : s.of_dimension(2)) {
        const auto& [d, p, dim] = s[q];
        Polygon poly = polygon_cycle(g, s, d, p);
        std::size_t l = orientation_wall(g, x0, c0, d, p);
        SignVector fl = fp[d].sign;
        fl[l] = 0;
        std::size_t chosen = s.at(d, fp.at(fl));
        int eps = 0;
        for (std::size_t i = 0; i < poly.edge_cells.size(); ++i)
            if (poly.edge_cells[i] == chosen)
                eps = poly.traversal[i];
        if (!eps)
            throw std::logic_error("orientation edge not on the polygon");
        t.orientation[q] = eps;
        t.orientation_wall[q] = l;
        for (std::size_t i = 0; i < poly.edge_cells.size(); ++i)
            t.integral[{q, poly.edge_cells[i]}] = eps * poly.traversal[i];
    }

    for (const auto& [key, z] : t.integral) {
        const auto& hi = s[key.first];
        const auto& lo = s[key.second];
        std::size_t rep_hi = fp.opposite(hi.chamber, hi.face);
        std::size_t rep_lo = fp.opposite(lo.chamber, lo.face);
        t.boundary[key] = ubar(g, c0, rep_hi, rep_lo) * LaurentPoly::constant(t.variables, z);
    }
    return t;
}

/// Rows are cells of dimension k, columns cells of dimension k-1.
inline LaurentMatrix boundary_of_dimension(const SalvettiComplex& s, const LaurentMatrix& all, std::size_t k)
{
    LaurentMatrix out;
    for (const auto& [key, v] : all)
        if (s[key.first].dim == k)
            out[key] = v;
    return out;
}

} // namespace salvetti

#endif
