#ifndef SALVETTI_VISIBILITY_HPP
#define SALVETTI_VISIBILITY_HPP

#include "euclidean_matching.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace salvetti
{

/// Faces of the closed polyhedron P (a face of g, taken inside its span)
/// that are visible from y: a facet is visible when its hyperplane separates
/// y from P, and a face when every facet containing it is visible. P itself
/// is always included.
inline std::vector<std::size_t> visible_faces(const Geometry& g, std::size_t p, const RPoint& y)
{
    const FacePoset& fp = g.faces;
    const Face& poly = fp[p];
    if (!g.flats[poly.flat].space.contains(y))
        throw PreconditionError("viewpoint outside the span of the polyhedron");

    std::vector<std::size_t> facets = fp.upper_covers(p);
    std::vector<bool> seen(facets.size());
    bool any = false;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        std::size_t h = (fp[facets[i]].support - poly.support).front();
        int side = g.arrangement[h].side(y);
        if (side == 0)
            throw PreconditionError("viewpoint on the hyperplane of a facet");
        seen[i] = side != poly.sign[h];
        any = any || seen[i];
    }
    if (!any)
        throw PreconditionError("viewpoint inside the polyhedron");

    std::vector<std::size_t> out;
    for (std::size_t f : fp.closure(p)) {
        bool visible = true;
        for (std::size_t i = 0; i < facets.size() && visible; ++i)
            if (fp.relation(facets[i], f))
                visible = seen[i];
        if (visible)
            out.push_back(f);
    }
    return out;
}

/// A chamber of A cut down by an axis box around the required points, with
/// the map from faces of A to faces of the boxed arrangement.
struct Surrogate
{
    Geometry boxed;
    std::size_t chamber = 0;
    std::vector<std::optional<std::size_t>> face_map;  // per face of the original
};

inline Surrogate bounded_surrogate(const Geometry& g, std::size_t chamber, const std::vector<RPoint>& required)
{
    const std::size_t n = g.dimension();
    std::vector<Hyperplane> hs = g.arrangement.hyperplanes();
    auto taken = [&](const Hyperplane& h) {
        return std::find(hs.begin(), hs.end(), Hyperplane::canonical(h.normal, h.offset)) != hs.end();
    };
    for (std::size_t j = 0; j < n; ++j) {
        Rational lo = 0, hi = 0;
        for (std::size_t k = 0; k < required.size(); ++k) {
            if (k == 0 || required[k][j] < lo)
                lo = required[k][j];
            if (k == 0 || required[k][j] > hi)
                hi = required[k][j];
        }
        RVector e(n, Rational(0));
        e[j] = 1;
        Hyperplane low{e, lo - 1}, high{e, hi + 1};
        while (taken(low))
            low.offset -= 1;
        while (taken(high))
            high.offset += 1;
        hs.push_back(low);
        hs.push_back(high);
    }

    Surrogate out;
    out.boxed = Geometry::build(Arrangement(n, hs));
    auto extend = [&](const SignVector& s) {
        SignVector t = s;
        for (std::size_t j = 0; j < n; ++j) {
            t.push_back(1);
            t.push_back(-1);
        }
        return out.boxed.faces.find(t);
    };
    out.face_map.resize(g.faces.size());
    for (std::size_t f = 0; f < g.faces.size(); ++f)
        out.face_map[f] = extend(g.faces[f].sign);
    if (!out.face_map[chamber])
        throw std::logic_error("box misses the chamber");
    out.chamber = *out.face_map[chamber];
    return out;
}

/// For a fiber (C,E) other than the special one: the faces of E inside X_C
/// seen from F_C, computed in the arrangement induced on X_C.
struct VisibilityAudit
{
    std::size_t fiber_size = 0;
    std::size_t visible = 0;
    std::size_t surrogate_visible = 0;
    bool same_faces = false;
};

inline VisibilityAudit audit_fiber_visibility(const Geometry& g, const SalvettiComplex& s,
                                              const EuclideanMatching& m, FiberKey key)
{
    VisibilityAudit a;
    const std::vector<std::size_t>& cells = m.fibers.at(key);
    a.fiber_size = cells.size();
    const Flat& x = g.flats[m.critical_flat[key.chamber]];
    Contraction con = contract(g.arrangement, x);
    Geometry local = Geometry::build(con.arrangement);

    auto local_face = [&](std::size_t f) {
        return local.faces.at(sign_vector(local.arrangement, x.space.coordinates_of(g.faces[f].witness)));
    };

    SignVector ps = g.faces[key.opposite].sign;
    for (std::size_t i : x.support.elements())
        ps[i] = 0;
    std::size_t polytope = local_face(g.faces.at(ps));
    RPoint y = x.space.coordinates_of(g.faces[m.critical_face[key.chamber]].witness);

    std::vector<std::size_t> vis = visible_faces(local, polytope, y);
    a.visible = vis.size();
    std::vector<std::size_t> from_fiber;
    for (std::size_t c : cells)
        from_fiber.push_back(local_face(s[c].face));
    std::sort(from_fiber.begin(), from_fiber.end());
    std::sort(vis.begin(), vis.end());
    a.same_faces = from_fiber == vis;

    std::vector<RPoint> req{y};
    for (std::size_t f : vis)
        req.push_back(local.faces[f].witness);
    Surrogate sur = bounded_surrogate(local, polytope, req);
    std::vector<std::size_t> boxed_vis = visible_faces(sur.boxed, sur.chamber, y);
    std::vector<std::size_t> mapped;
    for (std::size_t f : vis)
        if (sur.face_map[f])
            mapped.push_back(*sur.face_map[f]);
    std::sort(mapped.begin(), mapped.end());
    std::sort(boxed_vis.begin(), boxed_vis.end());
    a.surrogate_visible = boxed_vis == mapped ? mapped.size() : 0;
    a.same_faces = a.same_faces && a.surrogate_visible == a.visible;
    return a;
}

} // namespace salvetti

#endif
