#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace salvetti;
using support::q;

namespace
{

Pipeline fixture_run(const std::string& name)
{
    auto f = support::load(name);
    return Pipeline::run(f.arrangement, f.basepoint);
}

std::vector<Pipeline> corpus()
{
    std::vector<Pipeline> out;
    for (const auto& name : support::fixture_names())
        out.push_back(fixture_run(name));
    std::mt19937 rng(97);
    for (int k = 0; k < 12; ++k) {
        Arrangement a = support::random_arrangement(rng, k % 3 == 2 ? 3 : 2, 3 + k % 4, k % 4 == 1 ? 2 : 5);
        out.push_back(Pipeline::run(a, support::random_point(rng, a.dimension())));
    }
    return out;
}

std::size_t sign_face(const Geometry& g, std::initializer_list<int> s)
{
    return g.faces.at(SignVector(s.begin(), s.end()));
}

std::vector<std::size_t> critical_dimension_counts(const Pipeline& p)
{
    std::vector<std::size_t> out(p.geometry.dimension() + 1, 0);
    for (std::size_t c : p.matching.critical)
        ++out[p.complex[c].dim];
    return out;
}

Geometry square()
{
    return Geometry::build(parse_arrangement("dim 2\n1 0 0\n1 0 1\n0 1 0\n0 1 1\n"));
}

} // namespace

TEST_CASE("Euclidean order on two lines", "[order]")
{
    Pipeline p = fixture_run("boolean2");
    const Geometry& g = p.geometry;
    const ChamberOrder& o = p.matching.order;
    std::vector<std::size_t> expected{sign_face(g, {1, 1}), sign_face(g, {1, -1}), sign_face(g, {-1, 1}),
                                      sign_face(g, {-1, -1})};
    CHECK(o.chambers == expected);
    std::vector<Rational> d;
    for (std::size_t c : o.chambers)
        d.push_back(o.projection[c].squared);
    CHECK(d == std::vector<Rational>{q(0), q(1, 4), q(1), q(5, 4)});
    CHECK(p.matching.base_chamber == expected[0]);
    CHECK(p.matching.critical_face[expected[0]] == expected[0]);
    CHECK(p.matching.critical_face[expected[3]] == sign_face(g, {0, 0}));
    CHECK(p.matching.critical_face[expected[1]] == sign_face(g, {1, 0}));
}

TEST_CASE("Euclidean order basics", "[order]")
{
    for (const Pipeline& p : corpus()) {
        const Geometry& g = p.geometry;
        const ChamberOrder& o = p.matching.order;
        REQUIRE(o.chambers.size() == g.faces.chambers().size());
        CHECK(sign_vector(g.arrangement, p.base_point) == g.faces[o.chambers.front()].sign);
        for (std::size_t i = 1; i < o.chambers.size(); ++i)
            CHECK(o.projection[o.chambers[i - 1]].squared <= o.projection[o.chambers[i]].squared);
        for (std::size_t c : o.chambers) {
            const auto& pr = o.projection[c];
            CHECK(sign_vector(g.arrangement, pr.point) == g.faces[pr.face].sign);
            CHECK(g.faces.relation(c, pr.face));
        }
    }
}

TEST_CASE("Euclidean order rejects non-generic points", "[order]")
{
    Geometry g = Geometry::build(support::load("boolean2").arrangement);
    CHECK_THROWS_AS(euclidean_order(g, RPoint{q(1), q(0)}), PreconditionError);
    CHECK_THROWS_AS(euclidean_order(g, RPoint{q(1), q(1)}), PreconditionError);
    CHECK_NOTHROW(euclidean_order(g, RPoint{q(1), q(1, 2)}));
}

TEST_CASE("principal ideals and N-classes", "[matching]")
{
    for (const Pipeline& p : corpus()) {
        const Geometry& g = p.geometry;
        const auto& s = p.complex;
        const auto& m = p.matching;
        CHECK(audit_principal_ideals(g, m));

        std::size_t in_base = 0;
        std::vector<std::size_t> per_chamber(g.faces.size(), 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(n_class_by_flat(g, s, m.critical_flat, i) == m.n_class[i]);
            CHECK(n_class_scan(g, s, m.order, i) == m.n_class[i]);
            ++per_chamber[m.n_class[i]];
            if (m.n_class[i] == m.base_chamber)
                ++in_base;
            if (s[i].dim == 0)
                CHECK(m.n_class[i] == m.base_chamber);
        }
        // N(C0) holds exactly one cell per face
        CHECK(in_base == g.faces.size());
        std::size_t total = 0;
        for (std::size_t c : g.faces.chambers())
            total += per_chamber[c];
        CHECK(total == s.size());
    }
}

TEST_CASE("fibers", "[matching][fiber]")
{
    for (const Pipeline& p : corpus()) {
        const Geometry& g = p.geometry;
        const auto& m = p.matching;
        std::size_t covered = 0;
        for (const auto& [key, cells] : m.fibers) {
            CHECK(fiber(g, p.complex, m.critical_flat[key.chamber], key.chamber, key.opposite) == cells);
            covered += cells.size();
            bool special = key.opposite == g.faces.opposite(key.chamber, m.critical_face[key.chamber]);
            if (special)
                CHECK(cells.size() == 1);
            else
                CHECK(cells.size() % 2 == 0);
        }
        CHECK(covered == p.complex.size());
    }

    Pipeline b = fixture_run("boolean2");
    std::size_t mm = sign_face(b.geometry, {-1, -1}), pp = sign_face(b.geometry, {1, 1});
    const auto& special = b.matching.fibers.at(FiberKey{mm, pp});
    REQUIRE(special.size() == 1);
    CHECK(special[0] == b.complex.at(mm, sign_face(b.geometry, {0, 0})));
    CHECK(b.matching.is_critical(special[0]));
}

TEST_CASE("fiber matching", "[matching][fiber]")
{
    Pipeline p = fixture_run("deconed_a3");
    const auto& s = p.complex;
    std::size_t largest = 0;
    for (const auto& [key, cells] : p.matching.fibers) {
        if (cells.size() < 2)
            continue;
        largest = std::max(largest, cells.size());
        std::size_t dim = p.geometry.flats[p.matching.critical_flat[key.chamber]].space.dimension();
        auto pairs = fiber_matching(s, cells, dim);
        CHECK(pairs.size() * 2 == cells.size());
        std::set<std::size_t> used;
        for (const auto& pr : pairs) {
            CHECK(s.in_boundary(pr.low, pr.high));
            used.insert(pr.high);
            used.insert(pr.low);
        }
        CHECK(std::vector<std::size_t>(used.begin(), used.end()) == cells);
        // the search fallback agrees in size
        auto searched = fiber_matching(s, cells, 0);
        CHECK(searched.size() == pairs.size());
    }
    CHECK(largest >= 4);
    std::vector<std::size_t> odd{0};
    CHECK_THROWS_AS(fiber_matching(s, odd, 2), std::logic_error);
}

TEST_CASE("visible faces of a square", "[visibility]")
{
    Geometry g = square();
    std::size_t sq = g.faces.at(sign_vector(g.arrangement, RPoint{q(1, 2), q(1, 2)}));
    auto face = [&](Rational x, Rational y) { return g.faces.at(sign_vector(g.arrangement, RPoint{x, y})); };
    auto sorted = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };

    CHECK(sorted(visible_faces(g, sq, RPoint{q(2), q(1, 3)})) == sorted({sq, face(q(1), q(1, 2))}));
    CHECK(sorted(visible_faces(g, sq, RPoint{q(2), q(-1)})) ==
          sorted({sq, face(q(1), q(1, 2)), face(q(1, 2), q(0)), face(q(1), q(0))}));
    CHECK_THROWS_AS(visible_faces(g, sq, RPoint{q(1, 3), q(1, 3)}), PreconditionError);
    CHECK_THROWS_AS(visible_faces(g, sq, RPoint{q(2), q(0)}), PreconditionError);

    // the opposite corner sees two edges and their vertex
    auto from_below_left = visible_faces(g, sq, RPoint{q(-1), q(-2)});
    CHECK(from_below_left.size() == 4);
}

TEST_CASE("bounded surrogate of a half-plane", "[visibility]")
{
    Geometry g = Geometry::build(parse_arrangement("dim 2\n0 1 0\n"));
    std::size_t upper = g.faces.at(SignVector{1});
    std::size_t line = g.faces.at(SignVector{0});
    RPoint y{q(0), q(-1)};
    auto vis = visible_faces(g, upper, y);
    std::sort(vis.begin(), vis.end());
    CHECK(vis == std::vector<std::size_t>{std::min(upper, line), std::max(upper, line)});

    Surrogate sur = bounded_surrogate(g, upper, {y, g.faces[line].witness});
    CHECK(sur.boxed.arrangement.size() == 5);
    REQUIRE(sur.face_map[line]);
    std::vector<std::size_t> boxed = visible_faces(sur.boxed, sur.chamber, y);
    std::sort(boxed.begin(), boxed.end());
    std::vector<std::size_t> mapped{*sur.face_map[upper], *sur.face_map[line]};
    std::sort(mapped.begin(), mapped.end());
    CHECK(boxed == mapped);
}

TEST_CASE("fibers are the visible faces", "[visibility][matching]")
{
    for (const char* name : {"boolean2", "euclidean", "deconed_a3"}) {
        Pipeline p = fixture_run(name);
        std::size_t audited = 0;
        for (const auto& [key, cells] : p.matching.fibers) {
            if (key.opposite == p.geometry.faces.opposite(key.chamber, p.matching.critical_face[key.chamber]))
                continue;
            VisibilityAudit a = audit_fiber_visibility(p.geometry, p.complex, p.matching, key);
            CHECK(a.same_faces);
            CHECK(a.visible == cells.size());
            ++audited;
        }
        CHECK(audited > 0);
    }
}

TEST_CASE("matching verification", "[matching][property]")
{
    for (const Pipeline& p : corpus()) {
        VerificationReport r = verify_matching(p.complex, p.matching);
        INFO(r.violations.size() << " violations");
        CHECK(r.ok());
        CHECK(p.matching.critical.size() == p.geometry.faces.chambers().size());
        CHECK(p.matching.pairs.size() * 2 + p.matching.critical.size() == p.complex.size());
        for (std::size_t c : p.matching.critical)
            CHECK(p.matching.is_critical(c));
    }
}

TEST_CASE("verification catches broken matchings", "[matching]")
{
    Pipeline p = fixture_run("deconed_a3");
    const auto& s = p.complex;
    const auto& m = p.matching;
    REQUIRE(!m.pairs.empty());

    std::vector<MatchedPair> dropped(m.pairs.begin() + 1, m.pairs.end());
    VerificationReport r = verify_matching(s, m, dropped);
    CHECK_FALSE(r.passed[4]);
    CHECK_FALSE(r.violations.empty());

    std::vector<MatchedPair> doubled = m.pairs;
    doubled.push_back(m.pairs.front());
    CHECK_FALSE(verify_matching(s, m, doubled).passed[1]);

    std::vector<MatchedPair> not_cover = m.pairs;
    std::size_t top = s.of_dimension(2).front(), vertex = s.of_dimension(0).front();
    not_cover.push_back({top, vertex});
    CHECK_FALSE(verify_matching(s, m, not_cover).passed[0]);

    bool found_cycle = false, found_cross = false;
    for (std::size_t h = 0; h < s.size() && !(found_cycle && found_cross); ++h)
        for (std::size_t l : s.boundary(h)) {
            if (m.partner[h] == l)
                continue;
            std::vector<MatchedPair> injected = m.pairs;
            injected.push_back({h, l});
            VerificationReport v = verify_matching(s, m, injected);
            found_cycle = found_cycle || !v.passed[2];
            found_cross = found_cross || !v.passed[3];
        }
    CHECK(found_cycle);
    CHECK(found_cross);
}

TEST_CASE("critical cells and their dimensions", "[matching]")
{
    Pipeline e = fixture_run("empty");
    CHECK(e.matching.pairs.empty());
    CHECK(e.matching.critical.size() == 1);

    Pipeline b = fixture_run("boolean2");
    std::vector<std::size_t> dims;
    for (std::size_t c : b.matching.order.chambers)
        dims.push_back(b.complex[b.complex.at(c, b.matching.critical_face[c])].dim);
    CHECK(dims == std::vector<std::size_t>{0, 1, 1, 2});

    CHECK(critical_dimension_counts(fixture_run("one_line")) == std::vector<std::size_t>{1, 1, 0});
    CHECK(critical_dimension_counts(fixture_run("euclidean")) == std::vector<std::size_t>{1, 4, 5});
    CHECK(critical_dimension_counts(fixture_run("deconed_a3")) == std::vector<std::size_t>{1, 5, 6});
}

TEST_CASE("tie-break does not change the matching outcome", "[matching][property]")
{
    for (const Pipeline& p : corpus()) {
        EuclideanMatching other =
            assemble_matching(p.geometry, p.complex, p.base_point, TieBreak::reverse_lexicographic);
        CHECK(other.critical == p.matching.critical);
        CHECK(other.n_class == p.matching.n_class);
        CHECK(verify_matching(p.complex, other).ok());
    }
}
