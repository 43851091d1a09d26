#ifndef SALVETTI_MORSE_HOMOLOGY_HPP
#define SALVETTI_MORSE_HOMOLOGY_HPP

#include "euclidean_matching.hpp"
#include "polynomial.hpp"
#include "twisted_complex.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace salvetti
{

/// b_k = number of chambers whose face F_C has codimension k.
inline std::vector<std::size_t> betti_numbers(const Geometry& g, const ChamberOrder& o)
{
    std::vector<std::size_t> b(g.dimension() + 1, 0);
    for (std::size_t c : o.chambers)
        ++b[g.faces[o.projection[c].face].codim];
    while (b.size() > 1 && b.back() == 0)
        b.pop_back();
    return b;
}

inline std::vector<std::size_t> betti_numbers(const Geometry& g, const EuclideanMatching& m)
{
    return betti_numbers(g, m.order);
}

struct BrieskornRow
{
    std::size_t flat;
    std::size_t count;      // chambers with X_C = X
    long mobius;            // |mu(X)|
    std::size_t recursive;  // b_codim of the subarrangement through X
    bool ok() const { return static_cast<long>(count) == mobius && count == recursive; }
};

inline std::vector<BrieskornRow> brieskorn_counts(const Geometry& g, const EuclideanMatching& m)
{
    std::vector<BrieskornRow> rows;
    for (std::size_t x = 0; x < g.flats.size(); ++x) {
        BrieskornRow r{x, 0, std::labs(g.flats[x].mobius), 0};
        for (std::size_t c : m.order.chambers)
            if (m.critical_flat[c] == x)
                ++r.count;
        Geometry sub = Geometry::build(g.arrangement.subarrangement(g.flats[x].support));
        auto b = betti_numbers(sub, euclidean_order(sub, m.order.x0));
        std::size_t k = g.flats[x].codim;
        r.recursive = k < b.size() ? b[k] : 0;
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// generic reduction engines

/// Gaussian elimination of every matched pair of a based complex; the
/// pivots must be units. Returns the boundary between critical cells.
inline LaurentMatrix algebraic_morse_reduce(const LaurentMatrix& boundary, const std::vector<MatchedPair>& pairs)
{
    std::map<std::size_t, std::map<std::size_t, LaurentPoly>> rows;
    std::map<std::size_t, std::set<std::size_t>> cols;
    for (const auto& [key, v] : boundary) {
        if (v.is_zero())
            continue;
        rows[key.first][key.second] = v;
        cols[key.second].insert(key.first);
    }
    auto set_entry = [&](std::size_t r, std::size_t c, LaurentPoly v) {
        if (v.is_zero()) {
            rows[r].erase(c);
            cols[c].erase(r);
        } else {
            rows[r][c] = std::move(v);
            cols[c].insert(r);
        }
    };
    auto drop_row = [&](std::size_t r) {
        for (const auto& [c, v] : rows[r])
            cols[c].erase(r);
        rows.erase(r);
    };
    auto drop_col = [&](std::size_t c) {
        for (std::size_t r : cols[c])
            rows[r].erase(c);
        cols.erase(c);
    };

    for (const auto& [sigma, tau] : pairs) {
        auto it = rows[sigma].find(tau);
        if (it == rows[sigma].end() || !it->second.is_unit())
            throw std::logic_error("matched pair without a unit incidence");
        LaurentPoly inv = it->second.unit_inverse();
        std::map<std::size_t, LaurentPoly> pivot_row = rows[sigma];
        pivot_row.erase(tau);
        std::vector<std::size_t> others(cols[tau].begin(), cols[tau].end());
        for (std::size_t r : others) {
            if (r == sigma)
                continue;
            LaurentPoly f = rows[r][tau] * inv;
            for (const auto& [c, v] : pivot_row) {
                auto cur = rows[r].find(c);
                LaurentPoly nv = cur == rows[r].end() ? LaurentPoly(v.variables()) : cur->second;
                nv -= f * v;
                set_entry(r, c, std::move(nv));
            }
        }
        drop_row(sigma);
        drop_col(tau);
        drop_row(tau);
        drop_col(sigma);
    }
    LaurentMatrix out;
    for (const auto& [r, row] : rows)
        for (const auto& [c, v] : row)
            out[{r, c}] = v;
    return out;
}

/// Sum over alternating paths sigma -> tau1 -> sigma1 -> ... -> critical
/// cell of [sigma:tau1] prod(-[sigma_i:tau_i]^-1 [sigma_i:tau_{i+1}]).
inline std::map<std::size_t, LaurentPoly> alternating_path_sum(const SalvettiComplex& s, const TwistedComplex& t,
                                                               const EuclideanMatching& m, std::size_t sigma)
{
    std::map<std::size_t, std::map<std::size_t, LaurentPoly>> memo;
    std::set<std::size_t> active;
    // flow(tau): weighted critical targets reached from tau
    std::function<const std::map<std::size_t, LaurentPoly>&(std::size_t)> flow =
        [&](std::size_t tau) -> const std::map<std::size_t, LaurentPoly>& {
        auto hit = memo.find(tau);
        if (hit != memo.end())
            return hit->second;
        if (!active.insert(tau).second)
            throw std::logic_error("cycle among alternating paths");
        std::map<std::size_t, LaurentPoly> out;
        if (m.is_critical(tau)) {
            out[tau] = LaurentPoly::constant(t.variables, 1);
        } else if (s[*m.partner[tau]].dim == s[tau].dim + 1) {
            std::size_t up = *m.partner[tau];
            LaurentPoly step = -t.entry(up, tau).unit_inverse();
            for (std::size_t b : s.boundary(up)) {
                if (b == tau)
                    continue;
                LaurentPoly w = step * t.entry(up, b);
                for (const auto& [target, v] : flow(b)) {
                    auto& slot = out[target];
                    if (slot.variables() == 0)
                        slot = LaurentPoly(t.variables);
                    slot += w * v;
                }
            }
        }
        active.erase(tau);
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return memo[tau] = std::move(out);
    };
    std::map<std::size_t, LaurentPoly> total;
    for (std::size_t b : s.boundary(sigma))
        for (const auto& [target, v] : flow(b)) {
            auto& slot = total[target];
            if (slot.variables() == 0)
                slot = LaurentPoly(t.variables);
            slot += t.entry(sigma, b) * v;
        }
    for (auto it = total.begin(); it != total.end();)
        it = it->second.is_zero() ? total.erase(it) : std::next(it);
    return total;
}

// ---------------------------------------------------------------------------
// closed forms for line arrangements

/// The Morse complex of a line arrangement: critical cells by dimension and
/// the two boundary matrices keyed by cell ids.
struct MorseComplex
{
    std::vector<std::size_t> cells0, cells1, cells2;
    LaurentMatrix d1;  // (1-cell, 0-cell)
    LaurentMatrix d2;  // (2-cell, 1-cell)
};

/// Auxiliary data of the closed-form boundary.
class LineMorseData
{
public:
    LineMorseData(const Geometry& g, const SalvettiComplex& s, const EuclideanMatching& m, const TwistedComplex& t)
        : g_(g), s_(s), m_(m), t_(t), c0_(m.base_chamber)
    {
        require_plane(g, "line complex");
        FlatDistances d = FlatDistances::compute(g.flats, m.order.x0);
        const FacePoset& fp = g.faces;
        pivot_.assign(fp.size(), std::nullopt);
        for (std::size_t f = 0; f < fp.size(); ++f) {
            if (fp[f].codim != 1)
                continue;
            const RPoint& rho = d.projection[fp[f].flat];
            if (sign_relation(fp[f].sign, sign_vector(g.arrangement, rho)))
                continue;  // rho on the closed edge
            std::optional<std::size_t> best;
            for (std::size_t p : fp.upper_covers(f))
                if (!best || squared_distance(fp[p].witness, rho) < squared_distance(fp[*best].witness, rho))
                    best = p;
            pivot_[f] = best;
        }
    }

    std::size_t line_of(std::size_t f) const { return g_.faces[f].support.front(); }

    /// p(F); nullopt when the projection of x0 to |F| lies on F.
    std::optional<std::size_t> pivot(std::size_t f) const { return pivot_[f]; }

    std::size_t pivot_or_throw(std::size_t f) const
    {
        if (!pivot_[f])
            throw std::domain_error("pivot undefined: the projection of the base point lies on the edge");
        return *pivot_[f];
    }

    /// C(F): the chamber at F with <C(F),F> outside N(C0).
    std::size_t owner(std::size_t f) const { return g_.faces.opposite(g_.faces.project_face(c0_, f), f); }

    /// E(F) = C(F)^F
    std::size_t near_chamber(std::size_t f) const { return g_.faces.project_face(c0_, f); }

    /// D(F) = E(F)^{p(F)}
    std::size_t matched_chamber(std::size_t f) const { return g_.faces.opposite(near_chamber(f), pivot_or_throw(f)); }

    bool arrow(std::size_t f, std::size_t h) const
    {
        const FacePoset& fp = g_.faces;
        if (f == h || fp[h].codim != 1 || !pivot_[f])
            return false;
        if (!fp.relation(h, *pivot_[f]))
            return false;
        std::size_t lh = line_of(h);
        return line_of(f) == lh || fp[f].sign[lh] == fp[c0_].sign[lh];
    }

    LaurentPoly arrow_value(std::size_t f, std::size_t h) const
    {
        const FacePoset& fp = g_.faces;
        std::size_t p = pivot_or_throw(f);
        IndexSet lines;
        for (std::size_t l : fp[p].support.elements()) {
            if (l == line_of(h))
                continue;
            int c0s = fp[c0_].sign[l];
            if (fp[h].sign[l] != c0s && (fp[f].sign[l] == 0 || fp[f].sign[l] == c0s))
                lines.insert(l);
        }
        bool same = pivot_[h] && *pivot_[h] == p;
        return LaurentPoly::product_of(t_.variables, lines, same ? 1 : -1);
    }

    /// [F -> G] from its definition as a ratio of Salvetti incidences.
    LaurentPoly arrow_ratio(std::size_t f, std::size_t h) const
    {
        std::size_t q = s_.at(matched_chamber(f), pivot_or_throw(f));
        const LaurentPoly& num = t_.entry(q, s_.at(owner(h), h));
        const LaurentPoly& den = t_.entry(q, s_.at(owner(f), f));
        return num * den.unit_inverse();
    }

    /// All sequences F1 -> ... -> Fn = target with <C(F1),F1> on the boundary of <D,p>.
    std::vector<std::vector<std::size_t>> sequences(std::size_t cell2, std::size_t target_face) const
    {
        const FacePoset& fp = g_.faces;
        const auto& [d, p, dim] = s_[cell2];
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> path;
        std::set<std::size_t> on_path;
        std::function<void(std::size_t)> dfs = [&](std::size_t f) {
            if (!on_path.insert(f).second)
                throw std::logic_error("cycle in the arrow relation");
            path.push_back(f);
            if (f == target_face) {
                out.push_back(path);
            } else if (pivot_[f]) {
                for (std::size_t h : edges_at(*pivot_[f]))
                    if (arrow(f, h))
                        dfs(h);
            }
            path.pop_back();
            on_path.erase(f);
        };
        for (std::size_t f : edges_at(p))
            if (fp.project_face(d, f) == owner(f))
                dfs(f);
        return out;
    }

    /// Sum over sequences of (-1)^(n-1) [<D,p> : <C(F1),F1>] prod [F_i -> F_{i+1}].
    LaurentPoly d2_entry(std::size_t cell2, std::size_t cell1) const
    {
        LaurentPoly total(t_.variables);
        for (const auto& seq : sequences(cell2, s_[cell1].face)) {
            LaurentPoly w = t_.entry(cell2, s_.at(owner(seq.front()), seq.front()));
            for (std::size_t i = 0; i + 1 < seq.size(); ++i)
                w *= arrow_value(seq[i], seq[i + 1]);
            if (seq.size() % 2 == 0)
                w = -w;
            total += w;
        }
        return total;
    }

    /// Edges through a point.
    std::vector<std::size_t> edges_at(std::size_t p) const { return g_.faces.lower_covers(p); }

    MorseComplex closed_form() const
    {
        MorseComplex mc;
        for (std::size_t c : m_.critical) {
            std::size_t dim = s_[c].dim;
            (dim == 0 ? mc.cells0 : dim == 1 ? mc.cells1 : mc.cells2).push_back(c);
        }
        const std::size_t vars = t_.variables;
        for (std::size_t e : mc.cells1) {
            LaurentPoly v = LaurentPoly::constant(vars, 1) - LaurentPoly::variable(vars, line_of(s_[e].face));
            mc.d1[{e, mc.cells0.front()}] = v;
        }
        for (std::size_t q : mc.cells2)
            for (std::size_t e : mc.cells1) {
                LaurentPoly v = d2_entry(q, e);
                if (!v.is_zero())
                    mc.d2[{q, e}] = v;
            }
        return mc;
    }

private:
    const Geometry& g_;
    const SalvettiComplex& s_;
    const EuclideanMatching& m_;
    const TwistedComplex& t_;
    std::size_t c0_;
    std::vector<std::optional<std::size_t>> pivot_;
};

/// The same matrices from the generic Gaussian elimination.
inline MorseComplex reduced_morse_complex(const SalvettiComplex& s, const EuclideanMatching& m,
                                          const TwistedComplex& t)
{
    MorseComplex mc;
    for (std::size_t c : m.critical) {
        std::size_t dim = s[c].dim;
        (dim == 0 ? mc.cells0 : dim == 1 ? mc.cells1 : mc.cells2).push_back(c);
    }
    for (const auto& [key, v] : algebraic_morse_reduce(t.boundary, m.pairs))
        (s[key.first].dim == 1 ? mc.d1 : mc.d2)[key] = v;
    return mc;
}

// ---------------------------------------------------------------------------
// invariant factors after t_l -> t

struct InvariantFactors
{
    std::vector<QPoly> factors;  // monic, non-unit, each dividing the next
    std::size_t free_rank = 0;

    std::string to_string() const
    {
        std::string s;
        for (const auto& f : factors)
            s += "Q[t±]/(" + f.to_string() + ") ⊕ ";
        return s + "Q[t±]^" + std::to_string(free_rank);
    }
};

namespace detail
{

/// Dense Q[t] matrix of the map (columns = sources), scaled by one power of t.
inline QPolyMatrix specialized_map(const LaurentMatrix& m, const std::vector<std::size_t>& sources,
                                   const std::vector<std::size_t>& targets)
{
    std::map<std::size_t, std::size_t> si, ti;
    for (std::size_t i = 0; i < sources.size(); ++i)
        si[sources[i]] = i;
    for (std::size_t i = 0; i < targets.size(); ++i)
        ti[targets[i]] = i;
    int low = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::map<int, Rational>> terms;
    for (const auto& [key, v] : m) {
        auto sp = v.specialize();
        if (sp.empty())
            continue;
        low = std::min(low, sp.begin()->first);
        terms[{ti.at(key.second), si.at(key.first)}] = std::move(sp);
    }
    QPolyMatrix out(targets.size(), std::vector<QPoly>(sources.size()));
    for (const auto& [rc, sp] : terms) {
        std::vector<Rational> c(static_cast<std::size_t>(sp.rbegin()->first - low) + 1);
        for (const auto& [e, v] : sp)
            c[static_cast<std::size_t>(e - low)] = v;
        out[rc.first][rc.second] = QPoly(std::move(c));
    }
    return out;
}

inline QPolyMatrix multiply(const QPolyMatrix& a, const QPolyMatrix& b, std::size_t n, std::size_t k,
                            std::size_t p)
{
    QPolyMatrix c(n, std::vector<QPoly>(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero())
                continue;
            for (std::size_t l = 0; l < p; ++l)
                if (!b[j][l].is_zero())
                    c[i][l] = c[i][l] + a[i][j] * b[j][l];
        }
    return c;
}

inline std::vector<QPoly> nontrivial(const std::vector<QPoly>& diag)
{
    std::vector<QPoly> out;
    for (const auto& d : diag) {
        QPoly f = d.strip_t().monic();
        if (f.degree() > 0)
            out.push_back(f);
    }
    return out;
}

} // namespace detail

/// H1 = ker d1 / im d2 over Q[t^{+-1}] with every t_l sent to t.
inline InvariantFactors specialize_and_invariants(const LaurentMatrix& d1, const LaurentMatrix& d2,
                                                  const std::vector<std::size_t>& cells0,
                                                  const std::vector<std::size_t>& cells1,
                                                  const std::vector<std::size_t>& cells2)
{
    const std::size_t n0 = cells0.size(), n1 = cells1.size(), n2 = cells2.size();
    QPolyMatrix m1 = detail::specialized_map(d1, cells1, cells0);
    QPolyMatrix m2 = detail::specialized_map(d2, cells2, cells1);
    SmithForm s1 = smith_normal_form(m1, n0, n1, true);
    std::size_t r = s1.rank;
    QPolyMatrix y = detail::multiply(s1.column_transform_inverse, m2, n1, n1, n2);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (!y[i][j].is_zero())
                throw std::logic_error("image of the second boundary leaves the kernel of the first");
    QPolyMatrix kernel_coords(y.begin() + static_cast<std::ptrdiff_t>(r), y.end());
    SmithForm s2 = smith_normal_form(kernel_coords, n1 - r, n2);
    InvariantFactors out;
    out.factors = detail::nontrivial(s2.diagonal);
    out.free_rank = n1 - r - s2.rank;
    return out;
}

inline InvariantFactors specialize_and_invariants(const MorseComplex& mc)
{
    return specialize_and_invariants(mc.d1, mc.d2, mc.cells0, mc.cells1, mc.cells2);
}

/// Same invariants from the whole twisted Salvetti complex.
inline InvariantFactors full_complex_invariants(const SalvettiComplex& s, const TwistedComplex& t)
{
    return specialize_and_invariants(boundary_of_dimension(s, t.boundary, 1), boundary_of_dimension(s, t.boundary, 2),
                                     s.of_dimension(0), s.of_dimension(1), s.of_dimension(2));
}

} // namespace salvetti

#endif
