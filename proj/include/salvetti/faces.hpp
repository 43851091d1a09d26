#ifndef SALVETTI_FACES_HPP
#define SALVETTI_FACES_HPP

#include "arrangement.hpp"
#include "feasibility.hpp"
#include "flats.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace salvetti
{

/// Entries in {-1, 0, +1}, one per hyperplane. The lexicographic order of
/// the vector is the order - < 0 < + used for tie-breaks.
using SignVector = std::vector<std::int8_t>;

inline SignVector sign_vector(const Arrangement& a, const RPoint& x)
{
    SignVector s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        s[i] = static_cast<std::int8_t>(a[i].side(x));
    return s;
}

inline std::string to_string(const SignVector& s)
{
    std::string out;
    for (auto v : s)
        out += v > 0 ? '+' : v < 0 ? '-' : '0';
    return out;
}

inline IndexSet zero_set(const SignVector& s)
{
    IndexSet z;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == 0)
            z.insert(i);
    return z;
}

/// F precedes-or-equals G (closed F contains closed G): G is obtained from F
/// by zeroing some entries.
inline bool sign_relation(const SignVector& f, const SignVector& g)
{
    for (std::size_t i = 0; i < f.size(); ++i)
        if (g[i] != 0 && g[i] != f[i])
            return false;
    return true;
}

struct Face
{
    SignVector sign;
    RPoint witness;     // in the relative interior
    IndexSet support;   // hyperplanes containing the face
    std::size_t codim = 0;
    std::size_t flat = 0;  // index of |F| in the flat lattice

    bool is_chamber() const { return support.empty(); }
};

namespace detail
{

inline RVector moment_point(std::size_t k, long lambda)
{
    RVector u(k);
    Rational p = 1;
    for (std::size_t j = 0; j < k; ++j) {
        p *= lambda;
        u[j] = p;
    }
    return u;
}

inline std::optional<RVector> realize(const Arrangement& a, const SignVector& s)
{
    std::vector<StrictInequality> sys;
    for (std::size_t i = 0; i < a.size(); ++i) {
        RVector c = a[i].normal;
        for (auto& v : c)
            v *= s[i];
        sys.push_back({std::move(c), a[i].offset * s[i]});
    }
    return strict_feasible_point(std::move(sys), a.dimension());
}

} // namespace detail

/// Chambers of an arrangement, each with an interior witness, by BFS over
/// wall crossings from a point off every hyperplane.
inline std::vector<std::pair<SignVector, RPoint>> enumerate_chambers(const Arrangement& a)
{
    const std::size_t k = a.dimension();
    RVector seed;
    for (long lambda = 1;; ++lambda) {
        seed = detail::moment_point(k, lambda);
        bool off = true;
        for (const auto& h : a.hyperplanes())
            off = off && h.side(seed) != 0;
        if (off)
            break;
    }

    std::vector<std::pair<SignVector, RPoint>> out;
    std::set<SignVector> seen;
    std::deque<std::size_t> queue;
    SignVector s0 = sign_vector(a, seed);
    seen.insert(s0);
    out.emplace_back(s0, seed);
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < a.size(); ++j) {
            SignVector s = out[cur].first;
            s[j] = static_cast<std::int8_t>(-s[j]);
            if (seen.count(s))
                continue;
            auto w = detail::realize(a, s);
            if (!w)
                continue;
            seen.insert(s);
            out.emplace_back(std::move(s), std::move(*w));
            queue.push_back(out.size() - 1);
        }
    }
    return out;
}

class FacePoset
{
public:
    FacePoset() = default;

    /// For every flat X, the chambers of the arrangement induced on X give
    /// the faces with affine span X.
    static FacePoset enumerate(const Arrangement& a, const FlatLattice& flats)
    {
        FacePoset p;
        p.m_ = a.size();
        for (std::size_t x = 0; x < flats.size(); ++x) {
            Contraction c = contract(a, flats[x]);
            auto chambers = enumerate_chambers(c.arrangement);
            for (auto& [sig, u] : chambers) {
                Face f;
                f.witness = flats[x].space.point_at(u);
                f.sign = sign_vector(a, f.witness);
                f.support = flats[x].support;
                f.codim = flats[x].codim;
                f.flat = x;
                if (zero_set(f.sign) != f.support)
                    throw std::logic_error("face witness left its flat");
                p.faces_.push_back(std::move(f));
            }
            p.per_flat_.push_back(chambers.size());
        }
        std::sort(p.faces_.begin(), p.faces_.end(), [](const Face& f, const Face& g) {
            if (f.codim != g.codim)
                return f.codim < g.codim;
            return f.sign < g.sign;
        });
        p.build_indices();
        return p;
    }

    std::size_t size() const { return faces_.size(); }
    std::size_t hyperplanes() const { return m_; }
    const Face& operator[](std::size_t i) const { return faces_[i]; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<std::size_t>& chambers() const { return chambers_; }
    /// Number of faces whose span is the given flat.
    std::size_t faces_on_flat(std::size_t flat) const { return per_flat_[flat]; }

    std::optional<std::size_t> find(const SignVector& s) const
    {
        auto it = index_.find(s);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t at(const SignVector& s) const
    {
        auto f = find(s);
        if (!f)
            throw std::logic_error("sign vector is not a face: " + to_string(s));
        return *f;
    }

    /// F precedes-or-equals G, i.e. closed F contains G.
    bool relation(std::size_t f, std::size_t g) const { return sign_relation(faces_[f].sign, faces_[g].sign); }

    const std::vector<std::size_t>& upper_covers(std::size_t f) const { return up_[f]; }
    const std::vector<std::size_t>& lower_covers(std::size_t f) const { return down_[f]; }

    /// All faces G with C precedes-or-equals G.
    std::vector<std::size_t> closure(std::size_t c) const
    {
        std::vector<std::size_t> out;
        for (std::size_t g = 0; g < faces_.size(); ++g)
            if (relation(c, g))
                out.push_back(g);
        return out;
    }

    /// C.F: the chamber adjacent to F on the side of C.
    std::size_t project_face(std::size_t c, std::size_t f) const
    {
        SignVector s = faces_[f].sign;
        for (std::size_t i : faces_[f].support.elements())
            s[i] = faces_[c].sign[i];
        return at(s);
    }

    /// C^F: C reflected through F. Requires C to precede F.
    std::size_t opposite(std::size_t c, std::size_t f) const
    {
        if (!relation(c, f))
            throw std::invalid_argument("opposite: chamber is not incident to the face");
        SignVector s = faces_[c].sign;
        for (std::size_t i : faces_[f].support.elements())
            s[i] = static_cast<std::int8_t>(-s[i]);
        return at(s);
    }

    IndexSet separators(std::size_t c, std::size_t d) const
    {
        IndexSet s;
        for (std::size_t i = 0; i < m_; ++i)
            if (faces_[c].sign[i] != faces_[d].sign[i])
                s.insert(i);
        return s;
    }

    IndexSet walls(std::size_t c) const
    {
        IndexSet w;
        for (std::size_t g : up_[c])
            w = w | faces_[g].support;
        return w;
    }

    std::string label(std::size_t f) const { return to_string(faces_[f].sign); }

private:
    void build_indices()
    {
        up_.assign(faces_.size(), {});
        down_.assign(faces_.size(), {});
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            index_[faces_[i].sign] = i;
            if (faces_[i].is_chamber())
                chambers_.push_back(i);
        }
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            for (std::size_t g = f + 1; g < faces_.size(); ++g) {
                if (faces_[g].codim != faces_[f].codim + 1)
                    continue;
                if (relation(f, g)) {
                    up_[f].push_back(g);
                    down_[g].push_back(f);
                }
            }
        }
    }

    std::size_t m_ = 0;
    std::vector<Face> faces_;
    std::vector<std::size_t> chambers_;
    std::vector<std::size_t> per_flat_;
    std::map<SignVector, std::size_t> index_;
    std::vector<std::vector<std::size_t>> up_, down_;
};

} // namespace salvetti

#endif
