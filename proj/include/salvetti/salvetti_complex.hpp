#ifndef SALVETTI_SALVETTI_COMPLEX_HPP
#define SALVETTI_SALVETTI_COMPLEX_HPP

#include "projection.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace salvetti
{

/// The cell <C,F> for a chamber C and a face F of C; its dimension is codim F.
struct SalvettiCell
{
    std::size_t chamber;
    std::size_t face;
    std::size_t dim;
};

class SalvettiComplex
{
public:
    SalvettiComplex() = default;

    static SalvettiComplex build(const Geometry& g)
    {
        SalvettiComplex s;
        const FacePoset& fp = g.faces;
        for (std::size_t c : fp.chambers())
            for (std::size_t f : fp.closure(c))
                s.cells_.push_back(SalvettiCell{c, f, fp[f].codim});
        std::sort(s.cells_.begin(), s.cells_.end(), [](const SalvettiCell& a, const SalvettiCell& b) {
            return std::tie(a.dim, a.face, a.chamber) < std::tie(b.dim, b.face, b.chamber);
        });
        s.by_dim_.assign(g.dimension() + 1, {});
        for (std::size_t i = 0; i < s.cells_.size(); ++i) {
            s.index_[{s.cells_[i].chamber, s.cells_[i].face}] = i;
            s.by_dim_[s.cells_[i].dim].push_back(i);
        }
        s.boundary_.assign(s.cells_.size(), {});
        s.coboundary_.assign(s.cells_.size(), {});
        for (std::size_t i = 0; i < s.cells_.size(); ++i) {
            const auto& [d, gface, dim] = s.cells_[i];
            for (std::size_t f : fp.lower_covers(gface)) {
                std::size_t j = s.at(fp.project_face(d, f), f);
                s.boundary_[i].push_back(j);
                s.coboundary_[j].push_back(i);
            }
        }
        for (auto& v : s.boundary_)
            std::sort(v.begin(), v.end());
        for (auto& v : s.coboundary_)
            std::sort(v.begin(), v.end());
        for (const auto& c : s.cells_)
            s.labels_.push_back("C" + fp.label(c.chamber) + "|F" + fp.label(c.face));
        return s;
    }

    std::size_t size() const { return cells_.size(); }
    const SalvettiCell& operator[](std::size_t i) const { return cells_[i]; }
    const std::vector<SalvettiCell>& cells() const { return cells_; }
    std::size_t top_dimension() const { return by_dim_.empty() ? 0 : by_dim_.size() - 1; }

    /// Cell ids of the given dimension, in id order.
    const std::vector<std::size_t>& of_dimension(std::size_t k) const
    {
        static const std::vector<std::size_t> none;
        return k < by_dim_.size() ? by_dim_[k] : none;
    }

    std::optional<std::size_t> find(std::size_t chamber, std::size_t face) const
    {
        auto it = index_.find({chamber, face});
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t at(std::size_t chamber, std::size_t face) const
    {
        auto i = find(chamber, face);
        if (!i)
            throw std::logic_error("no such Salvetti cell");
        return *i;
    }

    /// Codimension-one cells in the boundary.
    const std::vector<std::size_t>& boundary(std::size_t i) const { return boundary_[i]; }
    const std::vector<std::size_t>& coboundary(std::size_t i) const { return coboundary_[i]; }

    bool in_boundary(std::size_t low, std::size_t high) const
    {
        return std::binary_search(boundary_[high].begin(), boundary_[high].end(), low);
    }

    /// "C<sign of chamber>|F<sign of face>"
    const std::string& label(std::size_t i) const { return labels_[i]; }

    /// Alternating sum of cell counts.
    long euler_characteristic() const
    {
        long chi = 0;
        for (std::size_t k = 0; k < by_dim_.size(); ++k)
            chi += (k % 2 ? -1 : 1) * static_cast<long>(by_dim_[k].size());
        return chi;
    }

private:
    std::vector<SalvettiCell> cells_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
    std::vector<std::vector<std::size_t>> boundary_, coboundary_;
    std::vector<std::string> labels_;
};

} // namespace salvetti

#endif
