#ifndef SALVETTI_LINALG_HPP
#define SALVETTI_LINALG_HPP

#include "rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace salvetti
{

/// Dense row-major matrix over Q.
using RMatrix = std::vector<RVector>;

struct RowEchelon
{
    RMatrix rows;                     // nonzero rows only, reduced
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination on an m x ncols matrix.
inline RowEchelon reduced_row_echelon(RMatrix m, std::size_t ncols)
{
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[row], m[pivot]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row])
            x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < ncols; ++c)
                m[r][c] -= f * m[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const RMatrix& m, std::size_t ncols)
{
    return reduced_row_echelon(m, ncols).pivots.size();
}

/// The affine subspace {x : A x = b}, stored with an explicit parametrisation
/// x = origin + sum_j u_j directions[j], where u_j = x[free_coords[j]].
struct AffineSubspace
{
    std::size_t ambient = 0;
    RMatrix equations;         // independent rows of A, reduced
    RVector rhs;               // matching entries of b
    RPoint origin;             // zero in every free coordinate
    RMatrix directions;
    std::vector<std::size_t> free_coords;

    std::size_t dimension() const { return directions.size(); }
    std::size_t codimension() const { return ambient - directions.size(); }

    bool contains(const RPoint& x) const
    {
        for (std::size_t i = 0; i < equations.size(); ++i)
            if (dot(equations[i], x) != rhs[i])
                return false;
        return true;
    }

    RPoint point_at(const RVector& u) const
    {
        RPoint x = origin;
        for (std::size_t j = 0; j < directions.size(); ++j)
            for (std::size_t c = 0; c < ambient; ++c)
                x[c] += u[j] * directions[j][c];
        return x;
    }

    /// Coordinates u of a point x lying on the subspace.
    RVector coordinates_of(const RPoint& x) const
    {
        RVector u(free_coords.size());
        for (std::size_t j = 0; j < free_coords.size(); ++j)
            u[j] = x[free_coords[j]];
        return u;
    }

    /// Orthogonal projection, solving the normal equations exactly.
    RPoint project(const RPoint& x) const
    {
        std::size_t r = equations.size();
        if (r == 0)
            return x;
        RMatrix gram(r, RVector(r + 1));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j)
                gram[i][j] = dot(equations[i], equations[j]);
            gram[i][r] = dot(equations[i], x) - rhs[i];
        }
        RowEchelon e = reduced_row_echelon(std::move(gram), r + 1);
        RPoint p = x;
        for (std::size_t i = 0; i < r; ++i) {
            const Rational& lambda = e.rows[i][r];
            for (std::size_t c = 0; c < ambient; ++c)
                p[c] -= lambda * equations[i][c];
        }
        return p;
    }
};

/// Solves A x = b; nullopt when inconsistent.
inline std::optional<AffineSubspace> solve_affine(const RMatrix& A, const RVector& b, std::size_t n)
{
    RMatrix aug;
    aug.reserve(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        RVector row = A[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    RowEchelon e = reduced_row_echelon(std::move(aug), n + 1);
    if (!e.pivots.empty() && e.pivots.back() == n)
        return std::nullopt;

    AffineSubspace s;
    s.ambient = n;
    s.origin.assign(n, Rational(0));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        is_pivot[e.pivots[i]] = true;
        s.origin[e.pivots[i]] = e.rows[i][n];
        s.rhs.push_back(e.rows[i][n]);
        RVector eq(e.rows[i].begin(), e.rows[i].begin() + static_cast<std::ptrdiff_t>(n));
        s.equations.push_back(std::move(eq));
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RVector dir(n, Rational(0));
        dir[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            dir[e.pivots[i]] = -e.rows[i][f];
        s.directions.push_back(std::move(dir));
        s.free_coords.push_back(f);
    }
    return s;
}

inline AffineSubspace whole_space(std::size_t n)
{
    return *solve_affine({}, {}, n);
}

} // namespace salvetti

#endif
