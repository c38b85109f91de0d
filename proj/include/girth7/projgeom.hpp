#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "girth7/errors.hpp"
#include "girth7/field.hpp"

namespace girth7 {

/// A point of PG(d,q), d <= 4, in canonical form: coordinates are field
/// element indices and the first nonzero coordinate equals one.  Unused
/// trailing coordinates stay zero, so lexicographic comparison of the raw
/// array matches comparison of the coordinate tuple.
struct ProjPoint {
    std::array<std::uint32_t, 5> c{};
    std::uint8_t dim = 0;

    bool operator==(const ProjPoint& o) const {
        return dim == o.dim && c == o.c;
    }
    bool operator<(const ProjPoint& o) const {
        if (dim != o.dim) return dim < o.dim;
        return c < o.c;
    }
};

/// A hyperplane of PG(d,q) as a canonical dual vector: the point set is
/// { X : sum_i c[i] * X[i] = 0 }.
struct Hyperplane {
    std::array<std::uint32_t, 5> c{};
    std::uint8_t dim = 0;

    bool operator==(const Hyperplane& o) const {
        return dim == o.dim && c == o.c;
    }
    bool operator<(const Hyperplane& o) const {
        if (dim != o.dim) return dim < o.dim;
        return c < o.c;
    }
};

/// A line stored as its full sorted point set; pts[0] and pts[1] act as the
/// canonical generator pair, so equality of point sets equals equality of
/// generators.
struct ProjLine {
    std::vector<ProjPoint> pts;

    const ProjPoint& gen0() const { return pts[0]; }
    const ProjPoint& gen1() const { return pts[1]; }
    bool contains(const ProjPoint& p) const {
        return std::binary_search(pts.begin(), pts.end(), p);
    }
    bool operator==(const ProjLine& o) const { return pts == o.pts; }
    bool operator<(const ProjLine& o) const { return pts < o.pts; }
};

inline ProjPoint canonical_point(const FieldSpec& F,
                                 std::array<std::uint32_t, 5> c,
                                 std::uint8_t dim) {
    std::uint32_t lead = 0;
    std::uint32_t i = 0;
    for (; i <= dim; ++i)
        if (c[i] != 0) {
            lead = c[i];
            break;
        }
    if (i > dim) throw InvalidParams("zero vector is not a projective point");
    if (lead != 1) {
        const std::uint32_t s = F.inv(lead);
        for (std::uint32_t j = i; j <= dim; ++j) c[j] = F.mul(c[j], s);
    }
    for (std::uint32_t j = dim + 1; j < 5; ++j) c[j] = 0;
    return ProjPoint{c, dim};
}

inline ProjPoint make_point(const FieldSpec& F,
                            std::initializer_list<std::uint32_t> coords) {
    std::array<std::uint32_t, 5> c{};
    std::uint8_t i = 0;
    for (std::uint32_t v : coords) c[i++] = v;
    return canonical_point(F, c, static_cast<std::uint8_t>(i - 1));
}

inline Hyperplane make_hyperplane(const FieldSpec& F,
                                  std::array<std::uint32_t, 5> c,
                                  std::uint8_t dim) {
    const ProjPoint p = canonical_point(F, c, dim);
    return Hyperplane{p.c, dim};
}

/// All points of PG(d,q) in ascending lexicographic order of their canonical
/// coordinate tuples.  Count is (q^{d+1}-1)/(q-1).
inline std::vector<ProjPoint> enumerate_points(const FieldSpec& F,
                                               std::uint8_t dim) {
    const std::uint32_t q = F.q();
    std::vector<ProjPoint> out;
    for (int lead = dim; lead >= 0; --lead) {
        std::uint64_t total = 1;
        for (int i = lead + 1; i <= dim; ++i) total *= q;
        for (std::uint64_t v = 0; v < total; ++v) {
            ProjPoint p;
            p.dim = dim;
            p.c[lead] = 1;
            std::uint64_t t = v;
            for (int i = dim; i > lead; --i) {
                p.c[i] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            out.push_back(p);
        }
    }
    return out;
}

inline std::vector<Hyperplane> enumerate_hyperplanes(const FieldSpec& F,
                                                     std::uint8_t dim) {
    std::vector<Hyperplane> out;
    for (const ProjPoint& p : enumerate_points(F, dim))
        out.push_back(Hyperplane{p.c, p.dim});
    return out;
}

inline std::uint32_t dot(const FieldSpec& F, const std::array<std::uint32_t, 5>& a,
                         const std::array<std::uint32_t, 5>& b,
                         std::uint8_t dim) {
    std::uint32_t s = 0;
    for (std::uint32_t i = 0; i <= dim; ++i) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

inline bool on_hyperplane(const FieldSpec& F, const Hyperplane& h,
                          const ProjPoint& p) {
    return dot(F, h.c, p.c, p.dim) == 0;
}

inline ProjLine line_through(const FieldSpec& F, const ProjPoint& a,
                             const ProjPoint& b) {
    if (a == b) throw IdenticalPoints();
    ProjLine L;
    L.pts.reserve(F.q() + 1);
    L.pts.push_back(b);
    for (std::uint32_t lam = 0; lam < F.q(); ++lam) {
        std::array<std::uint32_t, 5> c{};
        for (std::uint32_t i = 0; i <= a.dim; ++i)
            c[i] = F.add(a.c[i], F.mul(lam, b.c[i]));
        L.pts.push_back(canonical_point(F, c, a.dim));
    }
    std::sort(L.pts.begin(), L.pts.end());
    return L;
}

namespace detail {

/// In-place reduced row echelon form; returns the rank and (optionally) the
/// pivot columns.
inline std::uint32_t rref(const FieldSpec& F,
                          std::vector<std::array<std::uint32_t, 5>>& m,
                          std::uint32_t ncols,
                          std::vector<std::uint32_t>* pivots = nullptr) {
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < ncols && rank < m.size(); ++col) {
        std::size_t sel = m.size();
        for (std::size_t r = rank; r < m.size(); ++r)
            if (m[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel == m.size()) continue;
        std::swap(m[rank], m[sel]);
        const std::uint32_t s = F.inv(m[rank][col]);
        for (std::uint32_t j = 0; j < ncols; ++j)
            m[rank][j] = F.mul(m[rank][j], s);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const std::uint32_t f = m[r][col];
            for (std::uint32_t j = 0; j < ncols; ++j)
                m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

inline std::vector<std::array<std::uint32_t, 5>> kernel_basis(
    const FieldSpec& F, std::vector<std::array<std::uint32_t, 5>> m,
    std::uint32_t ncols) {
    std::vector<std::uint32_t> pivots;
    const std::uint32_t rank = rref(F, m, ncols, &pivots);
    std::vector<bool> is_pivot(ncols, false);
    for (std::uint32_t c : pivots) is_pivot[c] = true;
    std::vector<std::array<std::uint32_t, 5>> basis;
    for (std::uint32_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::array<std::uint32_t, 5> v{};
        v[free] = 1;
        for (std::uint32_t r = 0; r < rank; ++r)
            v[pivots[r]] = F.neg(m[r][free]);
        basis.push_back(v);
    }
    return basis;
}

}  // namespace detail

inline std::uint32_t rank_of(const FieldSpec& F,
                             const std::vector<ProjPoint>& pts) {
    if (pts.empty()) return 0;
    std::vector<std::array<std::uint32_t, 5>> m;
    m.reserve(pts.size());
    for (const ProjPoint& p : pts) m.push_back(p.c);
    return detail::rref(F, m, pts.front().dim + 1u);
}

inline bool in_span(const FieldSpec& F, const std::vector<ProjPoint>& basis,
                    const ProjPoint& p) {
    std::vector<ProjPoint> ext = basis;
    ext.push_back(p);
    return rank_of(F, basis) == rank_of(F, ext);
}

inline bool collinear(const FieldSpec& F, const ProjPoint& a,
                      const ProjPoint& b, const ProjPoint& c) {
    return rank_of(F, {a, b, c}) <= 2;
}

/// Unique hyperplane through a spanning set of d points of PG(d,q).
inline Hyperplane hyperplane_through(const FieldSpec& F,
                                     const std::vector<ProjPoint>& pts) {
    std::vector<std::array<std::uint32_t, 5>> m;
    for (const ProjPoint& p : pts) m.push_back(p.c);
    const std::uint8_t dim = pts.front().dim;
    auto basis = detail::kernel_basis(F, m, dim + 1u);
    if (basis.size() != 1)
        throw InvalidParams("points do not span a unique hyperplane");
    return make_hyperplane(F, basis.front(), dim);
}

/// Plane of PG(3,q) through three non-collinear points.
inline Hyperplane plane_through(const FieldSpec& F, const ProjPoint& a,
                                const ProjPoint& b, const ProjPoint& c) {
    return hyperplane_through(F, {a, b, c});
}

inline Hyperplane plane_of_line_and_point(const FieldSpec& F,
                                          const ProjLine& L,
                                          const ProjPoint& p) {
    return plane_through(F, L.gen0(), L.gen1(), p);
}

/// Intersection line of two distinct planes of PG(3,q).
inline ProjLine plane_meet(const FieldSpec& F, const Hyperplane& a,
                           const Hyperplane& b) {
    if (a == b) throw InvalidParams("planes coincide");
    std::vector<std::array<std::uint32_t, 5>> m{a.c, b.c};
    auto basis = detail::kernel_basis(F, m, a.dim + 1u);
    if (basis.size() != 2)
        throw InvalidParams("plane intersection is not a line");
    return line_through(F, canonical_point(F, basis[0], a.dim),
                        canonical_point(F, basis[1], a.dim));
}

inline bool line_in_hyperplane(const FieldSpec& F, const ProjLine& L,
                               const Hyperplane& h) {
    return on_hyperplane(F, h, L.gen0()) && on_hyperplane(F, h, L.gen1());
}

/// Meet of a line with a hyperplane: nullopt when the line is contained,
/// otherwise the unique common point.
inline std::optional<ProjPoint> meet_line_hyperplane(const FieldSpec& F,
                                                     const ProjLine& L,
                                                     const Hyperplane& h) {
    if (line_in_hyperplane(F, L, h)) return std::nullopt;
    for (const ProjPoint& p : L.pts)
        if (on_hyperplane(F, h, p)) return p;
    throw ConstructionError("line misses a hyperplane of its own space");
}

/// Common point of two distinct lines, or nullopt for skew/non-coplanar.
inline std::optional<ProjPoint> meet_lines(const FieldSpec&, const ProjLine& a,
                                           const ProjLine& b) {
    if (a == b) throw InvalidParams("lines coincide");
    std::vector<ProjPoint> common;
    std::set_intersection(a.pts.begin(), a.pts.end(), b.pts.begin(),
                          b.pts.end(), std::back_inserter(common));
    if (common.empty()) return std::nullopt;
    return common.front();
}

inline std::vector<ProjPoint> hyperplane_points(const FieldSpec& F,
                                                const Hyperplane& h) {
    std::vector<ProjPoint> out;
    for (const ProjPoint& p : enumerate_points(F, h.dim))
        if (on_hyperplane(F, h, p)) out.push_back(p);
    return out;
}

/// The q+1 hyperplanes of PG(3,q) through a line, in enumeration order.
inline std::vector<Hyperplane> planes_through_line(const FieldSpec& F,
                                                   const ProjLine& L) {
    std::vector<Hyperplane> out;
    for (const Hyperplane& h : enumerate_hyperplanes(F, L.gen0().dim))
        if (line_in_hyperplane(F, L, h)) out.push_back(h);
    return out;
}

/// The q+1 lines through p inside the plane h (p must lie on h).
inline std::vector<ProjLine> lines_in_plane_through(const FieldSpec& F,
                                                    const Hyperplane& h,
                                                    const ProjPoint& p) {
    if (!on_hyperplane(F, h, p))
        throw InvalidParams("point is not on the plane");
    std::vector<ProjLine> out;
    for (const ProjPoint& r : hyperplane_points(F, h)) {
        if (r == p) continue;
        ProjLine L = line_through(F, p, r);
        if (r == L.gen0() || (L.gen0() == p && r == L.gen1()))
            out.push_back(std::move(L));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// quadrics
// ---------------------------------------------------------------------------

/// Quadratic form sum_{i<=j} a[i][j] X_i X_j on PG(d,q).
struct QuadraticForm {
    std::uint8_t dim = 0;
    std::array<std::array<std::uint32_t, 5>, 5> a{};

    std::uint32_t eval(const FieldSpec& F, const ProjPoint& p) const {
        std::uint32_t s = 0;
        for (std::uint32_t i = 0; i <= dim; ++i)
            for (std::uint32_t j = i; j <= dim; ++j)
                s = F.add(s, F.mul(a[i][j], F.mul(p.c[i], p.c[j])));
        return s;
    }

    /// Polar bilinear form B(u,v) = Q(u+v) - Q(u) - Q(v); works in every
    /// characteristic, including two.
    std::uint32_t bilinear(const FieldSpec& F, const ProjPoint& u,
                           const ProjPoint& v) const {
        std::uint32_t s = 0;
        for (std::uint32_t i = 0; i <= dim; ++i)
            for (std::uint32_t j = i; j <= dim; ++j) {
                const std::uint32_t t =
                    F.add(F.mul(u.c[i], v.c[j]), F.mul(u.c[j], v.c[i]));
                s = F.add(s, F.mul(a[i][j], t));
            }
        return s;
    }
};

/// The parabolic quadric Q(4,q): X0^2 + X1 X2 + X3 X4 = 0.
inline QuadraticForm parabolic_q4_form() {
    QuadraticForm f;
    f.dim = 4;
    f.a[0][0] = 1;
    f.a[1][2] = 1;
    f.a[3][4] = 1;
    return f;
}

inline std::vector<ProjPoint> quadric_points(const FieldSpec& F,
                                             const QuadraticForm& form) {
    std::vector<ProjPoint> out;
    for (const ProjPoint& p : enumerate_points(F, form.dim))
        if (form.eval(F, p) == 0) out.push_back(p);
    return out;
}

/// All lines fully contained in the quadric.  A line uv lies on the quadric
/// iff Q(u) = Q(v) = 0 and B(u,v) = 0; each line is emitted once, keyed by
/// its two lexicographically least points.
inline std::vector<ProjLine> quadric_lines(const FieldSpec& F,
                                           const QuadraticForm& form) {
    const std::vector<ProjPoint> pts = quadric_points(F, form);
    std::vector<ProjLine> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (form.bilinear(F, pts[i], pts[j]) != 0) continue;
            ProjLine L = line_through(F, pts[i], pts[j]);
            if (L.gen0() == pts[i] && L.gen1() == pts[j])
                out.push_back(std::move(L));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Split the line set of a hyperbolic quadric Q+(3,q) into its two rulings:
/// the class of lines[0] consists of lines[0] and every line disjoint from
/// it.  Throws NotAGrid unless the split is a genuine (q+1)+(q+1) grid.
inline std::array<std::vector<ProjLine>, 2> two_rulings(
    const FieldSpec& F, const std::vector<ProjLine>& lines) {
    if (lines.empty()) throw NotAGrid("empty line set");
    std::array<std::vector<ProjLine>, 2> cls;
    cls[0].push_back(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (meet_lines(F, lines[0], lines[i]).has_value())
            cls[1].push_back(lines[i]);
        else
            cls[0].push_back(lines[i]);
    }
    if (cls[0].size() != cls[1].size())
        throw NotAGrid("rulings have unequal sizes");
    for (int k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < cls[k].size(); ++i)
            for (std::size_t j = i + 1; j < cls[k].size(); ++j)
                if (meet_lines(F, cls[k][i], cls[k][j]).has_value())
                    throw NotAGrid("lines within one ruling meet");
    for (const ProjLine& a : cls[0])
        for (const ProjLine& b : cls[1])
            if (!meet_lines(F, a, b).has_value())
                throw NotAGrid("lines of opposite rulings are skew");
    return cls;
}

/// cell[i][j] = the unique common point of rowLines[i] and colLines[j].
inline std::vector<std::vector<ProjPoint>> grid_cells(
    const FieldSpec& F, const std::vector<ProjLine>& rowLines,
    const std::vector<ProjLine>& colLines) {
    std::vector<std::vector<ProjPoint>> cells;
    for (const ProjLine& r : rowLines) {
        std::vector<ProjPoint> row;
        for (const ProjLine& c : colLines) {
            if (r == c) throw NotAGrid("a line appears as both row and column");
            auto m = meet_lines(F, r, c);
            if (!m) throw NotAGrid("row and column line do not meet");
            row.push_back(*m);
        }
        cells.push_back(std::move(row));
    }
    return cells;
}

// ---------------------------------------------------------------------------
// symplectic geometry of PG(3,q)
// ---------------------------------------------------------------------------

/// Alternating form a0 b1 - a1 b0 + a2 b3 - a3 b2.
inline std::uint32_t symplectic_bilinear(const FieldSpec& F,
                                         const ProjPoint& a,
                                         const ProjPoint& b) {
    std::uint32_t s = F.sub(F.mul(a.c[0], b.c[1]), F.mul(a.c[1], b.c[0]));
    s = F.add(s, F.sub(F.mul(a.c[2], b.c[3]), F.mul(a.c[3], b.c[2])));
    return s;
}

/// Polar plane of a point under the symplectic polarity.
inline Hyperplane symplectic_polar(const FieldSpec& F, const ProjPoint& p) {
    return make_hyperplane(
        F, {p.c[1], F.neg(p.c[0]), p.c[3], F.neg(p.c[2]), 0}, 3);
}

/// Pole of a plane under the symplectic polarity.
inline ProjPoint symplectic_pole(const FieldSpec& F, const Hyperplane& h) {
    return canonical_point(
        F, {h.c[1], F.neg(h.c[0]), h.c[3], F.neg(h.c[2]), 0}, 3);
}

inline bool is_self_conjugate(const FieldSpec& F, const ProjLine& L) {
    return symplectic_bilinear(F, L.gen0(), L.gen1()) == 0;
}

/// All totally isotropic lines of the symplectic polarity: the line set of
/// the generalized quadrangle W(q).  Count is (q^2+1)(q+1).
inline std::vector<ProjLine> symplectic_lines(const FieldSpec& F) {
    const std::vector<ProjPoint> pts = enumerate_points(F, 3);
    std::vector<ProjLine> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (symplectic_bilinear(F, pts[i], pts[j]) != 0) continue;
            ProjLine L = line_through(F, pts[i], pts[j]);
            if (L.gen0() == pts[i] && L.gen1() == pts[j])
                out.push_back(std::move(L));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// conics and arcs
// ---------------------------------------------------------------------------

/// The standard conic of the plane X0 = 0 in PG(3,q):
/// { (0 : 1 : t : t^2) } for t in GF(q), plus (0 : 0 : 0 : 1).
/// For even q every tangent passes through the nucleus (0 : 0 : 1 : 0).
struct ConicSpec {
    Hyperplane ambient;
    std::vector<ProjPoint> points;  // q parametrized points, then infinity
    ProjPoint infinity_pt;
    std::optional<ProjPoint> nucleus;
};

inline ConicSpec standard_conic(const FieldSpec& F) {
    ConicSpec c;
    c.ambient = make_hyperplane(F, {1, 0, 0, 0, 0}, 3);
    for (std::uint32_t t = 0; t < F.q(); ++t)
        c.points.push_back(
            make_point(F, {0, 1, t, F.mul(t, t)}));
    c.infinity_pt = make_point(F, {0, 0, 0, 1});
    c.points.push_back(c.infinity_pt);
    if (F.p() == 2) c.nucleus = make_point(F, {0, 0, 1, 0});
    return c;
}

/// True iff no three of the given points are collinear.
inline bool is_arc(const FieldSpec& F, const std::vector<ProjPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (collinear(F, pts[i], pts[j], pts[k])) return false;
    return true;
}

/// The unique tangent to an arc at one of its points, within a plane: the
/// line through p meeting the arc only at p.
inline ProjLine tangent_in_plane(const FieldSpec& F, const Hyperplane& plane,
                                 const std::vector<ProjPoint>& arc,
                                 const ProjPoint& p) {
    std::optional<ProjLine> tangent;
    for (const ProjLine& L : lines_in_plane_through(F, plane, p)) {
        std::size_t hits = 0;
        for (const ProjPoint& a : arc)
            if (L.contains(a)) ++hits;
        if (hits == 1) {
            if (tangent) throw ConstructionError("tangent is not unique");
            tangent = L;
        }
    }
    if (!tangent) throw ConstructionError("no tangent line at arc point");
    return *tangent;
}

// ---------------------------------------------------------------------------
// labels
// ---------------------------------------------------------------------------

inline std::string point_label(const ProjPoint& p) {
    std::string s;
    for (std::uint32_t i = 0; i <= p.dim; ++i) {
        if (i) s += ':';
        s += std::to_string(p.c[i]);
    }
    return s;
}

inline std::string line_label(const ProjLine& L) {
    return point_label(L.gen0()) + "|" + point_label(L.gen1());
}

inline std::string plane_label(const Hyperplane& h) {
    std::string s = "[";
    for (std::uint32_t i = 0; i <= h.dim; ++i) {
        if (i) s += ':';
        s += std::to_string(h.c[i]);
    }
    return s + "]";
}

}  // namespace girth7
