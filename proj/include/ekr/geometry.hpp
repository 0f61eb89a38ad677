#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/gf.hpp"

namespace ekr {

using Triple = std::array<int, 3>;

// Point of PG(2,q): a 1-space of GF(q)^3, stored as the unique representative
// whose first nonzero coordinate is 1.
struct ProjPoint {
    Triple coords;
    int id;
};

// Line of PG(2,q), stored by its normalized dual triple: the point set
// {x : x0*d0 + x1*d1 + x2*d2 = 0}.
struct ProjLine {
    Triple dual;
    int id;
};

// Position classes of an ordered point quadruple (alpha,beta,gamma,delta).
// The classifier applies the first matching rule, so the tags partition
// all ordered quadruples.
enum class QuadClass {
    Degenerate,      // alpha == beta or gamma == delta
    Identical,       // alpha == gamma and beta == delta
    Inconsistent,    // alpha == gamma xor beta == delta
    AllCollinear,    // the distinct members all lie on one line
    Crossed,         // alpha == delta or beta == gamma, trio not collinear
    ThreeCollinear,  // four distinct points, exactly three collinear
    GeneralPosition, // four distinct points, no three collinear
};

inline const char* quad_class_name(QuadClass c) {
    switch (c) {
        case QuadClass::Degenerate: return "Degenerate";
        case QuadClass::Identical: return "Identical";
        case QuadClass::Inconsistent: return "Inconsistent";
        case QuadClass::AllCollinear: return "AllCollinear";
        case QuadClass::Crossed: return "Crossed";
        case QuadClass::ThreeCollinear: return "ThreeCollinear";
        case QuadClass::GeneralPosition: return "GeneralPosition";
    }
    return "?";
}

// PG(2,q): q^2+q+1 points and lines with dense ids in normalization-
// lexicographic order, full incidence and join/meet tables. Immutable.
class Plane {
public:
    explicit Plane(Field field) : field_(std::move(field)) {
        const int q = field_.q();
        n_ = q * q + q + 1;
        build();
    }

    const Field& field() const { return field_; }
    int q() const { return field_.q(); }
    int n() const { return n_; } // q^2 + q + 1

    const std::vector<ProjPoint>& points() const { return points_; }
    const std::vector<ProjLine>& lines() const { return lines_; }

    bool incident(int point, int line) const { return incidence_[point * n_ + line] != 0; }
    const std::vector<int>& points_on_line(int line) const { return points_on_line_[line]; }
    const std::vector<int>& lines_through_point(int point) const {
        return lines_through_point_[point];
    }

    // Line through two distinct points.
    int join(int a, int b) const {
        if (a == b) throw EqualPoints("join: equal points");
        return join_[a * n_ + b];
    }

    // Intersection point of two distinct lines.
    int meet(int l, int m) const {
        if (l == m) throw EqualLines("meet: equal lines");
        return meet_[l * n_ + m];
    }

    Triple normalize(Triple t) const {
        for (int i = 0; i < 3; ++i) {
            if (t[i] != 0) {
                int s = field_.inv(t[i]);
                for (int j = 0; j < 3; ++j) t[j] = field_.mul(s, t[j]);
                return t;
            }
        }
        return t; // zero triple stays zero; callers must not pass it
    }

    int code_of(const Triple& t) const {
        const int q = field_.q();
        return (t[0] * q + t[1]) * q + t[2];
    }

    // id lookup from arbitrary (nonzero) coordinates / dual coordinates.
    int point_id(Triple coords) const { return point_by_code_[code_of(normalize(coords))]; }
    int line_id(Triple dual) const { return line_by_code_[code_of(normalize(dual))]; }

    // code -> id table for already-normalized triples (group hot path).
    const std::vector<int>& point_by_code() const { return point_by_code_; }
    const std::vector<int>& line_by_code() const { return line_by_code_; }

    bool collinear(int a, int b, int c) const {
        // determinant test; true as well when two of the points coincide
        const Triple& x = points_[a].coords;
        const Triple& y = points_[b].coords;
        const Triple& z = points_[c].coords;
        const Field& F = field_;
        int d = F.mul(x[0], F.sub(F.mul(y[1], z[2]), F.mul(y[2], z[1])));
        d = F.sub(d, F.mul(x[1], F.sub(F.mul(y[0], z[2]), F.mul(y[2], z[0]))));
        d = F.add(d, F.mul(x[2], F.sub(F.mul(y[0], z[1]), F.mul(y[1], z[0]))));
        return d == 0;
    }

    QuadClass classify_quadruple(int a, int b, int c, int d) const {
        if (a == b || c == d) return QuadClass::Degenerate;
        if (a == c && b == d) return QuadClass::Identical;
        if (a == c || b == d) return QuadClass::Inconsistent;
        // remaining possible coincidences: a == d and/or b == c
        int u[4] = {a, b, c, d};
        int m = 0;
        int distinct[4];
        for (int x : u) {
            bool seen = false;
            for (int i = 0; i < m; ++i)
                if (distinct[i] == x) seen = true;
            if (!seen) distinct[m++] = x;
        }
        bool all_on_line = false;
        if (m == 2) {
            all_on_line = true;
        } else if (m == 3) {
            all_on_line = collinear(distinct[0], distinct[1], distinct[2]);
        } else {
            all_on_line = collinear(distinct[0], distinct[1], distinct[2]) &&
                          collinear(distinct[0], distinct[1], distinct[3]);
        }
        if (all_on_line) return QuadClass::AllCollinear;
        if (a == d || b == c) return QuadClass::Crossed;
        // here all four are distinct and not all collinear
        if (collinear(a, b, c) || collinear(a, b, d) || collinear(a, c, d) ||
            collinear(b, c, d))
            return QuadClass::ThreeCollinear;
        return QuadClass::GeneralPosition;
    }

private:
    Field field_;
    int n_;
    std::vector<ProjPoint> points_;
    std::vector<ProjLine> lines_;
    std::vector<std::uint8_t> incidence_;
    std::vector<std::vector<int>> points_on_line_, lines_through_point_;
    std::vector<int> join_, meet_;
    std::vector<int> point_by_code_, line_by_code_;

    Triple cross(const Triple& x, const Triple& y) const {
        const Field& F = field_;
        return {F.sub(F.mul(x[1], y[2]), F.mul(x[2], y[1])),
                F.sub(F.mul(x[2], y[0]), F.mul(x[0], y[2])),
                F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]))};
    }

    void build() {
        const int q = field_.q();
        const int codes = q * q * q;
        point_by_code_.assign(codes, -1);
        line_by_code_.assign(codes, -1);
        for (int code = 0; code < codes; ++code) {
            Triple t = {code / (q * q), (code / q) % q, code % q};
            if (t[0] == 0 && t[1] == 0 && t[2] == 0) continue;
            int lead = t[0] != 0 ? t[0] : (t[1] != 0 ? t[1] : t[2]);
            if (lead != 1) continue; // not the normalized representative
            int id = static_cast<int>(points_.size());
            points_.push_back({t, id});
            lines_.push_back({t, id}); // same normalized triples enumerate the duals
            point_by_code_[code] = id;
            line_by_code_[code] = id;
        }
        incidence_.assign(n_ * n_, 0);
        points_on_line_.assign(n_, {});
        lines_through_point_.assign(n_, {});
        for (int p = 0; p < n_; ++p)
            for (int l = 0; l < n_; ++l) {
                const Triple& x = points_[p].coords;
                const Triple& d = lines_[l].dual;
                int dot = field_.add(field_.add(field_.mul(x[0], d[0]), field_.mul(x[1], d[1])),
                                     field_.mul(x[2], d[2]));
                if (dot == 0) {
                    incidence_[p * n_ + l] = 1;
                    points_on_line_[l].push_back(p);
                    lines_through_point_[p].push_back(l);
                }
            }
        join_.assign(n_ * n_, -1);
        meet_.assign(n_ * n_, -1);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                if (a == b) continue;
                Triple w = cross(points_[a].coords, points_[b].coords);
                join_[a * n_ + b] = line_by_code_[code_of(normalize(w))];
                meet_[a * n_ + b] = point_by_code_[code_of(normalize(w))];
            }
    }
};

inline Plane plane_new(const Field& field) { return Plane(field); }

} // namespace ekr
