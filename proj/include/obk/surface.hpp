#pragma once

// Page surfaces S_{g,n} with a fixed curve atlas, first-homology bases,
// the intersection pairing and the geometric-disjointness table.
//
// Homology basis of S_{g,n}, in order: (a1, b1, ..., ag, bg, e1, ..., e_{n-1}).
// Curve classes:
//   a<i>, b<i>   handle curves, the corresponding basis vectors;
//   d<j>         boundary-parallel curves, e_j for j < n and -(e1+...+e_{n-1})
//                for j = n (the boundary classes sum to zero);
//   s<j>         the belt curve created when boundary j appeared through a
//                stabilization, class e_{j-1} (valid for 2 <= j <= n).
// Appending a boundary component re-derives the d<n> relation positionally,
// so d<n> on a page with n boundaries and d<n> on its extension name
// different isotopy classes.

#include "obk/exact.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

struct Surface {
    int genus = 0;
    int boundary = 1; // pages of open books have nonempty boundary

    bool operator==(const Surface&) const = default;
};

inline bool surface_valid(Surface s) { return s.genus >= 0 && s.boundary >= 1; }

inline int euler_characteristic(Surface s) { return 2 - 2 * s.genus - s.boundary; }

inline int homology_rank(Surface s) { return 2 * s.genus + s.boundary - 1; }

enum class CurveKind { A, B, D, S };

struct AtlasCurve {
    CurveKind kind = CurveKind::A;
    int index = 1; // 1-based

    bool operator==(const AtlasCurve&) const = default;
};

inline bool curve_valid(Surface s, AtlasCurve c) {
    switch (c.kind) {
    case CurveKind::A:
    case CurveKind::B:
        return c.index >= 1 && c.index <= s.genus;
    case CurveKind::D:
        return c.index >= 1 && c.index <= s.boundary;
    case CurveKind::S:
        return c.index >= 2 && c.index <= s.boundary;
    }
    return false;
}

inline std::string format_curve(AtlasCurve c) {
    static const char* letters = "abds";
    return std::string(1, letters[static_cast<int>(c.kind)]) + std::to_string(c.index);
}

/// Parses `a<i>`, `b<i>`, `d<j>` or `s<j>` (lowercase, 1-based).
inline AtlasCurve parse_curve(std::string_view token) {
    if (token.size() < 2) throw std::invalid_argument("curve token too short: '" + std::string(token) + "'");
    CurveKind kind;
    switch (token[0]) {
    case 'a': kind = CurveKind::A; break;
    case 'b': kind = CurveKind::B; break;
    case 'd': kind = CurveKind::D; break;
    case 's': kind = CurveKind::S; break;
    default:
        throw std::invalid_argument("unknown curve letter in token '" + std::string(token) + "'");
    }
    int idx = 0;
    for (std::size_t k = 1; k < token.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(token[k])))
            throw std::invalid_argument("bad curve index in token '" + std::string(token) + "'");
        idx = idx * 10 + (token[k] - '0');
        if (idx > 1'000'000) throw std::invalid_argument("curve index out of range");
    }
    if (idx < 1) throw std::invalid_argument("curve index must be >= 1 in '" + std::string(token) + "'");
    return AtlasCurve{kind, idx};
}

using HomologyVector = std::vector<Int>;

inline HomologyVector curve_class(Surface s, AtlasCurve c) {
    if (!curve_valid(s, c))
        throw std::out_of_range("curve " + format_curve(c) + " invalid on surface g=" +
                                std::to_string(s.genus) + " n=" + std::to_string(s.boundary));
    HomologyVector v(static_cast<std::size_t>(homology_rank(s)));
    const int g = s.genus, n = s.boundary;
    switch (c.kind) {
    case CurveKind::A:
        v[static_cast<std::size_t>(2 * (c.index - 1))] = 1;
        break;
    case CurveKind::B:
        v[static_cast<std::size_t>(2 * (c.index - 1) + 1)] = 1;
        break;
    case CurveKind::D:
        if (c.index < n) {
            v[static_cast<std::size_t>(2 * g + c.index - 1)] = 1;
        } else {
            for (int j = 0; j < n - 1; ++j) v[static_cast<std::size_t>(2 * g + j)] = -1;
        }
        break;
    case CurveKind::S:
        v[static_cast<std::size_t>(2 * g + c.index - 2)] = 1;
        break;
    }
    return v;
}

/// Matrix J of the skew intersection form: <a_i, b_i> = +1, e_j null.
inline IntMatrix intersection_form_matrix(Surface s) {
    const int r = homology_rank(s);
    IntMatrix j(r, r);
    for (int i = 0; i < s.genus; ++i) {
        j(2 * i, 2 * i + 1) = 1;
        j(2 * i + 1, 2 * i) = -1;
    }
    return j;
}

inline Int intersection_number(Surface s, const HomologyVector& x, const HomologyVector& y) {
    const std::size_t r = static_cast<std::size_t>(homology_rank(s));
    if (x.size() != r || y.size() != r)
        throw std::invalid_argument("intersection_number: coordinate length mismatch");
    Int acc = 0;
    for (int i = 0; i < s.genus; ++i) {
        acc += x[static_cast<std::size_t>(2 * i)] * y[static_cast<std::size_t>(2 * i + 1)];
        acc -= x[static_cast<std::size_t>(2 * i + 1)] * y[static_cast<std::size_t>(2 * i)];
    }
    return acc;
}

/// Fixed table: the only atlas pair realized with essential intersection is
/// {a<i>, b<i>} for equal i.  Parallel copies of one curve count as disjoint.
inline bool geometrically_disjoint(AtlasCurve c1, AtlasCurve c2) {
    const bool ab = (c1.kind == CurveKind::A && c2.kind == CurveKind::B) ||
                    (c1.kind == CurveKind::B && c2.kind == CurveKind::A);
    return !(ab && c1.index == c2.index);
}

} // namespace obk
