#pragma once

// Signed Dehn-twist words acting on page homology.
//
// A positive twist about a curve with class c acts on absolute H_1 by
//   x |-> x + <x, c> c,          i.e.  A = I + sign * c (Jc)^T.
// Relative H_1 is carried in the basis dual to the absolute one under the
// perfect pairing, where the action is A^{-T}.  The variation map sends a
// relative class y to phi(y) - y in absolute H_1; for a single twist it is
// the outer product sign * c c^T, and words compose by
//   V(u then v) = V(v) * R(u) + V(u)
// with R the relative action.  The cokernel of a word's variation matrix
// presents H_1 of the associated open-book 3-manifold.

#include "obk/exact.hpp"
#include "obk/surface.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

struct SignedTwist {
    AtlasCurve curve;
    int sign = 1; // +1 or -1

    bool operator==(const SignedTwist&) const = default;
};

/// Ordered twist word; the leftmost twist is applied first.
struct TwistWord {
    std::vector<SignedTwist> twists;

    bool operator==(const TwistWord&) const = default;
    std::size_t size() const { return twists.size(); }
    bool empty() const { return twists.empty(); }
};

namespace detail {

inline IntMatrix rank_one_update(Surface s, const HomologyVector& c, int sign, bool relative) {
    const int r = homology_rank(s);
    IntMatrix j = intersection_form_matrix(s);
    HomologyVector jc(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        Int acc = 0;
        for (int k = 0; k < r; ++k) acc += j(i, k) * c[static_cast<std::size_t>(k)];
        jc[static_cast<std::size_t>(i)] = acc;
    }
    // absolute: I + sign * c (Jc)^T;  relative (dual basis): I - sign * (Jc) c^T
    IntMatrix m = IntMatrix::identity(r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            if (relative)
                m(i, k) -= sign * jc[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k)];
            else
                m(i, k) += sign * c[static_cast<std::size_t>(i)] * jc[static_cast<std::size_t>(k)];
        }
    return m;
}

} // namespace detail

inline IntMatrix twist_action_abs(Surface s, SignedTwist t) {
    if (t.sign != 1 && t.sign != -1) throw std::invalid_argument("twist sign must be +1 or -1");
    return detail::rank_one_update(s, curve_class(s, t.curve), t.sign, /*relative=*/false);
}

inline IntMatrix twist_action_rel(Surface s, SignedTwist t) {
    if (t.sign != 1 && t.sign != -1) throw std::invalid_argument("twist sign must be +1 or -1");
    return detail::rank_one_update(s, curve_class(s, t.curve), t.sign, /*relative=*/true);
}

inline IntMatrix word_action_abs(Surface s, const TwistWord& w) {
    IntMatrix a = IntMatrix::identity(homology_rank(s));
    for (const SignedTwist& t : w.twists) a = twist_action_abs(s, t) * a;
    return a;
}

inline IntMatrix word_action_rel(Surface s, const TwistWord& w) {
    IntMatrix r = IntMatrix::identity(homology_rank(s));
    for (const SignedTwist& t : w.twists) r = twist_action_rel(s, t) * r;
    return r;
}

/// Variation matrix of a word: relative (dual-basis) coordinates in,
/// absolute coordinates out.
inline IntMatrix word_variation(Surface s, const TwistWord& w) {
    const int rank = homology_rank(s);
    IntMatrix v(rank, rank);
    IntMatrix rel = IntMatrix::identity(rank);
    for (const SignedTwist& t : w.twists) {
        const HomologyVector c = curve_class(s, t.curve);
        // V <- sign * (c c^T) * rel + V ;  rel <- R_t * rel
        for (int i = 0; i < rank; ++i) {
            if (c[static_cast<std::size_t>(i)] == 0) continue;
            for (int k = 0; k < rank; ++k) {
                Int acc = 0;
                for (int m = 0; m < rank; ++m)
                    acc += c[static_cast<std::size_t>(m)] * rel(m, k);
                v(i, k) += t.sign * c[static_cast<std::size_t>(i)] * acc;
            }
        }
        rel = twist_action_rel(s, t) * rel;
    }
    return v;
}

inline TwistWord word_concat(const TwistWord& w1, const TwistWord& w2) {
    TwistWord w = w1;
    w.twists.insert(w.twists.end(), w2.twists.begin(), w2.twists.end());
    return w;
}

inline TwistWord word_inverse(const TwistWord& w) {
    TwistWord inv;
    inv.twists.reserve(w.twists.size());
    for (auto it = w.twists.rbegin(); it != w.twists.rend(); ++it)
        inv.twists.push_back(SignedTwist{it->curve, -it->sign});
    return inv;
}

inline std::string format_twist(SignedTwist t) {
    return (t.sign > 0 ? "+" : "-") + format_curve(t.curve);
}

/// Parses one signed token, e.g. `+a1` or `-d2`.
inline SignedTwist parse_twist(std::string_view token) {
    if (token.size() < 3)
        throw std::invalid_argument("twist token too short: '" + std::string(token) + "'");
    int sign;
    if (token[0] == '+') sign = 1;
    else if (token[0] == '-') sign = -1;
    else throw std::invalid_argument("twist token must start with '+' or '-': '" + std::string(token) + "'");
    return SignedTwist{parse_curve(token.substr(1)), sign};
}

inline std::string format_word(const TwistWord& w) {
    std::string out;
    for (const SignedTwist& t : w.twists) {
        if (!out.empty()) out += ' ';
        out += format_twist(t);
    }
    return out;
}

} // namespace obk
