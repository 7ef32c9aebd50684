#pragma once

// Invariants of the Lefschetz filling X of an open book: Euler
// characteristic, the intersection form on H_2(X) when the word's curves
// are pairwise geometrically disjoint, exact signatures, and the additive
// d3 invariant
//
//   d3 = (c1^2 - 3 sigma - 2 (chi - 1)) / 4,
//
// normalized so that the trivial filling of the standard 3-sphere scores 0
// and connected sums add (chi composes as chi1 + chi2 - 1).

#include "obk/exact.hpp"
#include "obk/openbook.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace obk {

/// chi(X) = chi(page) + word length: one 2-handle per twist.
inline int filling_euler(const OpenBook& ob) {
    ob_require_valid(ob);
    return euler_characteristic(ob.page) + static_cast<int>(ob.monodromy.size());
}

namespace detail {

inline bool word_pairwise_disjoint(const TwistWord& w) {
    for (std::size_t i = 0; i < w.twists.size(); ++i)
        for (std::size_t j = i + 1; j < w.twists.size(); ++j)
            if (!geometrically_disjoint(w.twists[i].curve, w.twists[j].curve)) return false;
    return true;
}

// Columns are the classes of the word's curves; H_2(X) is modeled as the
// kernel lattice of this map into H_1 of the page.
inline IntMatrix vanishing_cycle_matrix(const OpenBook& ob) {
    const int rank = homology_rank(ob.page);
    const int k = static_cast<int>(ob.monodromy.size());
    IntMatrix c(rank, k);
    for (int j = 0; j < k; ++j) {
        const HomologyVector v = curve_class(ob.page, ob.monodromy.twists[static_cast<std::size_t>(j)].curve);
        for (int i = 0; i < rank; ++i) c(i, j) = v[static_cast<std::size_t>(i)];
    }
    return c;
}

// Basis of the kernel lattice, one column per generator.
inline IntMatrix kernel_basis(const IntMatrix& c) {
    SmithDecomposition s = smith_normal_form(c);
    const int rank = smith_rank(s);
    const int k = c.cols();
    IntMatrix basis(k, k - rank);
    for (int j = rank; j < k; ++j)
        for (int i = 0; i < k; ++i) basis(i, j - rank) = s.v(i, j);
    return basis;
}

} // namespace detail

inline int filling_h2_rank(const OpenBook& ob) {
    ob_require_valid(ob);
    IntMatrix c = detail::vanishing_cycle_matrix(ob);
    return c.cols() - smith_rank(smith_normal_form(c));
}

/// Intersection form of the filling in a kernel basis: the ambient form is
/// diag(-sign_i) with zero off-diagonal entries for disjoint vanishing
/// cycles.  Absent (not an error) when the word has intersecting curves.
inline std::optional<IntMatrix> filling_intersection_form(const OpenBook& ob) {
    ob_require_valid(ob);
    if (!detail::word_pairwise_disjoint(ob.monodromy)) return std::nullopt;
    const IntMatrix basis = detail::kernel_basis(detail::vanishing_cycle_matrix(ob));
    const int m = basis.cols();
    const int k = basis.rows();
    IntMatrix form(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            Int acc = 0;
            for (int i = 0; i < k; ++i)
                acc -= Int(ob.monodromy.twists[static_cast<std::size_t>(i)].sign) * basis(i, p) * basis(i, q);
            form(p, q) = acc;
        }
    return form;
}

/// Signature of a symmetric integer matrix by exact congruence
/// diagonalization over the rationals.
inline int filling_signature(const IntMatrix& form) {
    const int n = form.rows();
    if (form.cols() != n) throw std::invalid_argument("filling_signature: matrix not square");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (form(i, j) != form(j, i)) throw std::invalid_argument("filling_signature: matrix not symmetric");

    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(form(i, j));

    auto at = [&m](int i, int j) -> Rat& { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    int pos = 0, neg = 0;
    for (int t = 0; t < n; ++t) {
        if (at(t, t) == 0) {
            int d = -1;
            for (int i = t + 1; i < n && d < 0; ++i)
                if (at(i, i) != 0) d = i;
            if (d >= 0) {
                for (int k = 0; k < n; ++k) std::swap(at(t, k), at(d, k));
                for (int k = 0; k < n; ++k) std::swap(at(k, t), at(k, d));
            } else {
                int bi = -1, bj = -1;
                for (int i = t; i < n && bi < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (at(i, j) != 0) { bi = i; bj = j; break; }
                if (bi < 0) break; // remaining block is zero
                // create a nonzero diagonal entry from the off-diagonal pair
                for (int k = 0; k < n; ++k) at(bi, k) += at(bj, k);
                for (int k = 0; k < n; ++k) at(k, bi) += at(k, bj);
                for (int k = 0; k < n; ++k) std::swap(at(t, k), at(bi, k));
                for (int k = 0; k < n; ++k) std::swap(at(k, t), at(k, bi));
            }
        }
        const Rat pivot = at(t, t);
        if (pivot > 0) ++pos; else ++neg;
        for (int i = t + 1; i < n; ++i) {
            if (at(i, t) == 0) continue;
            Rat f = at(i, t) / pivot;
            for (int k = 0; k < n; ++k) at(i, k) -= f * at(t, k);
            for (int k = 0; k < n; ++k) at(k, i) -= f * at(k, t);
        }
    }
    return pos - neg;
}

/// Exact rational with denominator dividing 4.
struct D3Value {
    Rat value;

    bool operator==(const D3Value&) const = default;
};

inline std::string to_string(const D3Value& d) { return d.value.get_str(); }

inline D3Value d3_evaluate(const Int& c1_squared, const Int& sigma, const Int& chi) {
    Rat v(c1_squared - 3 * sigma - 2 * (chi - 1), 4);
    v.canonicalize();
    return D3Value{v};
}

/// Defined only for all-positive words whose filling has vanishing H_2
/// (then c1^2 = 0 and sigma = 0 are forced).
inline std::optional<D3Value> d3_from_word(const OpenBook& ob) {
    ob_require_valid(ob);
    for (const SignedTwist& t : ob.monodromy.twists)
        if (t.sign != 1) return std::nullopt;
    if (filling_h2_rank(ob) != 0) return std::nullopt;
    return d3_evaluate(0, 0, filling_euler(ob));
}

inline D3Value d3_connected_sum(const D3Value& a, const D3Value& b) {
    Rat v = a.value + b.value;
    v.canonicalize();
    return D3Value{v};
}

/// d3 shift contributed by one standard overtwisted-sphere summand.  The
/// value is a normalization default, not derived here; outputs that rely on
/// it should say so.
inline constexpr int d3_stot_default = 1;

inline D3Value d3_with_stot_summands(const D3Value& base, int count, const Rat& d_stot = Rat(d3_stot_default)) {
    Rat v = base.value + count * d_stot;
    v.canonicalize();
    return D3Value{v};
}

struct FillingInvariants {
    int chi = 0;
    std::optional<int> sigma;
    std::optional<Int> c1_squared;
    std::optional<int> h2_rank;
};

inline FillingInvariants filling_invariants(const OpenBook& ob) {
    FillingInvariants inv;
    inv.chi = filling_euler(ob);
    inv.h2_rank = filling_h2_rank(ob);
    if (auto form = filling_intersection_form(ob)) inv.sigma = filling_signature(*form);
    if (*inv.h2_rank == 0) inv.c1_squared = 0;
    return inv;
}

} // namespace obk
