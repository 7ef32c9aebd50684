#pragma once

// Abstract open books as values: validation, connected sum, stabilization,
// H_1 of the closed 3-manifold they present, and the line-oriented text
// format used by files and the CLI.

#include "obk/exact.hpp"
#include "obk/mcg.hpp"
#include "obk/surface.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

struct OpenBook {
    Surface page;
    TwistWord monodromy;
    std::string label;

    bool operator==(const OpenBook&) const = default;
};

struct HomologySummary {
    int free_rank = 0;
    std::vector<Int> torsion;
    bool two_torsion = false;

    bool operator==(const HomologySummary&) const = default;
};

inline std::string to_string(const HomologySummary& h) {
    DivisorChain c{h.torsion, h.free_rank};
    return to_string(c);
}

inline std::vector<std::string> ob_validate(const OpenBook& ob) {
    std::vector<std::string> violations;
    if (ob.page.boundary < 1)
        violations.push_back("page must have at least one boundary component (n >= 1)");
    if (ob.page.genus < 0) violations.push_back("page genus must be >= 0");
    for (std::size_t k = 0; k < ob.monodromy.twists.size(); ++k) {
        const SignedTwist& t = ob.monodromy.twists[k];
        if (t.sign != 1 && t.sign != -1)
            violations.push_back("word[" + std::to_string(k + 1) + "]: sign must be +1 or -1");
        if (!curve_valid(ob.page, t.curve))
            violations.push_back("word[" + std::to_string(k + 1) + "]: curve " + format_curve(t.curve) +
                                 " invalid on surface g=" + std::to_string(ob.page.genus) +
                                 " n=" + std::to_string(ob.page.boundary));
    }
    return violations;
}

inline void ob_require_valid(const OpenBook& ob) {
    auto v = ob_validate(ob);
    if (!v.empty()) throw std::invalid_argument("invalid open book: " + v.front());
}

/// H_1 of the closed 3-manifold of the open book, presented by the cokernel
/// of the monodromy's variation matrix.
inline HomologySummary ob_first_homology(const OpenBook& ob) {
    ob_require_valid(ob);
    DivisorChain c = cokernel_divisors(word_variation(ob.page, ob.monodromy));
    return HomologySummary{c.free_rank, c.torsion, has_two_torsion(c)};
}

namespace detail {

// Index maps for merging the second summand's atlas into the enlarged page.
// The two pages' last boundary components are banded together into the
// merged page's last component; both corresponding d-symbols are re-pointed
// at it, so the boundary relation is re-derived rather than copied.
inline AtlasCurve relabel_first(AtlasCurve c, Surface x_page, Surface merged) {
    if (c.kind == CurveKind::D && c.index == x_page.boundary)
        return AtlasCurve{CurveKind::D, merged.boundary};
    return c;
}

inline AtlasCurve relabel_second(AtlasCurve c, Surface x_page, Surface y_page, Surface merged) {
    switch (c.kind) {
    case CurveKind::A:
    case CurveKind::B:
        return AtlasCurve{c.kind, c.index + x_page.genus};
    case CurveKind::D:
        if (c.index == y_page.boundary) return AtlasCurve{CurveKind::D, merged.boundary};
        return AtlasCurve{CurveKind::D, c.index + x_page.boundary - 1};
    case CurveKind::S:
        return AtlasCurve{CurveKind::S, c.index + x_page.boundary - 1};
    }
    return c;
}

} // namespace detail

/// Band connected sum of pages: page (g1+g2, n1+n2-1), monodromy of x
/// followed by the monodromy of y relabeled into the enlarged atlas.
inline OpenBook ob_connected_sum(const OpenBook& x, const OpenBook& y) {
    ob_require_valid(x);
    ob_require_valid(y);
    OpenBook sum;
    sum.page = Surface{x.page.genus + y.page.genus, x.page.boundary + y.page.boundary - 1};
    for (const SignedTwist& t : x.monodromy.twists)
        sum.monodromy.twists.push_back(SignedTwist{detail::relabel_first(t.curve, x.page, sum.page), t.sign});
    for (const SignedTwist& t : y.monodromy.twists)
        sum.monodromy.twists.push_back(
            SignedTwist{detail::relabel_second(t.curve, x.page, y.page, sum.page), t.sign});
    if (!x.label.empty() || !y.label.empty()) sum.label = x.label + "#" + y.label;
    return sum;
}

/// Adds one boundary component, extends the homology basis by the belt
/// curve's vector, and appends the signed belt twist s<n+1>.
inline OpenBook ob_stabilize(const OpenBook& ob, int sign) {
    ob_require_valid(ob);
    if (sign != 1 && sign != -1) throw std::invalid_argument("stabilization sign must be +1 or -1");
    OpenBook out = ob;
    out.page.boundary += 1;
    out.monodromy.twists.push_back(SignedTwist{AtlasCurve{CurveKind::S, out.page.boundary}, sign});
    return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   surface g=<int> n=<int>
//   word <token> <token> ...
//   contact c1=zero|nonzero|auto
//   label <string>
//
// Lines may carry trailing `#` comments; blank lines are ignored.
// ---------------------------------------------------------------------------

enum class C1Declaration { Auto, Zero, Nonzero };

struct ParsedOpenBook {
    OpenBook book;
    C1Declaration c1 = C1Declaration::Auto;

    bool operator==(const ParsedOpenBook&) const = default;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace detail {

inline std::string strip_comment(std::string_view line) {
    std::string out(line.substr(0, line.find('#')));
    while (!out.empty() && (out.back() == ' ' || out.back() == '\t' || out.back() == '\r')) out.pop_back();
    std::size_t b = 0;
    while (b < out.size() && (out[b] == ' ' || out[b] == '\t')) ++b;
    return out.substr(b);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) parts.push_back(tok);
    return parts;
}

inline int parse_keyed_int(const std::string& field, std::string_view key, int line) {
    const std::string prefix = std::string(key) + "=";
    if (field.rfind(prefix, 0) != 0)
        throw ParseError(line, "expected " + prefix + "<int>, got '" + field + "'");
    try {
        std::size_t pos = 0;
        int v = std::stoi(field.substr(prefix.size()), &pos);
        if (pos != field.size() - prefix.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad integer in '" + field + "'");
    }
}

} // namespace detail

inline ParsedOpenBook parse_open_book(std::string_view text) {
    ParsedOpenBook result;
    bool have_surface = false, have_word = false, have_contact = false, have_label = false;
    int surface_line = 0, word_line = 0;
    std::istringstream is{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        const auto parts = detail::split_ws(line);
        const std::string& key = parts[0];
        if (key == "surface") {
            if (have_surface) throw ParseError(lineno, "duplicate surface line");
            if (parts.size() != 3) throw ParseError(lineno, "expected: surface g=<int> n=<int>");
            result.book.page.genus = detail::parse_keyed_int(parts[1], "g", lineno);
            result.book.page.boundary = detail::parse_keyed_int(parts[2], "n", lineno);
            have_surface = true;
            surface_line = lineno;
        } else if (key == "word") {
            if (have_word) throw ParseError(lineno, "duplicate word line");
            for (std::size_t k = 1; k < parts.size(); ++k) {
                try {
                    result.book.monodromy.twists.push_back(parse_twist(parts[k]));
                } catch (const std::exception& e) {
                    throw ParseError(lineno, e.what());
                }
            }
            have_word = true;
            word_line = lineno;
        } else if (key == "contact") {
            if (have_contact) throw ParseError(lineno, "duplicate contact line");
            if (parts.size() != 2) throw ParseError(lineno, "expected: contact c1=zero|nonzero|auto");
            if (parts[1] == "c1=zero") result.c1 = C1Declaration::Zero;
            else if (parts[1] == "c1=nonzero") result.c1 = C1Declaration::Nonzero;
            else if (parts[1] == "c1=auto") result.c1 = C1Declaration::Auto;
            else throw ParseError(lineno, "expected c1=zero|nonzero|auto, got '" + parts[1] + "'");
            have_contact = true;
        } else if (key == "label") {
            if (have_label) throw ParseError(lineno, "duplicate label line");
            std::string value;
            for (std::size_t k = 1; k < parts.size(); ++k) {
                if (k > 1) value += ' ';
                value += parts[k];
            }
            result.book.label = value;
            have_label = true;
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_surface) throw ParseError(lineno, "missing surface line");
    auto violations = ob_validate(result.book);
    if (!violations.empty()) {
        const bool word_issue = violations.front().rfind("word[", 0) == 0;
        throw ParseError(word_issue && word_line ? word_line : surface_line, violations.front());
    }
    return result;
}

inline std::string render_open_book(const ParsedOpenBook& p) {
    std::ostringstream os;
    os << "surface g=" << p.book.page.genus << " n=" << p.book.page.boundary << "\n";
    if (!p.book.monodromy.empty()) os << "word " << format_word(p.book.monodromy) << "\n";
    if (p.c1 == C1Declaration::Zero) os << "contact c1=zero\n";
    else if (p.c1 == C1Declaration::Nonzero) os << "contact c1=nonzero\n";
    if (!p.book.label.empty()) os << "label " << p.book.label << "\n";
    return os.str();
}

} // namespace obk
