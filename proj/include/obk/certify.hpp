#pragma once

// Rule-based certification of iso-contact embeddings into the standard
// contact sphere two dimensions up.  Verdicts are derived by forward
// chaining over a fixed, audited rule table; every derivation step cites
// the statement it rests on.  Facts fed to the general engine are operator
// assertions and are marked as assumed in the certificate.

#include "obk/exact.hpp"
#include "obk/filling.hpp"
#include "obk/openbook.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

enum class C1Status { DerivedZero, DeclaredZero, DeclaredNonzero };

inline std::string to_string(C1Status s) {
    switch (s) {
    case C1Status::DerivedZero: return "derived-zero";
    case C1Status::DeclaredZero: return "zero";
    case C1Status::DeclaredNonzero: return "nonzero";
    }
    return "?";
}

enum class ClassTag { Standard, Overtwisted, StotSum, Unspecified };

struct ContactDescriptor {
    int dimension = 3;
    C1Status c1 = C1Status::DeclaredZero;
    std::optional<D3Value> d3;
    ClassTag class_tag = ClassTag::Unspecified;
    HomologySummary homology;
};

/// Barden decomposition data of a simply connected 5-manifold.
struct FiveFoldDescription {
    int s2xs3_count = 0;
    std::vector<std::pair<int, int>> mk_multiset; // (k >= 2, count)
    int twisted_count = 0;                        // copies of S^2 x~ S^3
    bool simply_connected = true;
    bool almost_contact = true; // W3 = 0 assertion

    bool empty_decomposition() const {
        return s2xs3_count == 0 && mk_multiset.empty() && twisted_count == 0;
    }
};

// ---------------------------------------------------------------------------
// Rule table
// ---------------------------------------------------------------------------

enum class Verdict { Embeds, Obstructed, Conditional, Unknown };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Embeds: return "embeds";
    case Verdict::Obstructed: return "obstructed";
    case Verdict::Conditional: return "conditional";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

inline int exit_code(Verdict v) {
    switch (v) {
    case Verdict::Embeds: return 0;
    case Verdict::Obstructed: return 1;
    case Verdict::Conditional:
    case Verdict::Unknown: return 2;
    }
    return 2;
}

struct RuleInfo {
    std::string_view id;
    std::string_view citation;
    bool terminal; // terminal rules settle a verdict
};

/// Audited once against the source statements; certificates may only cite
/// entries of this table.
inline constexpr std::array<RuleInfo, 13> rule_table{{
    {"R1", "Kasuya criterion: c1(xi) = 0 is necessary for an iso-contact embedding in the standard contact sphere two dimensions up", true},
    {"R2", "Thm 1.3(1): a closed orientable 3-manifold with no 2-torsion in H^2(M;Z) iso-contact embeds in (S^5, xi_std) if and only if c1(xi) = 0", true},
    {"R3", "Thm 1.3(2): with 2-torsion in H^2(M;Z) there is a distinguished homotopy class of plane fields whose contact representatives over the 2-skeleton iso-contact embed in (S^5, xi_std)", true},
    {"R4", "Thm 1.5: a closed simply connected contact 5-manifold with w2(M) = 0 iso-contact embeds in (S^7, xi_std) if and only if c1(xi) = 0", true},
    {"R5", "Prop 5.1: every contact structure on S^5 iso-contact embeds in (S^7, xi_std); S^5 carries a unique almost-contact class", true},
    {"R6", "Lemma 5.2: (S^2 x S^3, xi) iso-contact embeds in (S^7, xi_std) if and only if c1(xi) = 0", true},
    {"R7", "Prop 1.2: a contact embedding in the standard contact sphere whose induced structure is homotopic to xi as an almost-contact structure upgrades to an iso-contact embedding", true},
    {"R8", "Thm 1.1: if (M, xi^ot) iso-contact embeds with trivial normal bundle, then so does (M, xi)", true},
    {"R9", "Prop 2.8: iso-contact open book embeddings of the summands yield one of their contact connected sum", true},
    {"R10", "Prop 3.3: an iso-contact embedding of (M, xi) yields an iso-contact embedding of (M, xi^stot)", true},
    {"F1", "Prop 3.2: (S^{2n-1}, xi_stot) iso-contact embeds in the standard contact sphere (S^{2n+1}, xi_std)", false},
    {"F2", "Etnyre-Fukuwara: every closed orientable 3-manifold embeds in (S^5, xi_std) so that xi_std induces a contact structure on it", false},
    {"B1", "Barden: a closed simply connected almost contact 5-manifold decomposes uniquely into prime summands, with no twisted S^2 x~ S^3 factor when w2 = 0", false},
}};

inline const RuleInfo& rule_info(std::string_view id) {
    for (const RuleInfo& r : rule_table)
        if (r.id == id) return r;
    throw std::logic_error("unknown rule id: " + std::string(id));
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct DerivationStep {
    std::string rule;
    std::string citation;
    std::vector<std::string> premises;
};

struct Certificate {
    Verdict verdict = Verdict::Unknown;
    std::string target;    // "S5" or "S7"
    std::string input_name;
    std::string invariants_line;
    std::vector<DerivationStep> steps;
    std::vector<std::string> notes;
};

namespace detail {

inline void push_step(Certificate& c, std::string_view rule_id, std::vector<std::string> premises = {}) {
    const RuleInfo& r = rule_info(rule_id);
    c.steps.push_back(DerivationStep{std::string(r.id), std::string(r.citation), std::move(premises)});
}

inline std::string invariants_line(const HomologySummary& h, C1Status c1) {
    std::ostringstream os;
    os << "h1=";
    if (h.torsion.empty()) {
        os << "0";
    } else {
        for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? "," : "") << h.torsion[i];
    }
    os << ", free=" << h.free_rank << ", two_torsion=" << (h.two_torsion ? "true" : "false")
       << ", c1=" << to_string(c1);
    return os.str();
}

} // namespace detail

/// One terminal step settles the verdict; embed- and obstruction-rules have
/// disjoint premises, so both can never hold of one certificate.
inline bool certificate_consistent(const Certificate& c) {
    int terminal = 0;
    for (const DerivationStep& s : c.steps) {
        const RuleInfo& r = rule_info(s.rule);
        if (s.citation != r.citation) return false;
        if (r.terminal) ++terminal;
    }
    if (c.verdict == Verdict::Unknown) return terminal == 0;
    return terminal == 1;
}

// ---------------------------------------------------------------------------
// 3-manifold pipeline
// ---------------------------------------------------------------------------

/// c1 is derived zero exactly when H_1(M) vanishes (then H^2(M;Z) = 0);
/// otherwise a declaration is required.
inline ContactDescriptor derive_contact_invariants(const OpenBook& ob,
                                                   C1Declaration declared = C1Declaration::Auto) {
    ContactDescriptor d;
    d.dimension = 3;
    d.homology = ob_first_homology(ob);
    const bool trivial = d.homology.free_rank == 0 && d.homology.torsion.empty();
    switch (declared) {
    case C1Declaration::Zero: d.c1 = C1Status::DeclaredZero; break;
    case C1Declaration::Nonzero: d.c1 = C1Status::DeclaredNonzero; break;
    case C1Declaration::Auto:
        if (!trivial)
            throw std::invalid_argument(
                "c1 undeclared and not derivable: H1(M) is nontrivial and no contact line was given");
        d.c1 = C1Status::DerivedZero;
        break;
    }
    if (auto d3 = d3_from_word(ob)) d.d3 = *d3;
    return d;
}

/// Verdict is a pure function of (c1 status, 2-torsion flag).
inline std::pair<Verdict, std::string_view> certify_s5_core(C1Status c1, bool two_torsion) {
    if (c1 == C1Status::DeclaredNonzero) return {Verdict::Obstructed, "R1"};
    if (!two_torsion) return {Verdict::Embeds, "R2"};
    return {Verdict::Conditional, "R3"};
}

inline Certificate certify_s5(const OpenBook& ob, const ContactDescriptor& desc,
                              std::string input_name = {}) {
    if (desc.dimension != 3)
        throw std::invalid_argument("certify_s5: descriptor dimension must be 3");
    Certificate cert;
    cert.target = "S5";
    cert.input_name = input_name.empty() ? (ob.label.empty() ? "open book" : ob.label) : std::move(input_name);
    cert.invariants_line = detail::invariants_line(desc.homology, desc.c1);
    const auto [verdict, rule] = certify_s5_core(desc.c1, desc.homology.two_torsion);
    cert.verdict = verdict;
    std::vector<std::string> premises;
    premises.push_back("c1=" + to_string(desc.c1));
    premises.push_back(std::string("two_torsion=") + (desc.homology.two_torsion ? "true" : "false"));
    detail::push_step(cert, rule, std::move(premises));
    if (verdict == Verdict::Conditional)
        cert.notes.push_back(
            "distinguished class not computed: [xi] exists over the 2-skeleton but this tool does not identify it");
    return cert;
}

// ---------------------------------------------------------------------------
// Simply connected 5-folds
// ---------------------------------------------------------------------------

inline Certificate certify_5fold_s7(const FiveFoldDescription& m, C1Status c1,
                                    std::string input_name = {}) {
    if (!m.simply_connected) throw std::invalid_argument("certify_5fold_s7: manifold must be simply connected");
    if (!m.almost_contact) throw std::invalid_argument("certify_5fold_s7: manifold must be almost contact (W3 = 0)");
    if (m.s2xs3_count < 0 || m.twisted_count < 0)
        throw std::invalid_argument("certify_5fold_s7: summand counts must be >= 0");
    for (const auto& [k, count] : m.mk_multiset)
        if (k < 2 || count < 0) throw std::invalid_argument("certify_5fold_s7: M_k requires k >= 2");

    Certificate cert;
    cert.target = "S7";
    cert.input_name = input_name.empty() ? "five-fold" : std::move(input_name);
    cert.invariants_line = detail::invariants_line(HomologySummary{}, c1);

    if (c1 == C1Status::DeclaredNonzero) {
        cert.verdict = Verdict::Obstructed;
        detail::push_step(cert, "R1", {"c1=nonzero"});
        return cert;
    }
    if (m.empty_decomposition()) {
        cert.verdict = Verdict::Embeds;
        detail::push_step(cert, "R5", {"decomposition is empty (S^5)", "c1=" + to_string(c1)});
        return cert;
    }
    if (m.twisted_count > 0) {
        cert.verdict = Verdict::Unknown;
        cert.notes.push_back("outside Thm 1.5 hypotheses: twisted summand present, so w2 != 0");
        return cert;
    }
    const bool single_s2xs3 = m.s2xs3_count == 1 && m.mk_multiset.empty();
    if (single_s2xs3) {
        cert.verdict = Verdict::Embeds;
        detail::push_step(cert, "R6", {"decomposition is one S^2 x S^3", "c1=" + to_string(c1)});
        return cert;
    }
    cert.verdict = Verdict::Embeds;
    detail::push_step(cert, "B1", {"no twisted summand, hence w2 = 0"});
    detail::push_step(cert, "R4", {"simply connected, w2 = 0", "c1=" + to_string(c1)});
    return cert;
}

// ---------------------------------------------------------------------------
// General fact engine
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_summand_fact(std::string_view f) {
    if (f.rfind("summand-embeds(", 0) != 0 || f.back() != ')') return false;
    const std::string_view inner = f.substr(15, f.size() - 16);
    if (inner.empty()) return false;
    for (char ch : inner)
        if (ch < '0' || ch > '9') return false;
    return true;
}

inline bool known_fact(std::string_view f) {
    static constexpr std::array<std::string_view, 6> fixed{
        "contact-embedding-exists", "almost-contact-homotopic", "ot-embeds-trivial-normal",
        "orientable-3-manifold",    "manifold-is-sphere",       "base-structure-embeds"};
    return std::find(fixed.begin(), fixed.end(), f) != fixed.end() || is_summand_fact(f);
}

} // namespace detail

/// Forward chaining over operator-supplied assertions.  Fires, in order:
///   F2: orientable-3-manifold            -> contact-embedding-exists
///   F1: manifold-is-sphere               -> ot-embeds-trivial-normal
///   R7: contact-embedding-exists + almost-contact-homotopic -> embeds
///   R8: ot-embeds-trivial-normal         -> embeds
///   R9: two summand-embeds(i) facts      -> embeds
///   R10: base-structure-embeds           -> embeds (for the stot sum)
/// Unknown when no terminal rule applies.
inline Certificate certify_general(const std::vector<std::string>& facts,
                                   std::string target = "S5", std::string input_name = "facts") {
    for (const std::string& f : facts)
        if (!detail::known_fact(f)) throw std::invalid_argument("unknown fact token: '" + f + "'");

    Certificate cert;
    cert.target = std::move(target);
    cert.input_name = std::move(input_name);
    cert.invariants_line = "h1=n/a, free=n/a, two_torsion=n/a, c1=n/a";
    for (const std::string& f : facts) cert.notes.push_back("assumed: " + f);

    std::vector<std::string> have = facts;
    auto holds = [&have](std::string_view f) {
        return std::find(have.begin(), have.end(), f) != have.end();
    };
    auto summand_count = [&have]() {
        int n = 0;
        for (const std::string& f : have)
            if (detail::is_summand_fact(f)) ++n;
        return n;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        if (holds("orientable-3-manifold") && !holds("contact-embedding-exists")) {
            have.push_back("contact-embedding-exists");
            detail::push_step(cert, "F2", {"orientable-3-manifold"});
            progress = true;
        }
        if (holds("manifold-is-sphere") && !holds("ot-embeds-trivial-normal")) {
            have.push_back("ot-embeds-trivial-normal");
            detail::push_step(cert, "F1", {"manifold-is-sphere"});
            progress = true;
        }
        if (holds("contact-embedding-exists") && holds("almost-contact-homotopic")) {
            cert.verdict = Verdict::Embeds;
            detail::push_step(cert, "R7", {"contact-embedding-exists", "almost-contact-homotopic"});
            return cert;
        }
        if (holds("ot-embeds-trivial-normal")) {
            cert.verdict = Verdict::Embeds;
            detail::push_step(cert, "R8", {"ot-embeds-trivial-normal"});
            return cert;
        }
        if (summand_count() >= 2) {
            cert.verdict = Verdict::Embeds;
            detail::push_step(cert, "R9", {"summand-embeds facts"});
            return cert;
        }
        if (holds("base-structure-embeds")) {
            cert.verdict = Verdict::Embeds;
            detail::push_step(cert, "R10", {"base-structure-embeds"});
            cert.notes.push_back("conclusion applies to the stot sum of the base structure");
            return cert;
        }
    }
    cert.verdict = Verdict::Unknown;
    return cert;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_certificate(const Certificate& c) {
    std::ostringstream os;
    os << "verdict: " << to_string(c.verdict) << "\n";
    os << "target: " << c.target << "\n";
    os << "input: " << c.input_name << "\n";
    os << "invariants: " << c.invariants_line << "\n";
    for (std::size_t i = 0; i < c.steps.size(); ++i)
        os << "step " << (i + 1) << ": " << c.steps[i].rule << " — " << c.steps[i].citation << "\n";
    for (const std::string& n : c.notes) os << "note: " << n << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Five-fold file format
//
//   fivefold
//   summand s2xs3 count=<r>
//   summand mk k=<k> count=<m>
//   summand twisted count=<t>
//   contact c1=zero|nonzero
// ---------------------------------------------------------------------------

struct ParsedFiveFold {
    FiveFoldDescription desc;
    C1Status c1 = C1Status::DeclaredZero;
};

inline ParsedFiveFold parse_five_fold(std::string_view text) {
    ParsedFiveFold result;
    bool have_header = false, have_contact = false;
    std::istringstream is{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        const auto parts = detail::split_ws(line);
        if (!have_header) {
            if (parts.size() != 1 || parts[0] != "fivefold")
                throw ParseError(lineno, "expected 'fivefold' header");
            have_header = true;
            continue;
        }
        if (parts[0] == "summand") {
            if (parts.size() < 2) throw ParseError(lineno, "expected summand kind");
            if (parts[1] == "s2xs3") {
                if (parts.size() != 3) throw ParseError(lineno, "expected: summand s2xs3 count=<r>");
                result.desc.s2xs3_count += detail::parse_keyed_int(parts[2], "count", lineno);
            } else if (parts[1] == "mk") {
                if (parts.size() != 4) throw ParseError(lineno, "expected: summand mk k=<k> count=<m>");
                const int k = detail::parse_keyed_int(parts[2], "k", lineno);
                const int count = detail::parse_keyed_int(parts[3], "count", lineno);
                if (k < 2) throw ParseError(lineno, "M_k summand requires k >= 2");
                if (count < 0) throw ParseError(lineno, "summand count must be >= 0");
                if (count > 0) result.desc.mk_multiset.emplace_back(k, count);
            } else if (parts[1] == "twisted") {
                if (parts.size() != 3) throw ParseError(lineno, "expected: summand twisted count=<t>");
                result.desc.twisted_count += detail::parse_keyed_int(parts[2], "count", lineno);
            } else {
                throw ParseError(lineno, "unknown summand kind '" + parts[1] + "'");
            }
        } else if (parts[0] == "contact") {
            if (have_contact) throw ParseError(lineno, "duplicate contact line");
            if (parts.size() != 2) throw ParseError(lineno, "expected: contact c1=zero|nonzero");
            if (parts[1] == "c1=zero") result.c1 = C1Status::DeclaredZero;
            else if (parts[1] == "c1=nonzero") result.c1 = C1Status::DeclaredNonzero;
            else throw ParseError(lineno, "expected c1=zero|nonzero, got '" + parts[1] + "'");
            have_contact = true;
        } else {
            throw ParseError(lineno, "unknown key '" + parts[0] + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing 'fivefold' header");
    if (!have_contact) throw ParseError(lineno, "missing contact line (contact c1=zero|nonzero)");
    if (result.desc.s2xs3_count < 0 || result.desc.twisted_count < 0)
        throw ParseError(lineno, "summand counts must be >= 0");
    return result;
}

} // namespace obk
