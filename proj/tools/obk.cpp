// Command-line front end: parses open-book / five-fold / CSV inputs,
// dispatches to the kernel, certifier and numeric lab, and reports with
// deterministic formatting.
//
// Exit codes: certify follows the verdict (0 embeds, 1 obstructed,
// 2 conditional/unknown); numeric verbs use 0 pass, 2 fail; any input
// error is 3.

#include "obk/certify.hpp"
#include "obk/filling.hpp"
#include "obk/numlab.hpp"
#include "obk/openbook.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitInputError = 3;
constexpr int kExitCheckFailed = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool is_five_fold_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const std::string stripped = obk::detail::strip_comment(line);
        if (stripped.empty()) continue;
        return stripped == "fivefold";
    }
    return false;
}

std::string display_name(const obk::ParsedOpenBook& p, const std::string& path) {
    return p.book.label.empty() ? path : p.book.label;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

int run_invariants(const std::string& path) {
    const obk::ParsedOpenBook parsed = obk::parse_open_book(read_file(path));
    const obk::OpenBook& book = parsed.book;
    const obk::HomologySummary h = obk::ob_first_homology(book);

    std::ostringstream os;
    os << "input: " << path << "\n";
    if (!book.label.empty()) os << "label: " << book.label << "\n";
    os << "surface: g=" << book.page.genus << " n=" << book.page.boundary << "\n";
    os << "word: " << (book.monodromy.empty() ? "(empty)" : obk::format_word(book.monodromy)) << "\n";
    os << "h1: ";
    if (h.torsion.empty()) os << "0";
    else
        for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? "," : "") << h.torsion[i];
    os << "\n";
    os << "free: " << h.free_rank << "\n";
    os << "two_torsion: " << (h.two_torsion ? "true" : "false") << "\n";
    switch (parsed.c1) {
    case obk::C1Declaration::Zero: os << "c1: zero\n"; break;
    case obk::C1Declaration::Nonzero: os << "c1: nonzero\n"; break;
    case obk::C1Declaration::Auto:
        os << "c1: " << (h.free_rank == 0 && h.torsion.empty() ? "derived-zero" : "undeclared") << "\n";
        break;
    }

    os << "chi_filling: " << obk::filling_euler(book) << "\n";
    os << "h2_rank: " << obk::filling_h2_rank(book) << "\n";
    if (auto form = obk::filling_intersection_form(book)) {
        os << "intersection_form: rank=" << form->rows() << "\n";
        os << "sigma: " << obk::filling_signature(*form) << "\n";
    } else {
        os << "intersection_form: undefined (intersecting vanishing cycles)\n";
        os << "sigma: undefined\n";
    }
    if (auto d3 = obk::d3_from_word(book)) {
        os << "d3: " << obk::to_string(*d3) << "\n";
    } else {
        bool negative = false;
        for (const obk::SignedTwist& t : book.monodromy.twists)
            if (t.sign < 0) negative = true;
        os << "d3: undefined (" << (negative ? "negative twist in word" : "filling has nontrivial H2") << ")\n";
    }
    std::cout << os.str();
    return 0;
}

int run_certify(const std::string& path, const std::string& facts_csv, std::string target) {
    obk::Certificate cert;
    if (!facts_csv.empty()) {
        std::vector<std::string> facts;
        std::istringstream is(facts_csv);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) facts.push_back(tok);
        if (target.empty()) target = "s5";
        cert = obk::certify_general(facts, target == "s7" ? "S7" : "S5", "facts");
    } else {
        const std::string text = read_file(path);
        if (is_five_fold_text(text)) {
            if (!target.empty() && target != "s7")
                throw std::runtime_error("five-fold descriptions certify against --target s7");
            const obk::ParsedFiveFold ff = obk::parse_five_fold(text);
            cert = obk::certify_5fold_s7(ff.desc, ff.c1, path);
        } else {
            if (!target.empty() && target != "s5")
                throw std::runtime_error("open books certify against --target s5");
            const obk::ParsedOpenBook parsed = obk::parse_open_book(text);
            const obk::ContactDescriptor desc = obk::derive_contact_invariants(parsed.book, parsed.c1);
            cert = obk::certify_s5(parsed.book, desc, display_name(parsed, path));
        }
    }
    std::cout << obk::render_certificate(cert);
    return obk::exit_code(cert.verdict);
}

int run_sum(const std::string& a, const std::string& b, const std::string& out) {
    const obk::ParsedOpenBook pa = obk::parse_open_book(read_file(a));
    const obk::ParsedOpenBook pb = obk::parse_open_book(read_file(b));
    obk::ParsedOpenBook sum;
    sum.book = obk::ob_connected_sum(pa.book, pb.book);
    if (pa.c1 == obk::C1Declaration::Nonzero || pb.c1 == obk::C1Declaration::Nonzero)
        sum.c1 = obk::C1Declaration::Nonzero;
    else if (pa.c1 == obk::C1Declaration::Zero && pb.c1 == obk::C1Declaration::Zero)
        sum.c1 = obk::C1Declaration::Zero;
    const std::string text = obk::render_open_book(sum);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write file: " + out);
        os << text;
    }
    return 0;
}

int run_stabilize(const std::string& path, const std::string& sign, int count, const std::string& out) {
    int s;
    if (sign == "+1" || sign == "+" || sign == "pos") s = 1;
    else if (sign == "-1" || sign == "-" || sign == "neg") s = -1;
    else throw std::runtime_error("bad --sign value '" + sign + "' (use +1 or -1)");
    if (count < 1) throw std::runtime_error("--count must be >= 1");
    obk::ParsedOpenBook parsed = obk::parse_open_book(read_file(path));
    for (int i = 0; i < count; ++i) parsed.book = obk::ob_stabilize(parsed.book, s);
    const std::string text = obk::render_open_book(parsed);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write file: " + out);
        os << text;
    }
    return 0;
}

int run_verify_profile(const std::string& file, double epsilon, int samples, double tol) {
    obk::ProfileSpec p;
    if (file.empty()) {
        p = obk::default_profile(epsilon, samples);
        std::cout << "profile: builtin epsilon=" << format_double(epsilon) << " samples=" << samples << "\n";
    } else {
        p = obk::load_profile_csv(read_file(file));
        std::cout << "profile: file " << file << " samples=" << p.grid.size() << "\n";
    }
    const obk::ViolationReport report = obk::check_profile(p, tol);
    std::cout << "tol: " << format_double(tol) << "\n";
    std::cout << "min_W: " << format_double(obk::profile_min_w(p)) << "\n";
    std::cout << obk::to_string(report);
    return report.pass() ? 0 : kExitCheckFailed;
}

int run_verify_collar(const std::string& file, double epsilon, int samples, double tol) {
    obk::CollarPair cp;
    if (file.empty()) {
        cp = obk::default_collar(0.0, 1.0, 0.3, epsilon, samples);
        std::cout << "collar: builtin a=0 b=1 c=0.3 epsilon=" << format_double(epsilon)
                  << " samples=" << samples << "\n";
    } else {
        cp = obk::load_collar_csv(read_file(file));
        std::cout << "collar: file " << file << " samples=" << cp.grid.size() << "\n";
    }
    const obk::ViolationReport report = obk::check_collar(cp, tol);
    std::cout << "tol: " << format_double(tol) << "\n";
    std::cout << obk::to_string(report);
    return report.pass() ? 0 : kExitCheckFailed;
}

int run_k_threshold(const std::string& model, int grid) {
    obk::DensityModel m;
    if (model == "builtin-positive") m = obk::builtin_positive_density(grid);
    else if (model == "builtin-negative") m = obk::builtin_negative_density(grid);
    else m = obk::load_density_csv(read_file(model));
    std::cout << "K0 = " << format_double(obk::density_threshold(m)) << "\n";
    return 0;
}

int run_dehn_check(int dim, int samples, double tol, std::uint64_t seed, double radius, double amplitude,
                   int nu_samples) {
    const obk::GDTProfile prof = obk::bump_profile(dim, radius, amplitude, nu_samples);
    const obk::SymplecticReport report = obk::gdt_check_symplectic(prof, dim, samples, tol, seed);
    std::cout << "dehn-check: dim=" << dim << " samples=" << samples << " tol=" << format_double(tol)
              << " seed=" << seed << "\n";
    std::cout << "max_symplectic_error: " << format_double(report.max_symplectic_error) << "\n";
    std::cout << "max_constraint_error: " << format_double(report.max_constraint_error) << "\n";
    std::cout << (report.pass() ? "pass" : "fail") << "\n";
    return report.pass() ? 0 : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact open-book calculus, embedding certificates and a numeric verification lab"};
    app.require_subcommand(1);

    std::string in_a, in_b, out_path, facts, target, sign = "+1", model = "builtin-negative", file;
    double epsilon = 1.0, tol = 1e-9, radius = 1.0, amplitude = 3.141592653589793;
    int samples = 4096, count = 1, grid = 4096, dim = 2, dehn_samples = 100, nu_samples = 2048;
    double dehn_tol = 1e-5;
    std::uint64_t seed = 0;

    auto* inv = app.add_subcommand("invariants", "homology and filling invariants of an open book");
    inv->add_option("file", in_a, "open-book file")->required();

    auto* cert = app.add_subcommand("certify", "derive an embedding certificate");
    cert->add_option("file", in_a, "open-book or five-fold file");
    cert->add_option("--facts", facts, "comma-separated assertion tokens for the general engine");
    cert->add_option("--target", target, "s5 or s7")->check(CLI::IsMember({"s5", "s7"}));

    auto* sum = app.add_subcommand("sum", "band connected sum of two open books");
    sum->add_option("first", in_a, "open-book file")->required();
    sum->add_option("second", in_b, "open-book file")->required();
    sum->add_option("-o,--output", out_path, "write the sum here instead of stdout");

    auto* stab = app.add_subcommand("stabilize", "stabilize an open book");
    stab->add_option("file", in_a, "open-book file")->required();
    stab->add_option("--sign", sign, "+1 or -1 (default +1)");
    stab->add_option("--count", count, "number of stabilizations (default 1)");
    stab->add_option("-o,--output", out_path, "write the result here instead of stdout");

    auto* vp = app.add_subcommand("verify-profile", "check the h1/h2 profile conditions");
    vp->add_option("--epsilon", epsilon, "interval length (default 1.0)");
    vp->add_option("--samples", samples, "grid samples (default 4096)");
    vp->add_option("--tol", tol, "slope tolerance (default 1e-9)");
    vp->add_option("--file", file, "profile CSV (r,h1,h2) instead of the builtin");

    auto* vc = app.add_subcommand("verify-collar", "check the f/g collar conditions");
    vc->add_option("--epsilon", epsilon, "interval length (default 1.0)");
    vc->add_option("--samples", samples, "grid samples (default 4096)");
    vc->add_option("--tol", tol, "slope tolerance (default 1e-9)");
    vc->add_option("--file", file, "collar CSV (t,f,g) instead of the builtin");

    auto* kt = app.add_subcommand("k-threshold", "positivity threshold of K*A + B");
    kt->add_option("--model", model, "builtin-positive, builtin-negative or a CSV path (theta,t,A,B)");
    kt->add_option("--grid", grid, "theta samples for builtin models (default 4096)");

    auto* dc = app.add_subcommand("dehn-check", "generalized Dehn twist symplecticity check");
    dc->add_option("--dim", dim, "sphere dimension, 1 or 2 (default 2)")->check(CLI::IsMember({1, 2}));
    dc->add_option("--samples", dehn_samples, "random sample points (default 100)");
    dc->add_option("--tol", dehn_tol, "max finite-difference error (default 1e-5)");
    dc->add_option("--seed", seed, "RNG seed (default 0)");
    dc->add_option("--radius", radius, "support radius of the angle profile (default 1.0)");
    dc->add_option("--amplitude", amplitude, "peak angle of the profile (default pi)");
    dc->add_option("--nu-samples", nu_samples, "angle profile samples (default 2048)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (inv->parsed()) return run_invariants(in_a);
        if (cert->parsed()) {
            if (in_a.empty() && facts.empty()) throw std::runtime_error("certify needs a file or --facts");
            if (!in_a.empty() && !facts.empty()) throw std::runtime_error("certify takes a file or --facts, not both");
            return run_certify(in_a, facts, target);
        }
        if (sum->parsed()) return run_sum(in_a, in_b, out_path);
        if (stab->parsed()) return run_stabilize(in_a, sign, count, out_path);
        if (vp->parsed()) return run_verify_profile(file, epsilon, samples, tol);
        if (vc->parsed()) return run_verify_collar(file, epsilon, samples, tol);
        if (kt->parsed()) return run_k_threshold(model, grid);
        if (dc->parsed()) return run_dehn_check(dim, dehn_samples, dehn_tol, seed, radius, amplitude, nu_samples);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
