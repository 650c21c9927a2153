#include "euclid/characteristic.hpp"
#include "euclid/classifier.hpp"
#include "euclid/definability.hpp"
#include "euclid/errors.hpp"
#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"
#include "euclid/interpretations.hpp"
#include "euclid/limits.hpp"
#include "euclid/morphisms.hpp"
#include "euclid/reductions.hpp"
#include "euclid/semantics.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace euclid;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kProvisional = 2;
constexpr int kRefused = 3;
constexpr int kUsage = 64;
constexpr int kResource = 75;

// Line-oriented key: value report. Multi-line values are written as an
// indented block under their key.
class Report {
public:
    void put(const std::string& key, const std::string& value) { text_ += key + ": " + value + "\n"; }
    void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }
    void flag(const std::string& key, bool value) { put(key, value ? "yes" : "no"); }
    void block(const std::string& key, const std::string& body) {
        text_ += key + ":\n";
        std::istringstream in(body);
        std::string line;
        while (std::getline(in, line)) text_ += "  " + line + "\n";
    }
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << text;
}

// A formula argument is either literal text or the path of a file holding it.
std::string formula_text(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

ModalFormula modal_arg(const std::string& arg) { return parse_modal(formula_text(arg)); }
FOFormula fo_arg(const std::string& arg) { return parse_fo(formula_text(arg)); }
Frame frame_arg(const std::string& path) { return parse_frame(read_file(path)); }
Galaxy galaxy_arg(const std::string& path) { return parse_galaxy(read_file(path)); }

std::string format_index(FlowerIndex p) { return "(" + std::to_string(p.m) + "," + std::to_string(p.n) + ")"; }

std::string format_indices(const IndexSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : s) {
        if (!first) out += ",";
        out += format_index(p);
        first = false;
    }
    return out + "}";
}

std::string format_vars(const std::set<std::string>& v) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : v) {
        if (!first) out += ",";
        out += x;
        first = false;
    }
    return out + "}";
}

std::string format_map(const WorldMap& m) {
    std::string out;
    for (const auto& [s, t] : m) out += s + " -> " + t + "\n";
    return out;
}

Flavor flavor_arg(const std::string& s) {
    if (s == "k2") return Flavor::K2;
    if (s == "l2") return Flavor::L2;
    throw MalformedInput("flavor must be k2 or l2");
}

int verdict_code(Outcome o) {
    switch (o) {
        case Outcome::Positive: return kPositive;
        case Outcome::Negative: return kNegative;
        case Outcome::Provisional: return kProvisional;
    }
    return kNegative;
}

void put_verdict(Report& r, const Verdict& v, const std::string& positive, const std::string& negative,
                 const std::string& cert_out) {
    std::string word = v.outcome == Outcome::Positive ? positive
                       : v.outcome == Outcome::Negative ? negative
                                                         : "provisional";
    r.put("verdict", word);
    r.put("explored-bound", v.explored_bound);
    if (v.full_bound > 0) r.put("full-bound-digits", decimal_digits(v.full_bound));
    else r.put("full-bound", "none");
    if (!v.certificate) return;
    const Certificate& c = *v.certificate;
    r.put("reason", c.reason);
    if (c.frame) {
        r.block("certificate-frame", format_frame(*c.frame));
        if (!cert_out.empty()) write_file(cert_out, format_frame(*c.frame));
    }
    if (c.flowers) {
        r.put("certificate-flowers", format_index(c.flowers->first) + " " + format_index(c.flowers->second));
    }
    if (c.formula) r.put("formula", to_string(*c.formula));
}

struct Options {
    std::string a, b, c, out, cert, flavor = "k2", var = "y", axiom = "top";
    std::vector<std::string> params;
    int m = 0, n = 0;
    std::size_t q = 3, k = 4, budget = 4;
    bool print_value = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean modal logic toolkit: frames, flowers, reductions, games and definability"};
    app.require_subcommand(1);
    app.fallthrough();
    bool digest = false;
    std::uint64_t max_frames = 0, max_search = 0, max_positions = 0;
    app.add_flag("--digest", digest, "Append a stable hash of the report");
    app.add_option("--max-frames", max_frames, "Ceiling on enumerated frames")->check(CLI::PositiveNumber);
    app.add_option("--max-search", max_search, "Ceiling on search nodes")->check(CLI::PositiveNumber);
    app.add_option("--max-positions", max_positions, "Ceiling on game positions")->check(CLI::PositiveNumber);

    Options o;
    Report r;
    std::function<int()> run;

    auto sub = [&](const std::string& name, const std::string& help, std::function<int()> body) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&run, body] { run = body; });
        return s;
    };

    auto* c = sub("parse-modal", "Parse and print a modal formula", [&] {
        auto f = modal_arg(o.a);
        auto m = measures(f);
        r.put("formula", to_string(f));
        r.put("variables", format_vars(m.vars));
        r.put("length", m.len);
        r.put("modal-depth", m.depth);
        r.put("procedure", "modal formula parser");
        return kPositive;
    });
    c->add_option("formula", o.a, "Formula text or file")->required();

    c = sub("parse-fo", "Parse and print a first-order formula", [&] {
        auto f = fo_arg(o.a);
        auto m = measures(f);
        r.put("formula", to_string(f));
        r.put("free-variables", format_vars(m.fiv));
        r.flag("sentence", m.fiv.empty());
        r.put("length", m.len);
        r.put("quantifier-depth", m.qd);
        r.put("qdd", m.qdd);
        r.put("procedure", "first-order formula parser");
        return kPositive;
    });
    c->add_option("formula", o.a, "Formula text or file")->required();

    c = sub("frame-info", "Summarise a frame and its dust/root/kernel partition", [&] {
        Frame f = frame_arg(o.a);
        r.put("worlds", f.size());
        r.put("edges", f.edge_count());
        bool e = is_euclidean(f);
        r.flag("euclidean", e);
        if (e) {
            Partition p = partition(f);
            r.put("dust", format_set(p.dust));
            r.put("root", format_set(p.root));
            r.put("kernel", format_set(p.kernel));
            r.put("galaxies", frame_to_galaxies(f).size());
        }
        r.put("procedure", "Euclidean check and dust/root/kernel partition");
        return e ? kPositive : kNegative;
    });
    c->alias("partition");
    c->add_option("frame", o.a, "Frame file")->required();

    c = sub("decompose", "Split a Euclidean frame into galaxies", [&] {
        Frame f = frame_arg(o.a);
        auto gs = frame_to_galaxies(f);
        r.put("galaxies", gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) {
            std::string kind = is_simple(gs[i]) ? "simple" : "non-simple";
            if (in_K2(gs[i])) kind += ", K2";
            if (in_L2(gs[i])) kind += ", L2";
            r.put("galaxy " + std::to_string(i), kind);
            r.block("galaxy " + std::to_string(i) + " body", format_galaxy(gs[i]));
        }
        r.put("procedure", "decomposition into galaxies");
        return kPositive;
    });
    c->add_option("frame", o.a, "Frame file")->required();

    c = sub("flower", "Build the flower F_m^n", [&] {
        Frame f = flower({o.m, o.n});
        if (!o.out.empty()) write_file(o.out, format_frame(f));
        r.put("index", format_index({o.m, o.n}));
        r.flag("simple", f.size() > 0 && is_simple(flower_galaxy({o.m, o.n})));
        r.block("frame", format_frame(f));
        r.put("procedure", "flower construction");
        return kPositive;
    });
    c->add_option("m", o.m)->required();
    c->add_option("n", o.n)->required();
    c->add_option("--out", o.out, "Write the frame to this file");

    c = sub("jankov-fine", "Print the Jankov-Fine formula of F_m^n", [&] {
        r.put("formula", to_string(jankov_fine({o.m, o.n})));
        r.put("procedure", "Jankov-Fine formula of a flower");
        return kPositive;
    });
    c->add_option("m", o.m)->required();
    c->add_option("n", o.n)->required();

    c = sub("validity", "Check a modal formula on a frame", [&] {
        Frame f = frame_arg(o.a);
        auto v = valid_modal(f, modal_arg(o.b));
        r.flag("valid", v.valid);
        if (v.counterexample) {
            r.put("world", v.counterexample->world);
            for (const auto& [p, s] : v.counterexample->valuation) r.put("valuation " + p, format_set(s));
        }
        r.put("procedure", "exhaustive valuation search");
        return v.valid ? kPositive : kNegative;
    });
    c->add_option("frame", o.a, "Frame file")->required();
    c->add_option("formula", o.b, "Formula text or file")->required();

    c = sub("fo-validity", "Check a first-order formula on a frame under all assignments", [&] {
        bool v = valid_fo(frame_arg(o.a), fo_arg(o.b));
        r.flag("valid", v);
        r.put("procedure", "first-order model checking");
        return v ? kPositive : kNegative;
    });
    c->add_option("frame", o.a, "Frame file")->required();
    c->add_option("formula", o.b, "Formula text or file")->required();

    c = sub("bm-search", "Search for a surjective bounded morphism", [&] {
        Frame s = frame_arg(o.a), t = frame_arg(o.b);
        auto m = find_surjective_bm(s, t);
        r.flag("found", m.has_value());
        if (m) r.block("map", format_map(*m));
        r.put("procedure", "backtracking bounded morphism search");
        return m ? kPositive : kNegative;
    });
    c->add_option("source", o.a, "Source frame file")->required();
    c->add_option("target", o.b, "Target frame file")->required();

    c = sub("ef-game", "Solve the q-move Ehrenfeucht-Fraisse game", [&] {
        auto g = ef_game_report(frame_arg(o.a), frame_arg(o.b), o.q);
        r.put("q", o.q);
        r.put("winner", g.second_player_wins ? "second" : "first");
        std::string moves;
        for (const auto& m : g.moves) moves += m + "\n";
        if (!moves.empty()) r.block("moves", moves);
        r.put("procedure", "game solved by type interning");
        return g.second_player_wins ? kPositive : kNegative;
    });
    c->add_option("left", o.a, "Frame file")->required();
    c->add_option("right", o.b, "Frame file")->required();
    c->add_option("--q", o.q, "Number of moves");

    c = sub("reduce", "Shrink a frame by the alpha, gamma and delta reductions", [&] {
        Frame f = frame_arg(o.a);
        FrameReduction red = reduce_frame(f, o.q, o.k);
        CertificateCheck chk = validate_certificate(red.certificate, f, red.frame);
        if (!o.out.empty()) write_file(o.out, format_frame(red.frame));
        if (!o.cert.empty()) write_file(o.cert, format_certificate(red.certificate));
        r.put("input-worlds", f.size());
        r.put("output-worlds", red.frame.size());
        r.flag("morphism-valid", chk.morphism_ok);
        r.flag("game-equivalent", chk.game_ok);
        if (!chk.detail.empty()) r.put("detail", chk.detail);
        r.block("frame", format_frame(red.frame));
        r.put("procedure", "alpha, gamma and delta reductions with certificate check");
        return chk.ok() ? kPositive : kNegative;
    });
    c->add_option("frame", o.a, "Frame file")->required();
    c->add_option("--q", o.q, "Game budget (>= 3)");
    c->add_option("--k", o.k, "Kernel parameter (>= 4)");
    c->add_option("--out", o.out, "Write the reduced frame to this file");
    c->add_option("--certificate", o.cert, "Write the certificate to this file");

    c = sub("bound", "Size bound for the definability search", [&] {
        mpz_class b = bound(o.q, o.k);
        r.put("q", o.q);
        r.put("k", o.k);
        r.put("Q", bound_Q(o.q));
        r.put("digits", decimal_digits(b));
        if (o.print_value) r.put("value", b.get_str());
        r.put("procedure", "exact big-integer evaluation");
        return kPositive;
    });
    c->add_option("q", o.q)->required();
    c->add_option("k", o.k)->required();
    c->add_flag("--value", o.print_value, "Print every digit");

    c = sub("classify", "Decide whether definability is decidable for K5 + axiom", [&] {
        ClassifierReport rep = classify(modal_arg(o.axiom));
        r.put("l", rep.l);
        for (const auto& p : rep.probes) r.put("probe F" + format_index(p.index), p.validates ? "validates" : "falsifies");
        r.put("verdict", rep.decidable ? "decidable" : "undecidable");
        if (rep.k) {
            r.put("k", *rep.k);
            r.put("finite-part", format_indices(rep.finite_part));
        }
        r.put("procedure", "four flower probes");
        return rep.decidable ? kPositive : kNegative;
    });
    c->add_option("--axiom", o.axiom, "Axiom text or file")->required();

    c = sub("compute-k", "Compute k for a decidable logic", [&] {
        KComputation kc = compute_k(LogicHandle(modal_arg(o.axiom)));
        r.put("k", kc.k);
        r.put("m0", std::to_string(kc.m0));
        r.put("n0", std::to_string(kc.n0));
        r.put("finite-part", format_indices(kc.finite_part));
        r.put("flowers-scanned", kc.flowers_scanned);
        r.put("procedure", "flower rectangle scan");
        return kPositive;
    });
    c->add_option("--axiom", o.axiom, "Axiom text or file")->required();

    c = sub("decide-definability", "Decide modal definability of a sentence", [&] {
        Verdict v = decide_definability(fo_arg(o.b), modal_arg(o.axiom), o.budget);
        put_verdict(r, v, "definable", "not-definable", o.cert);
        r.put("procedure", "rooted translation check and flower monotonicity check");
        return verdict_code(v.outcome);
    });
    c->add_option("--axiom", o.axiom, "Axiom text or file")->required();
    c->add_option("--sentence", o.b, "Sentence text or file")->required();
    c->add_option("--budget", o.budget, "Largest frame size examined")->check(CLI::PositiveNumber);
    c->add_option("--certificate-out", o.cert, "Write a certificate frame to this file");

    c = sub("decide-correspondence", "Decide correspondence of a modal formula and a sentence", [&] {
        Verdict v = decide_correspondence(modal_arg(o.a), fo_arg(o.b), modal_arg(o.axiom), o.budget);
        put_verdict(r, v, "corresponding", "not-corresponding", o.cert);
        r.put("procedure", "bounded frame enumeration");
        return verdict_code(v.outcome);
    });
    c->add_option("--formula", o.a, "Modal formula text or file")->required();
    c->add_option("--sentence", o.b, "Sentence text or file")->required();
    c->add_option("--axiom", o.axiom, "Axiom text or file");
    c->add_option("--budget", o.budget, "Largest frame size examined")->check(CLI::PositiveNumber);
    c->add_option("--certificate-out", o.cert, "Write a certificate frame to this file");

    c = sub("synth-formula", "Synthesise a modal formula defining a sentence", [&] {
        FOFormula a = fo_arg(o.b);
        ModalFormula phi = modal_arg(o.axiom);
        ModalFormula psi = synth_defining_formula(a, phi, o.budget);
        r.put("flowers", format_indices(sla_set(a, phi)));
        r.put("formula", to_string(psi));
        r.put("procedure", "conjunction of Jankov-Fine formulas");
        return kPositive;
    });
    c->add_option("--axiom", o.axiom, "Axiom text or file")->required();
    c->add_option("--sentence", o.b, "Sentence text or file")->required();
    c->add_option("--budget", o.budget, "Largest frame size examined")->check(CLI::PositiveNumber);

    c = sub("encode", "Encode an irreflexive symmetric frame as a galaxy", [&] {
        Galaxy g = encode(frame_arg(o.a), flavor_arg(o.flavor));
        if (!o.out.empty()) write_file(o.out, format_galaxy(g));
        r.put("flavor", o.flavor);
        r.put("upper", g.upper.size());
        r.put("lower", g.lower.size());
        r.flag("in-K2", in_K2(g));
        r.flag("in-L2", in_L2(g));
        r.block("galaxy", format_galaxy(g));
        r.put("procedure", "relative interpretation encoding");
        return kPositive;
    });
    c->add_option("frame", o.a, "Frame file")->required();
    c->add_option("--flavor", o.flavor, "k2 or l2");
    c->add_option("--out", o.out, "Write the galaxy to this file");

    c = sub("decode", "Read an interpreted frame off a galaxy", [&] {
        Frame f = decode(galaxy_arg(o.a), interpretation_scheme(flavor_arg(o.flavor)));
        if (!o.out.empty()) write_file(o.out, format_frame(f));
        r.put("flavor", o.flavor);
        r.put("worlds", f.size());
        r.block("frame", format_frame(f));
        r.put("procedure", "relative interpretation decoding with congruence check");
        return kPositive;
    });
    c->add_option("galaxy", o.a, "Galaxy file")->required();
    c->add_option("--flavor", o.flavor, "k2 or l2");
    c->add_option("--out", o.out, "Write the frame to this file");

    c = sub("reduct", "Restrict a frame to a first-order definable set", [&] {
        Frame f = frame_arg(o.a);
        Assignment params;
        for (const auto& p : o.params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw MalformedInput("parameters are written var=world");
            params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        auto red = relativized_reduct(f, fo_arg(o.b), o.var, params);
        r.flag("nonempty", red.has_value());
        if (red) {
            if (!o.out.empty()) write_file(o.out, format_frame(*red));
            r.block("frame", format_frame(*red));
        }
        r.put("procedure", "relativized reduct");
        return red ? kPositive : kNegative;
    });
    c->add_option("frame", o.a, "Frame file")->required();
    c->add_option("--formula", o.b, "Formula text or file")->required();
    c->add_option("--var", o.var, "Distinguished variable");
    c->add_option("--param", o.params, "Parameter binding var=world");
    c->add_option("--out", o.out, "Write the reduct to this file");

    c = sub("stability-witness", "Witness of stability for the frames of K5 + axiom", [&] {
        StabilityWitness w = stability_witness(modal_arg(o.axiom));
        r.put("case", stability_case_name(w.kind));
        r.put("formula", to_string(w.a));
        r.put("sentence", to_string(w.b));
        r.put("procedure", "stability witness by seriality case");
        return kPositive;
    });
    c->add_option("--axiom", o.axiom, "Axiom text or file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    if (max_frames) limits().max_frames = max_frames;
    if (max_search) limits().max_search_nodes = max_search;
    if (max_positions) limits().max_game_positions = max_positions;

    int code = kUsage;
    try {
        code = run();
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const PreconditionViolated& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const NotACongruence& e) {
        std::cerr << "not a congruence: " << e.what() << "\n";
        return kNegative;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::cout << r.text();
    if (digest) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(r.text())));
        std::cout << "digest: " << buf << "\n";
    }
    return code;
}
