// One line per acceptance criterion: "criterion N: PASS|FAIL (...)".
// Exit status is non-zero when any criterion fails.

#include "euclid/characteristic.hpp"
#include "euclid/classifier.hpp"
#include "euclid/definability.hpp"
#include "euclid/errors.hpp"
#include "euclid/interpretations.hpp"
#include "euclid/morphisms.hpp"
#include "euclid/reductions.hpp"
#include "euclid/semantics.hpp"

#include "../support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

using namespace euclid;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

void fail(Result& r, const std::string& why) {
    if (r.pass) r.detail = why;
    r.pass = false;
}

std::string idx_str(FlowerIndex p) { return "(" + std::to_string(p.m) + "," + std::to_string(p.n) + ")"; }

const ModalFormula& k45() {
    static const ModalFormula phi = parse_modal("box p -> box box p");
    return phi;
}

Result flower_taxonomy() {
    Result r;
    int checked = 0;
    for (int m = 1; m <= 6; ++m)
        for (int n = -1; n <= 6; ++n) {
            bool simple = is_simple(flower_galaxy({m, n}));
            if (simple != oracle::flower_simple_closed_form(m, n)) fail(r, "mismatch at " + idx_str({m, n}));
            ++checked;
        }
    if (r.pass) r.detail = std::to_string(checked) + " flowers";
    return r;
}

Result morphism_lattice() {
    Result r;
    int checked = 0;
    for (int m = 1; m <= 4; ++m)
        for (int n = -1; n <= 3; ++n)
            for (int m2 = 1; m2 <= 4; ++m2)
                for (int n2 = -1; n2 <= 3; ++n2) {
                    bool found = find_surjective_bm(flower({m2, n2}), flower({m, n})).has_value();
                    if (found != oracle::flower_image_closed_form(m, n, m2, n2))
                        fail(r, idx_str({m2, n2}) + " onto " + idx_str({m, n}));
                    ++checked;
                }
    if (r.pass) r.detail = std::to_string(checked) + " ordered pairs";
    return r;
}

// Some valuation falsifies chi at world s of f. The conjuncts force every
// world seen from s to carry exactly one of the formula's variables, so it
// is enough to try every labelling of those worlds.
bool jf_falsifiable_at(const Frame& f, std::size_t s, const ModalFormula& chi) {
    auto m = measures(chi);
    std::vector<std::string> vars(m.vars.begin(), m.vars.end());
    Frame sub = generated_subframe(f, f.world(s));
    const std::size_t root = sub.index(f.world(s));
    if (vars.empty()) return !oracle::modal_true(sub, vars, {}, root, chi);
    const std::size_t n = sub.size(), k = vars.size();
    std::vector<std::size_t> label(n, 0);
    while (true) {
        std::vector<std::uint64_t> val(k, 0);
        for (std::size_t w = 0; w < n; ++w) val[label[w]] |= std::uint64_t{1} << w;
        if (!oracle::modal_true(sub, vars, val, root, chi)) return true;
        std::size_t i = 0;
        while (i < n && ++label[i] == k) label[i++] = 0;
        if (i == n) return false;
    }
}

Result jankov_fine_checks() {
    Result r;
    int own = 0;
    for (int m = 0; m <= 5; ++m)
        for (int n = -1; m + n <= 5; ++n) {
            if (m == 0 && n != 0) continue;
            if (valid_modal(flower({m, n}), jankov_fine({m, n})).valid) fail(r, idx_str({m, n}) + " validates its formula");
            ++own;
        }
    std::vector<FlowerIndex> idx;
    for (int m = 0; m <= 4; ++m)
        for (int n = -1; m + n <= 3; ++n)
            if (m != 0 || n == 0) idx.push_back({m, n});
    std::vector<ModalFormula> chis;
    std::vector<Frame> targets;
    std::vector<WorldSet> gens;
    for (const auto& p : idx) {
        chis.push_back(jankov_fine(p));
        targets.push_back(flower(p));
        if (p.m >= 1 && p.n >= 0) gens.push_back({"0"});
        else gens.emplace_back(targets.back().worlds().begin(), targets.back().worlds().end());
    }
    std::size_t triples = 0, frames = 0;
    for (const auto& f : enumerate_euclidean_frames(5)) {
        ++frames;
        for (std::size_t s = 0; s < f.size(); ++s) {
            Frame sub = generated_subframe(f, f.world(s));
            for (std::size_t i = 0; i < idx.size(); ++i) {
                bool lhs = jf_falsifiable_at(f, s, chis[i]);
                bool rhs = find_surjective_bm(sub, targets[i], {{f.world(s), gens[i]}}).has_value();
                if (lhs != rhs) fail(r, "biconditional fails for " + idx_str(idx[i]) + " on a " +
                                            std::to_string(f.size()) + "-world frame");
                ++triples;
            }
        }
    }
    if (r.pass)
        r.detail = std::to_string(own) + " flowers, " + std::to_string(frames) + " frames, " + std::to_string(triples) +
                   " frame/world/index triples";
    return r;
}

Result rooted_translation_checks() {
    Result r;
    const auto& pool = oracle::sentence_pool();
    if (pool.size() < 20) fail(r, "pool too small");
    std::size_t cases = 0;
    std::vector<FOFormula> sentences;
    for (const auto& s : pool) sentences.push_back(parse_fo(s));
    for (const auto& f : enumerate_euclidean_frames(4)) {
        std::vector<Frame> subs;
        for (const auto& w : f.worlds()) subs.push_back(generated_subframe(f, w));
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            const FOFormula& a = sentences[i];
            if (measures(a).qd > 3) fail(r, "pool sentence deeper than 3: " + pool[i]);
            std::string x = fresh_variable({a});
            bool lhs = sat_fo(f, {}, FOFormula::forall(x, rooted_translation(x, a)));
            bool rhs = std::all_of(subs.begin(), subs.end(), [&](const Frame& g) { return oracle::fo_sentence_true(g, a); });
            if (lhs != rhs) fail(r, "mismatch for " + pool[i]);
            ++cases;
        }
    }
    if (r.pass) r.detail = std::to_string(pool.size()) + " sentences, " + std::to_string(cases) + " frame/sentence pairs";
    return r;
}

std::size_t preimage(const Galaxy& g, const WorldSet& img) {
    std::size_t n = 0;
    for (const auto& [s, im] : g.rho) n += im == img ? 1 : 0;
    return n;
}

bool counts_bounded(const Galaxy& g, std::size_t q) {
    if (preimage(g, {}) > q || preimage(g, g.lower) > q) return false;
    for (const auto& b : g.lower) {
        WorldSet rest = g.lower;
        rest.erase(b);
        if (preimage(g, {b}) > q || preimage(g, rest) > q) return false;
    }
    return true;
}

Result reduction_checks() {
    Result r;
    const std::size_t q = 3;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> part(1, 6);
    int alpha = 0, gamma = 0, delta = 0;
    for (int i = 0; i < 100; ++i) {
        Galaxy g = oracle::random_galaxy(rng, part(rng), part(rng));
        auto out = alpha_reduce_certified(g, q);
        auto chk = validate_certificate(out.certificate, galaxy_to_frame(g), galaxy_to_frame(out.galaxy));
        if (!chk.ok()) fail(r, "alpha certificate rejected: " + chk.detail);
        if (!counts_bounded(out.galaxy, q)) fail(r, "alpha preimage bound violated");
        if (out.galaxy.lower != g.lower) fail(r, "alpha changed the lower part");
        ++alpha;
    }
    for (int i = 0; i < 100; ++i) {
        Galaxy g = alpha_reduce(oracle::random_simple_galaxy(rng, part(rng), part(rng)), q);
        if (!gamma_applicable(g, q)) {
            fail(r, "alpha output of a simple galaxy not eligible for gamma");
            continue;
        }
        auto out = gamma_reduce_certified(g, q);
        auto chk = validate_certificate(out.certificate, galaxy_to_frame(g), galaxy_to_frame(out.galaxy));
        if (!chk.ok()) fail(r, "gamma certificate rejected: " + chk.detail);
        if (!is_simple(out.galaxy) || !counts_bounded(out.galaxy, q)) fail(r, "gamma output bound violated");
        if (out.galaxy.lower.size() > q * (q + 1) * (q + 1)) fail(r, "gamma lower size bound violated");
        if (out.galaxy.upper.size() > 2 * q * (q * (q + 1) * (q + 1) + 1)) fail(r, "gamma upper size bound violated");
        ++gamma;
    }
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<int> kinds(1, 3), copies(1, 5), small(1, 3);
        std::vector<Galaxy> family;
        const int nk = kinds(rng);
        for (int k = 0; k < nk; ++k) {
            Galaxy base = oracle::random_galaxy(rng, small(rng), small(rng));
            const int c = copies(rng);
            for (int j = 0; j < c; ++j)
                family.push_back(rename(base, [k, j](const World& w) {
                    return "k" + std::to_string(k) + "c" + std::to_string(j) + w;
                }));
        }
        auto out = delta_reduce_certified(family, q);
        std::vector<Frame> in_frames, out_frames;
        std::size_t biggest = 1;
        for (const auto& g : family) {
            in_frames.push_back(galaxy_to_frame(g));
            biggest = std::max({biggest, g.upper.size(), g.lower.size()});
        }
        for (const auto& g : out.family) out_frames.push_back(galaxy_to_frame(g));
        auto chk = validate_certificate(out.certificate, disjoint_union(in_frames), disjoint_union(out_frames));
        if (!chk.ok()) fail(r, "delta certificate rejected: " + chk.detail);
        // At most q members per isomorphism class.
        std::map<std::string, std::size_t> per_class;
        for (const auto& f : out_frames) {
            if (++per_class[canonical_code(f)] > q) fail(r, "delta kept more than q isomorphic members");
        }
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, biggest * biggest);
        mpz_class cap = mpz_class(static_cast<unsigned long>(q)) * (biggest + 1) * (biggest + 1) * pow2;
        if (mpz_class(static_cast<unsigned long>(out.family.size())) > cap) fail(r, "delta family size bound violated");
        ++delta;
    }
    if (r.pass)
        r.detail = std::to_string(alpha) + " alpha, " + std::to_string(gamma) + " gamma, " + std::to_string(delta) +
                   " delta cases";
    return r;
}

Result classifier_checks() {
    Result r;
    struct Case {
        const char* axiom;
        bool decidable;
        std::size_t k;  // 0 when not pinned
    };
    double slowest = 0;
    for (const Case& c : {Case{"top", false, 0}, Case{"box p -> box box p", true, 4}, Case{"dia top", false, 0},
                          Case{"box bot", true, 0}}) {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = classify(parse_modal(c.axiom));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        if (rep.decidable != c.decidable) fail(r, std::string("wrong verdict for ") + c.axiom);
        if (c.k && rep.k != c.k) fail(r, std::string("wrong k for ") + c.axiom);
        if (secs >= 1.0) fail(r, std::string("over 1 s for ") + c.axiom);
    }
    if (r.pass) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "4 axioms, slowest %.3f s", slowest);
        r.detail = buf;
    }
    return r;
}

Result definability_negative() {
    Result r;
    auto a = parse_fo("exists x . exists y . x != y");
    Verdict v = decide_definability(a, k45(), 3);
    if (v.outcome != Outcome::Negative) fail(r, std::string("outcome ") + outcome_name(v.outcome));
    else if (!v.certificate || !v.certificate->frame) fail(r, "no frame certificate");
    else if (v.certificate->frame->size() != 2) fail(r, "certificate frame has " + std::to_string(v.certificate->frame->size()) + " worlds");
    else if (!revalidate_definability_certificate(*v.certificate, a, k45())) fail(r, "certificate does not re-validate");
    if (r.pass) r.detail = "not definable, 2-world certificate re-validates";
    return r;
}

// The synthesised formula is a conjunction of Jankov-Fine formulas (or top),
// so a frame validates it exactly when no world falsifies a conjunct, and
// each conjunct is decided by the labelling search.
bool validates_conjuncts(const Frame& f, const ModalFormula& psi) {
    for (const auto& chi : conjuncts(psi))
        for (std::size_t s = 0; s < f.size(); ++s)
            if (jf_falsifiable_at(f, s, chi)) return false;
    return true;
}

Result synthesis_round_trip() {
    Result r;
    std::vector<Frame> phi_frames;
    for (const auto& f : enumerate_euclidean_frames(5))
        if (oracle::modal_valid(f, k45())) phi_frames.push_back(f);
    std::size_t used = 0, skipped = 0;
    for (const auto& s : oracle::definability_pool()) {
        auto a = parse_fo(s);
        if (measures(a).qdd != 3) fail(r, "pool sentence without qdd 3: " + s);
        Verdict v = decide_definability(a, k45(), 5);
        if (v.outcome == Outcome::Negative) {
            ++skipped;
            continue;
        }
        ModalFormula psi = synth_defining_formula(a, k45(), 5);
        IndexSet expected = sla_set(a, k45());
        std::vector<ModalFormula> parts = conjuncts(psi);
        if (!(expected.empty() ? psi == ModalFormula::top() : parts.size() == expected.size()))
            fail(r, "unexpected shape of the synthesised formula for " + s);
        for (const auto& f : phi_frames)
            if (validates_conjuncts(f, psi) != oracle::fo_sentence_true(f, a)) fail(r, "disagreement for " + s);
        ++used;
    }
    if (used == 0) fail(r, "no sentence judged definable or provisional");
    if (r.pass)
        r.detail = std::to_string(used) + " sentences synthesised, " + std::to_string(skipped) + " not definable, " +
                   std::to_string(phi_frames.size()) + " frames";
    return r;
}

Result interpretation_round_trip() {
    Result r;
    std::size_t checked = 0;
    for (Flavor fl : {Flavor::K2, Flavor::L2}) {
        InterpretationScheme scheme = interpretation_scheme(fl);
        for (std::size_t n = 2; n <= 4; ++n) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
            for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
                std::vector<World> ws;
                for (std::size_t i = 0; i < n; ++i) ws.push_back("v" + std::to_string(i));
                std::vector<std::pair<World, World>> es;
                for (std::size_t e = 0; e < pairs.size(); ++e)
                    if (mask >> e & 1) {
                        es.emplace_back(ws[pairs[e].first], ws[pairs[e].second]);
                        es.emplace_back(ws[pairs[e].second], ws[pairs[e].first]);
                    }
                Frame f(ws, es);
                Frame d = decode(encode(f, fl), scheme);
                if (!are_isomorphic(d, f)) fail(r, std::string(flavor_name(fl)) + " round trip fails on " + std::to_string(n) + " worlds");
                ++checked;
            }
        }
    }
    if (r.pass) r.detail = std::to_string(checked) + " labelled frames over both flavours";
    return r;
}

// 2q(QK+1)^2 2^((QK)^2) QK with Q = 2q(q(q+1)^2+1), K = 2^k, written out
// with mpz primitives only.
mpz_class independent_bound(unsigned long q, unsigned long k) {
    mpz_class big_q = 2 * q * (q * (q + 1) * (q + 1) + 1);
    mpz_class big_k;
    mpz_ui_pow_ui(big_k.get_mpz_t(), 2, k);
    mpz_class qk = big_q * big_k;
    mpz_class pow2;
    mpz_pow_ui(pow2.get_mpz_t(), mpz_class(2).get_mpz_t(), mpz_class(qk * qk).get_ui());
    return mpz_class(2 * q) * (qk + 1) * (qk + 1) * pow2 * qk;
}

Result bound_arithmetic() {
    Result r;
    const std::size_t frozen = 6661088;
    mpz_class b = bound(3, 4);
    if (b != independent_bound(3, 4)) fail(r, "differs from the independent evaluation");
    std::size_t digits = decimal_digits(b);
    if (digits != frozen) fail(r, "digit count " + std::to_string(digits));
    // log10 cross-check: QK = 294 * 16 = 4704.
    const double qk = 4704.0;
    double lg = std::log10(6.0) + 2 * std::log10(qk + 1) + qk * qk * std::log10(2.0) + std::log10(qk);
    if (static_cast<std::size_t>(std::floor(lg)) + 1 != frozen) fail(r, "log10 estimate disagrees");
    if (r.pass) r.detail = "bound(3,4) has " + std::to_string(digits) + " digits";
    return r;
}

Result ef_soundness() {
    Result r;
    std::vector<Frame> frames;
    std::map<std::string, bool> seen;
    std::size_t labelled = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& f : oracle::all_frames(n)) {
            ++labelled;
            if (!seen.emplace(canonical_code(f), true).second) continue;
            frames.push_back(f);
        }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < frames.size(); ++i)
        for (std::size_t j = i; j < frames.size(); ++j)
            for (std::size_t q = 1; q <= 2; ++q) {
                if (q_equivalent(frames[i], frames[j], q) != oracle::sentence_equivalent(frames[i], frames[j], q))
                    fail(r, "disagreement at depth " + std::to_string(q));
                ++pairs;
            }
    if (r.pass)
        r.detail = std::to_string(labelled) + " labelled frames, " + std::to_string(frames.size()) +
                   " up to isomorphism, " + std::to_string(pairs) + " pair/depth checks";
    return r;
}

struct Criterion {
    int number;
    const char* name;
    double limit_seconds;  // 0 when untimed
    std::function<Result()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "flower taxonomy", 1, flower_taxonomy},
        {2, "bounded-morphism lattice", 60, morphism_lattice},
        {3, "Jankov-Fine formulas", 0, jankov_fine_checks},
        {4, "rooted translation", 0, rooted_translation_checks},
        {5, "reductions", 300, reduction_checks},
        {6, "classifier", 0, classifier_checks},
        {7, "definability negative certificate", 0, definability_negative},
        {8, "synthesis round trip", 600, synthesis_round_trip},
        {9, "interpretations", 0, interpretation_round_trip},
        {10, "bound arithmetic", 0, bound_arithmetic},
        {11, "game soundness", 0, ef_soundness},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Result res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            fail(res, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", secs, c.limit_seconds);
            fail(res, buf);
        }
        if (!res.pass) ++failures;
        std::printf("criterion %d: %s (%s; %s; %.2f s)\n", c.number, res.pass ? "PASS" : "FAIL", c.name,
                    res.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
