#include "euclid/reductions.hpp"

#include "euclid/errors.hpp"

#include <algorithm>
#include <sstream>

namespace euclid {

namespace {

void require_q(std::size_t q) {
    if (q < 3) throw InvalidBudget("reductions need q >= 3, got " + std::to_string(q));
}

WorldMap identity_map(const Frame& f) {
    WorldMap m;
    for (const auto& w : f.worlds()) m[w] = w;
    return m;
}

// Classification used for preimage counts; a set may be both a singleton
// and a co-singleton, in which case both counts see it.
bool is_single(const Galaxy& g, const WorldSet& img) { return img.size() == 1 && !g.lower.empty(); }
bool is_cosingle(const Galaxy& g, const WorldSet& img) { return g.lower.size() == img.size() + 1; }

World missing_point(const Galaxy& g, const WorldSet& img) {
    for (const auto& b : g.lower) {
        if (!img.count(b)) return b;
    }
    return {};
}

struct PreimageCounts {
    std::size_t empty = 0, full = 0;
    std::map<World, std::size_t, NaturalLess> single, cosingle;
};

PreimageCounts preimage_counts(const Galaxy& g) {
    PreimageCounts c;
    for (const auto& b : g.lower) {
        c.single[b] = 0;
        c.cosingle[b] = 0;
    }
    for (const auto& [s, img] : g.rho) {
        if (img.empty()) ++c.empty;
        if (img.size() == g.lower.size()) ++c.full;
        if (is_single(g, img)) ++c.single[*img.begin()];
        if (is_cosingle(g, img)) ++c.cosingle[missing_point(g, img)];
    }
    return c;
}

std::string check_morphism(const WorldMap& m, const Frame& src, const Frame& tgt) {
    if (!is_bounded_morphism(m, src, tgt)) return "not a bounded morphism";
    if (!is_surjective(m, tgt)) return "not surjective";
    return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificates

CertificateCheck validate_certificate(const ReductionCertificate& c, const Frame& input, const Frame& output) {
    CertificateCheck r;
    if (c.morphism) {
        std::string why = check_morphism(*c.morphism, input, output);
        r.morphism_ok = why.empty();
        if (!why.empty()) r.detail = "global map: " + why;
    } else if (!c.local.empty()) {
        WorldSet covered;
        r.morphism_ok = true;
        for (const auto& lw : c.local) {
            if (!input.contains(lw.source_world) || !output.contains(lw.target_world)) {
                r.morphism_ok = false;
                r.detail = "witness names an unknown world";
                break;
            }
            Frame src = generated_subframe(input, lw.source_world);
            Frame tgt = generated_subframe(output, lw.target_world);
            std::string why = check_morphism(lw.map, src, tgt);
            if (!why.empty()) {
                r.morphism_ok = false;
                r.detail = "witness for " + lw.target_world + ": " + why;
                break;
            }
            covered.insert(lw.target_world);
        }
        if (r.morphism_ok && covered.size() != output.size()) {
            r.morphism_ok = false;
            r.detail = "some output world has no witness";
        }
    } else {
        r.detail = "certificate carries no morphism";
    }
    r.game_ok = ef_second_player_wins(input, output, c.q);
    if (!r.game_ok) r.detail += (r.detail.empty() ? "" : "; ") + std::string("game lost at budget ") + std::to_string(c.q);
    return r;
}

std::string format_certificate(const ReductionCertificate& c) {
    std::string out = "ef-budget " + std::to_string(c.q) + "\n";
    if (c.morphism) {
        for (const auto& [s, t] : *c.morphism) out += "map " + s + " " + t + "\n";
    }
    for (const auto& lw : c.local) {
        out += "witness " + lw.target_world + " " + lw.source_world + "\n";
        for (const auto& [s, t] : lw.map) out += "wmap " + s + " " + t + "\n";
    }
    return out;
}

ReductionCertificate parse_certificate(const std::string& text) {
    ReductionCertificate c;
    std::istringstream in(text);
    std::string line;
    bool budget = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string w;
        while (ls >> w) t.push_back(w);
        if (t.empty() || t[0][0] == '#') continue;
        if (t[0] == "ef-budget" && t.size() == 2) {
            c.q = std::stoul(t[1]);
            budget = true;
        } else if (t[0] == "map" && t.size() == 3) {
            if (!c.morphism) c.morphism.emplace();
            (*c.morphism)[t[1]] = t[2];
        } else if (t[0] == "witness" && t.size() == 3) {
            c.local.push_back({t[1], t[2], {}});
        } else if (t[0] == "wmap" && t.size() == 3 && !c.local.empty()) {
            c.local.back().map[t[1]] = t[2];
        } else {
            throw MalformedInput("bad certificate line: " + line);
        }
    }
    if (!budget) throw MalformedInput("certificate lacks an ef-budget line");
    return c;
}

// ---------------------------------------------------------------------------
// Alpha

GalaxyReduction alpha_reduce_certified(const Galaxy& g, std::size_t q) {
    require_q(q);
    g.validate();
    std::map<WorldSet, std::vector<World>> classes;
    for (const auto& s : g.upper) classes[g.image(s)].push_back(s);  // upper is in natural order
    GalaxyReduction r;
    r.galaxy.lower = g.lower;
    WorldMap f;
    for (const auto& b : g.lower) f[b] = b;
    for (const auto& [img, members] : classes) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i < q) {
                r.galaxy.upper.insert(members[i]);
                r.galaxy.rho[members[i]] = img;
                f[members[i]] = members[i];
            } else {
                f[members[i]] = members[0];
            }
        }
    }
    r.certificate.q = q;
    r.certificate.morphism = std::move(f);
    return r;
}

Galaxy alpha_reduce(const Galaxy& g, std::size_t q) { return alpha_reduce_certified(g, q).galaxy; }

// ---------------------------------------------------------------------------
// Gamma

bool gamma_applicable(const Galaxy& g, std::size_t q) {
    if (!is_simple(g)) return false;
    PreimageCounts c = preimage_counts(g);
    if (c.empty > q || c.full > q) return false;
    for (const auto& [b, n] : c.single) {
        if (n > q) return false;
    }
    for (const auto& [b, n] : c.cosingle) {
        if (n > q) return false;
    }
    return true;
}

GalaxyReduction gamma_reduce_certified(const Galaxy& g, std::size_t q) {
    require_q(q);
    g.validate();
    if (!gamma_applicable(g, q)) {
        throw PreconditionViolated("gamma reduction needs a simple galaxy with preimage counts at most q");
    }
    PreimageCounts c = preimage_counts(g);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<World>> classes;
    for (const auto& b : g.lower) classes[{c.single[b], c.cosingle[b]}].push_back(b);
    GalaxyReduction r;
    for (const auto& [key, members] : classes) {
        for (std::size_t i = 0; i < members.size() && i < q; ++i) r.galaxy.lower.insert(members[i]);
    }
    const WorldSet& kept = r.galaxy.lower;
    for (const auto& s : g.upper) {
        const WorldSet& img = g.image(s);
        bool keep = img.empty() || img.size() == g.lower.size() ||
                    (is_single(g, img) && kept.count(*img.begin())) ||
                    (is_cosingle(g, img) && kept.count(missing_point(g, img)));
        if (!keep) continue;
        r.galaxy.upper.insert(s);
        WorldSet cut;
        for (const auto& b : img) {
            if (kept.count(b)) cut.insert(b);
        }
        r.galaxy.rho[s] = std::move(cut);
    }

    // Local witnesses: every output world is matched with itself in the
    // input; dropped lower worlds go to a kept lower world that the
    // generating world sees exactly when it saw the dropped one.
    Frame in = galaxy_to_frame(g);
    Frame out = galaxy_to_frame(r.galaxy);
    r.certificate.q = q;
    for (const auto& w : out.worlds()) {
        Frame src = generated_subframe(in, w);
        LocalWitness lw{w, w, {}};
        const WorldSet* seen_in = r.galaxy.upper.count(w) ? &g.image(w) : nullptr;
        const WorldSet* seen_out = seen_in ? &r.galaxy.image(w) : nullptr;
        for (const auto& x : src.worlds()) {
            if (x == w || kept.count(x)) {
                lw.map[x] = x;
                continue;
            }
            bool wanted = seen_in && seen_in->count(x);
            World target;
            for (const auto& t : kept) {
                bool has = seen_out && seen_out->count(t);
                if (has == wanted) {
                    target = t;
                    break;
                }
            }
            if (target.empty()) target = *kept.begin();
            lw.map[x] = target;
        }
        r.certificate.local.push_back(std::move(lw));
    }
    return r;
}

Galaxy gamma_reduce(const Galaxy& g, std::size_t q) { return gamma_reduce_certified(g, q).galaxy; }

// ---------------------------------------------------------------------------
// Delta

FamilyReduction delta_reduce_certified(const std::vector<Galaxy>& family, std::size_t q) {
    require_q(q);
    std::vector<Frame> frames;
    for (const auto& g : family) frames.push_back(galaxy_to_frame(g));
    {
        std::set<World> seen;
        for (const auto& f : frames) {
            for (const auto& w : f.worlds()) {
                if (!seen.insert(w).second) throw Overlap("galaxies of the family share world " + w);
            }
        }
    }
    // classes[c] lists family indices in increasing order.
    std::vector<std::vector<std::size_t>> classes;
    std::vector<WorldMap> to_rep(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        bool placed = false;
        for (auto& cls : classes) {
            const Frame& rep = frames[cls.front()];
            if (rep.size() != frames[i].size() || rep.edge_count() != frames[i].edge_count()) continue;
            if (auto iso = are_isomorphic(frames[i], rep)) {
                to_rep[i] = std::move(*iso);
                cls.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            classes.push_back({i});
            to_rep[i] = identity_map(frames[i]);
        }
    }
    FamilyReduction r;
    std::vector<char> keep(family.size(), 0);
    for (const auto& cls : classes) {
        for (std::size_t j = 0; j < cls.size() && j < q; ++j) keep[cls[j]] = 1;
    }
    WorldMap f;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (keep[i]) {
            r.kept.push_back(i);
            r.family.push_back(family[i]);
            for (const auto& w : frames[i].worlds()) f[w] = w;
        } else {
            for (const auto& [w, v] : to_rep[i]) f[w] = v;
        }
    }
    r.certificate.q = q;
    r.certificate.morphism = std::move(f);
    return r;
}

std::vector<Galaxy> delta_reduce(const std::vector<Galaxy>& family, std::size_t q) {
    return delta_reduce_certified(family, q).family;
}

// ---------------------------------------------------------------------------
// Pipeline

FrameReduction reduce_frame(const Frame& f, std::size_t q, std::size_t k) {
    require_q(q);
    if (k < 4) throw InvalidBudget("reduce_frame needs k >= 4, got " + std::to_string(k));
    std::vector<Galaxy> parts = frame_to_galaxies(f);

    WorldMap alpha_map;
    std::vector<Galaxy> after_alpha;
    for (const auto& g : parts) {
        GalaxyReduction a = alpha_reduce_certified(g, q);
        alpha_map.insert(a.certificate.morphism->begin(), a.certificate.morphism->end());
        after_alpha.push_back(std::move(a.galaxy));
    }

    std::vector<Galaxy> after_gamma;
    std::map<World, WorldMap, NaturalLess> gamma_local;  // output world -> map on its generated subframe
    bool gamma_changed = false;
    for (const auto& g : after_alpha) {
        if (!gamma_applicable(g, q)) {
            after_gamma.push_back(g);
            continue;
        }
        GalaxyReduction c = gamma_reduce_certified(g, q);
        if (c.galaxy.upper != g.upper || c.galaxy.lower != g.lower) gamma_changed = true;
        for (auto& lw : c.certificate.local) gamma_local[lw.target_world] = std::move(lw.map);
        after_gamma.push_back(std::move(c.galaxy));
    }

    FamilyReduction d = delta_reduce_certified(after_gamma, q);
    std::vector<Frame> out_parts;
    for (const auto& g : d.family) out_parts.push_back(galaxy_to_frame(g));
    Frame out = disjoint_union(out_parts);

    FrameReduction r{out, {}};
    r.certificate.q = q;
    if (!gamma_changed) {
        WorldMap composite;
        for (const auto& [w, v] : alpha_map) composite[w] = d.certificate.morphism->at(v);
        r.certificate.morphism = std::move(composite);
        return r;
    }
    // Delta keeps world names, so each output world is matched with itself
    // through every stage.
    for (const auto& w : out.worlds()) {
        Frame src = generated_subframe(f, w);
        LocalWitness lw{w, w, {}};
        auto it = gamma_local.find(w);
        for (const auto& x : src.worlds()) {
            const World& y = alpha_map.at(x);
            lw.map[x] = it == gamma_local.end() ? y : it->second.at(y);
        }
        r.certificate.local.push_back(std::move(lw));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bound

std::size_t bound_Q(std::size_t q) { return 2 * q * (q * (q + 1) * (q + 1) + 1); }

mpz_class bound(std::size_t q, std::size_t k) {
    if (q < 3 || k < 4) throw InvalidBudget("bound needs q >= 3 and k >= 4");
    mpz_class K = 1;
    K <<= static_cast<mp_bitcnt_t>(k);
    mpz_class QK = mpz_class(static_cast<unsigned long>(bound_Q(q))) * K;
    mpz_class sq = QK * QK;
    if (!sq.fits_ulong_p()) throw ResourceLimit("bound exponent too large");
    mpz_class r = 2 * mpz_class(static_cast<unsigned long>(q)) * (QK + 1) * (QK + 1) * QK;
    r <<= static_cast<mp_bitcnt_t>(sq.get_ui());
    return r;
}

std::size_t decimal_digits(const mpz_class& x) {
    if (x <= 0) return 1;
    std::size_t d = mpz_sizeinbase(x.get_mpz_t(), 10);  // exact or one too large
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(d - 1));
    return x < p ? d - 1 : d;
}

}  // namespace euclid
