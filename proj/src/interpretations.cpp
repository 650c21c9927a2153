#include "euclid/interpretations.hpp"

#include "euclid/errors.hpp"

#include <algorithm>
#include <map>

namespace euclid {

namespace {

using F = FOFormula;

F unmarked(const std::string& z) { return F::neg(F::exists("z", F::rel("z", z))); }

F image_is(Flavor flavor, const std::string& z, const std::string& a, const std::string& b) {
    return flavor == Flavor::K2 ? F::successors_are(z, a, b) : F::successors_are_complement(z, a, b);
}

F u_formula(Flavor flavor, const std::string& x1, const std::string& x2) {
    return F::conj_all({F::neq(x1, x2), F::rel(x1, x2), F::rel(x2, x1),
                        F::exists_exactly_two("y", F::conj(image_is(flavor, "y", x1, x2), unmarked("y")))});
}

F adjacency(Flavor flavor, const std::string& a, const std::string& b) {
    return F::exists_exactly_one("z", F::conj(image_is(flavor, "z", a, b), F::neg(F::exists("t", F::rel("t", "z")))));
}

bool has_reserved_char(const World& w) { return w.find('#') != World::npos || w.find('~') != World::npos; }

}  // namespace

const char* flavor_name(Flavor f) { return f == Flavor::K2 ? "k2" : "l2"; }

const char* stability_case_name(StabilityCase c) { return c == StabilityCase::Serial ? "serial" : "non-serial"; }

InterpretationScheme interpretation_scheme(Flavor flavor) {
    InterpretationScheme s;
    s.flavor = flavor;
    s.u = u_formula(flavor, "x1", "x2");
    s.e = F::conj_all({u_formula(flavor, "x1", "x2"), u_formula(flavor, "y1", "y2"),
                       F::pair_equal("x1", "x2", "y1", "y2")});
    s.a = F::conj_all({u_formula(flavor, "x1", "x2"), u_formula(flavor, "y1", "y2"),
                       F::pair_disjoint("x1", "x2", "y1", "y2"),
                       F::disj_all({adjacency(flavor, "x1", "y1"), adjacency(flavor, "x1", "y2"),
                                    adjacency(flavor, "x2", "y1"), adjacency(flavor, "x2", "y2")})});
    return s;
}

Galaxy encode(const Frame& f, Flavor flavor) {
    if (f.size() < 2) throw PreconditionViolated("encoding needs at least two worlds");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (has_reserved_char(f.world(i))) throw PreconditionViolated("world names may not contain '#' or '~'");
        if (f.edge(i, i)) throw PreconditionViolated("frame is not irreflexive");
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (f.edge(i, j) != f.edge(j, i)) throw PreconditionViolated("frame is not symmetric");
        }
    }
    Galaxy g;
    for (const auto& w : f.worlds()) {
        g.lower.insert(w + "#1");
        g.lower.insert(w + "#2");
    }
    auto image = [&](WorldSet pair) {
        if (flavor == Flavor::K2) return pair;
        WorldSet rest;
        for (const auto& b : g.lower) {
            if (!pair.count(b)) rest.insert(b);
        }
        return rest;
    };
    for (const auto& w : f.worlds()) {
        for (const char* tag : {"#3", "#4"}) {
            g.upper.insert(w + tag);
            g.rho[w + tag] = image({w + "#1", w + "#2"});
        }
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            if (!f.edge(i, j)) continue;
            World e = f.world(i) + "~" + f.world(j);
            g.upper.insert(e);
            g.rho[e] = image({f.world(i) + "#1", f.world(j) + "#1"});
        }
    }
    return g;
}

Frame decode(const Galaxy& g, const InterpretationScheme& scheme) {
    Frame f = galaxy_to_frame(g);
    const std::size_t n = f.size();
    std::vector<std::pair<World, World>> x;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (sat_fo(f, {{"x1", f.world(i)}, {"x2", f.world(j)}}, scheme.u)) x.emplace_back(f.world(i), f.world(j));
        }
    }
    if (x.empty()) throw PreconditionViolated("the interpreted domain is empty");

    const std::size_t m = x.size();
    auto args = [&](std::size_t a, std::size_t b) {
        return Assignment{{"x1", x[a].first}, {"x2", x[a].second}, {"y1", x[b].first}, {"y2", x[b].second}};
    };
    std::vector<char> eq(m * m), rel(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            eq[a * m + b] = sat_fo(f, args(a, b), scheme.e);
            rel[a * m + b] = sat_fo(f, args(a, b), scheme.a);
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (!eq[a * m + a]) throw NotACongruence("identification is not reflexive");
        for (std::size_t b = 0; b < m; ++b) {
            if (eq[a * m + b] != eq[b * m + a]) throw NotACongruence("identification is not symmetric");
            for (std::size_t c = 0; c < m; ++c) {
                if (eq[a * m + b] && eq[b * m + c] && !eq[a * m + c]) {
                    throw NotACongruence("identification is not transitive");
                }
            }
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t c = 0; c < m; ++c) {
                if (!eq[a * m + c]) continue;
                for (std::size_t d = 0; d < m; ++d) {
                    if (eq[b * m + d] && rel[a * m + b] != rel[c * m + d]) {
                        throw NotACongruence("adjacency is not compatible with the identification");
                    }
                }
            }
        }
    }

    // Classes in order of their least member.
    std::vector<std::size_t> cls(m, m);
    std::vector<std::size_t> reps;
    for (std::size_t a = 0; a < m; ++a) {
        if (cls[a] != m) continue;
        for (std::size_t b = a; b < m; ++b) {
            if (eq[a * m + b]) cls[b] = reps.size();
        }
        reps.push_back(a);
    }

    // A class {(s#1,s#2),(s#2,s#1)} is named s; otherwise classes are numbered.
    std::vector<World> names;
    for (std::size_t r : reps) {
        const auto& [p, q] = x[r];
        auto stem = [](const World& w) { return w.size() > 2 ? w.substr(0, w.size() - 2) : World(); };
        bool tagged = p.size() > 2 && q.size() > 2 && stem(p) == stem(q) && p[p.size() - 2] == '#' &&
                      q[q.size() - 2] == '#';
        names.push_back(tagged ? stem(p) : World());
    }
    std::vector<World> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    bool usable = std::find(names.begin(), names.end(), World()) == names.end() &&
                  std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (!usable) {
        for (std::size_t i = 0; i < names.size(); ++i) names[i] = "c" + std::to_string(i);
    }

    std::vector<std::pair<World, World>> edges;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (rel[reps[i] * m + reps[j]]) edges.emplace_back(names[i], names[j]);
        }
    }
    return Frame(names, edges);
}

std::optional<Frame> relativized_reduct(const Frame& f, const FOFormula& a, const std::string& y,
                                        const Assignment& params) {
    std::set<std::string> expected = measures(a).fiv;
    expected.erase(y);
    std::set<std::string> given;
    for (const auto& [var, w] : params) {
        given.insert(var);
        if (!f.contains(w)) throw WorldNotFound(w);
    }
    if (given != expected || params.count(y)) throw ArityMismatch("parameters do not match the free variables");
    WorldSet keep;
    Assignment g = params;
    for (const auto& t : f.worlds()) {
        g[y] = t;
        if (sat_fo(f, g, a)) keep.insert(t);
    }
    if (keep.empty()) return std::nullopt;
    return induced_subframe(f, keep);
}

StabilityWitness stability_witness(const ModalFormula& phi) {
    StabilityWitness w;
    w.kind = valid_modal(flower({0, 0}), phi).valid ? StabilityCase::NonSerial : StabilityCase::Serial;
    auto marked = [&](const std::string& v) {
        if (w.kind == StabilityCase::Serial) {
            return F::forall("x", F::iff(F::disj(F::rel("x", v), F::rel(v, "x")), F::eq("x", v)));
        }
        return F::forall("x", F::neg(F::rel(v, "x")));
    };
    w.a = F::impl(F::conj(marked("x1"), marked("x2")), F::conj(F::neq("y", "x1"), F::neq("y", "x2")));
    w.b = F::exists("x1", F::exists("x2", F::conj_all({marked("x1"), marked("x2"), F::neq("x1", "x2")})));
    return w;
}

Frame stability_padded_frame(const Frame& f, StabilityCase kind, std::vector<World>* added) {
    std::vector<World> worlds = f.worlds();
    std::vector<World> fresh;
    for (const char* base : {"s1", "s2"}) {
        World name = base;
        while (f.contains(name)) name += "'";
        fresh.push_back(name);
        worlds.push_back(name);
    }
    auto edges = f.edges();
    if (kind == StabilityCase::Serial) {
        for (const auto& s : fresh) edges.emplace_back(s, s);
    }
    if (added) *added = fresh;
    return Frame(worlds, edges);
}

Frame stability_one_point_frame(StabilityCase kind) {
    if (kind == StabilityCase::Serial) return Frame({"s"}, {{"s", "s"}});
    return Frame({"s"}, {});
}

}  // namespace euclid
