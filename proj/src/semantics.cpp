#include "euclid/semantics.hpp"

#include "euclid/errors.hpp"
#include "euclid/limits.hpp"

#include <cstdint>
#include <unordered_map>

namespace euclid {

namespace {

// Modal formulas flattened to a post-order program; shared subterms are
// evaluated once.
struct ModalOp {
    ModalKind kind;
    int a = -1;
    int b = -1;
    int var = -1;
};

struct ModalProgram {
    std::vector<ModalOp> ops;
    std::vector<std::string> vars;  // sorted
};

class ModalCompiler {
public:
    explicit ModalCompiler(const ModalFormula& phi) {
        auto m = measures(phi);
        prog_.vars.assign(m.vars.begin(), m.vars.end());
        for (std::size_t i = 0; i < prog_.vars.size(); ++i) var_index_[prog_.vars[i]] = static_cast<int>(i);
        compile(phi);
    }
    ModalProgram take() { return std::move(prog_); }

private:
    int compile(const ModalFormula& f) {
        auto it = memo_.find(f.identity());
        if (it != memo_.end()) return it->second;
        ModalOp op{f.kind()};
        switch (f.kind()) {
            case ModalKind::Var: op.var = var_index_.at(f.name()); break;
            case ModalKind::Bot: break;
            case ModalKind::Not:
            case ModalKind::Box: op.a = compile(f.sub()); break;
            case ModalKind::Or:
                op.a = compile(f.left());
                op.b = compile(f.right());
                break;
        }
        prog_.ops.push_back(op);
        int id = static_cast<int>(prog_.ops.size()) - 1;
        memo_[f.identity()] = id;
        return id;
    }

    ModalProgram prog_;
    std::unordered_map<std::string, int> var_index_;
    std::unordered_map<const void*, int> memo_;
};

std::vector<char> evaluate(const Frame& f, const ModalProgram& p, const std::vector<std::vector<char>>& val) {
    const std::size_t n = f.size();
    std::vector<std::vector<char>> res(p.ops.size());
    for (std::size_t i = 0; i < p.ops.size(); ++i) {
        const ModalOp& op = p.ops[i];
        std::vector<char>& r = res[i];
        switch (op.kind) {
            case ModalKind::Var: r = val[static_cast<std::size_t>(op.var)]; break;
            case ModalKind::Bot: r.assign(n, 0); break;
            case ModalKind::Not:
                r = res[static_cast<std::size_t>(op.a)];
                for (auto& c : r) c = !c;
                break;
            case ModalKind::Or: {
                const auto& x = res[static_cast<std::size_t>(op.a)];
                const auto& y = res[static_cast<std::size_t>(op.b)];
                r.assign(n, 0);
                for (std::size_t w = 0; w < n; ++w) r[w] = x[w] || y[w];
                break;
            }
            case ModalKind::Box: {
                const auto& x = res[static_cast<std::size_t>(op.a)];
                r.assign(n, 1);
                for (std::size_t w = 0; w < n; ++w) {
                    for (std::size_t t : f.succ(w)) {
                        if (!x[t]) {
                            r[w] = 0;
                            break;
                        }
                    }
                }
                break;
            }
        }
    }
    return res.back();
}

std::vector<std::vector<char>> valuation_table(const Frame& f, const Valuation& v, const ModalProgram& p) {
    std::vector<std::vector<char>> val;
    for (const auto& name : p.vars) {
        auto it = v.find(name);
        if (it == v.end()) throw UncoveredVariable("valuation does not cover variable " + name);
        std::vector<char> row(f.size(), 0);
        for (const auto& w : it->second) row[f.index(w)] = 1;
        val.push_back(std::move(row));
    }
    return val;
}

// Three-valued evaluation over partial valuations, one bit per world.
class ValuationSearch {
public:
    ValuationSearch(const Frame& f, const ModalProgram& p, Budget& budget)
        : f_(f), p_(p), budget_(budget), n_(f.size()) {
        succ_.assign(n_, 0);
        for (std::size_t w = 0; w < n_; ++w) {
            for (std::size_t t : f.succ(w)) succ_[w] |= bit(t);
        }
        all_ = n_ == 64 ? ~std::uint64_t{0} : (bit(n_) - 1);
        t_.assign(p.vars.size(), 0);
        fl_.assign(p.vars.size(), 0);
        rt_.assign(p.ops.size(), 0);
        rf_.assign(p.ops.size(), 0);
    }

    // A valuation falsifying the program at world s, if any.
    std::optional<std::vector<std::uint64_t>> falsify_at(std::size_t s) {
        std::uint64_t reach = 0;
        std::vector<std::size_t> stack{s};
        reach |= bit(s);
        while (!stack.empty()) {
            std::size_t w = stack.back();
            stack.pop_back();
            for (std::size_t t : f_.succ(w)) {
                if (!(reach & bit(t))) {
                    reach |= bit(t);
                    stack.push_back(t);
                }
            }
        }
        order_.clear();
        for (std::size_t i = p_.vars.size(); i-- > 0;) {
            for (std::size_t w = n_; w-- > 0;) {
                if (reach & bit(w)) order_.emplace_back(i, w);
            }
        }
        std::fill(t_.begin(), t_.end(), 0);
        std::fill(fl_.begin(), fl_.end(), 0);
        // Worlds outside the generated subframe are fixed to false.
        for (auto& m : fl_) m = all_ & ~reach;
        s_ = s;
        if (dfs(0)) return t_;
        return std::nullopt;
    }

private:
    static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

    std::uint64_t box_true(std::uint64_t x) const {
        std::uint64_t r = 0;
        for (std::size_t w = 0; w < n_; ++w) {
            if ((succ_[w] & ~x) == 0) r |= bit(w);
        }
        return r;
    }

    std::uint64_t box_false(std::uint64_t x) const {
        std::uint64_t r = 0;
        for (std::size_t w = 0; w < n_; ++w) {
            if (succ_[w] & x) r |= bit(w);
        }
        return r;
    }

    void eval() {
        for (std::size_t i = 0; i < p_.ops.size(); ++i) {
            const ModalOp& op = p_.ops[i];
            auto a = static_cast<std::size_t>(op.a);
            auto b = static_cast<std::size_t>(op.b);
            switch (op.kind) {
                case ModalKind::Var:
                    rt_[i] = t_[static_cast<std::size_t>(op.var)];
                    rf_[i] = fl_[static_cast<std::size_t>(op.var)];
                    break;
                case ModalKind::Bot:
                    rt_[i] = 0;
                    rf_[i] = all_;
                    break;
                case ModalKind::Not:
                    rt_[i] = rf_[a];
                    rf_[i] = rt_[a];
                    break;
                case ModalKind::Or:
                    rt_[i] = rt_[a] | rt_[b];
                    rf_[i] = rf_[a] & rf_[b];
                    break;
                case ModalKind::Box:
                    rt_[i] = box_true(rt_[a]);
                    rf_[i] = box_false(rf_[a]);
                    break;
            }
        }
    }

    bool dfs(std::size_t k) {
        budget_.tick();
        eval();
        if (rt_.back() & bit(s_)) return false;
        if (rf_.back() & bit(s_)) return true;
        if (k == order_.size()) return false;
        auto [v, w] = order_[k];
        fl_[v] |= bit(w);
        if (dfs(k + 1)) return true;
        fl_[v] &= ~bit(w);
        t_[v] |= bit(w);
        if (dfs(k + 1)) return true;
        t_[v] &= ~bit(w);
        return false;
    }

    const Frame& f_;
    const ModalProgram& p_;
    Budget& budget_;
    std::size_t n_;
    std::size_t s_ = 0;
    std::uint64_t all_ = 0;
    std::vector<std::uint64_t> succ_, t_, fl_, rt_, rf_;
    std::vector<std::pair<std::size_t, std::size_t>> order_;
};

// First-order formulas with variables resolved to slots.
struct FOOp {
    FOKind kind;
    std::size_t x = 0, y = 0;
    int a = -1, b = -1;
};

struct FOProgram {
    std::vector<FOOp> ops;
    std::vector<std::string> slots;
    int root = -1;
};

int compile_fo(const FOFormula& f, FOProgram& p, std::map<std::string, std::size_t>& slot) {
    auto slot_of = [&](const std::string& v) {
        auto [it, fresh] = slot.emplace(v, p.slots.size());
        if (fresh) p.slots.push_back(v);
        return it->second;
    };
    FOOp op{f.kind()};
    switch (f.kind()) {
        case FOKind::Rel:
        case FOKind::Eq:
            op.x = slot_of(f.x());
            op.y = slot_of(f.y());
            break;
        case FOKind::Not: op.a = compile_fo(f.sub(), p, slot); break;
        case FOKind::Or:
            op.a = compile_fo(f.left(), p, slot);
            op.b = compile_fo(f.right(), p, slot);
            break;
        case FOKind::Forall:
            op.x = slot_of(f.x());
            op.a = compile_fo(f.sub(), p, slot);
            break;
    }
    p.ops.push_back(op);
    return static_cast<int>(p.ops.size()) - 1;
}

class FOEvaluator {
public:
    FOEvaluator(const Frame& f, const FOProgram& p)
        : f_(f), p_(p), budget_(limits().max_search_nodes, "first-order evaluation") {}

    bool eval(int i, std::vector<std::size_t>& env) {
        const FOOp& op = p_.ops[static_cast<std::size_t>(i)];
        switch (op.kind) {
            case FOKind::Rel: return f_.edge(env[op.x], env[op.y]);
            case FOKind::Eq: return env[op.x] == env[op.y];
            case FOKind::Not: return !eval(op.a, env);
            case FOKind::Or: return eval(op.a, env) || eval(op.b, env);
            case FOKind::Forall: {
                std::size_t saved = env[op.x];
                bool all = true;
                for (std::size_t w = 0; w < f_.size() && all; ++w) {
                    budget_.tick();
                    env[op.x] = w;
                    all = eval(op.a, env);
                }
                env[op.x] = saved;
                return all;
            }
        }
        return false;
    }

private:
    const Frame& f_;
    const FOProgram& p_;
    Budget budget_;
};

FOProgram compile_fo(const FOFormula& a) {
    FOProgram p;
    std::map<std::string, std::size_t> slot;
    p.root = compile_fo(a, p, slot);
    return p;
}

}  // namespace

WorldSet truth_set(const Frame& f, const Valuation& v, const ModalFormula& phi) {
    ModalProgram p = ModalCompiler(phi).take();
    auto val = valuation_table(f, v, p);
    auto r = evaluate(f, p, val);
    WorldSet out;
    for (std::size_t w = 0; w < f.size(); ++w) {
        if (r[w]) out.insert(f.world(w));
    }
    return out;
}

bool sat_modal(const Frame& f, const Valuation& v, const World& s, const ModalFormula& phi) {
    std::size_t i = f.index(s);
    ModalProgram p = ModalCompiler(phi).take();
    auto val = valuation_table(f, v, p);
    return evaluate(f, p, val)[i] != 0;
}

ModalValidity valid_modal(const Frame& f, const ModalFormula& phi) {
    if (f.size() > 64) throw ResourceLimit("modal validity is limited to frames of at most 64 worlds");
    Budget budget(limits().max_search_nodes, "valuation search");
    std::vector<std::string> all_vars;
    {
        auto m = measures(phi);
        all_vars.assign(m.vars.begin(), m.vars.end());
    }
    for (const ModalFormula& part : conjuncts(phi)) {
        ModalProgram p = ModalCompiler(part).take();
        ValuationSearch search(f, p, budget);
        for (std::size_t s = 0; s < f.size(); ++s) {
            auto hit = search.falsify_at(s);
            if (!hit) continue;
            ModalCounterexample cx;
            cx.world = f.world(s);
            for (const auto& name : all_vars) cx.valuation[name];
            for (std::size_t i = 0; i < p.vars.size(); ++i) {
                for (std::size_t w = 0; w < f.size(); ++w) {
                    if ((*hit)[i] >> w & 1u) cx.valuation[p.vars[i]].insert(f.world(w));
                }
            }
            return {false, std::move(cx)};
        }
    }
    return {};
}

bool sat_fo(const Frame& f, const Assignment& g, const FOFormula& a) {
    FOProgram p = compile_fo(a);
    auto fiv = measures(a).fiv;
    std::vector<std::size_t> env(p.slots.size(), 0);
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
        auto it = g.find(p.slots[i]);
        if (it != g.end()) env[i] = f.index(it->second);
        else if (fiv.count(p.slots[i])) throw UncoveredVariable("assignment does not cover variable " + p.slots[i]);
    }
    FOEvaluator ev(f, p);
    return ev.eval(p.root, env);
}

bool valid_fo(const Frame& f, const FOFormula& a) {
    FOFormula closed = a;
    auto fiv = measures(a).fiv;
    for (auto it = fiv.rbegin(); it != fiv.rend(); ++it) closed = FOFormula::forall(*it, closed);
    return sat_fo(f, {}, closed);
}

bool validates_logic(const Frame& f, const ModalFormula& phi) {
    return is_euclidean(f) && valid_modal(f, phi).valid;
}

TheoryMembership theory_membership_bounded(const FOFormula& a, const ModalFormula& phi, std::size_t size_bound) {
    if (!is_sentence(a)) throw PreconditionViolated("theory membership needs a sentence");
    TheoryMembership out;
    for_each_euclidean_frame(size_bound, [&](const Frame& f) {
        if (!valid_modal(f, phi).valid) return true;
        ++out.frames_checked;
        if (!sat_fo(f, {}, a)) {
            out.holds = false;
            out.counterexample = f;
            return false;
        }
        return true;
    });
    return out;
}

}  // namespace euclid
