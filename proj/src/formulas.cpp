#include "euclid/formulas.hpp"

#include "euclid/errors.hpp"

#include <algorithm>
#include <functional>

namespace euclid {

// ---------------------------------------------------------------------------
// Modal formulas

struct ModalFormula::Node {
    ModalKind kind;
    std::string name;
    ModalFormula a;
    ModalFormula b;
};

ModalFormula::ModalFormula() : ModalFormula(bot()) {}

ModalFormula ModalFormula::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = ModalKind::Var;
    n->name = std::move(name);
    return ModalFormula(std::move(n));
}

ModalFormula ModalFormula::bot() {
    static const std::shared_ptr<const Node> shared = [] {
        return std::shared_ptr<const Node>(new Node{ModalKind::Bot, {}, ModalFormula(nullptr), ModalFormula(nullptr)});
    }();
    return ModalFormula(shared);
}

ModalFormula ModalFormula::neg(const ModalFormula& a) {
    return ModalFormula(std::shared_ptr<const Node>(new Node{ModalKind::Not, {}, a, ModalFormula(nullptr)}));
}

ModalFormula ModalFormula::disj(const ModalFormula& a, const ModalFormula& b) {
    return ModalFormula(std::shared_ptr<const Node>(new Node{ModalKind::Or, {}, a, b}));
}

ModalFormula ModalFormula::box(const ModalFormula& a) {
    return ModalFormula(std::shared_ptr<const Node>(new Node{ModalKind::Box, {}, a, ModalFormula(nullptr)}));
}

ModalFormula ModalFormula::top() { return neg(bot()); }
ModalFormula ModalFormula::conj(const ModalFormula& a, const ModalFormula& b) { return neg(disj(neg(a), neg(b))); }
ModalFormula ModalFormula::impl(const ModalFormula& a, const ModalFormula& b) { return disj(neg(a), b); }
ModalFormula ModalFormula::iff(const ModalFormula& a, const ModalFormula& b) { return conj(impl(a, b), impl(b, a)); }
ModalFormula ModalFormula::dia(const ModalFormula& a) { return neg(box(neg(a))); }
ModalFormula ModalFormula::ubox(const ModalFormula& a) { return conj(a, box(box(a))); }
ModalFormula ModalFormula::udia(const ModalFormula& a) { return neg(ubox(neg(a))); }

ModalFormula ModalFormula::conj_all(const std::vector<ModalFormula>& parts) {
    if (parts.empty()) return top();
    ModalFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

ModalFormula ModalFormula::disj_all(const std::vector<ModalFormula>& parts) {
    if (parts.empty()) return bot();
    ModalFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

ModalKind ModalFormula::kind() const { return node_->kind; }
const std::string& ModalFormula::name() const { return node_->name; }
const ModalFormula& ModalFormula::sub() const { return node_->a; }
const ModalFormula& ModalFormula::left() const { return node_->a; }
const ModalFormula& ModalFormula::right() const { return node_->b; }

bool operator==(const ModalFormula& a, const ModalFormula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ModalKind::Var: return a.name() == b.name();
        case ModalKind::Bot: return true;
        case ModalKind::Not:
        case ModalKind::Box: return a.sub() == b.sub();
        case ModalKind::Or: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

ModalMeasures measures(const ModalFormula& f) {
    ModalMeasures m;
    std::function<std::size_t(const ModalFormula&)> go = [&](const ModalFormula& g) -> std::size_t {
        ++m.len;
        switch (g.kind()) {
            case ModalKind::Var: m.vars.insert(g.name()); return 0;
            case ModalKind::Bot: return 0;
            case ModalKind::Not: return go(g.sub());
            case ModalKind::Box: return 1 + go(g.sub());
            case ModalKind::Or: return std::max(go(g.left()), go(g.right()));
        }
        return 0;
    };
    m.depth = go(f);
    return m;
}

namespace {

// Matches ~(~a | ~b) and yields a, b.
bool match_conj(const ModalFormula& f, ModalFormula& a, ModalFormula& b) {
    if (f.kind() != ModalKind::Not) return false;
    const ModalFormula& o = f.sub();
    if (o.kind() != ModalKind::Or) return false;
    if (o.left().kind() != ModalKind::Not || o.right().kind() != ModalKind::Not) return false;
    a = o.left().sub();
    b = o.right().sub();
    return true;
}

}  // namespace

std::vector<ModalFormula> conjuncts(const ModalFormula& f) {
    std::vector<ModalFormula> out;
    std::function<void(const ModalFormula&)> go = [&](const ModalFormula& g) {
        ModalFormula a, b;
        if (match_conj(g, a, b)) {
            go(a);
            go(b);
        } else {
            out.push_back(g);
        }
    };
    go(f);
    return out;
}

// ---------------------------------------------------------------------------
// First-order formulas

struct FOFormula::Node {
    FOKind kind;
    std::string x;
    std::string y;
    FOFormula a;
    FOFormula b;
};

FOFormula::FOFormula() : FOFormula(eq("x", "x")) {}

FOFormula FOFormula::rel(std::string x, std::string y) {
    return FOFormula(std::shared_ptr<const Node>(
        new Node{FOKind::Rel, std::move(x), std::move(y), FOFormula(nullptr), FOFormula(nullptr)}));
}

FOFormula FOFormula::eq(std::string x, std::string y) {
    return FOFormula(std::shared_ptr<const Node>(
        new Node{FOKind::Eq, std::move(x), std::move(y), FOFormula(nullptr), FOFormula(nullptr)}));
}

FOFormula FOFormula::neg(const FOFormula& a) {
    return FOFormula(std::shared_ptr<const Node>(new Node{FOKind::Not, {}, {}, a, FOFormula(nullptr)}));
}

FOFormula FOFormula::disj(const FOFormula& a, const FOFormula& b) {
    return FOFormula(std::shared_ptr<const Node>(new Node{FOKind::Or, {}, {}, a, b}));
}

FOFormula FOFormula::forall(std::string x, const FOFormula& a) {
    return FOFormula(std::shared_ptr<const Node>(new Node{FOKind::Forall, std::move(x), {}, a, FOFormula(nullptr)}));
}

FOFormula FOFormula::neq(std::string x, std::string y) { return neg(eq(std::move(x), std::move(y))); }
FOFormula FOFormula::conj(const FOFormula& a, const FOFormula& b) { return neg(disj(neg(a), neg(b))); }
FOFormula FOFormula::impl(const FOFormula& a, const FOFormula& b) { return disj(neg(a), b); }
FOFormula FOFormula::iff(const FOFormula& a, const FOFormula& b) { return conj(impl(a, b), impl(b, a)); }
FOFormula FOFormula::exists(std::string x, const FOFormula& a) { return neg(forall(std::move(x), neg(a))); }

FOFormula FOFormula::conj_all(const std::vector<FOFormula>& parts) {
    if (parts.empty()) throw PreconditionViolated("empty first-order conjunction");
    FOFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

FOFormula FOFormula::disj_all(const std::vector<FOFormula>& parts) {
    if (parts.empty()) throw PreconditionViolated("empty first-order disjunction");
    FOFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

FOFormula FOFormula::exists_exactly_one(const std::string& x, const FOFormula& a) {
    std::string y = fresh_variable({a, eq(x, x)});
    return exists(x, conj(a, forall(y, impl(substitute(a, x, y), eq(y, x)))));
}

FOFormula FOFormula::exists_exactly_two(const std::string& x, const FOFormula& a) {
    std::string x1 = fresh_variable({a, eq(x, x)});
    std::string x2 = fresh_variable({a, eq(x, x1)});
    std::string y = fresh_variable({a, eq(x, x1), eq(x2, x2)});
    FOFormula body = conj_all({substitute(a, x, x1), substitute(a, x, x2), neq(x1, x2),
                               forall(y, impl(substitute(a, x, y), disj(eq(y, x1), eq(y, x2))))});
    return exists(x1, exists(x2, body));
}

FOFormula FOFormula::pair_disjoint(const std::string& x1, const std::string& x2, const std::string& y1,
                                   const std::string& y2) {
    return conj_all({neq(x1, y1), neq(x1, y2), neq(x2, y1), neq(x2, y2)});
}

FOFormula FOFormula::successors_are(const std::string& z, const std::string& a, const std::string& b) {
    std::string t = fresh_variable({eq(z, a), eq(b, b)});
    return forall(t, iff(rel(z, t), disj(eq(t, a), eq(t, b))));
}

FOFormula FOFormula::successors_are_complement(const std::string& z, const std::string& a, const std::string& b) {
    std::string t = fresh_variable({eq(z, a), eq(b, b)});
    return forall(t, iff(rel(z, t), conj_all({rel(t, t), neq(t, a), neq(t, b)})));
}

FOFormula FOFormula::pair_equal(const std::string& x1, const std::string& x2, const std::string& y1,
                                const std::string& y2) {
    return disj(conj(eq(x1, y1), eq(x2, y2)), conj(eq(x1, y2), eq(x2, y1)));
}

FOKind FOFormula::kind() const { return node_->kind; }
const std::string& FOFormula::x() const { return node_->x; }
const std::string& FOFormula::y() const { return node_->y; }
const FOFormula& FOFormula::sub() const { return node_->a; }
const FOFormula& FOFormula::left() const { return node_->a; }
const FOFormula& FOFormula::right() const { return node_->b; }

bool operator==(const FOFormula& a, const FOFormula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case FOKind::Rel:
        case FOKind::Eq: return a.x() == b.x() && a.y() == b.y();
        case FOKind::Not: return a.sub() == b.sub();
        case FOKind::Forall: return a.x() == b.x() && a.sub() == b.sub();
        case FOKind::Or: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

FOMeasures measures(const FOFormula& f) {
    FOMeasures m;
    std::function<std::size_t(const FOFormula&, std::set<std::string>&)> go =
        [&](const FOFormula& g, std::set<std::string>& bound) -> std::size_t {
        ++m.len;
        switch (g.kind()) {
            case FOKind::Rel:
            case FOKind::Eq:
                for (const auto* v : {&g.x(), &g.y()}) {
                    m.vars.insert(*v);
                    if (!bound.count(*v)) m.fiv.insert(*v);
                }
                return 0;
            case FOKind::Not: return go(g.sub(), bound);
            case FOKind::Or: return std::max(go(g.left(), bound), go(g.right(), bound));
            case FOKind::Forall: {
                m.vars.insert(g.x());
                bool was = bound.count(g.x()) > 0;
                bound.insert(g.x());
                std::size_t d = 1 + go(g.sub(), bound);
                if (!was) bound.erase(g.x());
                return d;
            }
        }
        return 0;
    };
    std::set<std::string> bound;
    m.qd = go(f, bound);
    m.qdd = std::max<std::size_t>(m.qd, 3);
    return m;
}

bool is_sentence(const FOFormula& f) { return measures(f).fiv.empty(); }

bool is_relation_free(const FOFormula& f) {
    switch (f.kind()) {
        case FOKind::Rel: return false;
        case FOKind::Eq: return true;
        case FOKind::Not:
        case FOKind::Forall: return is_relation_free(f.sub());
        case FOKind::Or: return is_relation_free(f.left()) && is_relation_free(f.right());
    }
    return true;
}

bool is_reserved_name(std::string_view name) {
    return name.rfind("_v", 0) == 0 || name.rfind("_jf", 0) == 0;
}

std::string fresh_variable(const std::vector<FOFormula>& avoid) {
    std::set<std::string> used;
    for (const auto& f : avoid) {
        auto m = measures(f);
        used.insert(m.vars.begin(), m.vars.end());
    }
    for (std::size_t i = 0;; ++i) {
        std::string cand = "_v" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

FOFormula substitute(const FOFormula& a, const std::string& x, const std::string& y) {
    if (x == y) return a;
    switch (a.kind()) {
        case FOKind::Rel: return FOFormula::rel(a.x() == x ? y : a.x(), a.y() == x ? y : a.y());
        case FOKind::Eq: return FOFormula::eq(a.x() == x ? y : a.x(), a.y() == x ? y : a.y());
        case FOKind::Not: return FOFormula::neg(substitute(a.sub(), x, y));
        case FOKind::Or: return FOFormula::disj(substitute(a.left(), x, y), substitute(a.right(), x, y));
        case FOKind::Forall: {
            if (a.x() == x) return a;  // x is not free below
            if (!measures(a.sub()).fiv.count(x)) return a;
            if (a.x() == y) {
                // Rename the binder so that y is not captured.
                std::string z = fresh_variable({a, FOFormula::eq(x, y)});
                FOFormula body = substitute(a.sub(), a.x(), z);
                return FOFormula::forall(z, substitute(body, x, y));
            }
            return FOFormula::forall(a.x(), substitute(a.sub(), x, y));
        }
    }
    return a;
}

FOFormula rooted_translation(const std::string& x, const FOFormula& a) {
    if (measures(a).vars.count(x)) throw VariableClash("variable " + x + " occurs in the formula");
    const std::string z = fresh_variable({a, FOFormula::eq(x, x)});
    std::function<FOFormula(const FOFormula&)> go = [&](const FOFormula& g) -> FOFormula {
        switch (g.kind()) {
            case FOKind::Rel:
            case FOKind::Eq: return g;
            case FOKind::Not: return FOFormula::neg(go(g.sub()));
            case FOKind::Or: return FOFormula::disj(go(g.left()), go(g.right()));
            case FOKind::Forall: {
                const std::string& y = g.x();
                FOFormula reach = FOFormula::disj(
                    FOFormula::eq(x, y), FOFormula::exists(z, FOFormula::conj(FOFormula::rel(x, z), FOFormula::rel(z, y))));
                return FOFormula::forall(y, FOFormula::impl(reach, go(g.sub())));
            }
        }
        return g;
    };
    return go(a);
}

FOFormula relativize(const FOFormula& c, const FOFormula& a, const std::string& x) {
    auto vc = measures(c).vars;
    auto va = measures(a).vars;
    va.insert(x);
    for (const auto& v : vc) {
        if (va.count(v)) throw VariableClash("variable " + v + " occurs in both formulas");
    }
    std::function<FOFormula(const FOFormula&)> go = [&](const FOFormula& g) -> FOFormula {
        switch (g.kind()) {
            case FOKind::Rel:
            case FOKind::Eq: return g;
            case FOKind::Not: return FOFormula::neg(go(g.sub()));
            case FOKind::Or: return FOFormula::disj(go(g.left()), go(g.right()));
            case FOKind::Forall:
                return FOFormula::forall(g.x(), FOFormula::impl(substitute(a, x, g.x()), go(g.sub())));
        }
        return g;
    };
    return go(c);
}

}  // namespace euclid
