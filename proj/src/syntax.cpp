// Lexer, recursive-descent parsers and printers for both formula languages.

#include "euclid/errors.hpp"
#include "euclid/formulas.hpp"

#include <cctype>

namespace euclid {

namespace {

enum class Tok {
    Ident, LParen, RParen, LBrace, RBrace, Comma, Dot, Tilde, Bar, Amp, Arrow, DArrow,
    Equal, NotEqual, UBox, UDia, Complement, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t at = i;
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string word(s.substr(i, j - i));
            // "exists=1" and "exists=2" are single tokens.
            if (word == "exists" && j + 1 < s.size() && s[j] == '=' && (s[j + 1] == '1' || s[j + 1] == '2')) {
                word += s.substr(j, 2);
                j += 2;
            }
            out.push_back({Tok::Ident, word, at});
            i = j;
            continue;
        }
        if (starts("<->")) { out.push_back({Tok::DArrow, "<->", at}); i += 3; continue; }
        if (starts("<U>")) { out.push_back({Tok::UDia, "<U>", at}); i += 3; continue; }
        if (starts("[U]")) { out.push_back({Tok::UBox, "[U]", at}); i += 3; continue; }
        if (starts("->")) { out.push_back({Tok::Arrow, "->", at}); i += 2; continue; }
        if (starts("!=")) { out.push_back({Tok::NotEqual, "!=", at}); i += 2; continue; }
        if (starts("^c")) { out.push_back({Tok::Complement, "^c", at}); i += 2; continue; }
        Tok k;
        switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case '.': k = Tok::Dot; break;
            case '~': k = Tok::Tilde; break;
            case '|': k = Tok::Bar; break;
            case '&': k = Tok::Amp; break;
            case '=': k = Tok::Equal; break;
            default: throw SyntaxError(at, {}, "'" + std::string(1, static_cast<char>(c)) + "'");
        }
        out.push_back({k, std::string(1, static_cast<char>(c)), at});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Cursor {
public:
    Cursor(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(peek().offset, std::move(expected), describe(peek()));
    }

    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail({what});
        return next();
    }

    void expect_word(std::string_view w) {
        if (!at_word(w)) fail({std::string(w)});
        next();
    }

    std::string name(const std::vector<std::string>& keywords, const std::string& what) {
        if (!at(Tok::Ident)) fail({what});
        const Token& t = peek();
        for (const auto& k : keywords) {
            if (t.text == k) fail({what});
        }
        if (!opts_.allow_reserved && is_reserved_name(t.text)) {
            throw SyntaxError(t.offset, {what}, "reserved identifier '" + t.text + "'");
        }
        return next().text;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseOptions opts_;
};

// ---------------------------------------------------------------------------
// Modal grammar

const std::vector<std::string> kModalKeywords = {"bot", "top", "box", "dia"};

class ModalParser {
public:
    explicit ModalParser(Cursor& c) : c_(c) {}

    ModalFormula formula() { return iff(); }

private:
    ModalFormula iff() {
        ModalFormula a = impl();
        while (c_.at(Tok::DArrow)) {
            c_.next();
            a = ModalFormula::iff(a, impl());
        }
        return a;
    }

    ModalFormula impl() {
        ModalFormula a = disj();
        if (c_.at(Tok::Arrow)) {
            c_.next();
            return ModalFormula::impl(a, impl());
        }
        return a;
    }

    ModalFormula disj() {
        ModalFormula a = conj();
        while (c_.at(Tok::Bar)) {
            c_.next();
            a = ModalFormula::disj(a, conj());
        }
        return a;
    }

    ModalFormula conj() {
        ModalFormula a = unary();
        while (c_.at(Tok::Amp)) {
            c_.next();
            a = ModalFormula::conj(a, unary());
        }
        return a;
    }

    ModalFormula unary() {
        if (c_.at(Tok::Tilde)) { c_.next(); return ModalFormula::neg(unary()); }
        if (c_.at(Tok::UBox)) { c_.next(); return ModalFormula::ubox(unary()); }
        if (c_.at(Tok::UDia)) { c_.next(); return ModalFormula::udia(unary()); }
        if (c_.at_word("box")) { c_.next(); return ModalFormula::box(unary()); }
        if (c_.at_word("dia")) { c_.next(); return ModalFormula::dia(unary()); }
        return atom();
    }

    ModalFormula atom() {
        if (c_.at(Tok::LParen)) {
            c_.next();
            ModalFormula a = formula();
            c_.expect(Tok::RParen, "')'");
            return a;
        }
        if (c_.at_word("bot")) { c_.next(); return ModalFormula::bot(); }
        if (c_.at_word("top")) { c_.next(); return ModalFormula::top(); }
        if (c_.at(Tok::Ident)) return ModalFormula::var(c_.name(kModalKeywords, "propositional variable"));
        c_.fail({"'('", "'~'", "'box'", "'dia'", "'[U]'", "'<U>'", "'bot'", "'top'", "propositional variable"});
    }

    Cursor& c_;
};

// ---------------------------------------------------------------------------
// First-order grammar

const std::vector<std::string> kFOKeywords = {"forall", "exists", "exists=1", "exists=2", "R", "cap"};

class FOParser {
public:
    explicit FOParser(Cursor& c) : c_(c) {}

    FOFormula formula() {
        if (quantifier_ahead() && c_.peek(2).kind == Tok::Dot) return quantified(true);
        return iff();
    }

private:
    bool quantifier_ahead() const {
        return c_.at_word("forall") || c_.at_word("exists") || c_.at_word("exists=1") || c_.at_word("exists=2");
    }

    FOFormula quantified(bool dotted) {
        std::string q = c_.next().text;
        std::string x = var();
        FOFormula body;
        if (dotted) {
            c_.expect(Tok::Dot, "'.'");
            body = formula();
        } else {
            body = unary();
        }
        if (q == "forall") return FOFormula::forall(x, body);
        if (q == "exists") return FOFormula::exists(x, body);
        if (q == "exists=1") return FOFormula::exists_exactly_one(x, body);
        return FOFormula::exists_exactly_two(x, body);
    }

    // A trailing dotted quantifier may close any binary chain: "p & forall x . q".
    FOFormula operand(FOFormula (FOParser::*level)()) {
        if (quantifier_ahead() && c_.peek(2).kind == Tok::Dot) return quantified(true);
        return (this->*level)();
    }

    FOFormula iff() {
        FOFormula a = impl();
        while (c_.at(Tok::DArrow)) {
            c_.next();
            a = FOFormula::iff(a, operand(&FOParser::impl));
        }
        return a;
    }

    FOFormula impl() {
        FOFormula a = disj();
        if (c_.at(Tok::Arrow)) {
            c_.next();
            return FOFormula::impl(a, operand(&FOParser::impl));
        }
        return a;
    }

    FOFormula disj() {
        FOFormula a = conj();
        while (c_.at(Tok::Bar)) {
            c_.next();
            a = FOFormula::disj(a, operand(&FOParser::conj));
        }
        return a;
    }

    FOFormula conj() {
        FOFormula a = unary();
        while (c_.at(Tok::Amp)) {
            c_.next();
            a = FOFormula::conj(a, operand(&FOParser::unary));
        }
        return a;
    }

    FOFormula unary() {
        if (c_.at(Tok::Tilde)) {
            c_.next();
            return FOFormula::neg(operand(&FOParser::unary));
        }
        if (quantifier_ahead()) return quantified(c_.peek(2).kind == Tok::Dot);
        return atom();
    }

    std::string var() { return c_.name(kFOKeywords, "individual variable"); }

    void pair(std::string& a, std::string& b) {
        c_.expect(Tok::LBrace, "'{'");
        a = var();
        c_.expect(Tok::Comma, "','");
        b = var();
        c_.expect(Tok::RBrace, "'}'");
    }

    FOFormula atom() {
        if (c_.at(Tok::LParen)) {
            c_.next();
            FOFormula a = formula();
            c_.expect(Tok::RParen, "')'");
            return a;
        }
        if (c_.at_word("R")) {
            c_.next();
            c_.expect(Tok::LParen, "'('");
            std::string x = var();
            if (c_.at(Tok::RParen)) {
                // R(z) = {a,b} or R(z) = {a,b}^c
                c_.next();
                c_.expect(Tok::Equal, "'='");
                std::string a, b;
                pair(a, b);
                if (c_.at(Tok::Complement)) {
                    c_.next();
                    return FOFormula::successors_are_complement(x, a, b);
                }
                return FOFormula::successors_are(x, a, b);
            }
            c_.expect(Tok::Comma, "','");
            std::string y = var();
            c_.expect(Tok::RParen, "')'");
            return FOFormula::rel(x, y);
        }
        if (c_.at(Tok::LBrace)) {
            std::string x1, x2, y1, y2;
            pair(x1, x2);
            if (c_.at_word("cap")) {
                c_.next();
                pair(y1, y2);
                c_.expect(Tok::Equal, "'='");
                c_.expect(Tok::LBrace, "'{'");
                c_.expect(Tok::RBrace, "'}'");
                return FOFormula::pair_disjoint(x1, x2, y1, y2);
            }
            c_.expect(Tok::Equal, "'='");
            pair(y1, y2);
            return FOFormula::pair_equal(x1, x2, y1, y2);
        }
        if (c_.at(Tok::Ident)) {
            std::string x = var();
            if (c_.at(Tok::Equal)) {
                c_.next();
                return FOFormula::eq(x, var());
            }
            if (c_.at(Tok::NotEqual)) {
                c_.next();
                return FOFormula::neq(x, var());
            }
            c_.fail({"'='", "'!='"});
        }
        c_.fail({"'('", "'~'", "'forall'", "'exists'", "'R'", "'{'", "individual variable"});
    }

    Cursor& c_;
};

// ---------------------------------------------------------------------------
// Printers. Binary children are always parenthesised, so printing never
// depends on associativity conventions.

enum Level { kIff = 1, kImpl = 2, kOr = 3, kAnd = 4, kUnary = 5, kAtom = 6 };

struct Printed {
    std::string text;
    int level;
};

std::string wrap(const Printed& p, int min_level) {
    if (p.level < min_level) return "(" + p.text + ")";
    return p.text;
}

bool modal_and(const ModalFormula& f, ModalFormula& a, ModalFormula& b) {
    if (f.kind() != ModalKind::Not || f.sub().kind() != ModalKind::Or) return false;
    const ModalFormula& o = f.sub();
    if (o.left().kind() != ModalKind::Not || o.right().kind() != ModalKind::Not) return false;
    a = o.left().sub();
    b = o.right().sub();
    return true;
}

bool modal_ubox(const ModalFormula& f, ModalFormula& a) {
    ModalFormula l, r;
    if (!modal_and(f, l, r)) return false;
    if (r.kind() != ModalKind::Box || r.sub().kind() != ModalKind::Box) return false;
    if (!(r.sub().sub() == l)) return false;
    a = l;
    return true;
}

bool modal_impl(const ModalFormula& f, ModalFormula& a, ModalFormula& b) {
    if (f.kind() != ModalKind::Or || f.left().kind() != ModalKind::Not) return false;
    a = f.left().sub();
    b = f.right();
    return true;
}

Printed print(const ModalFormula& f) {
    ModalFormula a, b;
    switch (f.kind()) {
        case ModalKind::Var: return {f.name(), kAtom};
        case ModalKind::Bot: return {"bot", kAtom};
        case ModalKind::Box: return {"box " + wrap(print(f.sub()), kUnary), kUnary};
        case ModalKind::Or:
            if (modal_impl(f, a, b)) return {wrap(print(a), kAnd) + " -> " + wrap(print(b), kAnd), kImpl};
            return {wrap(print(f.left()), kAnd) + " | " + wrap(print(f.right()), kAnd), kOr};
        case ModalKind::Not: {
            const ModalFormula& s = f.sub();
            if (s.kind() == ModalKind::Bot) return {"top", kAtom};
            if (modal_ubox(s, a) && a.kind() == ModalKind::Not) return {"<U> " + wrap(print(a.sub()), kUnary), kUnary};
            if (s.kind() == ModalKind::Box && s.sub().kind() == ModalKind::Not) {
                return {"dia " + wrap(print(s.sub().sub()), kUnary), kUnary};
            }
            if (modal_ubox(f, a)) return {"[U] " + wrap(print(a), kUnary), kUnary};
            if (modal_and(f, a, b)) {
                ModalFormula l1, r1, l2, r2;
                if (modal_impl(a, l1, r1) && modal_impl(b, l2, r2) && l1 == r2 && r1 == l2) {
                    return {wrap(print(l1), kAnd) + " <-> " + wrap(print(r1), kAnd), kIff};
                }
                return {wrap(print(a), kUnary) + " & " + wrap(print(b), kUnary), kAnd};
            }
            return {"~ " + wrap(print(s), kUnary), kUnary};
        }
    }
    return {"?", kAtom};
}

bool fo_and(const FOFormula& f, FOFormula& a, FOFormula& b) {
    if (f.kind() != FOKind::Not || f.sub().kind() != FOKind::Or) return false;
    const FOFormula& o = f.sub();
    if (o.left().kind() != FOKind::Not || o.right().kind() != FOKind::Not) return false;
    a = o.left().sub();
    b = o.right().sub();
    return true;
}

bool fo_impl(const FOFormula& f, FOFormula& a, FOFormula& b) {
    if (f.kind() != FOKind::Or || f.left().kind() != FOKind::Not) return false;
    a = f.left().sub();
    b = f.right();
    return true;
}

// Quantified formulas are printed in dotted form, whose scope extends to the
// right as far as possible; they get level 0 so they are always wrapped
// when they appear as an operand.
Printed print(const FOFormula& f) {
    FOFormula a, b;
    switch (f.kind()) {
        case FOKind::Rel: return {"R(" + f.x() + "," + f.y() + ")", kAtom};
        case FOKind::Eq: return {f.x() + "=" + f.y(), kAtom};
        case FOKind::Forall: return {"forall " + f.x() + " . " + print(f.sub()).text, 0};
        case FOKind::Or:
            if (fo_impl(f, a, b)) return {wrap(print(a), kAnd) + " -> " + wrap(print(b), kAnd), kImpl};
            return {wrap(print(f.left()), kAnd) + " | " + wrap(print(f.right()), kAnd), kOr};
        case FOKind::Not: {
            const FOFormula& s = f.sub();
            if (s.kind() == FOKind::Eq) return {s.x() + "!=" + s.y(), kAtom};
            if (s.kind() == FOKind::Forall && s.sub().kind() == FOKind::Not) {
                return {"exists " + s.x() + " . " + print(s.sub().sub()).text, 0};
            }
            if (fo_and(f, a, b)) {
                FOFormula l1, r1, l2, r2;
                if (fo_impl(a, l1, r1) && fo_impl(b, l2, r2) && l1 == r2 && r1 == l2) {
                    return {wrap(print(l1), kAnd) + " <-> " + wrap(print(r1), kAnd), kIff};
                }
                return {wrap(print(a), kUnary) + " & " + wrap(print(b), kUnary), kAnd};
            }
            return {"~ " + wrap(print(s), kUnary), kUnary};
        }
    }
    return {"?", kAtom};
}

}  // namespace

ModalFormula parse_modal(std::string_view text, ParseOptions opts) {
    Cursor c(lex(text), opts);
    ModalParser p(c);
    ModalFormula f = p.formula();
    if (!c.at(Tok::End)) c.fail({"end of input", "'&'", "'|'", "'->'", "'<->'"});
    return f;
}

FOFormula parse_fo(std::string_view text, ParseOptions opts) {
    Cursor c(lex(text), opts);
    FOParser p(c);
    FOFormula f = p.formula();
    if (!c.at(Tok::End)) c.fail({"end of input", "'&'", "'|'", "'->'", "'<->'"});
    return f;
}

std::string to_string(const ModalFormula& f) { return print(f).text; }
std::string to_string(const FOFormula& f) { return print(f).text; }

}  // namespace euclid
