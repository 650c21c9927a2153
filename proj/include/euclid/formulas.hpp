#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace euclid {

// ---------------------------------------------------------------------------
// Modal formulas. Only the five core constructors exist; every derived
// connective is expanded by the builders below and by the parser.

enum class ModalKind { Var, Bot, Not, Or, Box };

class ModalFormula {
public:
    ModalFormula();  // bottom

    static ModalFormula var(std::string name);
    static ModalFormula bot();
    static ModalFormula neg(const ModalFormula& a);
    static ModalFormula disj(const ModalFormula& a, const ModalFormula& b);
    static ModalFormula box(const ModalFormula& a);

    static ModalFormula top();
    static ModalFormula conj(const ModalFormula& a, const ModalFormula& b);
    static ModalFormula impl(const ModalFormula& a, const ModalFormula& b);
    static ModalFormula iff(const ModalFormula& a, const ModalFormula& b);
    static ModalFormula dia(const ModalFormula& a);
    static ModalFormula ubox(const ModalFormula& a);  // a & box box a
    static ModalFormula udia(const ModalFormula& a);  // ~[U]~a
    static ModalFormula conj_all(const std::vector<ModalFormula>& parts);  // top when empty
    static ModalFormula disj_all(const std::vector<ModalFormula>& parts);  // bot when empty

    ModalKind kind() const;
    const std::string& name() const;  // Var only
    const ModalFormula& sub() const;  // Not, Box
    const ModalFormula& left() const; // Or
    const ModalFormula& right() const;

    friend bool operator==(const ModalFormula& a, const ModalFormula& b);
    friend bool operator!=(const ModalFormula& a, const ModalFormula& b) { return !(a == b); }

    const void* identity() const { return node_.get(); }

private:
    struct Node;
    explicit ModalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct ModalMeasures {
    std::set<std::string> vars;
    std::size_t len = 0;    // number of symbol occurrences in the core syntax
    std::size_t depth = 0;  // modal depth
};

ModalMeasures measures(const ModalFormula& f);

// Top-level conjuncts of f (f itself when f is not a conjunction).
std::vector<ModalFormula> conjuncts(const ModalFormula& f);

// ---------------------------------------------------------------------------
// First-order formulas over one binary relation R and equality.

enum class FOKind { Rel, Eq, Not, Or, Forall };

class FOFormula {
public:
    FOFormula();  // x = x

    static FOFormula rel(std::string x, std::string y);
    static FOFormula eq(std::string x, std::string y);
    static FOFormula neg(const FOFormula& a);
    static FOFormula disj(const FOFormula& a, const FOFormula& b);
    static FOFormula forall(std::string x, const FOFormula& a);

    static FOFormula neq(std::string x, std::string y);
    static FOFormula conj(const FOFormula& a, const FOFormula& b);
    static FOFormula impl(const FOFormula& a, const FOFormula& b);
    static FOFormula iff(const FOFormula& a, const FOFormula& b);
    static FOFormula exists(std::string x, const FOFormula& a);
    static FOFormula conj_all(const std::vector<FOFormula>& parts);  // non-empty
    static FOFormula disj_all(const std::vector<FOFormula>& parts);  // non-empty

    // Counting quantifiers and set macros. Bound helper variables are taken
    // from the reserved "_v" namespace so they never capture user variables.
    static FOFormula exists_exactly_one(const std::string& x, const FOFormula& a);
    static FOFormula exists_exactly_two(const std::string& x, const FOFormula& a);
    static FOFormula pair_disjoint(const std::string& x1, const std::string& x2,
                                   const std::string& y1, const std::string& y2);
    static FOFormula successors_are(const std::string& z, const std::string& a, const std::string& b);
    static FOFormula successors_are_complement(const std::string& z, const std::string& a,
                                               const std::string& b);
    static FOFormula pair_equal(const std::string& x1, const std::string& x2,
                                const std::string& y1, const std::string& y2);

    FOKind kind() const;
    const std::string& x() const;  // Rel, Eq, Forall
    const std::string& y() const;  // Rel, Eq
    const FOFormula& sub() const;  // Not, Forall
    const FOFormula& left() const; // Or
    const FOFormula& right() const;

    friend bool operator==(const FOFormula& a, const FOFormula& b);
    friend bool operator!=(const FOFormula& a, const FOFormula& b) { return !(a == b); }

private:
    struct Node;
    explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct FOMeasures {
    std::set<std::string> fiv;   // free individual variables
    std::set<std::string> vars;  // every variable occurring, free or bound
    std::size_t len = 0;
    std::size_t qd = 0;
    std::size_t qdd = 3;  // max(qd, 3)
};

FOMeasures measures(const FOFormula& f);

bool is_sentence(const FOFormula& f);

// True when no R atom occurs in f.
bool is_relation_free(const FOFormula& f);

// A variable name "_v<n>" occurring nowhere in the given formulas.
std::string fresh_variable(const std::vector<FOFormula>& avoid);

// Capture-avoiding substitution of y for the free occurrences of x.
FOFormula substitute(const FOFormula& a, const std::string& x, const std::string& y);

// The rooted translation: forall-quantifiers are bounded to the worlds
// reachable from x in at most two steps. Throws VariableClash if x occurs in a.
FOFormula rooted_translation(const std::string& x, const FOFormula& a);

// Relativisation of c to the set {x : a}. Throws VariableClash when the
// variables of a and c overlap.
FOFormula relativize(const FOFormula& c, const FOFormula& a, const std::string& x);

// ---------------------------------------------------------------------------
// Concrete syntax.

struct ParseOptions {
    // Accept identifiers in the reserved namespaces ("_v", "_jf").
    bool allow_reserved = false;
};

ModalFormula parse_modal(std::string_view text, ParseOptions opts = {});
FOFormula parse_fo(std::string_view text, ParseOptions opts = {});

std::string to_string(const ModalFormula& f);
std::string to_string(const FOFormula& f);

bool is_reserved_name(std::string_view name);

}  // namespace euclid
