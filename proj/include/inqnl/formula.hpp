#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inqnl/errors.hpp"

namespace inqnl {

// The stored term algebra has exactly seven variants; everything else
// (~, \/, <->, ?, top, [+], <+>, <+.>, ~>) is eliminated at construction.
enum class Kind : std::uint8_t {
    Atom,
    Bottom,
    Odot,      // modal constant, true where the empty neighborhood is present
    Conj,      // &
    InqDisj,   // //
    Impl,      // ->
    Yields,    // =>
};

class Formula;

namespace detail {
struct FormulaNode;
const FormulaNode* node_of(Formula f);
Formula wrap(const FormulaNode* n);
}  // namespace detail

// Immutable, hash-consed formula handle. Structurally equal terms share one
// node, so equality is pointer equality and evaluation can memoize on node
// ids. Handles are cheap to copy and safe to share across threads.
class Formula {
public:
    Formula() = default;

    // Core constructors (the seven variants).
    static Formula atom(std::string_view name);
    static Formula bottom();
    static Formula odot();
    static Formula conj(Formula l, Formula r);
    static Formula inq_disj(Formula l, Formula r);
    static Formula impl(Formula l, Formula r);
    static Formula yields(Formula l, Formula r);

    // Defined connectives, expanded on the spot.
    static Formula top();                         // bot -> bot
    static Formula neg(Formula f);                // f -> bot
    static Formula decl_or(Formula l, Formula r); // ~(~l & ~r)
    static Formula iff(Formula l, Formula r);     // (l -> r) & (r -> l)
    static Formula question(Formula f);           // f // ~f
    static Formula window(Formula f);             // top => f
    static Formula kite(Formula f);               // ~(f => bot)
    static Formula kite_odot(Formula f);          // kite(f) \/ (.)
    // [+]~a \/ ~((a -> b) => ~a); both arguments must be declarative.
    static Formula counterfactual(Formula antecedent, Formula consequent);

    Kind kind() const;
    const std::string& atom_name() const;  // Atom only
    Formula left() const;                  // binary kinds only
    Formula right() const;

    int modal_depth() const;
    bool is_declarative() const;
    // Number of nodes counting the term as a tree (saturating).
    std::uint64_t tree_size() const;
    // Process-unique id, stable for the lifetime of the program.
    std::uint64_t id() const;

    bool valid() const { return node_ != nullptr; }
    explicit operator bool() const { return node_ != nullptr; }

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

    // Total structural order: tree size, then kind, then atom name /
    // children. Used wherever a canonical listing of formulas is needed.
    static int compare(Formula a, Formula b);
    friend bool operator<(Formula a, Formula b) { return compare(a, b) < 0; }

private:
    explicit Formula(const detail::FormulaNode* n) : node_(n) {}
    const detail::FormulaNode* node_ = nullptr;
    friend struct FormulaHash;
    friend const detail::FormulaNode* detail::node_of(Formula f);
    friend Formula detail::wrap(const detail::FormulaNode* n);
};

struct FormulaHash {
    std::size_t operator()(Formula f) const noexcept;
};

// Left-associative folds in the given order; empty input yields the unit.
Formula conj_all(const std::vector<Formula>& fs);      // unit: top
Formula inq_disj_all(const std::vector<Formula>& fs);  // unit: bot
Formula decl_or_all(const std::vector<Formula>& fs);   // unit: bot

// Ordered set of distinct atom names.
class AtomSignature {
public:
    AtomSignature() = default;
    explicit AtomSignature(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }
    bool operator==(const AtomSignature&) const = default;

    // Atoms occurring in f, in lexicographic order.
    static AtomSignature of_formula(Formula f);
    static AtomSignature of_formulas(const std::vector<Formula>& fs);

private:
    std::vector<std::string> names_;
};

// Text syntax
// -----------
//   atoms        [a-z][a-zA-Z0-9_]*      constants   bot  top  (.)
//   prefix       ~ f   ? f   [+] f   <+> f   <+.> f           (tightest)
//   conjunction  f & f                                        (left-assoc)
//   disjunction  f \/ f                                       (left-assoc)
//   inq. disj.   f // f                                       (left-assoc)
//   arrows       f -> f   f <-> f   f => f   f ~> f           (right-assoc,
//                distinct arrows may not be mixed without parentheses)
Formula parse_formula(std::string_view text);

// Round-trips: parse_formula(print_formula(f, r)) == f for either r.
// With resugar on, recognized patterns render as ~ ? top \/ <-> [+] <+> <+.> ~>.
std::string print_formula(Formula f, bool resugar = true);

struct ResolutionLimits {
    // The implication clause multiplies out choice functions; refuse past this.
    std::size_t max_count = 4096;
};

// The finite set of declarative resolutions of f, canonically ordered and
// deduplicated. Every element is declarative with modal depth <= that of f.
std::vector<Formula> resolutions(Formula f, const ResolutionLimits& limits = {});

// The declarative variant f!: replaces inquisitive disjunction by declarative
// disjunction outside modalities. Truth conditions match f everywhere.
Formula declarative_variant(Formula f);

// All sets obtained by picking one resolution per member of fs.
std::vector<std::vector<Formula>> resolutions_of_set(const std::vector<Formula>& fs,
                                                     const ResolutionLimits& limits = {});

}  // namespace inqnl
