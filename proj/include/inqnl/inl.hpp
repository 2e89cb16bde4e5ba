#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "inqnl/formula.hpp"
#include "inqnl/model.hpp"

namespace inqnl {

// A separate little language evaluated by world truth: negation, conjunction,
// and a box listing instance formulas that must each hold somewhere in a
// witnessing neighborhood while the scope holds everywhere in it.
//
// Text syntax: atoms as usual, `!f`, `f & g`, `box(r1, r2 ; s)` (the instance
// list may be empty: `box(; s)`), parentheses.
class InlFormula {
public:
    enum class Kind : std::uint8_t { Atom, Neg, Conj, InstBox };

    InlFormula() = default;
    static InlFormula atom(std::string name);
    static InlFormula neg(InlFormula f);
    static InlFormula conj(InlFormula l, InlFormula r);
    static InlFormula inst_box(std::vector<InlFormula> instances, InlFormula scope);

    Kind kind() const;
    const std::string& atom_name() const;
    InlFormula child(std::size_t i = 0) const;  // Neg: 0; Conj: 0,1
    std::size_t instance_count() const;
    InlFormula instance(std::size_t i) const;
    InlFormula scope() const;

    std::uint64_t term_count() const;  // nodes in the term
    bool valid() const { return node_ != nullptr; }

    bool structurally_equal(const InlFormula& other) const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
};

InlFormula parse_inl(std::string_view text);
std::string print_inl(const InlFormula& f);

bool inl_truth(const NeighborhoodModel& m, int world, const InlFormula& f);

// Truth-preserving map into the declarative fragment of the modal language:
// boxes with no instances become the possibly-empty existential, boxes with
// instances become a negated modal conditional.
Formula inl_to_modal(const InlFormula& f);

struct CostarResult {
    InlFormula formula;
    std::uint64_t term_count = 0;  // surfaced because the map can blow up
};

// Truth-preserving map back: defined on declaratives only; the modal clause
// multiplies out resolutions, so sizes can grow exponentially. The signature
// supplies the atom used to spell falsum; it defaults to the formula's first
// atom alphabetically (or "p" if none).
CostarResult modal_to_inl(Formula f, const AtomSignature& atoms = {},
                          const ResolutionLimits& limits = {});

}  // namespace inqnl
