#include "inqnl/inl.hpp"

#include <algorithm>
#include <cctype>

namespace inqnl {

struct InlFormula::Node {
    Kind kind;
    std::string name;
    std::vector<InlFormula> children;  // InstBox: instances..., then scope
};

InlFormula InlFormula::atom(std::string name) {
    if (name.empty()) throw ArgError("atom name must be nonempty");
    InlFormula f;
    f.node_ = std::make_shared<Node>(Node{Kind::Atom, std::move(name), {}});
    return f;
}
InlFormula InlFormula::neg(InlFormula f) {
    InlFormula out;
    out.node_ = std::make_shared<Node>(Node{Kind::Neg, "", {std::move(f)}});
    return out;
}
InlFormula InlFormula::conj(InlFormula l, InlFormula r) {
    InlFormula out;
    out.node_ = std::make_shared<Node>(Node{Kind::Conj, "", {std::move(l), std::move(r)}});
    return out;
}
InlFormula InlFormula::inst_box(std::vector<InlFormula> instances, InlFormula scope) {
    InlFormula out;
    instances.push_back(std::move(scope));
    out.node_ = std::make_shared<Node>(Node{Kind::InstBox, "", std::move(instances)});
    return out;
}

InlFormula::Kind InlFormula::kind() const {
    if (!node_) throw ArgError("operation on an empty INL formula handle");
    return node_->kind;
}
const std::string& InlFormula::atom_name() const {
    if (kind() != Kind::Atom) throw ArgError("atom_name on a non-atom");
    return node_->name;
}
InlFormula InlFormula::child(std::size_t i) const {
    if (!node_ || i >= node_->children.size()) throw ArgError("child index out of range");
    return node_->children[i];
}
std::size_t InlFormula::instance_count() const {
    if (kind() != Kind::InstBox) throw ArgError("instance_count on a non-box formula");
    return node_->children.size() - 1;
}
InlFormula InlFormula::instance(std::size_t i) const {
    if (i >= instance_count()) throw ArgError("instance index out of range");
    return node_->children[i];
}
InlFormula InlFormula::scope() const {
    if (kind() != Kind::InstBox) throw ArgError("scope on a non-box formula");
    return node_->children.back();
}

std::uint64_t InlFormula::term_count() const {
    if (!node_) return 0;
    std::uint64_t n = 1;
    for (const auto& c : node_->children) n += c.term_count();
    return n;
}

bool InlFormula::structurally_equal(const InlFormula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
    if (node_->children.size() != other.node_->children.size()) return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (!node_->children[i].structurally_equal(other.node_->children[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

namespace {

struct InlParser {
    std::string_view src;
    std::size_t i = 0;

    void skip_ws() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    bool eat(char c) {
        skip_ws();
        if (i < src.size() && src[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        if (i >= src.size() || src[i] < 'a' || src[i] > 'z') fail("expected an atom");
        std::size_t j = i + 1;
        while (j < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
            ++j;
        std::string out(src.substr(i, j - i));
        i = j;
        return out;
    }

    InlFormula parse() {
        InlFormula f = conj();
        skip_ws();
        if (i != src.size()) fail("unexpected trailing input");
        return f;
    }

    InlFormula conj() {
        InlFormula f = unary();
        while (eat('&')) f = InlFormula::conj(f, unary());
        return f;
    }

    InlFormula unary() {
        if (eat('!')) return InlFormula::neg(unary());
        return primary();
    }

    InlFormula primary() {
        skip_ws();
        if (eat('(')) {
            InlFormula f = conj();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        std::string name = ident();
        if (name == "box") {
            if (!eat('(')) fail("expected '(' after box");
            std::vector<InlFormula> instances;
            skip_ws();
            if (i < src.size() && src[i] != ';') {
                instances.push_back(conj());
                while (eat(',')) instances.push_back(conj());
            }
            if (!eat(';')) fail("expected ';' in box");
            InlFormula s = conj();
            if (!eat(')')) fail("expected ')' to close box");
            return InlFormula::inst_box(std::move(instances), s);
        }
        return InlFormula::atom(std::move(name));
    }
};

// Levels: conj 1, unary 2, primary 3.
std::string print_level(const InlFormula& f, int min_level) {
    std::string text;
    int level;
    switch (f.kind()) {
        case InlFormula::Kind::Atom:
            text = f.atom_name();
            level = 3;
            break;
        case InlFormula::Kind::Neg:
            text = "!" + print_level(f.child(0), 2);
            level = 2;
            break;
        case InlFormula::Kind::Conj:
            text = print_level(f.child(0), 1) + " & " + print_level(f.child(1), 2);
            level = 1;
            break;
        case InlFormula::Kind::InstBox: {
            text = "box(";
            for (std::size_t i = 0; i < f.instance_count(); ++i) {
                if (i > 0) text += ", ";
                text += print_level(f.instance(i), 1);
            }
            text += " ; " + print_level(f.scope(), 1) + ")";
            level = 3;
            break;
        }
        default: throw ArgError("unreachable INL kind");
    }
    if (level < min_level) return "(" + text + ")";
    return text;
}

}  // namespace

InlFormula parse_inl(std::string_view text) {
    InlParser p{text};
    return p.parse();
}

std::string print_inl(const InlFormula& f) { return print_level(f, 0); }

// ---------------------------------------------------------------------------
// Semantics and translations
// ---------------------------------------------------------------------------

bool inl_truth(const NeighborhoodModel& m, int world, const InlFormula& f) {
    if (world < 0 || world >= m.world_count()) throw ArgError("world index out of range");
    switch (f.kind()) {
        case InlFormula::Kind::Atom: {
            auto idx = m.atoms.index_of(f.atom_name());
            if (!idx) throw ArgError("atom not in the model's signature: " + f.atom_name());
            return m.atom_true(world, *idx);
        }
        case InlFormula::Kind::Neg: return !inl_truth(m, world, f.child(0));
        case InlFormula::Kind::Conj:
            return inl_truth(m, world, f.child(0)) && inl_truth(m, world, f.child(1));
        case InlFormula::Kind::InstBox: {
            for (StateMask nb : m.sigma[world]) {
                bool scope_everywhere = true;
                for (int w = 0; w < m.world_count() && scope_everywhere; ++w)
                    if (((nb >> w) & 1u) && !inl_truth(m, w, f.scope())) scope_everywhere = false;
                if (!scope_everywhere) continue;
                bool instances_met = true;
                for (std::size_t i = 0; i < f.instance_count() && instances_met; ++i) {
                    bool somewhere = false;
                    for (int w = 0; w < m.world_count() && !somewhere; ++w)
                        if (((nb >> w) & 1u) && inl_truth(m, w, f.instance(i))) somewhere = true;
                    instances_met = somewhere;
                }
                if (instances_met) return true;
            }
            return false;
        }
    }
    throw ArgError("unreachable INL kind");
}

Formula inl_to_modal(const InlFormula& f) {
    switch (f.kind()) {
        case InlFormula::Kind::Atom: return Formula::atom(f.atom_name());
        case InlFormula::Kind::Neg: return Formula::neg(inl_to_modal(f.child(0)));
        case InlFormula::Kind::Conj:
            return Formula::conj(inl_to_modal(f.child(0)), inl_to_modal(f.child(1)));
        case InlFormula::Kind::InstBox: {
            Formula scope = inl_to_modal(f.scope());
            if (f.instance_count() == 0) return Formula::kite_odot(scope);
            std::vector<Formula> negated;
            for (std::size_t i = 0; i < f.instance_count(); ++i)
                negated.push_back(Formula::neg(inl_to_modal(f.instance(i))));
            return Formula::neg(Formula::yields(scope, inq_disj_all(negated)));
        }
    }
    throw ArgError("unreachable INL kind");
}

namespace {

struct Measure {
    int modal_depth;
    std::uint64_t size;
};

InlFormula costar(Formula f, const AtomSignature& atoms, const ResolutionLimits& limits,
                  const Measure* parent) {
    // The recursion is well-founded under (modal depth, subterm): assert it.
    if (parent) {
        bool smaller = f.modal_depth() < parent->modal_depth ||
                       (f.modal_depth() == parent->modal_depth && f.tree_size() < parent->size);
        if (!smaller)
            throw Error("translation recursion failed to decrease; this is a bug");
    }
    Measure self{f.modal_depth(), f.tree_size()};
    switch (f.kind()) {
        case Kind::Atom: return InlFormula::atom(f.atom_name());
        case Kind::Bottom: {
            InlFormula p = InlFormula::atom(atoms.name(0));
            return InlFormula::conj(p, InlFormula::neg(p));
        }
        case Kind::Odot:
            return InlFormula::inst_box({}, costar(Formula::bottom(), atoms, limits, &self));
        case Kind::Conj:
            return InlFormula::conj(costar(f.left(), atoms, limits, &self),
                                    costar(f.right(), atoms, limits, &self));
        case Kind::Impl:
            return InlFormula::neg(
                InlFormula::conj(costar(f.left(), atoms, limits, &self),
                                 InlFormula::neg(costar(f.right(), atoms, limits, &self))));
        case Kind::Yields: {
            std::vector<Formula> antecedents = resolutions(f.left(), limits);
            std::vector<Formula> consequents = resolutions(f.right(), limits);
            std::vector<InlFormula> conjuncts;
            for (Formula a : antecedents) {
                std::vector<InlFormula> instances;
                for (Formula b : consequents)
                    instances.push_back(InlFormula::neg(costar(b, atoms, limits, &self)));
                conjuncts.push_back(InlFormula::neg(
                    InlFormula::inst_box(std::move(instances), costar(a, atoms, limits, &self))));
            }
            InlFormula acc = conjuncts[0];
            for (std::size_t i = 1; i < conjuncts.size(); ++i)
                acc = InlFormula::conj(acc, conjuncts[i]);
            return acc;
        }
        case Kind::InqDisj:
            throw ArgError("translation is defined on declaratives only");
    }
    throw ArgError("unreachable formula kind");
}

}  // namespace

CostarResult modal_to_inl(Formula f, const AtomSignature& atoms, const ResolutionLimits& limits) {
    if (!f.is_declarative()) throw ArgError("translation is defined on declaratives only");
    AtomSignature sig = atoms;
    if (sig.empty()) sig = AtomSignature::of_formula(f);
    if (sig.empty()) sig = AtomSignature({"p"});
    CostarResult out;
    out.formula = costar(f, sig, limits, nullptr);
    out.term_count = out.formula.term_count();
    return out;
}

}  // namespace inqnl
