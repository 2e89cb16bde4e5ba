#include <optional>
#include <string>

#include "inqnl/formula.hpp"

namespace inqnl {

namespace {

// Precedence levels, matching the parser: 0 arrows, 1 //, 2 \/, 3 &,
// 4 prefix operators, 5 atoms and constants.
enum class ArrowOp { None, Impl, Iff, Yields, CFact };

struct Rendered {
    std::string text;
    int level;
    ArrowOp op = ArrowOp::None;
};

bool is_bottom(Formula f) { return f.kind() == Kind::Bottom; }
bool is_top(Formula f) {
    return f.kind() == Kind::Impl && is_bottom(f.left()) && is_bottom(f.right());
}
bool is_neg(Formula f, Formula* body = nullptr) {
    if (f.kind() != Kind::Impl || !is_bottom(f.right())) return false;
    if (body) *body = f.left();
    return true;
}
bool is_or(Formula f, Formula* a, Formula* b) {
    Formula body;
    if (!is_neg(f, &body) || body.kind() != Kind::Conj) return false;
    Formula na = body.left(), nb = body.right();
    Formula x, y;
    if (!is_neg(na, &x) || !is_neg(nb, &y)) return false;
    *a = x;
    *b = y;
    return true;
}
bool is_window(Formula f, Formula* body) {
    if (f.kind() != Kind::Yields || !is_top(f.left())) return false;
    *body = f.right();
    return true;
}
bool is_kite(Formula f, Formula* body) {
    Formula neg_body;
    if (!is_neg(f, &neg_body) || neg_body.kind() != Kind::Yields ||
        !is_bottom(neg_body.right()))
        return false;
    *body = neg_body.left();
    return true;
}
bool is_kite_odot(Formula f, Formula* body) {
    Formula a, b;
    return is_or(f, &a, &b) && b.kind() == Kind::Odot && is_kite(a, body);
}
bool is_question(Formula f, Formula* body) {
    if (f.kind() != Kind::InqDisj) return false;
    Formula neg_body;
    if (!is_neg(f.right(), &neg_body) || neg_body != f.left()) return false;
    *body = f.left();
    return true;
}
bool is_iff(Formula f, Formula* a, Formula* b) {
    if (f.kind() != Kind::Conj) return false;
    Formula l = f.left(), r = f.right();
    if (l.kind() != Kind::Impl || r.kind() != Kind::Impl) return false;
    if (l.left() != r.right() || l.right() != r.left()) return false;
    *a = l.left();
    *b = l.right();
    return true;
}
// [+]~a \/ ~((a -> b) => ~a)
bool is_counterfactual(Formula f, Formula* a, Formula* b) {
    Formula l, r;
    if (!is_or(f, &l, &r)) return false;
    Formula wneg;
    if (!is_window(l, &wneg)) return false;
    Formula ante;
    if (!is_neg(wneg, &ante)) return false;
    Formula yneg;
    if (!is_neg(r, &yneg) || yneg.kind() != Kind::Yields) return false;
    Formula impl_part = yneg.left();
    Formula neg_part;
    if (!is_neg(yneg.right(), &neg_part) || neg_part != ante) return false;
    if (impl_part.kind() != Kind::Impl || impl_part.left() != ante) return false;
    *a = ante;
    *b = impl_part.right();
    return true;
}

struct Printer {
    bool resugar;

    Rendered render(Formula f) {
        if (resugar) {
            if (is_top(f)) return {"top", 5};
            Formula a, b;
            if (is_counterfactual(f, &a, &b))
                return {arrow_text(a, b, "~>", ArrowOp::CFact), 0, ArrowOp::CFact};
            if (is_kite_odot(f, &a)) return {"<+.> " + child(a, 4), 4};
            if (is_kite(f, &a)) return {"<+> " + child(a, 4), 4};
            if (is_window(f, &a)) return {"[+] " + child(a, 4), 4};
            if (is_question(f, &a)) return {"?" + child(a, 4), 4};
            if (is_iff(f, &a, &b)) return {arrow_text(a, b, "<->", ArrowOp::Iff), 0, ArrowOp::Iff};
            if (is_or(f, &a, &b)) return {left_assoc(f, a, b, "\\/", 2), 2};
            if (is_neg(f, &a)) return {"~" + child(a, 4), 4};
        }
        switch (f.kind()) {
            case Kind::Atom: return {f.atom_name(), 5};
            case Kind::Bottom: return {"bot", 5};
            case Kind::Odot: return {"(.)", 5};
            case Kind::Conj: return {left_assoc(f, f.left(), f.right(), "&", 3), 3};
            case Kind::InqDisj: return {left_assoc(f, f.left(), f.right(), "//", 1), 1};
            case Kind::Impl:
                return {arrow_text(f.left(), f.right(), "->", ArrowOp::Impl), 0, ArrowOp::Impl};
            case Kind::Yields:
                return {arrow_text(f.left(), f.right(), "=>", ArrowOp::Yields), 0,
                        ArrowOp::Yields};
        }
        throw ArgError("unreachable formula kind");
    }

    // Child of a prefix or binary operator at the given level; parenthesize
    // when the child binds less tightly.
    std::string child(Formula f, int min_level) {
        Rendered r = render(f);
        if (r.level < min_level) return "(" + r.text + ")";
        return r.text;
    }

    std::string left_assoc(Formula, Formula l, Formula r, const char* op, int level) {
        Rendered lr = render(l);
        Rendered rr = render(r);
        std::string lt = lr.level < level ? "(" + lr.text + ")" : lr.text;
        // Equal level on the right re-associates, so it needs parentheses.
        std::string rt = rr.level <= level ? "(" + rr.text + ")" : rr.text;
        return lt + " " + op + " " + rt;
    }

    std::string arrow_text(Formula l, Formula r, const char* op, ArrowOp which) {
        Rendered lr = render(l);
        Rendered rr = render(r);
        std::string lt = lr.level <= 0 ? "(" + lr.text + ")" : lr.text;
        // A right child with the same arrow may chain; a different arrow
        // would be a mixing error on re-parse.
        std::string rt =
            (rr.level == 0 && rr.op != which) ? "(" + rr.text + ")" : rr.text;
        return lt + " " + std::string(op) + " " + rt;
    }
};

}  // namespace

std::string print_formula(Formula f, bool resugar) {
    Printer p{resugar};
    return p.render(f).text;
}

}  // namespace inqnl
