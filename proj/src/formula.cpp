#include "inqnl/formula.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace inqnl {

namespace detail {

struct FormulaNode {
    Kind kind;
    bool declarative;
    int modal_depth;
    std::uint64_t tree_size;
    std::uint64_t id;
    std::size_t hash;
    const FormulaNode* left = nullptr;
    const FormulaNode* right = nullptr;
    std::string name;  // Atom only
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? UINT64_MAX : s;
}

struct NodeKey {
    Kind kind;
    const FormulaNode* left;
    const FormulaNode* right;
    std::string_view name;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind);
        h = mix(h, reinterpret_cast<std::size_t>(k.left));
        h = mix(h, reinterpret_cast<std::size_t>(k.right));
        h = mix(h, std::hash<std::string_view>{}(k.name));
        return h;
    }
};

// Process-wide intern table. Nodes live for the lifetime of the process.
struct Interner {
    std::mutex mu;
    std::unordered_map<NodeKey, std::unique_ptr<FormulaNode>, NodeKeyHash> table;
    std::uint64_t next_id = 1;

    const FormulaNode* intern(Kind kind, const FormulaNode* l, const FormulaNode* r,
                              std::string_view name) {
        std::lock_guard<std::mutex> lock(mu);
        NodeKey key{kind, l, r, name};
        auto it = table.find(key);
        if (it != table.end()) return it->second.get();

        auto node = std::make_unique<FormulaNode>();
        node->kind = kind;
        node->left = l;
        node->right = r;
        node->name = std::string(name);
        node->id = next_id++;
        switch (kind) {
            case Kind::Atom:
            case Kind::Bottom:
                node->declarative = true;
                node->modal_depth = 0;
                node->tree_size = 1;
                break;
            case Kind::Odot:
                node->declarative = true;
                node->modal_depth = 1;
                node->tree_size = 1;
                break;
            case Kind::Conj:
            case Kind::Impl:
                node->declarative = l->declarative && r->declarative;
                node->modal_depth = std::max(l->modal_depth, r->modal_depth);
                node->tree_size = sat_add(1, sat_add(l->tree_size, r->tree_size));
                break;
            case Kind::InqDisj:
                node->declarative = false;
                node->modal_depth = std::max(l->modal_depth, r->modal_depth);
                node->tree_size = sat_add(1, sat_add(l->tree_size, r->tree_size));
                break;
            case Kind::Yields:
                node->declarative = true;
                node->modal_depth = std::max(l->modal_depth, r->modal_depth) + 1;
                node->tree_size = sat_add(1, sat_add(l->tree_size, r->tree_size));
                break;
        }
        std::size_t h = static_cast<std::size_t>(kind);
        h = mix(h, l ? l->hash : 0);
        h = mix(h, r ? r->hash : 0);
        h = mix(h, std::hash<std::string_view>{}(name));
        node->hash = h;
        // The key's name view must point at storage that outlives the entry.
        NodeKey stored{kind, l, r, node->name};
        const FormulaNode* out = node.get();
        table.emplace(stored, std::move(node));
        return out;
    }
};

Interner& interner() {
    static Interner g;
    return g;
}

const FormulaNode* make(Kind kind, const FormulaNode* l = nullptr,
                        const FormulaNode* r = nullptr, std::string_view name = {}) {
    return interner().intern(kind, l, r, name);
}

}  // namespace
}  // namespace detail

using detail::FormulaNode;

namespace detail {
const FormulaNode* node_of(Formula f) { return f.node_; }
Formula wrap(const FormulaNode* n) { return Formula(n); }
}  // namespace detail

namespace {
using detail::node_of;
using detail::wrap;

const FormulaNode* require(Formula f) {
    const FormulaNode* n = node_of(f);
    if (!n) throw ArgError("operation on an empty formula handle");
    return n;
}
}  // namespace

std::size_t FormulaHash::operator()(Formula f) const noexcept {
    const FormulaNode* n = f.node_;
    return n ? n->hash : 0;
}

Formula Formula::atom(std::string_view name) {
    if (name.empty()) throw ArgError("atom name must be nonempty");
    return wrap(detail::make(Kind::Atom, nullptr, nullptr, name));
}
Formula Formula::bottom() { return wrap(detail::make(Kind::Bottom)); }
Formula Formula::odot() { return wrap(detail::make(Kind::Odot)); }
Formula Formula::conj(Formula l, Formula r) {
    return wrap(detail::make(Kind::Conj, require(l), require(r)));
}
Formula Formula::inq_disj(Formula l, Formula r) {
    return wrap(detail::make(Kind::InqDisj, require(l), require(r)));
}
Formula Formula::impl(Formula l, Formula r) {
    return wrap(detail::make(Kind::Impl, require(l), require(r)));
}
Formula Formula::yields(Formula l, Formula r) {
    return wrap(detail::make(Kind::Yields, require(l), require(r)));
}

Formula Formula::top() { return impl(bottom(), bottom()); }
Formula Formula::neg(Formula f) { return impl(f, bottom()); }
Formula Formula::decl_or(Formula l, Formula r) { return neg(conj(neg(l), neg(r))); }
Formula Formula::iff(Formula l, Formula r) { return conj(impl(l, r), impl(r, l)); }
Formula Formula::question(Formula f) { return inq_disj(f, neg(f)); }
Formula Formula::window(Formula f) { return yields(top(), f); }
Formula Formula::kite(Formula f) { return neg(yields(f, bottom())); }
Formula Formula::kite_odot(Formula f) { return decl_or(kite(f), odot()); }

Formula Formula::counterfactual(Formula antecedent, Formula consequent) {
    if (!require(antecedent)->declarative || !require(consequent)->declarative)
        throw ArgError("counterfactual arguments must be declarative");
    Formula a = antecedent, b = consequent;
    return decl_or(window(neg(a)), neg(yields(impl(a, b), neg(a))));
}

Kind Formula::kind() const { return require(*this)->kind; }

const std::string& Formula::atom_name() const {
    const FormulaNode* n = require(*this);
    if (n->kind != Kind::Atom) throw ArgError("atom_name on a non-atom");
    return n->name;
}

Formula Formula::left() const {
    const FormulaNode* n = require(*this);
    if (!n->left) throw ArgError("left() on a leaf formula");
    return wrap(n->left);
}
Formula Formula::right() const {
    const FormulaNode* n = require(*this);
    if (!n->right) throw ArgError("right() on a leaf formula");
    return wrap(n->right);
}

int Formula::modal_depth() const { return require(*this)->modal_depth; }
bool Formula::is_declarative() const { return require(*this)->declarative; }
std::uint64_t Formula::tree_size() const { return require(*this)->tree_size; }
std::uint64_t Formula::id() const { return require(*this)->id; }

int Formula::compare(Formula a, Formula b) {
    const FormulaNode* x = node_of(a);
    const FormulaNode* y = node_of(b);
    if (x == y) return 0;
    if (!x || !y) return x ? 1 : -1;
    if (x->tree_size != y->tree_size) return x->tree_size < y->tree_size ? -1 : 1;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (x->kind == Kind::Atom) return x->name.compare(y->name);
    if (x->left != y->left) {
        int c = compare(wrap(x->left), wrap(y->left));
        if (c != 0) return c;
    }
    return compare(wrap(x->right), wrap(y->right));
}

Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::top();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
    return acc;
}
Formula inq_disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::inq_disj(acc, fs[i]);
    return acc;
}
Formula decl_or_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::decl_or(acc, fs[i]);
    return acc;
}

AtomSignature::AtomSignature(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ArgError("empty atom name in signature");
        if (!seen.insert(n).second) throw ArgError("duplicate atom in signature: " + n);
    }
}

std::optional<int> AtomSignature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

namespace {
void collect_atoms(Formula f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Kind::Atom: out.insert(f.atom_name()); return;
        case Kind::Bottom:
        case Kind::Odot: return;
        default:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
    }
}
}  // namespace

AtomSignature AtomSignature::of_formula(Formula f) { return of_formulas({f}); }

AtomSignature AtomSignature::of_formulas(const std::vector<Formula>& fs) {
    std::set<std::string> atoms;
    for (Formula f : fs) collect_atoms(f, atoms);
    return AtomSignature(std::vector<std::string>(atoms.begin(), atoms.end()));
}

// ---------------------------------------------------------------------------
// Resolutions and the declarative variant
// ---------------------------------------------------------------------------

namespace {

void sort_dedup(std::vector<Formula>& v) {
    std::sort(v.begin(), v.end(),
              [](Formula a, Formula b) { return Formula::compare(a, b) < 0; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

using ResMemo = std::unordered_map<Formula, std::vector<Formula>, FormulaHash>;

const std::vector<Formula>& resolve(Formula f, const ResolutionLimits& limits, ResMemo& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;

    std::vector<Formula> out;
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bottom:
        case Kind::Odot:
        case Kind::Yields:
            out = {f};
            break;
        case Kind::InqDisj: {
            const auto& l = resolve(f.left(), limits, memo);
            const auto& r = resolve(f.right(), limits, memo);
            out = l;
            out.insert(out.end(), r.begin(), r.end());
            sort_dedup(out);
            break;
        }
        case Kind::Conj: {
            const auto& l = resolve(f.left(), limits, memo);
            const auto& r = resolve(f.right(), limits, memo);
            if (l.size() * r.size() > limits.max_count)
                throw CapError("resolution count exceeds cap of " +
                               std::to_string(limits.max_count));
            for (Formula a : l)
                for (Formula b : r) out.push_back(Formula::conj(a, b));
            sort_dedup(out);
            break;
        }
        case Kind::Impl: {
            const auto& l = resolve(f.left(), limits, memo);
            const auto& r = resolve(f.right(), limits, memo);
            // One conjunct per antecedent resolution, one output per choice
            // function R(left) -> R(right): |R(right)|^|R(left)| candidates.
            double estimate = 1;
            for (std::size_t i = 0; i < l.size(); ++i) {
                estimate *= static_cast<double>(r.size());
                if (estimate > static_cast<double>(limits.max_count))
                    throw CapError("resolution count exceeds cap of " +
                                   std::to_string(limits.max_count));
            }
            std::vector<std::size_t> choice(l.size(), 0);
            while (true) {
                std::vector<Formula> conjuncts;
                conjuncts.reserve(l.size());
                for (std::size_t i = 0; i < l.size(); ++i)
                    conjuncts.push_back(Formula::impl(l[i], r[choice[i]]));
                out.push_back(conj_all(conjuncts));
                std::size_t k = 0;
                for (; k < choice.size(); ++k) {
                    if (++choice[k] < r.size()) break;
                    choice[k] = 0;
                }
                if (k == choice.size()) break;
            }
            sort_dedup(out);
            break;
        }
    }
    return memo.emplace(f, std::move(out)).first->second;
}

}  // namespace

std::vector<Formula> resolutions(Formula f, const ResolutionLimits& limits) {
    ResMemo memo;
    return resolve(f, limits, memo);
}

std::vector<std::vector<Formula>> resolutions_of_set(const std::vector<Formula>& fs,
                                                     const ResolutionLimits& limits) {
    ResMemo memo;
    std::vector<const std::vector<Formula>*> per_member;
    double estimate = 1;
    for (Formula f : fs) {
        per_member.push_back(&resolve(f, limits, memo));
        estimate *= static_cast<double>(per_member.back()->size());
        if (estimate > static_cast<double>(limits.max_count))
            throw CapError("resolution count exceeds cap of " + std::to_string(limits.max_count));
    }
    std::vector<std::vector<Formula>> out;
    std::vector<std::size_t> choice(fs.size(), 0);
    while (true) {
        std::vector<Formula> picked;
        picked.reserve(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) picked.push_back((*per_member[i])[choice[i]]);
        sort_dedup(picked);
        out.push_back(std::move(picked));
        if (fs.empty()) break;
        std::size_t k = 0;
        for (; k < choice.size(); ++k) {
            if (++choice[k] < per_member[k]->size()) break;
            choice[k] = 0;
        }
        if (k == choice.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](Formula x, Formula y) { return Formula::compare(x, y) < 0; });
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Formula declarative_variant(Formula f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bottom:
        case Kind::Odot:
        case Kind::Yields:
            return f;
        case Kind::Conj:
            return Formula::conj(declarative_variant(f.left()), declarative_variant(f.right()));
        case Kind::Impl:
            return Formula::impl(declarative_variant(f.left()), declarative_variant(f.right()));
        case Kind::InqDisj:
            return Formula::decl_or(declarative_variant(f.left()),
                                    declarative_variant(f.right()));
    }
    throw ArgError("unreachable formula kind");
}

}  // namespace inqnl
