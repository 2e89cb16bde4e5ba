#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "inqnl/formula.hpp"
#include "inqnl/model.hpp"

namespace inqnl {

// Axiom schemata. The propositional part is a fixed Hilbert basis for
// intuitionistic logic (implication K and S, conjunction, disjunction with //
// in the disjunction role, ex falso), plus the two schemata that govern the
// statement/question divide and the three modal schemata. The last six are
// the optional frame axioms.
enum class Schema : std::uint8_t {
    K,         // p -> (q -> p)
    S,         // (p -> (q -> r)) -> ((p -> q) -> (p -> r))
    AndE1,     // p & q -> p
    AndE2,     // p & q -> q
    AndI,      // p -> (q -> p & q)
    OrI1,      // p -> p // q
    OrI2,      // q -> p // q
    OrE,       // (p -> r) -> ((q -> r) -> (p // q -> r))
    EFQ,       // bot -> p
    DDN,       // ~~a -> a, a declarative
    Split,     // (a -> p // q) -> (a -> p) // (a -> q), a declarative
    Trans,     // (p => q) & (q => r) -> (p => r)
    RConj,     // (p => q) & (p => r) -> (p => q & r)
    LDisj,     // (p => r) & (q => r) -> (p // q => r)
    DownMono,  // (p => q) -> [+](p -> q)
    FinUnion,  // (a => p // q) -> (a => p) \/ (a => q), a declarative
    Refl,      // [+]a -> a, a declarative
    NonTriv,   // ~[+]bot
    Decr,      // (p => q) -> [+](p => q)
    Incr,      // ~(p => q) -> [+]~(p => q)
};

using SchemaSet = std::vector<Schema>;

SchemaSet base_schemas();                           // K .. LDisj
SchemaSet frame_schemas();                          // DownMono .. Incr
Schema schema_from_name(std::string_view name);     // throws ArgError
std::string_view to_string(Schema s);
// The frame condition paired with a frame axiom.
FrameCondition paired_condition(Schema s);

struct AxiomMatch {
    Schema schema;
    std::map<std::string, Formula> substitution;
};

// First schema in the enabled set (in declaration order) that f instantiates,
// honoring declarative side conditions.
std::optional<AxiomMatch> match_axiom(Formula f, const SchemaSet& enabled);
bool matches_schema(Formula f, Schema s, std::map<std::string, Formula>* subst = nullptr);

struct Step {
    enum class By : std::uint8_t { Premise, Axiom, MP, CN };
    Formula formula;
    By by = By::Premise;
    Schema axiom = Schema::K;  // By::Axiom
    int from = 0;              // MP: antecedent step; CN: implication step (1-based)
    int via = 0;               // MP: implication step (1-based)
};

struct Derivation {
    std::vector<Step> steps;
};

struct CheckReport {
    bool ok = false;
    int failed_step = 0;  // 1-based; 0 when ok
    std::string message;
    Formula end_formula;  // set when ok
};

// Verifies every step: premises against the given set, axiom claims against
// their schema, rule applications against the referenced steps.
CheckReport check_derivation(const Derivation& d, std::span<const Formula> premises,
                             const SchemaSet& enabled);

// Certificate for the sequent left |- right: the derivation must use no
// premises and end in (conjunction of left) -> (inquisitive disjunction of
// right), folded left-associatively, with top / bot for empty sides.
CheckReport check_turnstile(std::span<const Formula> left, std::span<const Formula> right,
                            const Derivation& d, const SchemaSet& enabled);

Formula turnstile_goal(std::span<const Formula> left, std::span<const Formula> right);

// JSON derivation files: an array of steps, e.g.
//   [{"formula":"p -> p // q","by":{"axiom":"OrI1"}},
//    {"formula":"p","by":"premise"},
//    {"formula":"p // q","by":{"rule":"MP","of":[2,1]}},
//    {"formula":"p => p // q","by":{"rule":"CN","of":1}}]
Derivation derivation_from_json_text(std::string_view text);
Derivation derivation_from_json_file(const std::string& path);
std::string derivation_to_json_text(const Derivation& d, int indent = 2);

struct FuzzConfig {
    int schema_samples = 50;       // random instances per enabled schema
    int derivation_steps = 200;    // random derivation steps to generate
    int model_bound = 2;
    std::uint32_t seed = 1;
    SchemaSet frame_axioms;        // checked against condition-filtered models
    AtomSignature atoms = AtomSignature({"p", "q"});
};

struct FuzzViolation {
    Formula formula;
    std::string model_json;
    StateMask state;
    std::string context;
};

struct FuzzReport {
    int formulas_checked = 0;
    int models_swept = 0;
    std::vector<FuzzViolation> violations;
};

// Samples schema instances and random derivations, then asserts every derived
// formula is supported by every state of every enumerated model (frame-axiom
// instances only against models satisfying the paired condition). Any
// violation reported here is a soundness bug.
FuzzReport soundness_fuzz(const FuzzConfig& config);

}  // namespace inqnl
