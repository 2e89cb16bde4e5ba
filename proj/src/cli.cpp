#include "inqnl/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inqnl/bisim.hpp"
#include "inqnl/charform.hpp"
#include "inqnl/formula.hpp"
#include "inqnl/inl.hpp"
#include "inqnl/model.hpp"
#include "inqnl/proofsys.hpp"
#include "inqnl/semantics.hpp"

namespace inqnl {

namespace {

using nlohmann::json;

std::vector<Formula> load_formula_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgError("cannot open formula file: " + path);
    std::vector<Formula> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = trimmed.find_last_not_of(" \t\r");
        trimmed = trimmed.substr(first, last - first + 1);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        out.push_back(parse_formula(trimmed));
    }
    return out;
}

json state_json(const NeighborhoodModel& m, StateMask s) {
    return json(m.state_names(s));
}

json frame_witness_json(const NeighborhoodModel& m, const FrameCheckResult& r) {
    json w;
    w["world"] = m.worlds[r.world];
    json states = json::array();
    for (StateMask s : r.states) states.push_back(state_json(m, s));
    w["states"] = states;
    if (r.successor) w["successor"] = m.worlds[*r.successor];
    if (r.missing) w["missing"] = state_json(m, *r.missing);
    return w;
}

std::string frame_witness_text(const NeighborhoodModel& m, const FrameCheckResult& r) {
    std::ostringstream os;
    os << "world " << m.worlds[r.world];
    if (r.successor) os << ", successor " << m.worlds[*r.successor];
    auto name_state = [&](StateMask s) {
        std::string text = "{";
        bool first = true;
        for (const auto& n : m.state_names(s)) {
            if (!first) text += ",";
            text += n;
            first = false;
        }
        return text + "}";
    };
    if (!r.states.empty()) {
        os << ", states";
        for (StateMask s : r.states) os << " " << name_state(s);
    }
    if (r.missing) os << ", missing " << name_state(*r.missing);
    return os.str();
}

SchemaSet schemas_with_frame_axioms(const std::string& csv) {
    SchemaSet enabled = base_schemas();
    std::size_t start = 0;
    while (start <= csv.size() && !csv.empty()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string::npos) end = csv.size();
        std::string part = csv.substr(start, end - start);
        if (!part.empty()) {
            if (part == "downmono") enabled.push_back(Schema::DownMono);
            else if (part == "finunion") enabled.push_back(Schema::FinUnion);
            else if (part == "refl") enabled.push_back(Schema::Refl);
            else if (part == "nontriv") enabled.push_back(Schema::NonTriv);
            else if (part == "decr") enabled.push_back(Schema::Decr);
            else if (part == "incr") enabled.push_back(Schema::Incr);
            else throw ArgError("unknown frame axiom: " + part +
                                " (expected downmono, finunion, refl, nontriv, decr, incr)");
        }
        if (end == csv.size()) break;
        start = end + 1;
    }
    return enabled;
}

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_parsed(args, out, err);
    } catch (const CapError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

namespace {

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"inquisitive modal logic over neighborhood models"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false;
    app.add_flag("--json", json_out, "machine readable output");

    std::string model_path, model2_path, world, state_csv, formula_text, cond_name, kind_name;
    std::string out_path, deriv_path, premises_path, goal_text, frame_axioms_csv, sig_csv;
    int depth_n = -1;
    int max_worlds = 2;
    bool allow_empty = false;
    int fuzz_samples = 50, fuzz_steps = 200, fuzz_bound = 2;
    unsigned int seed = 1;

    auto* eval = app.add_subcommand("eval", "support of a formula at a state");
    eval->add_option("-m,--model", model_path, "model JSON file")->required();
    eval->add_option("-s,--state", state_csv,
                     "comma separated world names; empty string for the empty state")
        ->required();
    eval->add_option("formula", formula_text, "formula")->required();

    auto* truth = app.add_subcommand("truth", "truth of a formula at a world");
    truth->add_option("-m,--model", model_path, "model JSON file")->required();
    truth->add_option("-w,--world", world, "world name")->required();
    truth->add_option("formula", formula_text, "formula")->required();

    auto* bisim_cmd = app.add_subcommand("bisim", "stratified bisimulation between two models");
    bisim_cmd->add_option("--m1", model_path, "left model JSON file")->required();
    bisim_cmd->add_option("--m2", model2_path, "right model JSON file")->required();
    bisim_cmd->add_option("-n,--depth", depth_n, "layers to compute (default: until stable)");

    auto* charform_cmd = app.add_subcommand("charform", "characteristic formula of a world");
    charform_cmd->add_option("-m,--model", model_path, "model JSON file")->required();
    charform_cmd->add_option("-w,--world", world, "world name");
    charform_cmd->add_option("-s,--state", state_csv, "state instead of a world");
    charform_cmd->add_option("-n,--depth", depth_n, "formula depth")->required();

    auto* closure_cmd = app.add_subcommand("closure", "monotonic closure of a model");
    closure_cmd->add_option("-m,--model", model_path, "model JSON file")->required();
    closure_cmd->add_option("--kind", kind_name, "up, down, convex, or union")->required();
    closure_cmd->add_option("-o,--output", out_path, "write the closed model here");

    auto* frame = app.add_subcommand("frame", "check a frame condition");
    frame->add_option("-m,--model", model_path, "model JSON file")->required();
    frame->add_option("--cond", cond_name, "condition name")->required();
    frame->add_option("--world", world, "restrict the check to one world");

    auto* check = app.add_subcommand("check", "verify a derivation");
    check->add_option("-d,--derivation", deriv_path, "derivation JSON file")->required();
    check->add_option("--premises", premises_path, "file with one premise per line");
    check->add_option("--frame-axioms", frame_axioms_csv,
                      "comma separated: downmono,finunion,refl,nontriv,decr,incr");

    auto* counter = app.add_subcommand("countermodel", "bounded countermodel search");
    counter->add_option("--premises", premises_path, "file with one premise per line");
    counter->add_option("--goal", goal_text, "conclusion formula")->required();
    counter->add_option("--max-worlds", max_worlds, "world bound (default 2, cap 3)");
    counter->add_flag("--allow-empty", allow_empty, "allow empty neighborhoods");

    auto* star = app.add_subcommand("inl-star", "translate an instantial box formula");
    star->add_option("formula", formula_text, "INL formula, e.g. box(q ; p)")->required();

    auto* costar = app.add_subcommand("inl-costar", "translate a declarative to instantial form");
    costar->add_option("formula", formula_text, "declarative formula")->required();
    costar->add_option("--sig", sig_csv, "comma separated atom signature");

    auto* fuzz = app.add_subcommand("fuzz", "soundness fuzzing of the proof system");
    fuzz->add_option("--samples", fuzz_samples, "instances per schema");
    fuzz->add_option("--derivations", fuzz_steps, "random derivation steps");
    fuzz->add_option("--bound", fuzz_bound, "model bound");
    fuzz->add_option("--seed", seed, "random seed");
    fuzz->add_option("--frame-axioms", frame_axioms_csv,
                     "comma separated: downmono,finunion,refl,nontriv,decr,incr");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto verdict = [&](bool v, const json& extra) {
        if (json_out) {
            json j = extra;
            j["verdict"] = v;
            out << j.dump(2) << "\n";
        } else {
            out << (v ? "true" : "false") << "\n";
        }
        return 0;
    };

    if (eval->parsed()) {
        NeighborhoodModel m = NeighborhoodModel::from_json_file(model_path);
        Formula f = parse_formula(formula_text);
        StateMask s = m.state_from_names(state_csv);
        bool v = supports(m, s, f);
        return verdict(v, {{"command", "eval"}, {"formula", print_formula(f)},
                           {"state", state_json(m, s)}});
    }

    if (truth->parsed()) {
        NeighborhoodModel m = NeighborhoodModel::from_json_file(model_path);
        Formula f = parse_formula(formula_text);
        int w = m.world_index(world);
        bool v = true_at(m, w, f);
        return verdict(v, {{"command", "truth"}, {"formula", print_formula(f)},
                           {"world", m.worlds[w]}});
    }

    if (bisim_cmd->parsed()) {
        NeighborhoodModel m1 = NeighborhoodModel::from_json_file(model_path);
        NeighborhoodModel m2 = NeighborhoodModel::from_json_file(model2_path);
        std::optional<int> depth;
        if (depth_n >= 0) depth = depth_n;
        StratifiedBisim b = stratified_bisim(m1, m2, depth);
        auto pairs_of = [&](const Relation& r) {
            json pairs = json::array();
            for (int i = 0; i < r.rows(); ++i)
                for (int j = 0; j < r.cols(); ++j)
                    if (r.at(i, j)) pairs.push_back({m1.worlds[i], m2.worlds[j]});
            return pairs;
        };
        if (json_out) {
            json j;
            j["command"] = "bisim";
            j["stabilized"] = b.stabilized;
            if (b.stabilized) j["stabilization_index"] = b.stabilization_index;
            json layers = json::array();
            for (const Relation& r : b.layers) layers.push_back(pairs_of(r));
            j["layers"] = layers;
            out << j.dump(2) << "\n";
        } else {
            for (std::size_t n = 0; n < b.layers.size(); ++n) {
                out << "Z" << n << ":";
                for (int i = 0; i < b.layers[n].rows(); ++i)
                    for (int j = 0; j < b.layers[n].cols(); ++j)
                        if (b.layers[n].at(i, j))
                            out << " (" << m1.worlds[i] << "," << m2.worlds[j] << ")";
                out << "\n";
            }
            if (b.stabilized)
                out << "stable at Z" << b.stabilization_index << "\n";
        }
        return 0;
    }

    if (charform_cmd->parsed()) {
        NeighborhoodModel m = NeighborhoodModel::from_json_file(model_path);
        CharformBuilder builder({&m});
        Formula f;
        if (!world.empty()) {
            f = builder.chi_world(0, m.world_index(world), depth_n);
        } else if (charform_cmd->count("--state") || charform_cmd->count("-s")) {
            f = builder.pi_state(0, m.state_from_names(state_csv), depth_n);
        } else {
            throw ArgError("charform needs --world or --state");
        }
        if (json_out)
            out << json{{"command", "charform"}, {"formula", print_formula(f)}}.dump(2) << "\n";
        else
            out << print_formula(f) << "\n";
        return 0;
    }

    if (closure_cmd->parsed()) {
        NeighborhoodModel m = NeighborhoodModel::from_json_file(model_path);
        NeighborhoodModel closed = m.closure(closure_kind_from_name(kind_name));
        std::string text = closed.to_json_text(2);
        if (!out_path.empty()) {
            std::ofstream of(out_path);
            if (!of) throw ArgError("cannot write: " + out_path);
            of << text << "\n";
            if (!json_out) out << "wrote " << out_path << "\n";
        } else {
            out << text << "\n";
        }
        return 0;
    }

    if (frame->parsed()) {
        NeighborhoodModel m = NeighborhoodModel::from_json_file(model_path);
        FrameCondition cond = frame_condition_from_name(cond_name);
        std::optional<int> only;
        if (!world.empty()) only = m.world_index(world);
        FrameCheckResult r = m.check_frame_condition(cond, only);
        if (json_out) {
            json j{{"command", "frame"}, {"condition", std::string(to_string(cond))},
                   {"verdict", r.holds}};
            if (!r.holds) j["witness"] = frame_witness_json(m, r);
            out << j.dump(2) << "\n";
        } else {
            out << (r.holds ? "true" : "false") << "\n";
            if (!r.holds) out << "witness: " << frame_witness_text(m, r) << "\n";
        }
        return 0;
    }

    if (check->parsed()) {
        Derivation d = derivation_from_json_file(deriv_path);
        std::vector<Formula> premises;
        if (!premises_path.empty()) premises = load_formula_lines(premises_path);
        SchemaSet enabled = schemas_with_frame_axioms(frame_axioms_csv);
        CheckReport r = check_derivation(d, premises, enabled);
        if (json_out) {
            json j{{"command", "check"}, {"ok", r.ok}};
            if (r.ok) j["end_formula"] = print_formula(r.end_formula);
            else {
                j["step"] = r.failed_step;
                j["message"] = r.message;
            }
            out << j.dump(2) << "\n";
        } else if (r.ok) {
            out << "ok: " << print_formula(r.end_formula) << "\n";
        } else {
            out << "rejected at step " << r.failed_step << ": " << r.message << "\n";
        }
        return r.ok ? 0 : 1;
    }

    if (counter->parsed()) {
        std::vector<Formula> premises;
        if (!premises_path.empty()) premises = load_formula_lines(premises_path);
        Formula goal = parse_formula(goal_text);
        auto found = find_countermodel(premises, goal, max_worlds, allow_empty);
        if (json_out) {
            json j{{"command", "countermodel"}, {"found", found.has_value()}};
            if (found) {
                j["model"] = json::parse(found->model.to_json_text());
                j["state"] = state_json(found->model, found->state);
            }
            out << j.dump(2) << "\n";
        } else if (found) {
            out << "countermodel state: ";
            bool first = true;
            out << "{";
            for (const auto& n : found->model.state_names(found->state)) {
                if (!first) out << ",";
                out << n;
                first = false;
            }
            out << "}\n" << found->model.to_json_text(2) << "\n";
        } else {
            out << "none\n";
        }
        return found ? 0 : 1;
    }

    if (star->parsed()) {
        InlFormula f = parse_inl(formula_text);
        Formula translated = inl_to_modal(f);
        if (json_out)
            out << json{{"command", "inl-star"}, {"formula", print_formula(translated)}}.dump(2)
                << "\n";
        else
            out << print_formula(translated) << "\n";
        return 0;
    }

    if (costar->parsed()) {
        Formula f = parse_formula(formula_text);
        AtomSignature sig;
        if (!sig_csv.empty()) {
            std::vector<std::string> names;
            std::size_t start = 0;
            while (start <= sig_csv.size()) {
                std::size_t end = sig_csv.find(',', start);
                if (end == std::string::npos) end = sig_csv.size();
                if (end > start) names.push_back(sig_csv.substr(start, end - start));
                if (end == sig_csv.size()) break;
                start = end + 1;
            }
            sig = AtomSignature(names);
        }
        CostarResult r = modal_to_inl(f, sig);
        if (json_out)
            out << json{{"command", "inl-costar"}, {"formula", print_inl(r.formula)},
                        {"term_count", r.term_count}}
                       .dump(2)
                << "\n";
        else
            out << print_inl(r.formula) << "\nterm count: " << r.term_count << "\n";
        return 0;
    }

    if (fuzz->parsed()) {
        FuzzConfig config;
        config.schema_samples = fuzz_samples;
        config.derivation_steps = fuzz_steps;
        config.model_bound = fuzz_bound;
        config.seed = seed;
        SchemaSet with_frames = schemas_with_frame_axioms(frame_axioms_csv);
        for (Schema s : with_frames) {
            bool is_base = false;
            for (Schema b : base_schemas())
                if (b == s) is_base = true;
            if (!is_base) config.frame_axioms.push_back(s);
        }
        FuzzReport r = soundness_fuzz(config);
        if (json_out) {
            json j{{"command", "fuzz"},
                   {"formulas_checked", r.formulas_checked},
                   {"models", r.models_swept},
                   {"violations", json::array()}};
            for (const auto& v : r.violations)
                j["violations"].push_back({{"formula", print_formula(v.formula)},
                                           {"context", v.context}});
            out << j.dump(2) << "\n";
        } else {
            out << "checked " << r.formulas_checked << " formulas against " << r.models_swept
                << " models; " << r.violations.size() << " violations\n";
            for (const auto& v : r.violations)
                out << "  " << print_formula(v.formula) << " (" << v.context << ")\n";
        }
        return r.violations.empty() ? 0 : 1;
    }

    err << "error: no subcommand\n";
    return 2;
}

}  // namespace

}  // namespace inqnl
