#include <fstream>

#include <json.hpp>

#include "inqnl/proofsys.hpp"

namespace inqnl {

using nlohmann::json;

Derivation derivation_from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ArgError(std::string("derivation JSON: ") + e.what());
    }
    if (!j.is_array()) throw ArgError("derivation JSON: expected an array of steps");
    Derivation d;
    int number = 0;
    try {
        for (const auto& entry : j) {
            ++number;
            auto bad = [&](const std::string& msg) {
                return ArgError("derivation JSON, step " + std::to_string(number) + ": " + msg);
            };
            if (!entry.is_object() || !entry.contains("formula") || !entry.contains("by"))
                throw bad("each step needs \"formula\" and \"by\"");
            Step step;
            step.formula = parse_formula(entry.at("formula").get<std::string>());
            const json& by = entry.at("by");
            if (by.is_string()) {
                if (by.get<std::string>() != "premise") throw bad("unknown justification string");
                step.by = Step::By::Premise;
            } else if (by.is_object() && by.contains("axiom")) {
                step.by = Step::By::Axiom;
                step.axiom = schema_from_name(by.at("axiom").get<std::string>());
            } else if (by.is_object() && by.contains("rule")) {
                std::string rule = by.at("rule").get<std::string>();
                if (!by.contains("of")) throw bad("rule justification needs \"of\"");
                const json& of = by.at("of");
                if (rule == "MP") {
                    step.by = Step::By::MP;
                    if (!of.is_array() || of.size() != 2 || !of[0].is_number_integer() ||
                        !of[1].is_number_integer())
                        throw bad("MP needs \"of\": [minor, major]");
                    step.from = of[0].get<int>();
                    step.via = of[1].get<int>();
                } else if (rule == "CN") {
                    step.by = Step::By::CN;
                    if (!of.is_number_integer()) throw bad("CN needs an integer \"of\"");
                    step.from = of.get<int>();
                } else {
                    throw bad("unknown rule: " + rule);
                }
            } else {
                throw bad("unrecognized justification");
            }
            d.steps.push_back(step);
        }
    } catch (const json::exception& e) {
        throw ArgError("derivation JSON, step " + std::to_string(number) + ": " + e.what());
    }
    return d;
}

Derivation derivation_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgError("cannot open derivation file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return derivation_from_json_text(text);
}

std::string derivation_to_json_text(const Derivation& d, int indent) {
    json j = json::array();
    for (const Step& step : d.steps) {
        json entry;
        entry["formula"] = print_formula(step.formula);
        switch (step.by) {
            case Step::By::Premise: entry["by"] = "premise"; break;
            case Step::By::Axiom: entry["by"] = {{"axiom", std::string(to_string(step.axiom))}}; break;
            case Step::By::MP:
                entry["by"] = {{"rule", "MP"}, {"of", {step.from, step.via}}};
                break;
            case Step::By::CN: entry["by"] = {{"rule", "CN"}, {"of", step.from}}; break;
        }
        j.push_back(entry);
    }
    return j.dump(indent);
}

}  // namespace inqnl
