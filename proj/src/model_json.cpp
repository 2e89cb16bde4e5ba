#include <fstream>

#include <json.hpp>

#include "inqnl/model.hpp"

namespace inqnl {

using nlohmann::json;

std::string NeighborhoodModel::to_json_text(int indent) const {
    json j;
    j["atoms"] = atoms.names();
    j["worlds"] = worlds;
    j["allow_empty"] = allow_empty;
    json val = json::object();
    for (int w = 0; w < world_count(); ++w) {
        json trues = json::array();
        for (std::size_t a = 0; a < atoms.size(); ++a)
            if (atom_true(w, static_cast<int>(a))) trues.push_back(atoms.name(a));
        val[worlds[w]] = trues;
    }
    j["valuation"] = val;
    json nb = json::object();
    for (int w = 0; w < world_count(); ++w) {
        json fams = json::array();
        for (StateMask s : sigma[w]) fams.push_back(state_names(s));
        nb[worlds[w]] = fams;
    }
    j["neighborhoods"] = nb;
    return j.dump(indent);
}

NeighborhoodModel NeighborhoodModel::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ArgError(std::string("model JSON: ") + e.what());
    }
    if (!j.is_object()) throw ArgError("model JSON: expected an object");
    try {
        std::vector<std::string> world_names = j.at("worlds").get<std::vector<std::string>>();
        AtomSignature sig(j.at("atoms").get<std::vector<std::string>>());
        bool allow_empty = j.value("allow_empty", false);
        NeighborhoodModel m(std::move(world_names), std::move(sig), allow_empty);

        if (j.contains("valuation")) {
            for (auto& [world, atoms_true] : j.at("valuation").items()) {
                auto w = m.find_world(world);
                if (!w) {
                    m.load_issues.push_back("valuation mentions unknown world: " + world);
                    continue;
                }
                for (const auto& a : atoms_true) {
                    auto idx = m.atoms.index_of(a.get<std::string>());
                    if (!idx) {
                        m.load_issues.push_back("valuation of " + world +
                                                " mentions unknown atom: " + a.get<std::string>());
                        continue;
                    }
                    m.set_atom(*w, *idx, true);
                }
            }
        }
        if (j.contains("neighborhoods")) {
            for (auto& [world, fams] : j.at("neighborhoods").items()) {
                auto w = m.find_world(world);
                if (!w) {
                    m.load_issues.push_back("neighborhoods mention unknown world: " + world);
                    continue;
                }
                for (const auto& fam : fams) {
                    StateMask s = 0;
                    bool ok = true;
                    for (const auto& member : fam) {
                        auto v = m.find_world(member.get<std::string>());
                        if (!v) {
                            m.load_issues.push_back("neighborhood of " + world +
                                                    " mentions unknown world: " +
                                                    member.get<std::string>());
                            ok = false;
                            continue;
                        }
                        s |= (1u << *v);
                    }
                    if (ok) m.add_neighborhood(*w, s);
                }
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw ArgError(std::string("model JSON: ") + e.what());
    }
}

NeighborhoodModel NeighborhoodModel::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgError("cannot open model file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

}  // namespace inqnl
