#include "bdpp/scenario_io.hpp"

#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "bdpp/errors.hpp"

namespace bdpp {

namespace {

double require_number(const nlohmann::json& j, const std::string& key,
                      const std::string& where) {
    if (!j.contains(key))
        throw ParseError("missing key '" + key + "' in " + where);
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ParseError("key '" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

} // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("scenario must be a JSON object");
    static const std::set<std::string> known{"regimes", "generator", "x0",
                                             "y0",      "initial_regime", "rho"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key()))
            throw ParseError("unknown scenario key '" + item.key() + "'");
    }
    if (!j.contains("regimes") || !j.at("regimes").is_array() || j.at("regimes").empty())
        throw ParseError("'regimes' must be a nonempty array");
    if (!j.contains("generator") || !j.at("generator").is_array())
        throw ParseError("'generator' must be an array of rows");

    Scenario s;
    int index = 0;
    for (const auto& rj : j.at("regimes")) {
        ++index;
        const std::string where = "regime " + std::to_string(index);
        if (!rj.is_object()) throw ParseError(where + " must be an object");
        for (const auto& item : rj.items()) {
            bool ok = false;
            for (const auto& field : kCoefficientFields)
                if (item.key() == field.name) ok = true;
            if (!ok) throw ParseError("unknown coefficient '" + item.key() + "' in " + where);
        }
        RegimeParameterSet r;
        for (const auto& field : kCoefficientFields)
            r.*(field.member) = require_number(rj, field.name, where);
        s.regimes.push_back(r);
    }

    std::vector<std::vector<double>> rows;
    const size_t dim = j.at("generator").size();
    for (const auto& row : j.at("generator")) {
        if (!row.is_array() || row.size() != dim)
            throw ParseError("'generator' must be a square array of number rows");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw ParseError("'generator' entries must be numbers");
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    s.generator = GeneratorMatrix::from_rows(rows);

    s.x0 = require_number(j, "x0", "scenario");
    s.y0 = require_number(j, "y0", "scenario");
    if (j.contains("initial_regime")) {
        const auto& v = j.at("initial_regime");
        if (!v.is_number_integer())
            throw ParseError("'initial_regime' must be an integer (1-based)");
        s.initial_regime = v.get<int>() - 1;
    }
    if (j.contains("rho")) {
        const auto& v = j.at("rho");
        if (!v.is_number()) throw ParseError("'rho' must be a number");
        s.rho = v.get<double>();
    }
    return s;
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["regimes"] = nlohmann::ordered_json::array();
    for (const auto& r : s.regimes) {
        nlohmann::ordered_json rj;
        for (const auto& field : kCoefficientFields) rj[field.name] = r.*(field.member);
        j["regimes"].push_back(std::move(rj));
    }
    j["generator"] = nlohmann::ordered_json::array();
    for (int i = 0; i < s.generator.n; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < s.generator.n; ++k) row.push_back(s.generator.at(i, k));
        j["generator"].push_back(std::move(row));
    }
    j["x0"] = s.x0;
    j["y0"] = s.y0;
    j["initial_regime"] = s.initial_regime + 1;
    j["rho"] = s.rho;
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << scenario_to_json(s).dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace bdpp
