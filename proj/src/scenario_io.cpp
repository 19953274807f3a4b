#include "axpir/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace axpir::io {

namespace {

using nlohmann::json;
using protocol::ScenarioError;

int require_int(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw ScenarioError(field, "required integer field");
    return j[field].get<int>();
}

std::vector<std::vector<int>> require_index_lists(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ScenarioError(field, "required array of index lists");
    std::vector<std::vector<int>> out;
    for (const auto& row : j[field]) {
        if (!row.is_array()) throw ScenarioError(field, "entries must be index lists");
        std::vector<int> set;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ScenarioError(field, "indices must be integers");
            set.push_back(v.get<int>());
        }
        out.push_back(std::move(set));
    }
    return out;
}

topology::ServerSet to_zero_based(const std::vector<int>& one_based, const std::string& field) {
    std::vector<int> shifted;
    for (int v : one_based) {
        if (v < 1) throw ScenarioError(field, "indices are 1-based");
        shifted.push_back(v - 1);
    }
    return topology::make_server_set(std::move(shifted));
}

void json_index_lists(std::string& out, const std::vector<topology::ServerSet>& sets) {
    out += '[';
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < sets[i].size(); ++j) {
            if (j) out += ',';
            out += std::to_string(sets[i][j] + 1);
        }
        out += ']';
    }
    out += ']';
}

void json_string_list(std::string& out, const std::vector<std::string>& items) {
    out += '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += json(items[i]).dump();
    }
    out += ']';
}

void json_ints(std::string& out, const std::vector<std::int64_t>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    out += ']';
}

}  // namespace

protocol::Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError("json", e.what());
    }
    if (!j.is_object()) throw ScenarioError("json", "top level must be an object");

    protocol::Scenario sc;
    sc.n_servers = require_int(j, "n");
    sc.k_messages = require_int(j, "k");
    if (j.contains("q")) {
        if (!j["q"].is_number_integer()) throw ScenarioError("q", "q must be an integer");
        sc.q = j["q"].get<std::int64_t>();
    }
    try {
        sc.comm = topology::CommMatrix::from_one_based(sc.n_servers,
                                                       require_index_lists(j, "links"));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("links", e.what());
    }
    if (j.contains("collusion"))
        for (const auto& set : require_index_lists(j, "collusion"))
            sc.collusion.push_back(to_zero_based(set, "collusion"));

    if (j.contains("scheme")) {
        if (!j["scheme"].is_string()) throw ScenarioError("scheme", "scheme must be a string");
        std::string name = j["scheme"].get<std::string>();
        if (name == "reduced_n4k2")
            sc.scheme = protocol::SchemeKind::reduced_n4k2;
        else if (name == "grouped")
            sc.scheme = protocol::SchemeKind::grouped;
        else
            throw ScenarioError("scheme", "unknown scheme " + name);
    }

    if (!j.contains("grouping")) throw ScenarioError("grouping", "required field");
    try {
        if (j["grouping"].is_string()) {
            if (j["grouping"].get<std::string>() != "solve")
                throw ScenarioError("grouping", "expected \"solve\" or index lists");
            topology::GroupingResult res = topology::solve_grouping(sc.comm);
            if (res.g > 0)
                sc.grouping = res.optima.front();
            else
                sc.grouping = topology::make_grouping(sc.n_servers, {});
        } else {
            std::vector<topology::ServerSet> groups;
            for (const auto& set : require_index_lists(j, "grouping"))
                groups.push_back(to_zero_based(set, "grouping"));
            sc.grouping = topology::make_grouping(sc.n_servers, std::move(groups));
        }
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("grouping", e.what());
    }

    if (j.contains("fix_coin")) {
        if (!j["fix_coin"].is_number_integer())
            throw ScenarioError("fix_coin", "fix_coin must be an integer");
        sc.fix_coin = j["fix_coin"].get<int>();
    }
    return sc;
}

protocol::Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return scenario_from_json(ss.str());
}

std::string scenario_to_json(const protocol::Scenario& sc) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(sc.n_servers) + ",\n";
    out += "  \"k\": " + std::to_string(sc.k_messages) + ",\n";
    out += "  \"q\": " + std::to_string(sc.q) + ",\n";
    out += "  \"links\": ";
    json_index_lists(out, sc.comm.links);
    out += ",\n  \"collusion\": ";
    json_index_lists(out, sc.collusion);
    out += ",\n  \"scheme\": \"" + protocol::scheme_name(sc.scheme) + "\",\n";
    out += "  \"grouping\": ";
    json_index_lists(out, sc.grouping.groups);
    if (sc.fix_coin) out += ",\n  \"fix_coin\": " + std::to_string(*sc.fix_coin);
    out += "\n}";
    return out;
}

std::string report_to_json(const audit::AuditReport& report) {
    std::string out = "{\n";
    out += "  \"check\": " + json(report.check).dump() + ",\n";
    out += "  \"verdict\": \"" + std::string(report.passed() ? "pass" : "fail") + "\",\n";
    out += "  \"mode\": " + json(report.mode).dump() + ",\n";
    out += "  \"statistic\": " + json(report.statistic).dump() + ",\n";
    out += "  \"enumeration_size\": " + std::to_string(report.enumeration_size);
    if (report.tv) out += ",\n  \"tv\": " + json(report.tv->str()).dump();
    if (!report.findings.empty()) {
        out += ",\n  \"findings\": ";
        json_string_list(out, report.findings);
    }
    if (report.witness) {
        const audit::Witness& w = *report.witness;
        out += ",\n  \"witness\": {\n";
        out += "    \"theta\": " + std::to_string(w.theta) + ",\n";
        out += "    \"randomness\": " + std::to_string(w.randomness) + ",\n";
        out += "    \"messages\": [";
        for (std::size_t i = 0; i < w.messages.size(); ++i) {
            if (i) out += ',';
            json_ints(out, w.messages[i]);
        }
        out += "],\n    \"noise\": ";
        json_ints(out, w.noise);
        out += ",\n    \"observed\": ";
        json_ints(out, w.observed);
        out += ",\n    \"expected\": ";
        json_ints(out, w.expected);
        out += ",\n    \"note\": " + json(w.note).dump() + "\n  }";
    }
    out += "\n}";
    return out;
}

std::string reports_to_json(const std::vector<audit::AuditReport>& reports) {
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += ',';
        out += '\n' + report_to_json(reports[i]);
    }
    out += reports.empty() ? "]" : "\n]";
    return out;
}

std::string transcripts_to_json(const std::vector<protocol::Transcript>& transcripts) {
    std::string out = "[";
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
        if (i) out += ',';
        out += '\n' + transcripts[i].to_json();
    }
    out += transcripts.empty() ? "]" : "\n]";
    return out;
}

}  // namespace axpir::io
