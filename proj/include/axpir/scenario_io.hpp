#pragma once

#include <string>
#include <vector>

#include "axpir/audit.hpp"
#include "axpir/protocol.hpp"

namespace axpir::io {

/// Parses a scenario JSON document:
///   {"n":4, "k":2, "q":2, "links":[[1,2],[3,4]], "collusion":[[1,3],[2,4]],
///    "scheme":"reduced_n4k2", "grouping":"solve" | [[1,3],[2,4]]}
/// Indices are 1-based. "grouping":"solve" picks the first canonical optimum.
/// Throws protocol::ScenarioError naming the offending field.
protocol::Scenario scenario_from_json(const std::string& text);
protocol::Scenario scenario_from_file(const std::string& path);

std::string scenario_to_json(const protocol::Scenario& sc);

/// {check, verdict, statistic, mode, witness?} plus enumeration/tv/findings.
std::string report_to_json(const audit::AuditReport& report);
std::string reports_to_json(const std::vector<audit::AuditReport>& reports);

std::string transcripts_to_json(const std::vector<protocol::Transcript>& transcripts);

}  // namespace axpir::io
