#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace axpir::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;   // a requested check or search came back negative
inline constexpr int kBadInvocation = 2; // unparsable input, bad flags, missing files

struct GroupOptions {
  std::string scenario_path;
  std::string json_path;  // "" = no JSON artifact, "-" = stdout
};

struct SimulateOptions {
  std::string scenario_path;
  int theta = 1;  // 1-based message index
  std::uint64_t seed = 0;
  int sessions = 1;
  std::string json_path;
  bool dump_transcript = false;
};

struct RatesOptions {
  std::string scenario_path;
  int collusion = 1;
  std::string json_path;
  bool as_float = false;
};

struct RegionOptions {
  std::vector<std::string> theorems;  // subset of {"t1","t2","c1","c2"}; empty means {"t1"}
  std::string scenario_path;          // required by t2/c1 (group sizes come from the grouping)
  int k_messages = 2;
  int degree = 2;       // uniform group size for c2
  int group_count = 2;  // group count for c2
  std::string csv_path;
  std::string json_path;
  bool as_float = false;
  std::optional<std::string> point_alpha;  // rationals accepted as "p/q" or "p"
  std::optional<std::string> point_beta;
};

struct VerifyOptions {
  std::string scenario_path;
  std::vector<std::string> checks;  // subset of {correctness, privacy, security, independence}
  std::string mode = "exhaustive";  // "exhaustive" | "sample"
  std::string security = "both";    // "rank" | "exhaustive" | "both"
  std::uint64_t seed = 0;
  int samples = 100000;
  std::optional<int> fix_coin;      // overrides the scenario file
  std::string json_path;
};

int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_rates(const RatesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_region(const RegionOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace axpir::cli
