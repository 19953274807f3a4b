#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axpir/galois.hpp"
#include "axpir/rational.hpp"
#include "axpir/schemes.hpp"
#include "axpir/topology.hpp"

namespace axpir::protocol {

enum class SchemeKind { reduced_n4k2, grouped };

std::string scheme_name(SchemeKind s);

/// Validation failure tied to a named scenario field.
struct ScenarioError : std::runtime_error {
    std::string field;
    ScenarioError(std::string field_, const std::string& message);
};

struct Scenario {
    int n_servers = 0;
    int k_messages = 0;
    std::int64_t q = 2;
    topology::CommMatrix comm;
    std::vector<topology::ServerSet> collusion;  // optional coalitions
    SchemeKind scheme = SchemeKind::grouped;
    topology::Grouping grouping;
    std::optional<int> fix_coin;  // degraded reduced scheme: coin pinned

    int l_symbols() const;
    galois::Field field() const;
    schemes::StorageLayout layout() const;

    /// Size of the scheme's randomness space; 0 when it does not fit uint64.
    std::uint64_t randomness_space() const;
    /// randomness indexes coins (reduced) or permutation draws (grouped).
    schemes::QueryPlan plan(int theta, std::uint64_t randomness) const;

    /// Throws ScenarioError when scheme preconditions or grouping
    /// constraints are not met.
    void validate() const;
};

struct Transcript {
    int theta = 0;  // 1-based
    std::uint64_t randomness = 0;
    int l_symbols = 0;
    // query descriptor per server: response coefficient vectors
    std::vector<std::vector<std::vector<std::int64_t>>> queries;
    std::vector<std::vector<std::int64_t>> answers;
    std::vector<int> downloads;
    std::vector<std::int64_t> decoded;

    int total_downloads() const;
    std::string to_json() const;
};

/// Full retrieval round: encode, plan, per-server answers (each a function
/// of that server's cells only), decode. messages is K rows of L symbols;
/// noise has layout().noise_dim entries.
Transcript run_session(const Scenario& sc, int theta,
                       const std::vector<std::vector<std::int64_t>>& messages,
                       const std::vector<std::int64_t>& noise,
                       std::uint64_t randomness);

struct Measurement {
    Rational alpha;
    Rational beta;
    Rational rate;
    std::vector<Rational> beta_per_server;
    bool identity_ok = false;  // beta == 1/(N*rate)
    int n_servers = 0;
    int n_effective = 0;
    Rational alpha_effective;  // normalized by effective (grouped) servers
    Rational beta_effective;
};

/// Storage overhead from the layout, download cost counted from the
/// transcripts. All transcripts must come from the given scenario.
Measurement measure(const Scenario& sc, const std::vector<Transcript>& transcripts);

}  // namespace axpir::protocol
