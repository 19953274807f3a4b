#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "axpir/analysis.hpp"
#include "axpir/protocol.hpp"

namespace axpir::audit {

inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;  // elementary evaluations

enum class Verdict { pass, fail };

/// Inputs that re-trigger a failure deterministically.
struct Witness {
    int theta = 0;  // 1-based
    std::uint64_t randomness = 0;
    std::vector<std::vector<std::int64_t>> messages;
    std::vector<std::int64_t> noise;
    std::vector<std::int64_t> observed;
    std::vector<std::int64_t> expected;
    std::string note;
};

struct AuditReport {
    std::string check;
    Verdict verdict = Verdict::fail;
    std::string mode;       // "exhaustive(cells)", "sampled(n=...)", "rank", ...
    std::string statistic;  // exact statistic, human-readable
    std::uint64_t enumeration_size = 0;
    std::optional<Rational> tv;         // privacy checks
    std::optional<Witness> witness;     // present on every fail
    std::vector<std::string> findings;  // non-fatal flags (consistency notes)

    bool passed() const { return verdict == Verdict::pass; }
};

enum class CorrectnessMode { exhaustive, sampled };

/// Test-only hook: corrupts a plan after construction.
using PlanMutator = std::function<void(schemes::QueryPlan&)>;

/// Decode == W_theta over the reachable state space. Exhaustive mode
/// enumerates every message assignment crossed with a complete cover of the
/// pad-induced cell states (or, when that exceeds the budget, of the
/// pad-induced answer states) for every theta and randomness draw; the
/// compiled session maps are cross-checked against run_session on sampled
/// states. Sampled mode draws full sessions from a seeded RNG.
AuditReport audit_correctness(const protocol::Scenario& sc, CorrectnessMode mode,
                              std::uint64_t samples = 100'000, std::uint64_t seed = 0,
                              const PlanMutator& mutate = nullptr,
                              std::uint64_t budget = kEnumerationBudget);

/// Exact total-variation distance between the coalition's query-descriptor
/// distributions across theta values, over the full randomness space.
/// Pass iff TV == 0. Falls back to sampling ("no violation found") when the
/// randomness space is not enumerable within the budget and sampling was
/// requested.
AuditReport audit_privacy(const protocol::Scenario& sc, const topology::ServerSet& coalition,
                          bool allow_sampling = false, std::uint64_t samples = 100'000,
                          std::uint64_t seed = 0);

/// Plans must be functions of (theta, randomness) only: checked structurally
/// and by perturbation (message/noise changes never alter the transcript's
/// query descriptors).
AuditReport audit_query_message_independence(const protocol::Scenario& sc);

/// Generic variant for adversarial planners that may read message values.
using Planner = std::function<schemes::QueryPlan(int theta, std::uint64_t randomness,
                                                 const std::vector<std::vector<std::int64_t>>& messages)>;
AuditReport audit_planner_independence(const Planner& planner, int k, int l, std::int64_t q,
                                       int theta, std::uint64_t randomness, std::uint64_t trials = 32,
                                       std::uint64_t seed = 0);

enum class SecurityMode { rank, exhaustive, both };

/// Storage secrecy against a coalition. Rank mode: the message block must
/// lie in the column space of the pad block. Exhaustive mode: the
/// conditional distribution of the coalition's joint cells must be the same
/// for every message assignment (support comparison over the pad space).
/// Both: cross-validate the two verdicts.
AuditReport audit_security(const schemes::StorageLayout& layout, const topology::ServerSet& servers,
                           SecurityMode mode, std::uint64_t budget = kEnumerationBudget);

/// Membership of a point in each labeled inequality set; cross-set
/// disagreement is reported as a consistency finding, not a failure.
AuditReport audit_region_point(const analysis::Point& p,
                               const std::vector<std::pair<std::string, std::vector<analysis::Inequality>>>& sets);

}  // namespace axpir::audit
