#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace axpir::topology {

/// Sorted, duplicate-free list of 0-based server indices.
using ServerSet = std::vector<int>;

ServerSet make_server_set(std::vector<int> raw);
bool is_subset(const ServerSet& a, const ServerSet& b);
std::string format_server_set(const ServerSet& s);  // "{1,3}" (1-based)

/// Which server sets exchange stored data. One entry per communication link.
struct CommMatrix {
    int n_servers = 0;
    std::vector<ServerSet> links;

    int n_links() const { return int(links.size()); }

    /// Builds from 1-based index lists; throws std::invalid_argument on an
    /// empty link or an index outside [1, n].
    static CommMatrix from_one_based(int n, const std::vector<std::vector<int>>& links);
};

struct Violation {
    bool warning = false;  // warnings keep the matrix usable
    std::string message;
};

/// Invariant check: flags out-of-range indices and undersized links as
/// violations, duplicate links as violations, and links contained in a
/// larger link as redundancy warnings.
std::vector<Violation> validate(const CommMatrix& cm);

/// Number of links of cardinality exactly i.
int omega(const CommMatrix& cm, int i);

/// C(n, x) as an unsigned 64-bit count (n small here).
std::uint64_t binomial(int n, int x);

/// True iff C(N, x) - omega(cm, x) != 0.
bool feasibility(const CommMatrix& cm, int x);

/// max over servers n of the number of links that do not contain n.
int lambda_max(const CommMatrix& cm);

/// Disjoint server groups of size >= 2; servers outside every group are
/// listed in `ungrouped`.
struct Grouping {
    std::vector<ServerSet> groups;
    ServerSet ungrouped;

    int g() const { return int(groups.size()); }
    std::vector<int> sizes() const;
    int effective_servers() const;  // total servers inside groups

    std::string str() const;  // "{1,3}{2,4}" (1-based)
};

Grouping make_grouping(int n_servers, std::vector<ServerSet> groups);

/// Checks the three grouping constraints: pairwise disjoint groups, every
/// group of size >= 2, and no group contained in a communication link.
/// On failure, `why` (if non-null) names the violated constraint.
bool grouping_feasible(const CommMatrix& cm, const Grouping& gr, std::string* why = nullptr);

struct GroupingResult {
    int g = 0;
    std::vector<Grouping> optima;  // canonical order, all maximizers; empty when g == 0
};

/// Exact search over all partitions of the servers into groups of size >= 2
/// plus an ungrouped remainder; returns every feasible grouping that attains
/// the maximum group count. Throws when n_servers exceeds the exact-search
/// bound of 12.
GroupingResult solve_grouping(const CommMatrix& cm);

inline constexpr int kMaxExactSearchServers = 12;

}  // namespace axpir::topology
