#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axpir/rational.hpp"
#include "axpir/topology.hpp"

namespace axpir::analysis {

using Point = std::pair<Rational, Rational>;  // (alpha, beta)

/// Capacity of T-colluding PIR with g servers and k messages:
/// (1 + t/g + ... + (t/g)^(k-1))^-1.
Rational c_tpir(int t, int g, int k);

/// Non-colluding special case c_tpir(1, g, k).
Rational c_pir(int g, int k);

/// sum_{j=1}^{k-1} (t / (n - link_size))^j. Throws if link_size >= n.
Rational zeta(int k, int t, int n, int link_size);

/// Rate of the grouped scheme: (g / sum M_i) * c_tpir(t, g, k).
Rational achievable_rate(const topology::Grouping& gr, int t, int k);

/// lambda / (M + sum_i zeta(k, t, N, |X_i|)). Throws when there are no links
/// or a link spans all servers.
Rational rate_upper_bound(const topology::CommMatrix& cm, int k, int t);

/// Half-plane a*alpha + b*beta >= c.
struct Inequality {
    Rational a, b, c;
    std::string label;
};

Inequality alpha_nonneg();
Inequality beta_nonneg();

/// Storage/download bound region for four servers, two disjoint pair links,
/// two messages: beta >= 3/4, alpha + 2 beta >= 2, alpha + 6 beta >= 3,
/// plus nonnegativity.
struct RateRegion {
    std::vector<Inequality> inequalities;
    std::vector<Point> vertices;
    std::vector<Point> rays;               // unbounded directions
    std::vector<std::string> redundant;    // labels of implied inequalities
};

RateRegion theorem1_region();

/// Per-group bounds: for each l in [g],
/// (sum_{i != l} M_i) alpha + M_l beta >= K (1 + sum_{i != l} M_i - (g-1)).
std::vector<Inequality> theorem2_inequalities(const std::vector<int>& sizes, int k);

/// Same family with sum M_i = N substituted: (N - M_l) alpha + M_l beta >= ...
std::vector<Inequality> corollary1_inequalities(const std::vector<int>& sizes, int k);

/// Uniform groups, d servers each: d(g-1) alpha + d beta >= K(1 + (d-1)(g-1)).
std::vector<Inequality> corollary2_inequalities(int d, int g, int k);

struct MembershipItem {
    std::string label;
    bool satisfied = false;
    Rational slack;  // a*alpha + b*beta - c; negative iff violated
};

struct MembershipResult {
    bool inside = false;
    std::vector<MembershipItem> items;

    std::vector<MembershipItem> violations() const;
};

/// Exact check of every inequality at the given point.
MembershipResult point_membership(const Point& p, const std::vector<Inequality>& ineqs);

struct VertexEnumeration {
    bool feasible = false;
    std::vector<Point> vertices;  // sorted by alpha then beta, deduplicated
    std::vector<Point> rays;      // extreme directions of the recession cone
};

/// All pairwise line intersections satisfying every inequality, plus the
/// extreme recession directions. An empty region is a value, not an error.
VertexEnumeration region_vertices(const std::vector<Inequality>& ineqs);

/// True iff `ineq` holds everywhere on the region cut out by `others`
/// (vacuously true when that region is empty).
bool inequality_redundant(const Inequality& ineq, const std::vector<Inequality>& others);

/// Capacity via the grouped-collusion result. Both hypotheses are checked:
/// lambda/M == g / sum(M_i) and |X_i| == N - g for every link. Failure is
/// reported as a value naming the hypothesis, never as an error.
struct CapacityResult {
    bool conditions_met = false;
    Rational capacity;                          // valid when conditions_met
    std::string failed_hypothesis;              // empty when conditions_met
    std::vector<topology::ServerSet> collusion; // the groups themselves
    bool eta_treated_as_zeta = true;            // see output metadata note
};

CapacityResult theorem4_capacity(const topology::CommMatrix& cm,
                                 const topology::Grouping& gr, int k);

/// True iff the given coalition list equals the grouping's groups as sets.
bool collusion_matches_groups(const std::vector<topology::ServerSet>& pattern,
                              const topology::Grouping& gr);

/// CSV export; one header block for inequalities, one for vertices/rays.
std::string region_csv(const RateRegion& region, bool as_float = false);

}  // namespace axpir::analysis
