#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "axpir/galois.hpp"
#include "axpir/rational.hpp"
#include "axpir/topology.hpp"

namespace axpir::schemes {

/// Per-server storage as a linear code: every cell is a coefficient vector
/// over (K*L message symbols ++ noise_dim pad symbols). Message coordinate
/// (k, j) lives at index k*L + j; pad coordinates follow.
struct StorageLayout {
    int n_servers = 0;
    int k_messages = 0;
    int l_symbols = 0;
    int noise_dim = 0;
    std::int64_t q = 2;
    // cells[server][cell] has length k_messages*l_symbols + noise_dim
    std::vector<std::vector<std::vector<std::int64_t>>> cells;

    int message_dim() const { return k_messages * l_symbols; }
    int coord_dim() const { return message_dim() + noise_dim; }
    int cells_at(int server) const { return int(cells[server].size()); }
    int total_cells() const;

    galois::FMatrix server_matrix(int server, const galois::Field& f) const;
    galois::FMatrix coalition_matrix(const topology::ServerSet& servers,
                                     const galois::Field& f) const;
    /// Message-coefficient block (columns [0, K*L)) of the coalition matrix.
    galois::FMatrix coalition_message_block(const topology::ServerSet& servers,
                                            const galois::Field& f) const;
    /// Pad-coefficient block (columns [K*L, K*L+noise_dim)).
    galois::FMatrix coalition_noise_block(const topology::ServerSet& servers,
                                          const galois::Field& f) const;

    /// Cell values for one server given full symbol assignments.
    std::vector<std::int64_t> evaluate_cells(int server,
                                             std::span<const std::int64_t> messages,
                                             std::span<const std::int64_t> noise,
                                             const galois::Field& f) const;

    std::string to_json() const;
};

/// Query plan plus the user-side reconstruction recipe. Responses are
/// coefficient vectors over each server's own cells. Groups act as virtual
/// servers: virtual answer i = answer(designated) - sum over the other
/// members, entrywise over the group's query list.
struct QueryPlan {
    struct VirtualGroup {
        std::vector<int> members;  // first member is the designated one
    };
    struct RecipeTerm {
        int group = 0;   // virtual server index
        int query = 0;   // index into that group's query list
        int coeff = 1;   // +1 or -1
    };

    int n_servers = 0;
    int k_messages = 0;
    int l_symbols = 0;
    int theta = 0;  // 0-based desired message
    // responses[server][i] is a coefficient vector over that server's cells
    std::vector<std::vector<std::vector<std::int64_t>>> responses;
    std::vector<VirtualGroup> groups;
    // recipe[j]: terms over virtual answers reconstructing symbol j of W_theta
    std::vector<std::vector<RecipeTerm>> recipe;

    int queries_at(int server) const { return int(responses[server].size()); }
    int total_downloads() const;

    std::string to_json() const;
};

// --- reduced-storage scheme: N=4, K=2, links {1,2},{3,4}, grouping {1,3},{2,4}

inline constexpr int kReducedN = 4;
inline constexpr int kReducedK = 2;
inline constexpr int kReducedL = 4;

/// Six cells per server; servers 3 and 4 hold the pure pad counterparts of
/// servers 1 and 2. Pads are indexed canonically: the pad protecting symbol
/// j of message k in group g is the same symbol wherever it appears.
StorageLayout encode_reduced_n4k2(const galois::Field& f);

/// theta and coin are 1-based, matching the retrieval tables.
QueryPlan plan_reduced_n4k2(int theta, int coin);

std::vector<std::int64_t> decode_reduced_n4k2(int theta, int coin,
                                              const std::vector<std::vector<std::int64_t>>& answers,
                                              const galois::Field& f);

// --- grouped secret-sharing scheme over virtual servers, L = g^K

/// One designated server per group stores every message symbol plus a fresh
/// pad; the other m-1 members hold additive shares of the pads. K*L cells
/// per server.
StorageLayout encode_grouped(const topology::Grouping& gr, int k, const galois::Field& f);

/// Number of distinct permutation draws, (L!)^K, or 0 when it overflows
/// uint64 (then seeds index an RNG-shuffled draw instead of the full space).
std::uint64_t perm_space_size(int k, int l);

/// The K per-message permutations of [L] selected by `seed`.
std::vector<std::vector<int>> perms_from_seed(std::uint64_t seed, int k, int l);

/// Iterative g-server PIR query structure on virtual servers: fresh
/// singletons of every message, then (g-1)-fold side-information mixing,
/// K rounds; materialized at every group member over its own cells.
/// theta is 1-based; perm_seed selects one permutation of [L] per message.
QueryPlan plan_grouped(const topology::Grouping& gr, int k, int theta, std::uint64_t perm_seed);

std::vector<std::int64_t> decode_grouped(const topology::Grouping& gr, int k, int theta,
                                         std::uint64_t perm_seed,
                                         const std::vector<std::vector<std::int64_t>>& answers,
                                         const galois::Field& f);

/// Shared decoding path: pad-cancel within each group, then apply the recipe.
std::vector<std::int64_t> decode_with_plan(const QueryPlan& plan,
                                           const std::vector<std::vector<std::int64_t>>& answers,
                                           const galois::Field& f);

// --- storage accounting

struct StorageProfile {
    std::vector<Rational> per_server;  // alpha_i = rank(S_i) / (K*L)
    std::vector<Rational> per_group;   // alpha_{G_i} = sum of member alpha_i
    Rational average;                  // sum rank(S_i) / (N*K*L)
};

/// Entropies measured in symbols as matrix ranks (exact for linear codes
/// with uniform independent inputs).
StorageProfile storage_profile(const StorageLayout& layout,
                               const topology::Grouping* gr = nullptr);

}  // namespace axpir::schemes
