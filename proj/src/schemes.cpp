#include "axpir/schemes.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace axpir::schemes {

namespace {

std::string json_int_array(const std::vector<std::int64_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string json_int_array(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

}  // namespace

int StorageLayout::total_cells() const {
    int total = 0;
    for (const auto& server : cells) total += int(server.size());
    return total;
}

galois::FMatrix StorageLayout::server_matrix(int server, const galois::Field& f) const {
    const auto& rows = cells[std::size_t(server)];
    galois::FMatrix m(int(rows.size()), coord_dim(), f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < coord_dim(); ++c) m.set(int(r), c, rows[r][std::size_t(c)]);
    return m;
}

galois::FMatrix StorageLayout::coalition_matrix(const topology::ServerSet& servers,
                                                const galois::Field& f) const {
    int total_rows = 0;
    for (int s : servers) total_rows += cells_at(s);
    galois::FMatrix m(total_rows, coord_dim(), f);
    int r = 0;
    for (int s : servers)
        for (const auto& cell : cells[std::size_t(s)]) {
            for (int c = 0; c < coord_dim(); ++c) m.set(r, c, cell[std::size_t(c)]);
            ++r;
        }
    return m;
}

namespace {

galois::FMatrix column_slice(const galois::FMatrix& m, int from, int to) {
    galois::FMatrix out(m.rows(), to - from, m.field());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = from; c < to; ++c) out.set(r, c - from, m.at(r, c));
    return out;
}

}  // namespace

galois::FMatrix StorageLayout::coalition_message_block(const topology::ServerSet& servers,
                                                       const galois::Field& f) const {
    return column_slice(coalition_matrix(servers, f), 0, message_dim());
}

galois::FMatrix StorageLayout::coalition_noise_block(const topology::ServerSet& servers,
                                                     const galois::Field& f) const {
    return column_slice(coalition_matrix(servers, f), message_dim(), coord_dim());
}

std::vector<std::int64_t> StorageLayout::evaluate_cells(int server,
                                                        std::span<const std::int64_t> messages,
                                                        std::span<const std::int64_t> noise,
                                                        const galois::Field& f) const {
    if (int(messages.size()) != message_dim())
        throw std::invalid_argument("evaluate_cells: wrong message symbol count");
    if (int(noise.size()) != noise_dim)
        throw std::invalid_argument("evaluate_cells: wrong noise symbol count");
    std::vector<std::int64_t> out;
    for (const auto& cell : cells[std::size_t(server)]) {
        std::int64_t acc = 0;
        for (int c = 0; c < message_dim(); ++c)
            acc = f.add(acc, f.mul(cell[std::size_t(c)], f.reduce(messages[std::size_t(c)])));
        for (int c = 0; c < noise_dim; ++c)
            acc = f.add(acc,
                        f.mul(cell[std::size_t(message_dim() + c)], f.reduce(noise[std::size_t(c)])));
        out.push_back(acc);
    }
    return out;
}

std::string StorageLayout::to_json() const {
    std::string out = "{\n";
    out += "  \"n_servers\": " + std::to_string(n_servers) + ",\n";
    out += "  \"k_messages\": " + std::to_string(k_messages) + ",\n";
    out += "  \"l_symbols\": " + std::to_string(l_symbols) + ",\n";
    out += "  \"noise_dim\": " + std::to_string(noise_dim) + ",\n";
    out += "  \"q\": " + std::to_string(q) + ",\n";
    out += "  \"cells\": [\n";
    for (std::size_t s = 0; s < cells.size(); ++s) {
        out += "    [";
        for (std::size_t c = 0; c < cells[s].size(); ++c) {
            if (c) out += ",";
            out += json_int_array(cells[s][c]);
        }
        out += s + 1 < cells.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

int QueryPlan::total_downloads() const {
    int total = 0;
    for (const auto& r : responses) total += int(r.size());
    return total;
}

std::string QueryPlan::to_json() const {
    std::string out = "{\n";
    out += "  \"n_servers\": " + std::to_string(n_servers) + ",\n";
    out += "  \"k_messages\": " + std::to_string(k_messages) + ",\n";
    out += "  \"l_symbols\": " + std::to_string(l_symbols) + ",\n";
    out += "  \"theta\": " + std::to_string(theta) + ",\n";
    out += "  \"groups\": [";
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) out += ",";
        out += json_int_array(groups[g].members);
    }
    out += "],\n  \"responses\": [\n";
    for (std::size_t s = 0; s < responses.size(); ++s) {
        out += "    [";
        for (std::size_t i = 0; i < responses[s].size(); ++i) {
            if (i) out += ",";
            out += json_int_array(responses[s][i]);
        }
        out += s + 1 < responses.size() ? "],\n" : "]\n";
    }
    out += "  ],\n  \"recipe\": [";
    for (std::size_t j = 0; j < recipe.size(); ++j) {
        if (j) out += ",";
        out += "[";
        for (std::size_t t = 0; t < recipe[j].size(); ++t) {
            if (t) out += ",";
            out += "[" + std::to_string(recipe[j][t].group) + "," +
                   std::to_string(recipe[j][t].query) + "," + std::to_string(recipe[j][t].coeff) +
                   "]";
        }
        out += "]";
    }
    out += "]\n}\n";
    return out;
}

// --- reduced-storage scheme

namespace {

// message coordinates per cell (a_j at j-1, b_j at 4+j-1); servers 3 and 4
// mirror the pad parts of servers 1 and 2
constexpr int kReducedCellCoords[2][6][2] = {
    {{0, -1}, {2, -1}, {4, -1}, {6, -1}, {1, 5}, {3, 7}},
    {{1, -1}, {3, -1}, {5, -1}, {7, -1}, {0, 6}, {2, 4}},
};

}  // namespace

StorageLayout encode_reduced_n4k2(const galois::Field& f) {
    StorageLayout lay;
    lay.n_servers = kReducedN;
    lay.k_messages = kReducedK;
    lay.l_symbols = kReducedL;
    lay.noise_dim = 16;
    lay.q = f.q();
    lay.cells.assign(4, {});
    for (int holder = 0; holder < 2; ++holder) {
        for (int cell = 0; cell < 6; ++cell) {
            std::vector<std::int64_t> with_msg(std::size_t(lay.coord_dim()), 0);
            std::vector<std::int64_t> pad_only(std::size_t(lay.coord_dim()), 0);
            for (int coord : kReducedCellCoords[holder][cell])
                if (coord >= 0) with_msg[std::size_t(coord)] = 1;
            int pad = holder * 6 + cell;  // noise coords 12..15 stay unused
            with_msg[std::size_t(lay.message_dim() + pad)] = 1;
            pad_only[std::size_t(lay.message_dim() + pad)] = 1;
            lay.cells[std::size_t(holder)].push_back(std::move(with_msg));
            lay.cells[std::size_t(holder + 2)].push_back(std::move(pad_only));
        }
    }
    return lay;
}

namespace {

struct ReducedRecipeRow {
    int lead_group, lead_query;
    int side_group, side_query;  // -1 when the symbol arrives unmixed
};

// reconstruction per (theta-1, coin-1): symbol j of W_theta
constexpr ReducedRecipeRow kReducedRecipe[2][2][4] = {
    // theta = 1
    {{{0, 0, -1, -1}, {0, 2, 1, 1}, {1, 2, 0, 1}, {1, 0, -1, -1}},    // coin 1
     {{1, 2, 0, 1}, {1, 0, -1, -1}, {0, 0, -1, -1}, {0, 2, 1, 1}}},   // coin 2
    // theta = 2
    {{{0, 1, -1, -1}, {0, 2, 1, 0}, {1, 2, 0, 0}, {1, 1, -1, -1}},    // coin 1
     {{1, 2, 0, 0}, {1, 1, -1, -1}, {0, 1, -1, -1}, {0, 2, 1, 0}}},   // coin 2
};

}  // namespace

QueryPlan plan_reduced_n4k2(int theta, int coin) {
    if (theta < 1 || theta > 2) throw std::invalid_argument("theta must be 1 or 2");
    if (coin < 1 || coin > 2) throw std::invalid_argument("coin must be 1 or 2");
    QueryPlan plan;
    plan.n_servers = 4;
    plan.k_messages = 2;
    plan.l_symbols = 4;
    plan.theta = theta - 1;
    plan.groups = {{{0, 2}}, {{1, 3}}};

    // holder 1 reads by coin alone; holder 2 by the parity of theta + coin
    const std::vector<int> half_a = {0, 2, 4};
    const std::vector<int> half_b = {1, 3, 5};
    std::vector<int> list0 = coin == 1 ? half_a : half_b;
    std::vector<int> list1 = (theta + coin) % 2 == 0 ? std::vector<int>{1, 2, 5}
                                                     : std::vector<int>{0, 3, 4};
    plan.responses.assign(4, {});
    for (int cell : list0) {
        std::vector<std::int64_t> sel(6, 0);
        sel[std::size_t(cell)] = 1;
        plan.responses[0].push_back(sel);
        plan.responses[2].push_back(sel);
    }
    for (int cell : list1) {
        std::vector<std::int64_t> sel(6, 0);
        sel[std::size_t(cell)] = 1;
        plan.responses[1].push_back(sel);
        plan.responses[3].push_back(sel);
    }

    for (int j = 0; j < 4; ++j) {
        const ReducedRecipeRow& row = kReducedRecipe[theta - 1][coin - 1][j];
        std::vector<QueryPlan::RecipeTerm> terms = {{row.lead_group, row.lead_query, 1}};
        if (row.side_group >= 0) terms.push_back({row.side_group, row.side_query, -1});
        plan.recipe.push_back(std::move(terms));
    }
    return plan;
}

std::vector<std::int64_t> decode_reduced_n4k2(int theta, int coin,
                                              const std::vector<std::vector<std::int64_t>>& answers,
                                              const galois::Field& f) {
    return decode_with_plan(plan_reduced_n4k2(theta, coin), answers, f);
}

// --- grouped secret-sharing scheme

StorageLayout encode_grouped(const topology::Grouping& gr, int k, const galois::Field& f) {
    if (gr.g() == 0) throw std::invalid_argument("encode_grouped: no groups");
    if (k < 1) throw std::invalid_argument("encode_grouped: k must be >= 1");
    std::int64_t l = 1;
    for (int i = 0; i < k; ++i) {
        l *= gr.g();
        if (l > 1'000'000) throw std::invalid_argument("encode_grouped: g^k too large");
    }
    StorageLayout lay;
    int n = gr.effective_servers() + int(gr.ungrouped.size());
    lay.n_servers = n;
    lay.k_messages = k;
    lay.l_symbols = int(l);
    lay.q = f.q();
    int kl = k * int(l);
    for (const auto& group : gr.groups) lay.noise_dim += (int(group.size()) - 1) * kl;
    lay.cells.assign(std::size_t(n), {});

    int pad_base = 0;
    for (const auto& group : gr.groups) {
        int designated = group[0];
        int shares = int(group.size()) - 1;
        for (int cell = 0; cell < kl; ++cell) {
            std::vector<std::int64_t> v(std::size_t(lay.message_dim() + lay.noise_dim), 0);
            v[std::size_t(cell)] = 1;
            for (int s = 0; s < shares; ++s)
                v[std::size_t(lay.message_dim() + pad_base + s * kl + cell)] = 1;
            lay.cells[std::size_t(designated)].push_back(std::move(v));
        }
        for (int s = 0; s < shares; ++s) {
            int member = group[std::size_t(s + 1)];
            for (int cell = 0; cell < kl; ++cell) {
                std::vector<std::int64_t> v(std::size_t(lay.message_dim() + lay.noise_dim), 0);
                v[std::size_t(lay.message_dim() + pad_base + s * kl + cell)] = 1;
                lay.cells[std::size_t(member)].push_back(std::move(v));
            }
        }
        pad_base += shares * kl;
    }
    return lay;
}

std::uint64_t perm_space_size(int k, int l) {
    std::uint64_t fact = 1;
    for (int i = 2; i <= l; ++i) {
        if (fact > UINT64_MAX / std::uint64_t(i)) return 0;
        fact *= std::uint64_t(i);
    }
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        if (fact != 0 && total > UINT64_MAX / fact) return 0;
        total *= fact;
    }
    return total;
}

namespace {

std::vector<int> unrank_permutation(std::uint64_t rank, int l) {
    std::vector<std::uint64_t> fact(std::size_t(l), 1);
    for (int i = 1; i < l; ++i) fact[std::size_t(i)] = fact[std::size_t(i - 1)] * std::uint64_t(i);
    std::vector<int> pool;
    for (int i = 0; i < l; ++i) pool.push_back(i);
    std::vector<int> out;
    for (int i = l - 1; i >= 0; --i) {
        std::uint64_t digit = rank / fact[std::size_t(i)];
        rank %= fact[std::size_t(i)];
        out.push_back(pool[std::size_t(digit)]);
        pool.erase(pool.begin() + int(digit));
    }
    return out;
}

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<std::vector<int>> perms_from_seed(std::uint64_t seed, int k, int l) {
    std::vector<std::vector<int>> out;
    std::uint64_t fact = 1;
    bool fits = true;
    for (int i = 2; i <= l; ++i) {
        if (fact > UINT64_MAX / std::uint64_t(i)) { fits = false; break; }
        fact *= std::uint64_t(i);
    }
    if (fits && perm_space_size(k, l) != 0) {
        for (int i = 0; i < k; ++i) {
            out.push_back(unrank_permutation(seed % fact, l));
            seed /= fact;
        }
        return out;
    }
    // seed drives a deterministic shuffle when (l!)^k does not fit
    std::uint64_t state = seed;
    for (int i = 0; i < k; ++i) {
        std::vector<int> perm;
        for (int j = 0; j < l; ++j) perm.push_back(j);
        for (int j = l - 1; j > 0; --j)
            std::swap(perm[std::size_t(j)], perm[splitmix(state) % std::uint64_t(j + 1)]);
        out.push_back(std::move(perm));
    }
    return out;
}

namespace {

struct VirtualSum {
    std::vector<std::pair<int, int>> parts;  // (message, fresh slot)
};

struct VirtualQueries {
    // per virtual server: the sums it answers, in download order
    std::vector<std::vector<VirtualSum>> sums;
    // recipe terms per storage coordinate of W_theta
    std::vector<std::vector<QueryPlan::RecipeTerm>> recipe;
};

// iterated retrieval structure on g virtual servers: round t mixes a fresh
// slot of the target with every (t-1)-sum downloaded elsewhere in round t-1
VirtualQueries build_virtual_queries(int g, int k, int theta0, int l,
                                     const std::vector<std::vector<int>>& perms) {
    VirtualQueries vq;
    vq.sums.assign(std::size_t(g), {});
    vq.recipe.assign(std::size_t(l), {});
    std::vector<int> fresh(std::size_t(k), 0);

    auto push_sum = [&](int v, VirtualSum sum) {
        vq.sums[std::size_t(v)].push_back(std::move(sum));
        return int(vq.sums[std::size_t(v)].size()) - 1;
    };
    auto add_recipe = [&](int slot, std::vector<QueryPlan::RecipeTerm> terms) {
        vq.recipe[std::size_t(perms[std::size_t(theta0)][std::size_t(slot)])] = std::move(terms);
    };

    // prev[v][mask]: indices of round-(t-1) sums over the message set `mask`
    // (target excluded); every one of them seeds a target sum at each other
    // virtual server in round t
    const auto vs_count = std::size_t(g);
    std::vector<std::map<std::uint32_t, std::vector<int>>> prev(vs_count);
    for (int t = 1; t <= k; ++t) {
        std::vector<std::map<std::uint32_t, std::vector<int>>> cur(vs_count);
        std::uint64_t repeats = 1;  // (g-1)^(t-1)
        for (int i = 1; i < t; ++i) repeats *= std::uint64_t(g - 1);
        for (int v = 0; v < g; ++v) {
            for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
                if (__builtin_popcount(mask) != t) continue;
                if (mask & (1u << theta0)) {
                    if (t == 1) {
                        int slot = fresh[std::size_t(theta0)]++;
                        int idx = push_sum(v, {{{theta0, slot}}});
                        add_recipe(slot, {{v, idx, 1}});
                    } else {
                        std::uint32_t side_mask = mask & ~(1u << theta0);
                        for (int u = 0; u < g; ++u) {
                            if (u == v) continue;
                            for (int side_idx : prev[std::size_t(u)][side_mask]) {
                                int slot = fresh[std::size_t(theta0)]++;
                                VirtualSum sum = vq.sums[std::size_t(u)][std::size_t(side_idx)];
                                sum.parts.insert(sum.parts.begin(), {theta0, slot});
                                int idx = push_sum(v, std::move(sum));
                                add_recipe(slot, {{v, idx, 1}, {u, side_idx, -1}});
                            }
                        }
                    }
                } else {
                    for (std::uint64_t rep = 0; rep < repeats; ++rep) {
                        VirtualSum sum;
                        for (int m = 0; m < k; ++m)
                            if (mask & (1u << m)) sum.parts.push_back({m, fresh[std::size_t(m)]++});
                        int idx = push_sum(v, std::move(sum));
                        cur[std::size_t(v)][mask].push_back(idx);
                    }
                }
            }
        }
        prev = std::move(cur);
    }
    return vq;
}

}  // namespace

QueryPlan plan_grouped(const topology::Grouping& gr, int k, int theta, std::uint64_t perm_seed) {
    if (gr.g() == 0) throw std::invalid_argument("plan_grouped: no groups");
    if (k < 1) throw std::invalid_argument("plan_grouped: k must be >= 1");
    if (theta < 1 || theta > k) throw std::invalid_argument("plan_grouped: theta out of [1, k]");
    int g = gr.g();
    std::int64_t l64 = 1;
    for (int i = 0; i < k; ++i) {
        l64 *= g;
        if (l64 > 1'000'000) throw std::invalid_argument("plan_grouped: g^k too large");
    }
    int l = int(l64);
    auto perms = perms_from_seed(perm_seed, k, l);
    VirtualQueries vq = build_virtual_queries(g, k, theta - 1, l, perms);

    QueryPlan plan;
    plan.n_servers = gr.effective_servers() + int(gr.ungrouped.size());
    plan.k_messages = k;
    plan.l_symbols = l;
    plan.theta = theta - 1;
    plan.recipe = std::move(vq.recipe);
    plan.responses.assign(std::size_t(plan.n_servers), {});
    for (int v = 0; v < g; ++v) {
        plan.groups.push_back({gr.groups[std::size_t(v)]});
        for (const VirtualSum& sum : vq.sums[std::size_t(v)]) {
            std::vector<std::int64_t> sel(std::size_t(k) * std::size_t(l), 0);
            for (const auto& [msg, slot] : sum.parts)
                sel[std::size_t(msg * l + perms[std::size_t(msg)][std::size_t(slot)])] = 1;
            for (int member : gr.groups[std::size_t(v)])
                plan.responses[std::size_t(member)].push_back(sel);
        }
    }
    return plan;
}

std::vector<std::int64_t> decode_grouped(const topology::Grouping& gr, int k, int theta,
                                         std::uint64_t perm_seed,
                                         const std::vector<std::vector<std::int64_t>>& answers,
                                         const galois::Field& f) {
    return decode_with_plan(plan_grouped(gr, k, theta, perm_seed), answers, f);
}

std::vector<std::int64_t> decode_with_plan(const QueryPlan& plan,
                                           const std::vector<std::vector<std::int64_t>>& answers,
                                           const galois::Field& f) {
    if (int(answers.size()) != plan.n_servers)
        throw std::invalid_argument("decode: wrong answer count");
    for (int s = 0; s < plan.n_servers; ++s)
        if (int(answers[std::size_t(s)].size()) != plan.queries_at(s))
            throw std::invalid_argument("decode: wrong answer length");

    // pad cancellation: virtual answer = designated minus the other members
    std::vector<std::vector<std::int64_t>> virt;
    for (const auto& group : plan.groups) {
        std::vector<std::int64_t> v = answers[std::size_t(group.members[0])];
        for (std::size_t m = 1; m < group.members.size(); ++m)
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = f.sub(v[i], answers[std::size_t(group.members[m])][i]);
        virt.push_back(std::move(v));
    }

    std::vector<std::int64_t> out;
    for (const auto& terms : plan.recipe) {
        std::int64_t acc = 0;
        for (const auto& term : terms) {
            std::int64_t val = virt[std::size_t(term.group)][std::size_t(term.query)];
            acc = term.coeff >= 0 ? f.add(acc, val) : f.sub(acc, val);
        }
        out.push_back(acc);
    }
    return out;
}

StorageProfile storage_profile(const StorageLayout& layout, const topology::Grouping* gr) {
    galois::Field f(layout.q);
    StorageProfile sp;
    Rational denom(layout.k_messages * layout.l_symbols);
    Rational total(0);
    for (int s = 0; s < layout.n_servers; ++s) {
        Rational a = Rational(galois::rank(layout.server_matrix(s, f))) / denom;
        total += a;
        sp.per_server.push_back(a);
    }
    sp.average = total / Rational(layout.n_servers);
    if (gr) {
        for (const auto& group : gr->groups) {
            Rational sum(0);
            for (int member : group) sum += sp.per_server[std::size_t(member)];
            sp.per_group.push_back(sum);
        }
    }
    return sp;
}

}  // namespace axpir::schemes
