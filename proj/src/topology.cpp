#include "axpir/topology.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace axpir::topology {

ServerSet make_server_set(std::vector<int> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return raw;
}

bool is_subset(const ServerSet& a, const ServerSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string format_server_set(const ServerSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

CommMatrix CommMatrix::from_one_based(int n, const std::vector<std::vector<int>>& links) {
    CommMatrix cm;
    cm.n_servers = n;
    for (const auto& link : links) {
        if (link.empty()) throw std::invalid_argument("link: empty");
        ServerSet s;
        for (int v : link) {
            if (v < 1 || v > n) throw std::invalid_argument("link: index out of [1, n]");
            s.push_back(v - 1);
        }
        cm.links.push_back(make_server_set(std::move(s)));
    }
    return cm;
}

std::vector<Violation> validate(const CommMatrix& cm) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < cm.links.size(); ++i) {
        const ServerSet& link = cm.links[i];
        if (int(link.size()) < 2)
            out.push_back({false, "link " + format_server_set(link) + " has fewer than 2 servers"});
        for (int v : link)
            if (v < 0 || v >= cm.n_servers)
                out.push_back({false, "link " + format_server_set(link) + " indexes a missing server"});
        for (std::size_t j = i + 1; j < cm.links.size(); ++j) {
            if (cm.links[j] == link) {
                out.push_back({false, "duplicate link " + format_server_set(link)});
            } else if (is_subset(link, cm.links[j]) || is_subset(cm.links[j], link)) {
                const ServerSet& inner = is_subset(link, cm.links[j]) ? link : cm.links[j];
                out.push_back({true, "link " + format_server_set(inner) + " is contained in a larger link"});
            }
        }
    }
    return out;
}

int omega(const CommMatrix& cm, int i) {
    int count = 0;
    for (const auto& link : cm.links)
        if (int(link.size()) == i) ++count;
    return count;
}

std::uint64_t binomial(int n, int x) {
    if (x < 0 || x > n) return 0;
    if (x > n - x) x = n - x;
    std::uint64_t acc = 1;
    for (int i = 1; i <= x; ++i) acc = acc * std::uint64_t(n - x + i) / std::uint64_t(i);
    return acc;
}

bool feasibility(const CommMatrix& cm, int x) {
    return binomial(cm.n_servers, x) != std::uint64_t(omega(cm, x));
}

int lambda_max(const CommMatrix& cm) {
    int best = 0;
    for (int server = 0; server < cm.n_servers; ++server) {
        int misses = 0;
        for (const auto& link : cm.links)
            if (!std::binary_search(link.begin(), link.end(), server)) ++misses;
        best = std::max(best, misses);
    }
    return best;
}

std::vector<int> Grouping::sizes() const {
    std::vector<int> out;
    for (const auto& g : groups) out.push_back(int(g.size()));
    return out;
}

int Grouping::effective_servers() const {
    int total = 0;
    for (const auto& g : groups) total += int(g.size());
    return total;
}

std::string Grouping::str() const {
    std::string out;
    for (const auto& g : groups) out += format_server_set(g);
    return out;
}

Grouping make_grouping(int n_servers, std::vector<ServerSet> groups) {
    Grouping gr;
    std::vector<bool> taken(std::size_t(n_servers), false);
    for (auto& g : groups) {
        g = make_server_set(std::move(g));
        if (int(g.size()) < 2) throw std::invalid_argument("group: fewer than 2 servers");
        for (int v : g) {
            if (v < 0 || v >= n_servers) throw std::invalid_argument("group: index out of range");
            if (taken[std::size_t(v)]) throw std::invalid_argument("group: overlapping groups");
            taken[std::size_t(v)] = true;
        }
        gr.groups.push_back(std::move(g));
    }
    for (int v = 0; v < n_servers; ++v)
        if (!taken[std::size_t(v)]) gr.ungrouped.push_back(v);
    return gr;
}

bool grouping_feasible(const CommMatrix& cm, const Grouping& gr, std::string* why) {
    std::vector<bool> taken(std::size_t(cm.n_servers), false);
    for (const auto& g : gr.groups) {
        if (int(g.size()) < 2) {
            if (why) *why = "group " + format_server_set(g) + " has fewer than 2 servers";
            return false;
        }
        for (int v : g) {
            if (v < 0 || v >= cm.n_servers) {
                if (why) *why = "group " + format_server_set(g) + " indexes a missing server";
                return false;
            }
            if (taken[std::size_t(v)]) {
                if (why) *why = "group " + format_server_set(g) + " overlaps another group";
                return false;
            }
            taken[std::size_t(v)] = true;
        }
        for (const auto& link : cm.links) {
            if (is_subset(g, link)) {
                if (why)
                    *why = "group " + format_server_set(g) + " is contained in link " +
                           format_server_set(link);
                return false;
            }
        }
    }
    if (why) why->clear();
    return true;
}

GroupingResult solve_grouping(const CommMatrix& cm) {
    if (cm.n_servers > kMaxExactSearchServers)
        throw std::invalid_argument("solve_grouping: exact search capped at 12 servers");
    GroupingResult result;
    std::vector<ServerSet> current;

    // smallest undecided server either stays ungrouped or leads a new group
    // drawn from the larger undecided servers; each partition appears once
    std::function<void(std::vector<int>)> rec = [&](std::vector<int> pool) {
        if (pool.empty()) {
            int g = int(current.size());
            if (g > result.g) {
                result.g = g;
                result.optima.clear();
            }
            if (g == result.g && g > 0)
                result.optima.push_back(make_grouping(cm.n_servers, current));
            return;
        }
        int head = pool.front();
        std::vector<int> rest(pool.begin() + 1, pool.end());
        rec(rest);
        for (std::uint64_t mask = 1; mask < (1ull << rest.size()); ++mask) {
            ServerSet group{head};
            std::vector<int> remain;
            for (std::size_t i = 0; i < rest.size(); ++i)
                (mask & (1ull << i) ? group : remain).push_back(rest[std::size_t(i)]);
            bool blocked = false;
            for (const auto& link : cm.links)
                if (is_subset(group, link)) { blocked = true; break; }
            if (blocked) continue;
            current.push_back(std::move(group));
            rec(remain);
            current.pop_back();
        }
    };
    std::vector<int> pool;
    for (int i = 0; i < cm.n_servers; ++i) pool.push_back(i);
    rec(pool);

    if (result.g == 0) result.optima.clear();
    std::sort(result.optima.begin(), result.optima.end(),
              [](const Grouping& a, const Grouping& b) { return a.groups < b.groups; });
    return result;
}

}  // namespace axpir::topology
