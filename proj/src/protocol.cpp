#include "axpir/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace axpir::protocol {

std::string scheme_name(SchemeKind s) {
    return s == SchemeKind::reduced_n4k2 ? "reduced_n4k2" : "grouped";
}

ScenarioError::ScenarioError(std::string field_, const std::string& message)
    : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}

int Scenario::l_symbols() const {
    if (scheme == SchemeKind::reduced_n4k2) return schemes::kReducedL;
    std::int64_t l = 1;
    for (int i = 0; i < k_messages; ++i) {
        l *= grouping.g();
        if (l > 1'000'000) throw std::invalid_argument("l_symbols: g^K too large");
    }
    return int(l);
}

galois::Field Scenario::field() const { return galois::Field(q); }

schemes::StorageLayout Scenario::layout() const {
    if (scheme == SchemeKind::reduced_n4k2) return schemes::encode_reduced_n4k2(field());
    return schemes::encode_grouped(grouping, k_messages, field());
}

std::uint64_t Scenario::randomness_space() const {
    if (scheme == SchemeKind::reduced_n4k2) return fix_coin ? 1 : 2;
    return schemes::perm_space_size(k_messages, l_symbols());
}

schemes::QueryPlan Scenario::plan(int theta, std::uint64_t randomness) const {
    if (scheme == SchemeKind::reduced_n4k2) {
        int coin = fix_coin ? *fix_coin : int(randomness % 2) + 1;
        return schemes::plan_reduced_n4k2(theta, coin);
    }
    return schemes::plan_grouped(grouping, k_messages, theta, randomness);
}

void Scenario::validate() const {
    if (n_servers < 2) throw ScenarioError("n", "need at least 2 servers");
    try {
        galois::Field probe(q);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("q", e.what());
    }
    if (k_messages < 1) throw ScenarioError("k", "need at least 1 message");
    if (comm.n_servers != n_servers)
        throw ScenarioError("links", "communication matrix is over a different server count");
    for (const auto& v : topology::validate(comm))
        if (!v.warning) throw ScenarioError("links", v.message);
    for (const auto& coal : collusion)
        for (int s : coal)
            if (s < 0 || s >= n_servers)
                throw ScenarioError("collusion", "server index out of range");

    for (const auto& grp : grouping.groups)
        for (int s : grp)
            if (s < 0 || s >= n_servers)
                throw ScenarioError("grouping", "server index out of range");

    if (scheme == SchemeKind::reduced_n4k2) {
        if (n_servers != schemes::kReducedN || k_messages != schemes::kReducedK || q != 2)
            throw ScenarioError("scheme", "reduced_n4k2 requires n=4, k=2, q=2");
        std::vector<topology::ServerSet> expect = {{0, 2}, {1, 3}};
        if (grouping.groups != expect)
            throw ScenarioError("grouping", "reduced_n4k2 is tied to the grouping {1,3}{2,4}");
        if (fix_coin && *fix_coin != 1 && *fix_coin != 2)
            throw ScenarioError("fix_coin", "coin must be 1 or 2");
    } else {
        if (grouping.g() < 1) throw ScenarioError("grouping", "grouped scheme needs a group");
        std::string why;
        if (!topology::grouping_feasible(comm, grouping, &why))
            throw ScenarioError("grouping", why);
        if (fix_coin) throw ScenarioError("fix_coin", "only the reduced scheme takes a coin");
    }
}

int Transcript::total_downloads() const {
    int total = 0;
    for (int d : downloads) total += d;
    return total;
}

namespace {

void json_ints(std::string& out, const std::vector<std::int64_t>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    out += ']';
}

}  // namespace

std::string Transcript::to_json() const {
    std::string out = "{\n";
    out += "  \"theta\": " + std::to_string(theta) + ",\n";
    out += "  \"randomness\": " + std::to_string(randomness) + ",\n";
    out += "  \"l_symbols\": " + std::to_string(l_symbols) + ",\n";
    out += "  \"queries\": [";
    for (std::size_t s = 0; s < queries.size(); ++s) {
        if (s) out += ", ";
        out += '[';
        for (std::size_t i = 0; i < queries[s].size(); ++i) {
            if (i) out += ", ";
            json_ints(out, queries[s][i]);
        }
        out += ']';
    }
    out += "],\n";
    out += "  \"answers\": [";
    for (std::size_t s = 0; s < answers.size(); ++s) {
        if (s) out += ", ";
        json_ints(out, answers[s]);
    }
    out += "],\n";
    out += "  \"downloads\": [";
    for (std::size_t s = 0; s < downloads.size(); ++s) {
        if (s) out += ", ";
        out += std::to_string(downloads[s]);
    }
    out += "],\n";
    out += "  \"decoded\": ";
    json_ints(out, decoded);
    out += "\n}";
    return out;
}

Transcript run_session(const Scenario& sc, int theta,
                       const std::vector<std::vector<std::int64_t>>& messages,
                       const std::vector<std::int64_t>& noise, std::uint64_t randomness) {
    if (theta < 1 || theta > sc.k_messages)
        throw std::invalid_argument("run_session: theta out of range");
    galois::Field f = sc.field();
    schemes::StorageLayout lay = sc.layout();
    if (int(messages.size()) != sc.k_messages)
        throw std::invalid_argument("run_session: need one row per message");
    for (const auto& row : messages)
        if (int(row.size()) != lay.l_symbols)
            throw std::invalid_argument("run_session: message rows must have L symbols");
    if (int(noise.size()) != lay.noise_dim)
        throw std::invalid_argument("run_session: noise has the wrong length");

    std::vector<std::int64_t> flat;
    flat.reserve(std::size_t(lay.message_dim()));
    for (const auto& row : messages) flat.insert(flat.end(), row.begin(), row.end());

    schemes::QueryPlan plan = sc.plan(theta, randomness);
    Transcript t;
    t.theta = theta;
    t.randomness = randomness;
    t.l_symbols = lay.l_symbols;
    t.queries = plan.responses;
    t.answers.resize(std::size_t(sc.n_servers));
    for (int s = 0; s < sc.n_servers; ++s) {
        std::vector<std::int64_t> cells = lay.evaluate_cells(s, flat, noise, f);
        for (const auto& resp : plan.responses[std::size_t(s)]) {
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < cells.size(); ++c)
                acc = f.add(acc, f.mul(resp[c], cells[c]));
            t.answers[std::size_t(s)].push_back(acc);
        }
        t.downloads.push_back(plan.queries_at(s));
    }
    t.decoded = schemes::decode_with_plan(plan, t.answers, f);
    return t;
}

Measurement measure(const Scenario& sc, const std::vector<Transcript>& transcripts) {
    if (transcripts.empty()) throw std::invalid_argument("measure: need at least one transcript");
    schemes::StorageLayout lay = sc.layout();
    schemes::StorageProfile prof = schemes::storage_profile(lay, &sc.grouping);
    int n = sc.n_servers;
    int l = lay.l_symbols;
    auto t_count = std::int64_t(transcripts.size());

    Measurement m;
    m.n_servers = n;
    m.n_effective = sc.grouping.effective_servers();
    m.alpha = prof.average;

    std::vector<std::int64_t> per_server(std::size_t(n), 0);
    std::int64_t total = 0;
    for (const auto& t : transcripts) {
        if (int(t.downloads.size()) != n)
            throw std::invalid_argument("measure: transcript does not match the scenario");
        for (int s = 0; s < n; ++s) per_server[std::size_t(s)] += t.downloads[std::size_t(s)];
        total += t.total_downloads();
    }
    for (int s = 0; s < n; ++s)
        m.beta_per_server.push_back(Rational(per_server[std::size_t(s)], t_count * l));
    m.beta = Rational(total, std::int64_t(n) * t_count * l);
    m.rate = Rational(std::int64_t(l) * t_count, total);
    m.identity_ok = m.beta == (Rational(n) * m.rate).inverse();

    if (m.n_effective > 0) {
        Rational eff_storage(0);
        for (const auto& grp : sc.grouping.groups)
            for (int s : grp) eff_storage = eff_storage + prof.per_server[std::size_t(s)];
        m.alpha_effective = eff_storage / Rational(m.n_effective);
        m.beta_effective = Rational(total, std::int64_t(m.n_effective) * t_count * l);
    } else {
        m.alpha_effective = m.alpha;
        m.beta_effective = m.beta;
    }
    return m;
}

}  // namespace axpir::protocol
