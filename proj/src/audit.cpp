#include "axpir/audit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace axpir::audit {

namespace {

using Vec = std::vector<std::int64_t>;

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// q^e saturated far above any usable budget
unsigned __int128 sat_pow(std::int64_t q, int e) {
    const unsigned __int128 cap = (unsigned __int128)1 << 100;
    unsigned __int128 acc = 1;
    for (int i = 0; i < e; ++i) {
        acc *= (unsigned __int128)q;
        if (acc > cap) return cap;
    }
    return acc;
}

Vec mat_vec(const galois::FMatrix& m, const Vec& x, const galois::Field& f) {
    Vec out(std::size_t(m.rows()), 0);
    for (int r = 0; r < m.rows(); ++r) {
        std::int64_t acc = 0;
        for (int c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m.at(r, c), x[std::size_t(c)]));
        out[std::size_t(r)] = acc;
    }
    return out;
}

// all q^rank column-space elements via the pivot columns, with the
// coefficient tuple kept for witness reconstruction
struct SpanEnum {
    std::vector<int> pivots;
    std::vector<Vec> offsets;
    std::vector<Vec> coeffs;
};

SpanEnum enumerate_colspace(const galois::FMatrix& n, const galois::Field& f) {
    SpanEnum se;
    se.pivots = galois::pivot_columns(n);
    int r = int(se.pivots.size());
    std::int64_t q = f.q();
    Vec digits(std::size_t(r), 0);
    while (true) {
        Vec off(std::size_t(n.rows()), 0);
        for (int i = 0; i < r; ++i) {
            if (digits[std::size_t(i)] == 0) continue;
            for (int row = 0; row < n.rows(); ++row)
                off[std::size_t(row)] = f.add(
                    off[std::size_t(row)],
                    f.mul(digits[std::size_t(i)], n.at(row, se.pivots[std::size_t(i)])));
        }
        se.offsets.push_back(std::move(off));
        se.coeffs.push_back(digits);
        int i = 0;
        for (; i < r; ++i) {
            if (++digits[std::size_t(i)] < q) break;
            digits[std::size_t(i)] = 0;
        }
        if (i == r) break;
    }
    return se;
}

// sparse (global cell index, coefficient) form of every response vector
std::vector<std::vector<std::vector<std::pair<int, std::int64_t>>>> sparsify(
    const schemes::QueryPlan& plan, const schemes::StorageLayout& lay) {
    std::vector<std::vector<std::vector<std::pair<int, std::int64_t>>>> out(
        std::size_t(plan.n_servers));
    int base = 0;
    for (int s = 0; s < plan.n_servers; ++s) {
        for (const auto& resp : plan.responses[std::size_t(s)]) {
            std::vector<std::pair<int, std::int64_t>> terms;
            for (std::size_t c = 0; c < resp.size(); ++c)
                if (resp[c] != 0) terms.push_back({base + int(c), resp[c]});
            out[std::size_t(s)].push_back(std::move(terms));
        }
        base += lay.cells_at(s);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> unflatten(const Vec& flat, int k, int l) {
    std::vector<std::vector<std::int64_t>> rows;
    rows.resize(std::size_t(k));
    for (int i = 0; i < k; ++i)
        rows[std::size_t(i)].assign(flat.begin() + std::int64_t(i) * l,
                                    flat.begin() + std::int64_t(i + 1) * l);
    return rows;
}

// lean replay of decode_with_plan with preallocated buffers
struct Decoder {
    const schemes::QueryPlan* plan;
    std::vector<Vec> virt;

    explicit Decoder(const schemes::QueryPlan& p) : plan(&p) {
        for (const auto& g : p.groups)
            virt.push_back(Vec(std::size_t(p.queries_at(g.members[0])), 0));
    }

    // answers laid out per server, already split
    bool decode_matches(const std::vector<Vec>& answers, const Vec& expected,
                        const galois::Field& f, Vec* out) {
        for (std::size_t g = 0; g < plan->groups.size(); ++g) {
            const auto& members = plan->groups[g].members;
            Vec& v = virt[g];
            const Vec& lead = answers[std::size_t(members[0])];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = lead[i];
            for (std::size_t m = 1; m < members.size(); ++m) {
                const Vec& a = answers[std::size_t(members[m])];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(v[i], a[i]);
            }
        }
        bool match = true;
        for (std::size_t j = 0; j < plan->recipe.size(); ++j) {
            std::int64_t acc = 0;
            for (const auto& term : plan->recipe[j]) {
                std::int64_t val = virt[std::size_t(term.group)][std::size_t(term.query)];
                acc = term.coeff >= 0 ? f.add(acc, val) : f.sub(acc, val);
            }
            if (out) (*out)[j] = acc;
            if (acc != expected[j]) {
                match = false;
                if (!out) return false;
            }
        }
        return match;
    }
};

Vec random_vec(std::uint64_t& state, std::size_t len, std::int64_t q) {
    Vec out(len);
    for (auto& v : out) v = std::int64_t(splitmix(state) % std::uint64_t(q));
    return out;
}

}  // namespace

AuditReport audit_correctness(const protocol::Scenario& sc, CorrectnessMode mode,
                              std::uint64_t samples, std::uint64_t seed,
                              const PlanMutator& mutate, std::uint64_t budget) {
    AuditReport rep;
    rep.check = "correctness";
    galois::Field f = sc.field();
    schemes::StorageLayout lay = sc.layout();
    int k = sc.k_messages;
    int l = sc.l_symbols();
    int kl = k * l;
    topology::ServerSet everyone;
    for (int s = 0; s < sc.n_servers; ++s) everyone.push_back(s);

    if (mode == CorrectnessMode::sampled) {
        rep.mode = "sampled(n=" + std::to_string(samples) + ")";
        std::uint64_t state = seed ^ 0xa076'1d64'78bd'642full;
        std::uint64_t space = sc.randomness_space();
        for (std::uint64_t i = 0; i < samples; ++i) {
            Vec flat = random_vec(state, std::size_t(kl), sc.q);
            Vec noise = random_vec(state, std::size_t(lay.noise_dim), sc.q);
            int theta = 1 + int(splitmix(state) % std::uint64_t(k));
            std::uint64_t r = space ? splitmix(state) % space : splitmix(state);
            schemes::QueryPlan plan = sc.plan(theta, r);
            if (mutate) mutate(plan);
            std::vector<Vec> answers(std::size_t(sc.n_servers));
            for (int s = 0; s < sc.n_servers; ++s) {
                Vec cells = lay.evaluate_cells(s, flat, noise, f);
                for (const auto& resp : plan.responses[std::size_t(s)]) {
                    std::int64_t acc = 0;
                    for (std::size_t c = 0; c < cells.size(); ++c)
                        acc = f.add(acc, f.mul(resp[c], cells[c]));
                    answers[std::size_t(s)].push_back(acc);
                }
            }
            Vec got = schemes::decode_with_plan(plan, answers, f);
            Vec want(flat.begin() + std::int64_t(theta - 1) * l, flat.begin() + std::int64_t(theta) * l);
            ++rep.enumeration_size;
            if (got != want) {
                rep.verdict = Verdict::fail;
                rep.statistic = "decode mismatch at sample " + std::to_string(i);
                Witness w;
                w.theta = theta;
                w.randomness = r;
                w.messages = unflatten(flat, k, l);
                w.noise = noise;
                w.observed = got;
                w.expected = want;
                w.note = "sampled session decoded the wrong symbols";
                rep.witness = w;
                return rep;
            }
        }
        rep.verdict = Verdict::pass;
        rep.statistic = "all " + std::to_string(samples) + " sampled sessions decoded correctly";
        return rep;
    }

    std::uint64_t space = sc.randomness_space();
    if (space == 0)
        throw std::invalid_argument("audit_correctness: randomness space is not enumerable");
    galois::FMatrix m_cells = lay.coalition_message_block(everyone, f);
    galois::FMatrix n_cells = lay.coalition_noise_block(everyone, f);

    unsigned __int128 msg_states = sat_pow(sc.q, kl);
    unsigned __int128 cells_total =
        msg_states * sat_pow(sc.q, galois::rank(n_cells)) * (unsigned __int128)k *
        (unsigned __int128)space;
    bool cells_mode = cells_total <= (unsigned __int128)budget;
    rep.mode = cells_mode ? "exhaustive(cells)" : "exhaustive(answers)";

    SpanEnum cell_span;
    if (cells_mode) cell_span = enumerate_colspace(n_cells, f);

    // consistency spot-check of the compiled maps against the session runner
    int cross_checks_left = mutate ? 0 : 3;
    std::uint64_t cross_state = 0x5bd1'e995'68b3'2f47ull;

    unsigned __int128 running = 0;
    for (int theta = 1; theta <= k; ++theta) {
        for (std::uint64_t r = 0; r < space; ++r) {
            schemes::QueryPlan plan = sc.plan(theta, r);
            if (mutate) mutate(plan);
            auto sparse = sparsify(plan, lay);
            Decoder dec(plan);
            int downloads = plan.total_downloads();

            // per-(theta, r) answer maps: answer = rm * m + rn * z
            galois::FMatrix rm(downloads, kl, f);
            galois::FMatrix rn(downloads, lay.noise_dim, f);
            {
                int d = 0;
                for (int s = 0; s < sc.n_servers; ++s) {
                    for (const auto& terms : sparse[std::size_t(s)]) {
                        for (const auto& [cell, coeff] : terms) {
                            for (int c = 0; c < kl; ++c)
                                rm.set(d, c, f.add(rm.at(d, c), f.mul(coeff, m_cells.at(cell, c))));
                            for (int c = 0; c < lay.noise_dim; ++c)
                                rn.set(d, c, f.add(rn.at(d, c), f.mul(coeff, n_cells.at(cell, c))));
                        }
                        ++d;
                    }
                }
            }
            SpanEnum local_span;
            if (!cells_mode) {
                running += msg_states * sat_pow(sc.q, galois::rank(rn));
                if (running > (unsigned __int128)budget)
                    throw std::invalid_argument(
                        "audit_correctness: state space exceeds the budget");
                local_span = enumerate_colspace(rn, f);
            } else {
                running += msg_states * (unsigned __int128)cell_span.offsets.size();
                if (running > (unsigned __int128)budget)
                    throw std::invalid_argument(
                        "audit_correctness: state space exceeds the budget");
            }
            const SpanEnum& span = cells_mode ? cell_span : local_span;

            if (cross_checks_left > 0) {
                --cross_checks_left;
                Vec flat = random_vec(cross_state, std::size_t(kl), sc.q);
                Vec noise = random_vec(cross_state, std::size_t(lay.noise_dim), sc.q);
                auto t = protocol::run_session(sc, theta, unflatten(flat, k, l), noise, r);
                Vec compiled = mat_vec(rm, flat, f);
                Vec shifted = mat_vec(rn, noise, f);
                std::vector<Vec> split(std::size_t(sc.n_servers));
                int d = 0;
                for (int s = 0; s < sc.n_servers; ++s)
                    for (int i = 0; i < plan.queries_at(s); ++i, ++d)
                        split[std::size_t(s)].push_back(
                            f.add(compiled[std::size_t(d)], shifted[std::size_t(d)]));
                if (split != t.answers) {
                    rep.verdict = Verdict::fail;
                    rep.statistic = "compiled answer map disagrees with the session runner";
                    Witness w;
                    w.theta = theta;
                    w.randomness = r;
                    w.messages = unflatten(flat, k, l);
                    w.noise = noise;
                    w.note = "internal consistency check failed";
                    rep.witness = w;
                    return rep;
                }
            }

            // enumerate every message vector crossed with the full offset cover
            Vec flat(std::size_t(kl), 0);
            Vec want(std::size_t(l), 0);
            Vec answer(std::size_t(downloads), 0);
            std::vector<Vec> split(std::size_t(sc.n_servers));
            for (int s = 0; s < sc.n_servers; ++s)
                split[std::size_t(s)].assign(std::size_t(plan.queries_at(s)), 0);
            while (true) {
                for (int j = 0; j < l; ++j) want[std::size_t(j)] = flat[std::size_t((theta - 1) * l + j)];
                Vec base;
                if (cells_mode) {
                    base = mat_vec(m_cells, flat, f);
                } else {
                    base = mat_vec(rm, flat, f);
                }
                for (std::size_t o = 0; o < span.offsets.size(); ++o) {
                    const Vec& off = span.offsets[o];
                    if (cells_mode) {
                        // cells = base + off, answers from the sparse responses
                        int d = 0;
                        for (int s = 0; s < sc.n_servers; ++s) {
                            auto& slot = split[std::size_t(s)];
                            for (std::size_t i = 0; i < sparse[std::size_t(s)].size(); ++i, ++d) {
                                std::int64_t acc = 0;
                                for (const auto& [cell, coeff] : sparse[std::size_t(s)][i])
                                    acc = f.add(acc, f.mul(coeff, f.add(base[std::size_t(cell)],
                                                                        off[std::size_t(cell)])));
                                slot[i] = acc;
                            }
                        }
                    } else {
                        for (std::size_t d = 0; d < answer.size(); ++d)
                            answer[d] = f.add(base[d], off[d]);
                        int d = 0;
                        for (int s = 0; s < sc.n_servers; ++s) {
                            auto& slot = split[std::size_t(s)];
                            for (std::size_t i = 0; i < slot.size(); ++i, ++d) slot[i] = answer[std::size_t(d)];
                        }
                    }
                    ++rep.enumeration_size;
                    if (!dec.decode_matches(split, want, f, nullptr)) {
                        Vec got(std::size_t(l), 0);
                        dec.decode_matches(split, want, f, &got);
                        rep.verdict = Verdict::fail;
                        rep.statistic = "decode mismatch in the enumerated state space";
                        Witness w;
                        w.theta = theta;
                        w.randomness = r;
                        w.messages = unflatten(flat, k, l);
                        w.noise.assign(std::size_t(lay.noise_dim), 0);
                        const auto& coeff = span.coeffs[o];
                        for (std::size_t i = 0; i < span.pivots.size(); ++i)
                            w.noise[std::size_t(span.pivots[i])] = coeff[i];
                        w.observed = got;
                        w.expected = want;
                        w.note = "enumerated state decoded the wrong symbols";
                        rep.witness = w;
                        return rep;
                    }
                }
                int i = 0;
                for (; i < kl; ++i) {
                    if (++flat[std::size_t(i)] < sc.q) break;
                    flat[std::size_t(i)] = 0;
                }
                if (i == kl) break;
            }
        }
    }
    rep.verdict = Verdict::pass;
    rep.statistic = "all " + std::to_string(rep.enumeration_size) + " states decoded correctly";
    return rep;
}

namespace {

using QueryDescriptor = std::vector<std::vector<std::vector<std::int64_t>>>;

QueryDescriptor coalition_view(const schemes::QueryPlan& plan, const topology::ServerSet& coal) {
    QueryDescriptor desc;
    for (int s : coal) desc.push_back(plan.responses[std::size_t(s)]);
    return desc;
}

}  // namespace

AuditReport audit_privacy(const protocol::Scenario& sc, const topology::ServerSet& coalition,
                          bool allow_sampling, std::uint64_t samples, std::uint64_t seed) {
    AuditReport rep;
    rep.check = "privacy";
    for (int s : coalition)
        if (s < 0 || s >= sc.n_servers)
            throw std::invalid_argument("audit_privacy: coalition index out of range");
    int k = sc.k_messages;
    std::uint64_t space = sc.randomness_space();
    bool enumerable = space != 0 && (unsigned __int128)space * (unsigned __int128)k <=
                                        (unsigned __int128)kEnumerationBudget;

    // desc -> per-theta counts, plus one randomness sample per (desc, theta)
    std::map<QueryDescriptor, std::vector<std::uint64_t>> counts;
    std::map<QueryDescriptor, std::vector<std::uint64_t>> first_r;
    std::uint64_t per_theta = 0;

    if (enumerable) {
        rep.mode = "exhaustive";
        per_theta = space;
        for (int theta = 1; theta <= k; ++theta) {
            for (std::uint64_t r = 0; r < space; ++r) {
                QueryDescriptor d = coalition_view(sc.plan(theta, r), coalition);
                auto& row = counts[d];
                if (row.empty()) {
                    row.assign(std::size_t(k), 0);
                    first_r[d].assign(std::size_t(k), UINT64_MAX);
                }
                if (first_r[d][std::size_t(theta - 1)] == UINT64_MAX)
                    first_r[d][std::size_t(theta - 1)] = r;
                ++row[std::size_t(theta - 1)];
            }
        }
        rep.enumeration_size = space * std::uint64_t(k);
    } else {
        if (!allow_sampling)
            throw std::invalid_argument(
                "audit_privacy: randomness space too large; pass allow_sampling");
        rep.mode = "sampled(n=" + std::to_string(samples) + ")";
        per_theta = samples;
        std::uint64_t state = seed ^ 0x9e37'79b9'7f4a'7c15ull;
        for (int theta = 1; theta <= k; ++theta) {
            for (std::uint64_t i = 0; i < samples; ++i) {
                std::uint64_t r = space ? splitmix(state) % space : splitmix(state);
                QueryDescriptor d = coalition_view(sc.plan(theta, r), coalition);
                auto& row = counts[d];
                if (row.empty()) {
                    row.assign(std::size_t(k), 0);
                    first_r[d].assign(std::size_t(k), UINT64_MAX);
                }
                if (first_r[d][std::size_t(theta - 1)] == UINT64_MAX)
                    first_r[d][std::size_t(theta - 1)] = r;
                ++row[std::size_t(theta - 1)];
            }
        }
        rep.enumeration_size = samples * std::uint64_t(k);
    }

    Rational tv(0);
    int worst_a = 1, worst_b = 2;
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            std::uint64_t diff = 0;
            for (const auto& [d, row] : counts) {
                std::uint64_t ca = row[std::size_t(a)], cb = row[std::size_t(b)];
                diff += ca > cb ? ca - cb : cb - ca;
            }
            Rational pair_tv = Rational(std::int64_t(diff), 2 * std::int64_t(per_theta));
            if (pair_tv > tv) {
                tv = pair_tv;
                worst_a = a + 1;
                worst_b = b + 1;
            }
        }
    }
    rep.tv = tv;

    if (enumerable) {
        if (tv == Rational(0)) {
            rep.verdict = Verdict::pass;
            rep.statistic = "exact TV = 0 across all theta pairs";
        } else {
            rep.verdict = Verdict::fail;
            rep.statistic = "exact TV = " + tv.str() + " between theta " +
                            std::to_string(worst_a) + " and " + std::to_string(worst_b);
            for (const auto& [d, row] : counts) {
                if (row[std::size_t(worst_a - 1)] == row[std::size_t(worst_b - 1)]) continue;
                Witness w;
                bool a_heavier = row[std::size_t(worst_a - 1)] > row[std::size_t(worst_b - 1)];
                w.theta = a_heavier ? worst_a : worst_b;
                std::uint64_t r = first_r[d][std::size_t(w.theta - 1)];
                w.randomness = r == UINT64_MAX ? 0 : r;
                w.note = "coalition " + topology::format_server_set(coalition) +
                         " sees this query descriptor more often under theta " +
                         std::to_string(w.theta);
                rep.witness = w;
                break;
            }
        }
    } else {
        // sampling can only gather evidence, never prove a violation
        rep.verdict = Verdict::pass;
        rep.statistic = "no violation found; empirical max TV = " + tv.str();
        if (tv > Rational(1, 4))
            rep.findings.push_back("empirical TV is large; rerun with more samples");
    }
    return rep;
}

AuditReport audit_query_message_independence(const protocol::Scenario& sc) {
    AuditReport rep;
    rep.check = "independence";
    rep.mode = "structural+perturbation";
    galois::Field f = sc.field();
    schemes::StorageLayout lay = sc.layout();
    int k = sc.k_messages;
    int l = sc.l_symbols();
    std::uint64_t space = sc.randomness_space();
    std::uint64_t state = 0x1234'5678'9abc'def0ull;
    std::vector<std::uint64_t> draws = {0};
    if (space == 0 || space > 1) draws.push_back(space ? space - 1 : splitmix(state));

    for (int theta = 1; theta <= k; ++theta) {
        for (std::uint64_t r : draws) {
            std::vector<std::vector<std::int64_t>> zero_m(std::size_t(k),
                                                          std::vector<std::int64_t>(std::size_t(l), 0));
            Vec zero_z(std::size_t(lay.noise_dim), 0);
            Vec rand_flat = random_vec(state, std::size_t(k) * std::size_t(l), sc.q);
            Vec rand_z = random_vec(state, std::size_t(lay.noise_dim), sc.q);
            auto t0 = protocol::run_session(sc, theta, zero_m, zero_z, r);
            auto t1 = protocol::run_session(sc, theta, unflatten(rand_flat, k, l), rand_z, r);
            schemes::QueryPlan plan = sc.plan(theta, r);
            ++rep.enumeration_size;
            if (t0.queries != t1.queries || t0.queries != plan.responses) {
                rep.verdict = Verdict::fail;
                rep.statistic = "queries changed with message contents";
                Witness w;
                w.theta = theta;
                w.randomness = r;
                w.messages = unflatten(rand_flat, k, l);
                w.noise = rand_z;
                w.note = "query descriptors must be functions of (theta, randomness) only";
                rep.witness = w;
                return rep;
            }
        }
    }
    rep.verdict = Verdict::pass;
    rep.statistic = "queries depend only on (theta, randomness)";
    return rep;
}

AuditReport audit_planner_independence(const Planner& planner, int k, int l, std::int64_t q,
                                       int theta, std::uint64_t randomness, std::uint64_t trials,
                                       std::uint64_t seed) {
    AuditReport rep;
    rep.check = "independence";
    rep.mode = "replay(n=" + std::to_string(trials) + ")";
    std::uint64_t state = seed ^ 0xfeed'face'cafe'beefull;
    std::vector<std::vector<std::int64_t>> baseline(std::size_t(k),
                                                    std::vector<std::int64_t>(std::size_t(l), 0));
    schemes::QueryPlan ref = planner(theta, randomness, baseline);
    for (std::uint64_t t = 1; t < trials; ++t) {
        std::vector<std::vector<std::int64_t>> msgs;
        if (t == 1) {
            msgs.assign(std::size_t(k), std::vector<std::int64_t>(std::size_t(l), q - 1));
        } else {
            Vec flat = random_vec(state, std::size_t(k) * std::size_t(l), q);
            msgs = unflatten(flat, k, l);
        }
        schemes::QueryPlan probe = planner(theta, randomness, msgs);
        ++rep.enumeration_size;
        if (probe.responses != ref.responses) {
            rep.verdict = Verdict::fail;
            rep.statistic = "planner output depends on message contents";
            Witness w;
            w.theta = theta;
            w.randomness = randomness;
            w.messages = msgs;
            w.note = "same (theta, randomness) produced a different plan for these messages";
            rep.witness = w;
            return rep;
        }
    }
    rep.verdict = Verdict::pass;
    rep.statistic = "plan unchanged across " + std::to_string(trials) + " message fills";
    return rep;
}

namespace {

AuditReport security_rank(const schemes::StorageLayout& layout, const topology::ServerSet& servers,
                          const galois::Field& f) {
    AuditReport rep;
    rep.check = "security";
    rep.mode = "rank";
    galois::FMatrix msg = layout.coalition_message_block(servers, f);
    galois::FMatrix noise = layout.coalition_noise_block(servers, f);
    int rn = galois::rank(noise);
    int rfull = galois::rank(noise.hconcat(msg));
    rep.enumeration_size = std::uint64_t(msg.cols());
    rep.statistic = "rank(pads) = " + std::to_string(rn) + ", rank(pads|messages) = " +
                    std::to_string(rfull);
    if (rfull == rn) {
        rep.verdict = Verdict::pass;
        return rep;
    }
    rep.verdict = Verdict::fail;
    for (int c = 0; c < msg.cols(); ++c) {
        galois::FMatrix col(msg.rows(), 1, f);
        for (int r = 0; r < msg.rows(); ++r) col.set(r, 0, msg.at(r, c));
        if (galois::column_space_contains(col, noise)) continue;
        Witness w;
        w.theta = 0;
        w.messages = unflatten(Vec(std::size_t(msg.cols()), 0), layout.k_messages, layout.l_symbols);
        w.messages[std::size_t(c / layout.l_symbols)][std::size_t(c % layout.l_symbols)] = 1;
        for (int r = 0; r < msg.rows(); ++r) w.observed.push_back(msg.at(r, c));
        w.note = "this unit message shifts the coalition cells outside the pad span";
        rep.witness = w;
        break;
    }
    return rep;
}

AuditReport security_support(const schemes::StorageLayout& layout,
                             const topology::ServerSet& servers, const galois::Field& f,
                             std::uint64_t budget) {
    AuditReport rep;
    rep.check = "security";
    rep.mode = "exhaustive(support)";
    galois::FMatrix msg = layout.coalition_message_block(servers, f);
    galois::FMatrix noise = layout.coalition_noise_block(servers, f);
    int rn = galois::rank(noise);
    unsigned __int128 support = sat_pow(f.q(), rn);
    if (support > (unsigned __int128)budget)
        throw std::invalid_argument("audit_security: support enumeration exceeds the budget");

    SpanEnum span = enumerate_colspace(noise, f);
    std::set<Vec> zero_support(span.offsets.begin(), span.offsets.end());
    rep.enumeration_size = std::uint64_t(zero_support.size());

    for (int c = 0; c < msg.cols(); ++c) {
        Vec shifted(std::size_t(msg.rows()));
        for (int r = 0; r < msg.rows(); ++r) shifted[std::size_t(r)] = msg.at(r, c);
        if (zero_support.count(shifted)) continue;
        rep.verdict = Verdict::fail;
        rep.statistic = "a unit message reaches cell states the all-zero message cannot";
        Witness w;
        w.theta = 0;
        w.messages = unflatten(Vec(std::size_t(msg.cols()), 0), layout.k_messages, layout.l_symbols);
        w.messages[std::size_t(c / layout.l_symbols)][std::size_t(c % layout.l_symbols)] = 1;
        w.observed = shifted;
        w.note = "support of the coalition cells depends on the stored messages";
        rep.witness = w;
        return rep;
    }
    rep.verdict = Verdict::pass;
    rep.statistic = "all " + std::to_string(std::uint64_t(zero_support.size())) +
                    " reachable cell states are message-independent";
    return rep;
}

}  // namespace

AuditReport audit_security(const schemes::StorageLayout& layout, const topology::ServerSet& servers,
                           SecurityMode mode, std::uint64_t budget) {
    for (int s : servers)
        if (s < 0 || s >= layout.n_servers)
            throw std::invalid_argument("audit_security: server index out of range");
    galois::Field f(layout.q);
    if (mode == SecurityMode::rank) return security_rank(layout, servers, f);
    if (mode == SecurityMode::exhaustive) return security_support(layout, servers, f, budget);

    AuditReport a = security_rank(layout, servers, f);
    AuditReport b = security_support(layout, servers, f, budget);
    AuditReport rep;
    rep.check = "security";
    rep.enumeration_size = a.enumeration_size + b.enumeration_size;
    rep.statistic = a.statistic + "; " + b.statistic;
    if (a.passed() == b.passed()) {
        rep.mode = "both(agree)";
        rep.verdict = a.verdict;
        rep.witness = b.witness ? b.witness : a.witness;
    } else {
        rep.mode = "both(disagree)";
        rep.verdict = Verdict::fail;
        rep.findings.push_back("rank and support modes disagree; audit implementation suspect");
        rep.witness = b.witness ? b.witness : a.witness;
    }
    return rep;
}

AuditReport audit_region_point(
    const analysis::Point& p,
    const std::vector<std::pair<std::string, std::vector<analysis::Inequality>>>& sets) {
    AuditReport rep;
    rep.check = "region_point";
    rep.mode = "membership";
    rep.verdict = Verdict::pass;
    struct Outcome {
        std::string label;
        bool inside;
        std::string first_violation;
    };
    std::vector<Outcome> outcomes;
    std::string stat;
    for (const auto& [label, ineqs] : sets) {
        analysis::MembershipResult mr = analysis::point_membership(p, ineqs);
        rep.enumeration_size += std::uint64_t(ineqs.size());
        Outcome o{label, mr.inside, ""};
        auto viol = mr.violations();
        if (!viol.empty()) o.first_violation = viol.front().label;
        outcomes.push_back(o);
        if (!stat.empty()) stat += "; ";
        stat += label + ": " + (mr.inside ? "inside" : "outside");
        if (!mr.inside) stat += " (" + std::to_string(viol.size()) + " violated)";
    }
    rep.statistic = "point (" + p.first.str() + "," + p.second.str() + "): " + stat;
    for (const auto& in : outcomes) {
        if (!in.inside) continue;
        for (const auto& out : outcomes) {
            if (out.inside) continue;
            rep.findings.push_back("point lies inside " + in.label + " but outside " + out.label +
                                   " (violates " + out.first_violation + ")");
        }
    }
    return rep;
}

}  // namespace axpir::audit
