#include "axpir/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "axpir/analysis.hpp"
#include "axpir/audit.hpp"
#include "axpir/scenario_io.hpp"

namespace axpir::cli {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string render(const Rational& r, bool as_float) {
    if (!as_float) return r.str();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", r.to_double());
    return buf;
}

bool write_artifact(const std::string& path, const std::string& text, std::ostream& out,
                    std::ostream& err) {
    if (path == "-") {
        out << text << "\n";
        return true;
    }
    std::ofstream file(path);
    if (!file) {
        err << "cannot write " << path << "\n";
        return false;
    }
    file << text << "\n";
    return true;
}

std::string ineq_str(const analysis::Inequality& q) {
    return q.a.str() + "a + " + q.b.str() + "b >= " + q.c.str();
}

std::string point_str(const analysis::Point& p) {
    return "(" + p.first.str() + "," + p.second.str() + ")";
}

bool parse_rational(const std::string& text, Rational* out) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) return false;
            *out = Rational(n);
        } else {
            std::size_t used = 0;
            std::int64_t n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) return false;
            std::int64_t d = std::stoll(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1) return false;
            *out = Rational(n, d);
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err) {
    topology::GroupingResult res;
    try {
        protocol::Scenario sc = io::scenario_from_file(opt.scenario_path);
        res = topology::solve_grouping(sc.comm);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }

    if (!opt.json_path.empty()) {
        std::string js = "{\n  \"g\": " + std::to_string(res.g) + ",\n  \"optima\": [";
        for (std::size_t i = 0; i < res.optima.size(); ++i) {
            if (i) js += ',';
            js += '[';
            for (std::size_t gi = 0; gi < res.optima[i].groups.size(); ++gi) {
                if (gi) js += ',';
                js += '[';
                const auto& grp = res.optima[i].groups[gi];
                for (std::size_t s = 0; s < grp.size(); ++s) {
                    if (s) js += ',';
                    js += std::to_string(grp[s] + 1);
                }
                js += ']';
            }
            js += ']';
        }
        js += "]\n}";
        if (!write_artifact(opt.json_path, js, out, err)) return kBadInvocation;
    }

    if (res.g == 0) {
        out << "g=0 (infeasible)\n";
        return kCheckFailed;
    }
    out << "g=" << res.g << ": ";
    for (std::size_t i = 0; i < res.optima.size(); ++i) {
        if (i) out << " | ";
        out << res.optima[i].str();
    }
    out << "\n";
    return kOk;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    protocol::Scenario sc;
    try {
        sc = io::scenario_from_file(opt.scenario_path);
        sc.validate();
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }
    if (opt.theta < 1 || opt.theta > sc.k_messages) {
        err << "theta out of range [1," << sc.k_messages << "]\n";
        return kBadInvocation;
    }
    if (opt.sessions < 1) {
        err << "sessions must be positive\n";
        return kBadInvocation;
    }

    schemes::StorageLayout lay = sc.layout();
    int l = lay.l_symbols;
    std::uint64_t space = sc.randomness_space();
    std::uint64_t state = opt.seed ^ 0x6a09'e667'f3bc'c909ull;
    std::vector<protocol::Transcript> transcripts;
    bool decoded_ok = true;
    for (int s = 0; s < opt.sessions; ++s) {
        std::vector<std::vector<std::int64_t>> msgs(std::size_t(sc.k_messages));
        for (auto& row : msgs) {
            row.resize(std::size_t(l));
            for (auto& v : row) v = std::int64_t(splitmix(state) % std::uint64_t(sc.q));
        }
        std::vector<std::int64_t> noise(std::size_t(lay.noise_dim));
        for (auto& v : noise) v = std::int64_t(splitmix(state) % std::uint64_t(sc.q));
        std::uint64_t r = space ? splitmix(state) % space : splitmix(state);
        protocol::Transcript t = protocol::run_session(sc, opt.theta, msgs, noise, r);
        if (t.decoded != msgs[std::size_t(opt.theta - 1)]) decoded_ok = false;
        transcripts.push_back(std::move(t));
    }
    protocol::Measurement m = protocol::measure(sc, transcripts);

    out << "scheme = " << protocol::scheme_name(sc.scheme) << "\n";
    out << "theta = " << opt.theta << "\n";
    out << "sessions = " << opt.sessions << "\n";
    out << "alpha = " << m.alpha.str() << "\n";
    out << "beta = " << m.beta.str() << "\n";
    out << "rate = " << m.rate.str() << "\n";
    out << "identity = " << (m.identity_ok ? "ok" : "MISMATCH") << "\n";
    out << "decoded = " << (decoded_ok ? "ok" : "FAIL") << "\n";
    out << "downloads = " << transcripts.front().total_downloads() * opt.sessions << "\n";
    if (opt.dump_transcript) out << io::transcripts_to_json(transcripts) << "\n";

    if (!opt.json_path.empty()) {
        std::string js = "{\n";
        js += "  \"alpha\": \"" + m.alpha.str() + "\",\n";
        js += "  \"beta\": \"" + m.beta.str() + "\",\n";
        js += "  \"rate\": \"" + m.rate.str() + "\",\n";
        js += "  \"identity\": " + std::string(m.identity_ok ? "true" : "false") + ",\n";
        js += "  \"decoded\": " + std::string(decoded_ok ? "true" : "false") + ",\n";
        js += "  \"transcripts\": " + io::transcripts_to_json(transcripts) + "\n}";
        if (!write_artifact(opt.json_path, js, out, err)) return kBadInvocation;
    }
    return decoded_ok && m.identity_ok ? kOk : kCheckFailed;
}

int cmd_rates(const RatesOptions& opt, std::ostream& out, std::ostream& err) {
    protocol::Scenario sc;
    try {
        sc = io::scenario_from_file(opt.scenario_path);
        sc.validate();
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }
    if (opt.collusion < 1) {
        err << "collusion must be positive\n";
        return kBadInvocation;
    }
    Rational ach, bound;
    analysis::CapacityResult cap;
    try {
        ach = analysis::achievable_rate(sc.grouping, opt.collusion, sc.k_messages);
        bound = analysis::rate_upper_bound(sc.comm, sc.k_messages, opt.collusion);
        cap = analysis::theorem4_capacity(sc.comm, sc.grouping, sc.k_messages);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }

    out << "achievable_rate = " << render(ach, opt.as_float) << "\n";
    out << "upper_bound = " << render(bound, opt.as_float) << "\n";
    if (cap.conditions_met)
        out << "capacity = " << render(cap.capacity, opt.as_float) << "\n";
    else
        out << "capacity = n/a [" << cap.failed_hypothesis << "]\n";
    out << "eta_treated_as_zeta = " << (cap.eta_treated_as_zeta ? "yes" : "no") << "\n";
    if (!sc.collusion.empty())
        out << "collusion_matches_groups = "
            << (analysis::collusion_matches_groups(sc.collusion, sc.grouping) ? "yes" : "no")
            << "\n";
    std::vector<int> sizes;
    for (const auto& link : sc.comm.links) sizes.push_back(int(link.size()));
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    for (int x : sizes)
        out << "feasibility[x=" << x << "] = " << (topology::feasibility(sc.comm, x) ? "ok" : "empty")
            << "\n";

    if (!opt.json_path.empty()) {
        std::string js = "{\n";
        js += "  \"achievable_rate\": \"" + ach.str() + "\",\n";
        js += "  \"upper_bound\": \"" + bound.str() + "\",\n";
        if (cap.conditions_met)
            js += "  \"capacity\": \"" + cap.capacity.str() + "\",\n";
        else
            js += "  \"capacity\": null,\n  \"failed_hypothesis\": \"" + cap.failed_hypothesis +
                  "\",\n";
        js += "  \"eta_treated_as_zeta\": true\n}";
        if (!write_artifact(opt.json_path, js, out, err)) return kBadInvocation;
    }
    return kOk;
}

int cmd_region(const RegionOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<std::string> names = opt.theorems.empty() ? std::vector<std::string>{"t1"}
                                                          : opt.theorems;
    for (const auto& name : names) {
        if (name != "t1" && name != "t2" && name != "c1" && name != "c2") {
            err << "unknown theorem " << name << "\n";
            return kBadInvocation;
        }
    }

    std::optional<protocol::Scenario> sc;
    if (!opt.scenario_path.empty()) {
        try {
            sc = io::scenario_from_file(opt.scenario_path);
        } catch (const std::exception& e) {
            err << e.what() << "\n";
            return kBadInvocation;
        }
    }
    int k = sc ? sc->k_messages : opt.k_messages;

    std::vector<std::pair<std::string, std::vector<analysis::Inequality>>> sets;
    try {
        for (const auto& name : names) {
            if (name == "t1") {
                sets.push_back({"t1", analysis::theorem1_region().inequalities});
            } else if (name == "t2" || name == "c1") {
                if (!sc) {
                    err << name << " needs a scenario (group sizes come from the grouping)\n";
                    return kBadInvocation;
                }
                std::vector<int> sizes = sc->grouping.sizes();
                sets.push_back({name, name == "t2"
                                          ? analysis::theorem2_inequalities(sizes, k)
                                          : analysis::corollary1_inequalities(sizes, k)});
            } else {
                sets.push_back({"c2", analysis::corollary2_inequalities(opt.degree,
                                                                        opt.group_count, k)});
            }
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }

    // identical half-planes collapse to one row, first label wins
    std::vector<analysis::Inequality> combined;
    for (const auto& [label, ineqs] : sets) {
        for (const auto& q : ineqs) {
            bool dup = false;
            for (const auto& have : combined)
                if (have.a == q.a && have.b == q.b && have.c == q.c) {
                    dup = true;
                    break;
                }
            if (!dup) combined.push_back(q);
        }
    }

    out << "inequalities:\n";
    for (const auto& q : combined) out << "  " << ineq_str(q) << " [" << q.label << "]\n";

    analysis::VertexEnumeration ve = analysis::region_vertices(combined);
    out << "feasible = " << (ve.feasible ? "yes" : "no") << "\n";
    out << "vertices:";
    for (const auto& v : ve.vertices) out << " " << point_str(v);
    out << "\n";
    out << "rays:";
    for (const auto& r : ve.rays) out << " " << point_str(r);
    out << "\n";

    std::vector<std::string> redundant;
    for (std::size_t i = 0; i < combined.size(); ++i) {
        if (combined[i].label == "alpha>=0" || combined[i].label == "beta>=0")
            continue;  // keep the nonnegativity rows out of the report
        std::vector<analysis::Inequality> others;
        for (std::size_t j = 0; j < combined.size(); ++j)
            if (j != i) others.push_back(combined[j]);
        if (analysis::inequality_redundant(combined[i], others))
            redundant.push_back(combined[i].label);
    }
    out << "redundant:";
    if (redundant.empty()) out << " none";
    for (const auto& label : redundant) out << " " << label;
    out << "\n";

    std::optional<audit::AuditReport> point_rep;
    if (opt.point_alpha || opt.point_beta) {
        if (!opt.point_alpha || !opt.point_beta) {
            err << "point needs both alpha and beta\n";
            return kBadInvocation;
        }
        analysis::Point p;
        if (!parse_rational(*opt.point_alpha, &p.first) ||
            !parse_rational(*opt.point_beta, &p.second)) {
            err << "point coordinates must be rationals like 3/4\n";
            return kBadInvocation;
        }
        point_rep = audit::audit_region_point(p, sets);
        out << "point " << point_str(p) << ":";
        for (std::size_t i = 0; i < sets.size(); ++i) {
            analysis::MembershipResult mr = analysis::point_membership(p, sets[i].second);
            out << (i ? ", " : " ") << sets[i].first << " " << (mr.inside ? "inside" : "outside");
        }
        out << "\n";
        for (const auto& finding : point_rep->findings) out << "finding: " << finding << "\n";
    }

    if (!opt.csv_path.empty()) {
        analysis::RateRegion region{combined, ve.vertices, ve.rays, redundant};
        if (!write_artifact(opt.csv_path, analysis::region_csv(region, opt.as_float), out, err))
            return kBadInvocation;
    }
    if (!opt.json_path.empty()) {
        std::string js = "{\n  \"inequalities\": [";
        for (std::size_t i = 0; i < combined.size(); ++i) {
            if (i) js += ',';
            js += "\n    {\"a\": \"" + combined[i].a.str() + "\", \"b\": \"" + combined[i].b.str() +
                  "\", \"c\": \"" + combined[i].c.str() + "\", \"label\": \"" + combined[i].label +
                  "\"}";
        }
        js += "\n  ],\n  \"vertices\": [";
        for (std::size_t i = 0; i < ve.vertices.size(); ++i) {
            if (i) js += ',';
            js += "[\"" + ve.vertices[i].first.str() + "\",\"" + ve.vertices[i].second.str() +
                  "\"]";
        }
        js += "],\n  \"rays\": [";
        for (std::size_t i = 0; i < ve.rays.size(); ++i) {
            if (i) js += ',';
            js += "[\"" + ve.rays[i].first.str() + "\",\"" + ve.rays[i].second.str() + "\"]";
        }
        js += "]";
        if (point_rep) js += ",\n  \"point_report\": " + io::report_to_json(*point_rep);
        js += "\n}";
        if (!write_artifact(opt.json_path, js, out, err)) return kBadInvocation;
    }
    return kOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.mode != "exhaustive" && opt.mode != "sample") {
        err << "mode must be exhaustive or sample, got " << opt.mode << "\n";
        return kBadInvocation;
    }
    audit::SecurityMode smode;
    if (opt.security == "rank")
        smode = audit::SecurityMode::rank;
    else if (opt.security == "exhaustive")
        smode = audit::SecurityMode::exhaustive;
    else if (opt.security == "both")
        smode = audit::SecurityMode::both;
    else {
        err << "security must be rank, exhaustive, or both, got " << opt.security << "\n";
        return kBadInvocation;
    }
    std::vector<std::string> checks = opt.checks.empty()
                                          ? std::vector<std::string>{"correctness", "privacy",
                                                                     "security", "independence"}
                                          : opt.checks;
    for (const auto& c : checks) {
        if (c != "correctness" && c != "privacy" && c != "security" && c != "independence") {
            err << "unknown check " << c << "\n";
            return kBadInvocation;
        }
    }

    protocol::Scenario sc;
    try {
        sc = io::scenario_from_file(opt.scenario_path);
        if (opt.fix_coin) sc.fix_coin = opt.fix_coin;
        sc.validate();
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }

    std::vector<audit::AuditReport> reports;
    auto emit = [&](const std::string& name, const audit::AuditReport& rep) {
        out << name << ": " << (rep.passed() ? "pass" : "FAIL") << " [";
        if (rep.check == "privacy")
            out << "TV = " << (rep.tv ? rep.tv->str() : "?");
        else
            out << rep.mode;
        out << "]\n";
        if (rep.witness)
            out << "  witness: theta=" << rep.witness->theta
                << " randomness=" << rep.witness->randomness << " (" << rep.witness->note << ")\n";
        for (const auto& f : rep.findings) out << "  finding: " << f << "\n";
        reports.push_back(rep);
    };

    try {
        for (const auto& check : checks) {
            if (check == "correctness") {
                emit("correctness",
                     audit::audit_correctness(sc,
                                              opt.mode == "sample"
                                                  ? audit::CorrectnessMode::sampled
                                                  : audit::CorrectnessMode::exhaustive,
                                              std::uint64_t(opt.samples), opt.seed));
            } else if (check == "privacy") {
                std::vector<topology::ServerSet> coalitions;
                for (int s = 0; s < sc.n_servers; ++s) coalitions.push_back({s});
                for (const auto& c : sc.collusion) coalitions.push_back(c);
                for (const auto& c : coalitions)
                    emit("privacy " + topology::format_server_set(c),
                         audit::audit_privacy(sc, c, opt.mode == "sample",
                                              std::uint64_t(opt.samples), opt.seed));
            } else if (check == "security") {
                schemes::StorageLayout lay = sc.layout();
                std::vector<topology::ServerSet> coalitions;
                for (int s = 0; s < sc.n_servers; ++s) coalitions.push_back({s});
                for (const auto& link : sc.comm.links) coalitions.push_back(link);
                for (const auto& c : coalitions)
                    emit("security " + topology::format_server_set(c),
                         audit::audit_security(lay, c, smode));
            } else {
                emit("independence", audit::audit_query_message_independence(sc));
            }
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kBadInvocation;
    }

    if (!opt.json_path.empty())
        if (!write_artifact(opt.json_path, io::reports_to_json(reports), out, err))
            return kBadInvocation;

    int failed = 0;
    for (const auto& rep : reports)
        if (!rep.passed()) ++failed;
    if (failed == 0) {
        out << "verdict: all checks passed\n";
        return kOk;
    }
    out << "verdict: " << failed << " of " << reports.size() << " checks failed\n";
    return kCheckFailed;
}

}  // namespace axpir::cli
