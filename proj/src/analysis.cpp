#include "axpir/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>

namespace axpir::analysis {

Rational c_tpir(int t, int g, int k) {
    if (t < 1 || g < 1 || k < 1) throw std::invalid_argument("c_tpir: t, g, k must be >= 1");
    Rational ratio(t, g);
    Rational sum(0), term(1);
    for (int j = 0; j < k; ++j) {
        sum += term;
        term *= ratio;
    }
    return sum.inverse();
}

Rational c_pir(int g, int k) { return c_tpir(1, g, k); }

Rational zeta(int k, int t, int n, int link_size) {
    if (link_size >= n) throw std::invalid_argument("zeta: link spans all remaining servers");
    Rational ratio(t, n - link_size);
    Rational sum(0), term(1);
    for (int j = 1; j < k; ++j) {
        term *= ratio;
        sum += term;
    }
    return sum;
}

Rational achievable_rate(const topology::Grouping& gr, int t, int k) {
    if (gr.g() == 0) throw std::invalid_argument("achievable_rate: no groups");
    return Rational(gr.g(), gr.effective_servers()) * c_tpir(t, gr.g(), k);
}

Rational rate_upper_bound(const topology::CommMatrix& cm, int k, int t) {
    if (cm.links.empty()) throw std::invalid_argument("rate_upper_bound: no links");
    Rational denom(cm.n_links());
    for (const auto& link : cm.links) {
        if (int(link.size()) >= cm.n_servers)
            throw std::invalid_argument("rate_upper_bound: a link spans all servers");
        denom += zeta(k, t, cm.n_servers, int(link.size()));
    }
    return Rational(topology::lambda_max(cm)) / denom;
}

Inequality alpha_nonneg() { return {Rational(1), Rational(0), Rational(0), "alpha>=0"}; }
Inequality beta_nonneg() { return {Rational(0), Rational(1), Rational(0), "beta>=0"}; }

std::vector<MembershipItem> MembershipResult::violations() const {
    std::vector<MembershipItem> out;
    for (const auto& item : items)
        if (!item.satisfied) out.push_back(item);
    return out;
}

MembershipResult point_membership(const Point& p, const std::vector<Inequality>& ineqs) {
    MembershipResult res;
    res.inside = true;
    for (const auto& iq : ineqs) {
        MembershipItem item;
        item.label = iq.label;
        item.slack = iq.a * p.first + iq.b * p.second - iq.c;
        item.satisfied = item.slack >= Rational(0);
        if (!item.satisfied) res.inside = false;
        res.items.push_back(std::move(item));
    }
    return res;
}

namespace {

bool satisfies_all(const Point& p, const std::vector<Inequality>& ineqs) {
    for (const auto& iq : ineqs)
        if (iq.a * p.first + iq.b * p.second < iq.c) return false;
    return true;
}

bool normals_parallel(const Inequality& x, const Inequality& y) {
    return x.a * y.b == x.b * y.a;
}

// feasibility of a system whose nonzero normals are all parallel: project
// onto the shared direction and intersect the 1-d bounds
struct IntervalSystem {
    bool feasible = true;
    Rational dir_a, dir_b;  // zero when no nonzero normal exists
    std::optional<Rational> lo, hi;
};

IntervalSystem project_parallel(const std::vector<Inequality>& ineqs) {
    IntervalSystem sys;
    const Inequality* base = nullptr;
    for (const auto& iq : ineqs)
        if (!(iq.a == Rational(0) && iq.b == Rational(0))) { base = &iq; break; }
    if (!base) {
        for (const auto& iq : ineqs)
            if (iq.c > Rational(0)) sys.feasible = false;
        return sys;
    }
    sys.dir_a = base->a;
    sys.dir_b = base->b;
    for (const auto& iq : ineqs) {
        if (iq.a == Rational(0) && iq.b == Rational(0)) {
            if (iq.c > Rational(0)) sys.feasible = false;
            continue;
        }
        Rational s = base->a != Rational(0) ? iq.a / base->a : iq.b / base->b;
        Rational bound = iq.c / s;
        if (s > Rational(0)) {
            if (!sys.lo || bound > *sys.lo) sys.lo = bound;
        } else {
            if (!sys.hi || bound < *sys.hi) sys.hi = bound;
        }
    }
    if (sys.lo && sys.hi && *sys.lo > *sys.hi) sys.feasible = false;
    return sys;
}

}  // namespace

VertexEnumeration region_vertices(const std::vector<Inequality>& ineqs) {
    VertexEnumeration out;
    bool has_independent_pair = false;
    for (std::size_t i = 0; i < ineqs.size() && !has_independent_pair; ++i)
        for (std::size_t j = i + 1; j < ineqs.size(); ++j)
            if (!normals_parallel(ineqs[i], ineqs[j])) { has_independent_pair = true; break; }

    if (!has_independent_pair) {
        // strip, half-plane, line, or plane: no extreme points or rays
        out.feasible = project_parallel(ineqs).feasible;
        return out;
    }

    // pointed case: every vertex is a feasible pairwise line intersection
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        for (std::size_t j = i + 1; j < ineqs.size(); ++j) {
            const Inequality& x = ineqs[i];
            const Inequality& y = ineqs[j];
            Rational det = x.a * y.b - x.b * y.a;
            if (det == Rational(0)) continue;
            Point p{(x.c * y.b - x.b * y.c) / det, (x.a * y.c - x.c * y.a) / det};
            if (satisfies_all(p, ineqs)) out.vertices.push_back(p);
        }
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    out.feasible = !out.vertices.empty();
    if (!out.feasible) return out;

    // extreme rays of the recession cone: boundary directions of some
    // half-plane that stay inside every other one
    for (const auto& iq : ineqs) {
        for (const Point& d : {Point{iq.b, -iq.a}, Point{-iq.b, iq.a}}) {
            if (d.first == Rational(0) && d.second == Rational(0)) continue;
            bool inside = true;
            for (const auto& other : ineqs)
                if (other.a * d.first + other.b * d.second < Rational(0)) { inside = false; break; }
            if (!inside) continue;
            Rational mag = std::max(d.first < Rational(0) ? -d.first : d.first,
                                    d.second < Rational(0) ? -d.second : d.second);
            out.rays.push_back({d.first / mag, d.second / mag});
        }
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

bool inequality_redundant(const Inequality& ineq, const std::vector<Inequality>& others) {
    VertexEnumeration ve = region_vertices(others);
    if (!ve.feasible) return true;
    if (!ve.vertices.empty()) {
        for (const auto& v : ve.vertices)
            if (ineq.a * v.first + ineq.b * v.second < ineq.c) return false;
        for (const auto& d : ve.rays)
            if (ineq.a * d.first + ineq.b * d.second < Rational(0)) return false;
        return true;
    }
    // parallel-normal region: minimize the inequality along the strip
    IntervalSystem sys = project_parallel(others);
    if (!sys.feasible) return true;
    if (ineq.a == Rational(0) && ineq.b == Rational(0)) return ineq.c <= Rational(0);
    if (sys.dir_a == Rational(0) && sys.dir_b == Rational(0)) return false;
    if (!(ineq.a * sys.dir_b == ineq.b * sys.dir_a)) return false;  // unbounded sideways
    Rational s = sys.dir_a != Rational(0) ? ineq.a / sys.dir_a : ineq.b / sys.dir_b;
    if (s > Rational(0)) return sys.lo && s * *sys.lo >= ineq.c;
    return sys.hi && s * *sys.hi >= ineq.c;
}

RateRegion theorem1_region() {
    RateRegion r;
    r.inequalities = {
        {Rational(0), Rational(1), Rational(3, 4), "t1[1]"},
        {Rational(1), Rational(2), Rational(2), "t1[2]"},
        {Rational(1), Rational(6), Rational(3), "t1[3]"},
        alpha_nonneg(),
        beta_nonneg(),
    };
    VertexEnumeration ve = region_vertices(r.inequalities);
    r.vertices = ve.vertices;
    r.rays = ve.rays;
    for (std::size_t i = 0; i < r.inequalities.size(); ++i) {
        if (r.inequalities[i].label.rfind("t1", 0) != 0) continue;
        std::vector<Inequality> others;
        for (std::size_t j = 0; j < r.inequalities.size(); ++j)
            if (j != i) others.push_back(r.inequalities[j]);
        if (inequality_redundant(r.inequalities[i], others))
            r.redundant.push_back(r.inequalities[i].label);
    }
    return r;
}

std::vector<Inequality> theorem2_inequalities(const std::vector<int>& sizes, int k) {
    if (sizes.empty()) throw std::invalid_argument("group sizes: empty");
    for (int m : sizes)
        if (m < 2) throw std::invalid_argument("group sizes: every group needs >= 2 servers");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    int g = int(sizes.size());
    std::vector<Inequality> out;
    for (int l = 0; l < g; ++l) {
        int rest = 0;
        for (int i = 0; i < g; ++i)
            if (i != l) rest += sizes[std::size_t(i)];
        out.push_back({Rational(rest), Rational(sizes[std::size_t(l)]),
                       Rational(k) * Rational(1 + rest - (g - 1)),
                       "t2[l=" + std::to_string(l + 1) + "]"});
    }
    return out;
}

std::vector<Inequality> corollary1_inequalities(const std::vector<int>& sizes, int k) {
    if (sizes.empty()) throw std::invalid_argument("group sizes: empty");
    for (int m : sizes)
        if (m < 2) throw std::invalid_argument("group sizes: every group needs >= 2 servers");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    int g = int(sizes.size());
    int n = 0;
    for (int m : sizes) n += m;
    std::vector<Inequality> out;
    for (int l = 0; l < g; ++l) {
        int rest = n - sizes[std::size_t(l)];
        out.push_back({Rational(rest), Rational(sizes[std::size_t(l)]),
                       Rational(k) * Rational(1 + rest - (g - 1)),
                       "c1[l=" + std::to_string(l + 1) + "]"});
    }
    return out;
}

std::vector<Inequality> corollary2_inequalities(int d, int g, int k) {
    if (d < 2) throw std::invalid_argument("group degree must be >= 2");
    if (g < 1 || k < 1) throw std::invalid_argument("g and k must be >= 1");
    return {{Rational(d) * Rational(g - 1), Rational(d),
             Rational(k) * Rational(1 + (d - 1) * (g - 1)), "c2"}};
}

CapacityResult theorem4_capacity(const topology::CommMatrix& cm,
                                 const topology::Grouping& gr, int k) {
    CapacityResult res;
    res.collusion = gr.groups;
    int lambda = topology::lambda_max(cm);
    int m = cm.n_links();
    int g = gr.g();
    int span = gr.effective_servers();
    if (m == 0 || span == 0 ||
        Rational(lambda) * Rational(span) != Rational(g) * Rational(m)) {
        res.failed_hypothesis = "lambda/M != g / sum of group sizes";
        return res;
    }
    for (const auto& link : cm.links) {
        if (int(link.size()) != cm.n_servers - g) {
            res.failed_hypothesis =
                "link " + topology::format_server_set(link) + " has size != N - g";
            return res;
        }
    }
    res.conditions_met = true;
    res.capacity = Rational(lambda, m) * c_pir(g, k);
    return res;
}

bool collusion_matches_groups(const std::vector<topology::ServerSet>& pattern,
                              const topology::Grouping& gr) {
    if (pattern.size() != gr.groups.size()) return false;
    std::vector<topology::ServerSet> a, b;
    for (const auto& s : pattern) a.push_back(topology::make_server_set(s));
    b = gr.groups;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

std::string render(const Rational& r, bool as_float) {
    if (!as_float) return r.str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.to_double());
    return buf;
}

}  // namespace

std::string region_csv(const RateRegion& region, bool as_float) {
    std::string out = "kind,a,b,c,label\n";
    for (const auto& iq : region.inequalities)
        out += "ineq," + render(iq.a, as_float) + "," + render(iq.b, as_float) + "," +
               render(iq.c, as_float) + "," + iq.label + "\n";
    out += "kind,alpha,beta\n";
    for (const auto& v : region.vertices)
        out += "vertex," + render(v.first, as_float) + "," + render(v.second, as_float) + "\n";
    for (const auto& d : region.rays)
        out += "ray," + render(d.first, as_float) + "," + render(d.second, as_float) + "\n";
    return out;
}

}  // namespace axpir::analysis
