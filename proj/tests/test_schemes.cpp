#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "axpir/analysis.hpp"
#include "axpir/schemes.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axpir;
using namespace axpir::schemes;
using galois::Field;
using galois::FMatrix;
using topology::make_grouping;

namespace {

// index of the unique nonzero entry, or -1
int only_cell(const std::vector<std::int64_t>& v) {
  int idx = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      if (idx != -1) return -1;
      idx = int(i);
    }
  }
  return idx;
}

std::vector<int> cells_of(const std::vector<std::int64_t>& v) {
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back(int(i));
  return out;
}

std::vector<std::vector<std::int64_t>> answer_all(const StorageLayout& lay,
                                                  const QueryPlan& plan,
                                                  const std::vector<std::int64_t>& msgs,
                                                  const std::vector<std::int64_t>& noise,
                                                  const Field& f) {
  std::vector<std::vector<std::int64_t>> ans(std::size_t(lay.n_servers));
  for (int s = 0; s < lay.n_servers; ++s) {
    auto cells = lay.evaluate_cells(s, msgs, noise, f);
    for (const auto& resp : plan.responses[std::size_t(s)]) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < cells.size(); ++c)
        acc = f.add(acc, f.mul(resp[c], cells[c]));
      ans[std::size_t(s)].push_back(acc);
    }
  }
  return ans;
}

}  // namespace

TEST_CASE("reduced layout stores six cells per server in mirrored pairs") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);
  CHECK(lay.n_servers == 4);
  CHECK(lay.k_messages == 2);
  CHECK(lay.l_symbols == 4);
  CHECK(lay.noise_dim == 16);
  CHECK(lay.message_dim() == 8);
  CHECK(lay.coord_dim() == 24);
  CHECK(lay.total_cells() == 24);
  for (int s = 0; s < 4; ++s) CHECK(lay.cells_at(s) == 6);

  // servers 3 and 4 hold exactly the pad parts of servers 1 and 2
  for (int pair = 0; pair < 2; ++pair) {
    int holder = pair;        // server 1 or 2
    int mirror = pair + 2;    // server 3 or 4
    for (int c = 0; c < 6; ++c) {
      for (int coord = 0; coord < lay.message_dim(); ++coord)
        CHECK(lay.cells[std::size_t(mirror)][std::size_t(c)][std::size_t(coord)] == 0);
      for (int coord = lay.message_dim(); coord < lay.coord_dim(); ++coord)
        CHECK(lay.cells[std::size_t(mirror)][std::size_t(c)][std::size_t(coord)] ==
              lay.cells[std::size_t(holder)][std::size_t(c)][std::size_t(coord)]);
    }
  }

  // message coefficients per reference table (a_j at j-1, b_j at 4+j-1)
  auto msg_cells = [&](int server, int cell) {
    std::vector<int> out;
    for (int coord = 0; coord < 8; ++coord)
      if (lay.cells[std::size_t(server)][std::size_t(cell)][std::size_t(coord)] != 0)
        out.push_back(coord);
    return out;
  };
  CHECK(msg_cells(0, 0) == std::vector<int>{0});        // a1
  CHECK(msg_cells(0, 1) == std::vector<int>{2});        // a3
  CHECK(msg_cells(0, 2) == std::vector<int>{4});        // b1
  CHECK(msg_cells(0, 3) == std::vector<int>{6});        // b3
  CHECK(msg_cells(0, 4) == std::vector<int>{1, 5});     // a2 + b2
  CHECK(msg_cells(0, 5) == std::vector<int>{3, 7});     // a4 + b4
  CHECK(msg_cells(1, 0) == std::vector<int>{1});        // a2
  CHECK(msg_cells(1, 1) == std::vector<int>{3});        // a4
  CHECK(msg_cells(1, 2) == std::vector<int>{5});        // b2
  CHECK(msg_cells(1, 3) == std::vector<int>{7});        // b4
  CHECK(msg_cells(1, 4) == std::vector<int>{0, 6});     // a1 + b3
  CHECK(msg_cells(1, 5) == std::vector<int>{2, 4});     // a3 + b1
}

TEST_CASE("reduced layout evaluates cells over the field") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);
  // W1 = (1,0,1,1), W2 = (0,1,1,0), zero pads
  std::vector<std::int64_t> msgs = {1, 0, 1, 1, 0, 1, 1, 0};
  std::vector<std::int64_t> zero(16, 0);
  CHECK(lay.evaluate_cells(0, msgs, zero, f) ==
        std::vector<std::int64_t>{1, 1, 0, 1, 1, 1});
  CHECK(lay.evaluate_cells(1, msgs, zero, f) ==
        std::vector<std::int64_t>{0, 1, 1, 0, 0, 1});
  CHECK(lay.evaluate_cells(2, msgs, zero, f) == std::vector<std::int64_t>(6, 0));
  CHECK(lay.evaluate_cells(3, msgs, zero, f) == std::vector<std::int64_t>(6, 0));

  // pads shift every touched cell
  std::vector<std::int64_t> noise(16, 0);
  noise[0] = 1;  // pad on a1's cell at servers 1 and 3
  auto s0 = lay.evaluate_cells(0, msgs, noise, f);
  auto s2 = lay.evaluate_cells(2, msgs, noise, f);
  CHECK(s0[0] == 0);
  CHECK(s2[0] == 1);
  CHECK(f.sub(s0[0], s2[0]) == 1);  // difference recovers a1
}

TEST_CASE("reduced query plan matches the retrieval tables") {
  QueryPlan p11 = plan_reduced_n4k2(1, 1);
  CHECK(p11.n_servers == 4);
  CHECK(p11.theta == 0);
  CHECK(p11.total_downloads() == 12);
  REQUIRE(p11.groups.size() == 2);
  CHECK(p11.groups[0].members == std::vector<int>{0, 2});
  CHECK(p11.groups[1].members == std::vector<int>{1, 3});
  for (int s = 0; s < 4; ++s) REQUIRE(p11.queries_at(s) == 3);

  auto cell_list = [](const QueryPlan& p, int server) {
    std::vector<int> out;
    for (const auto& resp : p.responses[std::size_t(server)]) {
      int c = only_cell(resp);
      REQUIRE(c >= 0);
      out.push_back(c);
    }
    return out;
  };
  CHECK(cell_list(p11, 0) == std::vector<int>{0, 2, 4});
  CHECK(cell_list(p11, 1) == std::vector<int>{1, 2, 5});
  CHECK(cell_list(p11, 2) == std::vector<int>{0, 2, 4});
  CHECK(cell_list(p11, 3) == std::vector<int>{1, 2, 5});

  QueryPlan p21 = plan_reduced_n4k2(2, 1);
  CHECK(cell_list(p21, 0) == std::vector<int>{0, 2, 4});
  CHECK(cell_list(p21, 1) == std::vector<int>{0, 3, 4});

  QueryPlan p12 = plan_reduced_n4k2(1, 2);
  CHECK(cell_list(p12, 0) == std::vector<int>{1, 3, 5});
  CHECK(cell_list(p12, 1) == std::vector<int>{0, 3, 4});

  QueryPlan p22 = plan_reduced_n4k2(2, 2);
  CHECK(cell_list(p22, 0) == std::vector<int>{1, 3, 5});
  CHECK(cell_list(p22, 1) == std::vector<int>{1, 2, 5});

  // group members always receive identical query lists
  for (const QueryPlan* p : {&p11, &p21, &p12, &p22}) {
    CHECK(p->responses[0] == p->responses[2]);
    CHECK(p->responses[1] == p->responses[3]);
  }

  CHECK_THROWS_AS(plan_reduced_n4k2(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(plan_reduced_n4k2(1, 0), std::invalid_argument);
}

TEST_CASE("reduced scheme decodes the reference example") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);
  std::vector<std::int64_t> msgs = {1, 0, 1, 1, 0, 1, 1, 0};
  std::vector<std::int64_t> zero(16, 0);

  QueryPlan plan = plan_reduced_n4k2(1, 1);
  auto ans = answer_all(lay, plan, msgs, zero, f);
  CHECK(ans[0] == std::vector<std::int64_t>{1, 0, 1});
  CHECK(ans[1] == std::vector<std::int64_t>{1, 1, 1});
  auto got = decode_reduced_n4k2(1, 1, ans, f);
  CHECK(got == std::vector<std::int64_t>{1, 0, 1, 1});
  CHECK(decode_with_plan(plan, ans, f) == got);
}

TEST_CASE("reduced scheme is correct for every theta, coin, and pad pattern") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);
  std::uint64_t state = 99;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> msgs(8), noise(16);
    for (auto& v : msgs) v = std::int64_t(next() % 2);
    for (auto& v : noise) v = std::int64_t(next() % 2);
    for (int theta = 1; theta <= 2; ++theta) {
      for (int coin = 1; coin <= 2; ++coin) {
        QueryPlan plan = plan_reduced_n4k2(theta, coin);
        auto ans = answer_all(lay, plan, msgs, noise, f);
        auto got = decode_reduced_n4k2(theta, coin, ans, f);
        std::vector<std::int64_t> want(msgs.begin() + (theta - 1) * 4,
                                       msgs.begin() + theta * 4);
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("grouped layout shares pads additively inside each group") {
  Field f(2);
  auto gr = make_grouping(4, {{0, 2}, {1, 3}});
  StorageLayout lay = encode_grouped(gr, 2, f);
  CHECK(lay.n_servers == 4);
  CHECK(lay.l_symbols == 4);
  CHECK(lay.noise_dim == 16);
  for (int s = 0; s < 4; ++s) CHECK(lay.cells_at(s) == 8);
  CHECK(lay.total_cells() == 32);

  // designated member holds w + pad, the other member the matching pad
  for (int cell = 0; cell < 8; ++cell) {
    const auto& designated = lay.cells[0][std::size_t(cell)];
    const auto& mirror = lay.cells[2][std::size_t(cell)];
    CHECK(designated[std::size_t(cell)] == 1);  // message coord k*L+j == cell
    for (int coord = 0; coord < 8; ++coord)
      CHECK(mirror[std::size_t(coord)] == 0);
    for (int coord = 8; coord < lay.coord_dim(); ++coord)
      CHECK(designated[std::size_t(coord)] == mirror[std::size_t(coord)]);
  }
}

TEST_CASE("grouped layout pad dimensions follow group sizes") {
  Field f(2);
  auto gr3 = make_grouping(3, {{0, 1, 2}});
  // g = 1, K = 2 means L = 1: two cells per server, 2 pads per share-holder
  StorageLayout lay3 = encode_grouped(gr3, 2, f);
  CHECK(lay3.l_symbols == 1);
  CHECK(lay3.noise_dim == 4);
  CHECK(lay3.cells_at(0) == 2);
  // designated cell = w + share1 + share2
  const auto& cell0 = lay3.cells[0][0];
  int pad_terms = 0;
  for (int coord = lay3.message_dim(); coord < lay3.coord_dim(); ++coord)
    pad_terms += int(cell0[std::size_t(coord)] != 0);
  CHECK(pad_terms == 2);
}

TEST_CASE("permutation seeds cover the full space and decode to permutations") {
  CHECK(perm_space_size(2, 4) == 576);
  CHECK(perm_space_size(1, 3) == 6);
  CHECK(perm_space_size(2, 13) == 0);  // (13!)^2 overflows
  CHECK(perm_space_size(1, 21) == 0);

  auto id = perms_from_seed(0, 2, 4);
  REQUIRE(id.size() == 2);
  CHECK(id[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(id[1] == std::vector<int>{0, 1, 2, 3});

  auto one = perms_from_seed(1, 2, 4);
  CHECK(one[0] == std::vector<int>{0, 1, 3, 2});
  CHECK(one[1] == std::vector<int>{0, 1, 2, 3});

  auto last = perms_from_seed(575, 2, 4);
  CHECK(last[0] == std::vector<int>{3, 2, 1, 0});
  CHECK(last[1] == std::vector<int>{3, 2, 1, 0});

  // every seed yields valid permutations, all distinct as tuples
  std::set<std::vector<std::vector<int>>> seen;
  for (std::uint64_t s = 0; s < 576; ++s) {
    auto p = perms_from_seed(s, 2, 4);
    for (const auto& perm : p) {
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == std::vector<int>{0, 1, 2, 3});
    }
    seen.insert(p);
  }
  CHECK(seen.size() == 576);
}

TEST_CASE("grouped query plan has the iterated structure") {
  auto gr = make_grouping(4, {{0, 2}, {1, 3}});
  QueryPlan plan = plan_grouped(gr, 2, 1, 0);
  CHECK(plan.theta == 0);
  CHECK(plan.l_symbols == 4);
  CHECK(plan.total_downloads() == 12);
  REQUIRE(plan.groups.size() == 2);
  CHECK(plan.groups[0].members == std::vector<int>{0, 2});
  for (int s = 0; s < 4; ++s) CHECK(plan.queries_at(s) == 3);

  // identity permutations: the virtual queries match the worked example
  CHECK(cells_of(plan.responses[0][0]) == std::vector<int>{0});     // w1(1)
  CHECK(cells_of(plan.responses[0][1]) == std::vector<int>{4});     // w2(1)
  CHECK(cells_of(plan.responses[0][2]) == std::vector<int>{2, 5});  // w1(3)+w2(2)
  CHECK(cells_of(plan.responses[1][0]) == std::vector<int>{1});     // w1(2)
  CHECK(cells_of(plan.responses[1][1]) == std::vector<int>{5});     // w2(2)
  CHECK(cells_of(plan.responses[1][2]) == std::vector<int>{3, 4});  // w1(4)+w2(1)

  // group members mirror each other's queries
  CHECK(plan.responses[0] == plan.responses[2]);
  CHECK(plan.responses[1] == plan.responses[3]);

  REQUIRE(plan.recipe.size() == 4);
  REQUIRE(plan.recipe[0].size() == 1);
  CHECK(plan.recipe[0][0].group == 0);
  CHECK(plan.recipe[0][0].query == 0);
  CHECK(plan.recipe[0][0].coeff == 1);
  REQUIRE(plan.recipe[2].size() == 2);

  // six servers, three groups: nine symbols, four answers per server
  auto gr6 = make_grouping(6, {{0, 3}, {1, 4}, {2, 5}});
  QueryPlan plan6 = plan_grouped(gr6, 2, 1, 0);
  CHECK(plan6.l_symbols == 9);
  CHECK(plan6.total_downloads() == 24);
  for (int s = 0; s < 6; ++s) CHECK(plan6.queries_at(s) == 4);

  CHECK_THROWS_AS(plan_grouped(gr, 2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(plan_grouped(make_grouping(3, {}), 2, 1, 0), std::invalid_argument);
}

TEST_CASE("grouped scheme decodes a worked assignment") {
  Field f(2);
  auto gr = make_grouping(4, {{0, 2}, {1, 3}});
  StorageLayout lay = encode_grouped(gr, 2, f);
  std::vector<std::int64_t> msgs = {1, 0, 1, 1, 0, 1, 1, 0};
  std::vector<std::int64_t> noise = {1, 0, 1, 1, 0, 0, 1, 0,
                                     1, 1, 0, 1, 0, 1, 0, 0};
  QueryPlan plan = plan_grouped(gr, 2, 1, 0);
  auto ans = answer_all(lay, plan, msgs, noise, f);
  CHECK(ans[0] == std::vector<std::int64_t>{0, 0, 1});
  CHECK(ans[2] == std::vector<std::int64_t>{1, 0, 1});
  CHECK(ans[1] == std::vector<std::int64_t>{1, 0, 0});
  CHECK(ans[3] == std::vector<std::int64_t>{1, 1, 1});
  auto got = decode_grouped(gr, 2, 1, 0, ans, f);
  CHECK(got == std::vector<std::int64_t>{1, 0, 1, 1});
}

TEST_CASE("grouped scheme is correct across fields, thetas, permutations") {
  std::uint64_t state = 1234;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (std::int64_t q : {2, 5}) {
    Field f(q);
    auto gr = make_grouping(4, {{0, 2}, {1, 3}});
    StorageLayout lay = encode_grouped(gr, 2, f);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::int64_t> msgs(8), noise(16);
      for (auto& v : msgs) v = std::int64_t(next() % std::uint64_t(q));
      for (auto& v : noise) v = std::int64_t(next() % std::uint64_t(q));
      int theta = 1 + int(next() % 2);
      std::uint64_t seed = next() % 576;
      QueryPlan plan = plan_grouped(gr, 2, theta, seed);
      auto ans = answer_all(lay, plan, msgs, noise, f);
      auto got = decode_grouped(gr, 2, theta, seed, ans, f);
      std::vector<std::int64_t> want(msgs.begin() + (theta - 1) * 4,
                                     msgs.begin() + theta * 4);
      CAPTURE(q);
      CAPTURE(theta);
      CAPTURE(seed);
      CHECK(got == want);
    }
  }
}

TEST_CASE("grouped scheme handles uneven groups and three rounds") {
  Field f(3);
  std::uint64_t state = 777;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  struct Config {
    int n;
    std::vector<topology::ServerSet> groups;
    int k;
  };
  std::vector<Config> configs = {
      {5, {{0, 2}, {1, 3, 4}}, 2},      // uneven sizes
      {4, {{0, 2}, {1, 3}}, 3},         // K = 3, L = 8
      {6, {{0, 3}, {1, 4}, {2, 5}}, 3}, // g = 3, K = 3, L = 27
      {3, {{0, 1, 2}}, 2},              // single group
      {5, {{0, 2}, {1, 3}}, 2},         // ungrouped server sits idle
  };
  for (const auto& cfg : configs) {
    auto gr = make_grouping(cfg.n, cfg.groups);
    StorageLayout lay = encode_grouped(gr, cfg.k, f);
    int l = lay.l_symbols;
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<std::int64_t> msgs(std::size_t(cfg.k) * l), noise(std::size_t(lay.noise_dim));
      for (auto& v : msgs) v = std::int64_t(next() % 3);
      for (auto& v : noise) v = std::int64_t(next() % 3);
      int theta = 1 + int(next() % std::uint64_t(cfg.k));
      std::uint64_t seed = next();
      QueryPlan plan = plan_grouped(gr, cfg.k, theta, seed);
      auto ans = answer_all(lay, plan, msgs, noise, f);
      auto got = decode_grouped(gr, cfg.k, theta, seed, ans, f);
      std::vector<std::int64_t> want(msgs.begin() + (theta - 1) * l,
                                     msgs.begin() + theta * l);
      CAPTURE(cfg.n);
      CAPTURE(cfg.k);
      CHECK(got == want);
    }
  }
}

TEST_CASE("counted downloads match the rate formula for g <= 3, K <= 3") {
  struct Case {
    int n;
    std::vector<topology::ServerSet> groups;
  };
  std::vector<Case> cases = {
      {4, {{0, 2}, {1, 3}}},
      {5, {{0, 2}, {1, 3, 4}}},
      {6, {{0, 3}, {1, 4}, {2, 5}}},
      {7, {{0, 3}, {1, 4}, {2, 5, 6}}},
      {2, {{0, 1}}},
  };
  for (const auto& c : cases) {
    auto gr = make_grouping(c.n, c.groups);
    for (int k = 1; k <= 3; ++k) {
      QueryPlan plan = plan_grouped(gr, k, 1, 0);
      Rational counted(plan.l_symbols, plan.total_downloads());
      CHECK(counted == analysis::achievable_rate(gr, 1, k));
    }
  }
}

TEST_CASE("storage profiles report exact per-server overhead") {
  Field f(2);
  auto gr = make_grouping(4, {{0, 2}, {1, 3}});

  StorageLayout reduced = encode_reduced_n4k2(f);
  StorageProfile sp = storage_profile(reduced, &gr);
  REQUIRE(sp.per_server.size() == 4);
  for (const auto& a : sp.per_server) CHECK(a == Rational(3, 4));
  REQUIRE(sp.per_group.size() == 2);
  CHECK(sp.per_group[0] == Rational(3, 2));
  CHECK(sp.average == Rational(3, 4));

  StorageLayout grouped = encode_grouped(gr, 2, f);
  StorageProfile gp = storage_profile(grouped, &gr);
  for (const auto& a : gp.per_server) CHECK(a == Rational(1));
  CHECK(gp.average == Rational(1));
  StorageProfile no_groups = storage_profile(grouped);
  CHECK(no_groups.per_group.empty());
  CHECK(no_groups.average == Rational(1));
}

TEST_CASE("coalition matrices expose the secrecy criterion") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);

  // communicating pair {1,2}: pads span everything they see
  auto link = lay.coalition_noise_block({0, 1}, f);
  auto link_full = lay.coalition_matrix({0, 1}, f);
  CHECK(galois::rank(link) == 12);
  CHECK(galois::rank(link_full) == 12);
  CHECK(galois::column_space_contains(lay.coalition_message_block({0, 1}, f), link));

  // grouped pair {1,3}: subtracting mirrored cells strips the pads
  auto grp_noise = lay.coalition_noise_block({0, 2}, f);
  auto grp_msg = lay.coalition_message_block({0, 2}, f);
  CHECK(galois::rank(grp_noise) == 6);
  CHECK_FALSE(galois::column_space_contains(grp_msg, grp_noise));
  CHECK(oracle::colspace_contains_scan(lay.coalition_message_block({0, 1}, f), link));

  auto one = lay.server_matrix(3, f);
  CHECK(one.rows() == 6);
  CHECK(one.cols() == 24);
}

TEST_CASE("layout and plan serialize to json") {
  Field f(2);
  StorageLayout lay = encode_reduced_n4k2(f);
  std::string js = lay.to_json();
  CHECK(js.find("\"n_servers\"") != std::string::npos);
  CHECK(js.find("\"cells\"") != std::string::npos);
  QueryPlan plan = plan_reduced_n4k2(1, 1);
  std::string pj = plan.to_json();
  CHECK(pj.find("\"theta\"") != std::string::npos);
  CHECK(pj.find("\"responses\"") != std::string::npos);
}
