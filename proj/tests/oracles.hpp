// Reference implementations kept deliberately naive and independent of the
// library internals. Expected values in the test files were frozen from
// these routines.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "axpir/galois.hpp"
#include "axpir/rational.hpp"
#include "axpir/topology.hpp"

namespace oracle {

// Multiplicative inverse by scanning every field element.
inline std::int64_t inverse_scan(std::int64_t q, std::int64_t a) {
  for (std::int64_t x = 1; x < q; ++x) {
    if ((a * x) % q == 1) return x;
  }
  return -1;
}

// Rank recovered from the row-space cardinality: |rowspace| == q^rank.
// Enumerates every linear combination of the rows, so only fit for tiny inputs.
inline int rank_by_span(const axpir::galois::FMatrix& m) {
  const std::int64_t q = m.field().q();
  std::set<std::vector<std::int64_t>> span;
  std::vector<std::int64_t> coeff(static_cast<std::size_t>(m.rows()), 0);
  while (true) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(m.cols()), 0);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        v[static_cast<std::size_t>(c)] =
            (v[static_cast<std::size_t>(c)] + coeff[static_cast<std::size_t>(r)] * m.at(r, c)) % q;
      }
    }
    span.insert(v);
    int pos = 0;
    while (pos < m.rows() && coeff[static_cast<std::size_t>(pos)] == q - 1) {
      coeff[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == m.rows()) break;
    ++coeff[static_cast<std::size_t>(pos)];
  }
  int r = 0;
  std::int64_t size = 1;
  while (size < static_cast<std::int64_t>(span.size())) {
    size *= q;
    ++r;
  }
  return r;
}

// Column-space membership by enumerating every coefficient vector.
inline bool colspace_contains_scan(const axpir::galois::FMatrix& a,
                                   const axpir::galois::FMatrix& b) {
  const std::int64_t q = b.field().q();
  std::set<std::vector<std::int64_t>> reachable;
  std::vector<std::int64_t> coeff(static_cast<std::size_t>(b.cols()), 0);
  while (true) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(b.rows()), 0);
    for (int r = 0; r < b.rows(); ++r) {
      for (int c = 0; c < b.cols(); ++c) {
        v[static_cast<std::size_t>(r)] =
            (v[static_cast<std::size_t>(r)] + coeff[static_cast<std::size_t>(c)] * b.at(r, c)) % q;
      }
    }
    reachable.insert(v);
    int pos = 0;
    while (pos < b.cols() && coeff[static_cast<std::size_t>(pos)] == q - 1) {
      coeff[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == b.cols()) break;
    ++coeff[static_cast<std::size_t>(pos)];
  }
  for (int c = 0; c < a.cols(); ++c) {
    std::vector<std::int64_t> col(static_cast<std::size_t>(a.rows()));
    for (int r = 0; r < a.rows(); ++r) col[static_cast<std::size_t>(r)] = a.at(r, c);
    if (!reachable.count(col)) return false;
  }
  return true;
}

// Best grouping by subset-first recursion: pick the smallest uncovered server,
// try every admissible group containing it, or leave it ungrouped.
inline int best_group_count_scan(const axpir::topology::CommMatrix& cm) {
  const int n = cm.n_servers;
  auto group_allowed = [&](const std::vector<int>& grp) {
    for (const auto& link : cm.links) {
      if (axpir::topology::is_subset(grp, link)) return false;
    }
    return true;
  };
  int best = 0;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;

  std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> rest, int count) {
    best = std::max(best, count);
    if (rest.empty()) return;
    int head = rest.front();
    std::vector<int> tail(rest.begin() + 1, rest.end());
    // head stays ungrouped
    rec(tail, count);
    // head joins a group drawn from the tail
    const std::size_t t = tail.size();
    for (std::uint64_t mask = 1; mask < (1ull << t); ++mask) {
      std::vector<int> grp{head};
      std::vector<int> remain;
      for (std::size_t i = 0; i < t; ++i) {
        if (mask & (1ull << i)) {
          grp.push_back(tail[i]);
        } else {
          remain.push_back(tail[i]);
        }
      }
      std::sort(grp.begin(), grp.end());
      if (grp.size() >= 2 && group_allowed(grp)) rec(remain, count + 1);
    }
  };
  rec(pool, 0);
  return best;
}

// Geometric-sum closed form, independent of the summation in the library:
//   sum_{i=0..k-1} (t/g)^i == (g^k - t^k) / (g^(k-1) (g - t))  for t != g.
inline axpir::Rational tpir_capacity_closed(std::int64_t t, std::int64_t g, std::int64_t k) {
  if (t == g) return axpir::Rational(1, k);
  std::int64_t gk = 1, tk = 1, gk1 = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    gk *= g;
    tk *= t;
  }
  for (std::int64_t i = 0; i + 1 < k; ++i) gk1 *= g;
  return axpir::Rational(gk1 * (g - t), gk - tk);
}

// Pascal-triangle binomial.
inline std::int64_t choose_pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  }
  return row[static_cast<std::size_t>(k)];
}

}  // namespace oracle
