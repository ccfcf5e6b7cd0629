#pragma once

// Independent reference implementations used only by the tests. None of them
// calls into the library's group laws or search code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "cayleycast/cayley.hpp"

namespace oracle {

// D_n acting on Z_n: w^a x^i sends k to (-1)^a k + i. Composition is "apply
// the left factor first", matching the right-multiplication convention.
struct DihedralPerm {
  std::vector<std::uint64_t> image;

  static DihedralPerm of(std::uint64_t n, std::uint64_t a, std::uint64_t i) {
    DihedralPerm p;
    for (std::uint64_t k = 0; k < n; ++k) {
      const std::uint64_t flipped = a ? (n - k) % n : k;
      p.image.push_back((flipped + i) % n);
    }
    return p;
  }

  DihedralPerm then(const DihedralPerm& q) const {
    DihedralPerm r;
    for (auto k : image) r.image.push_back(q.image[k]);
    return r;
  }

  friend bool operator==(const DihedralPerm&, const DihedralPerm&) = default;
};

// Z_m x| Z_n as pairs (a mod m, M) where M = [[g^a, 0], [x, 1]] acts on row
// vectors (y, 1) from the right. Multiplication is plain matrix product.
struct SemidirectMat {
  std::uint64_t m = 1, n = 1;
  std::uint64_t a = 0;
  std::array<std::array<std::uint64_t, 2>, 2> mat{};

  static SemidirectMat of(std::uint64_t m, std::uint64_t n, std::uint64_t g, std::uint64_t a,
                          std::uint64_t x) {
    std::uint64_t p = 1 % n;
    for (std::uint64_t k = 0; k < a; ++k) p = p * g % n;
    SemidirectMat s;
    s.m = m;
    s.n = n;
    s.a = a;
    s.mat = {{{p, 0}, {x % n, 1 % n}}};
    return s;
  }

  SemidirectMat times(const SemidirectMat& o) const {
    SemidirectMat r = *this;
    r.a = (a + o.a) % m;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        std::uint64_t v = 0;
        for (int k = 0; k < 2; ++k) v = (v + mat[i][k] * o.mat[k][j]) % n;
        r.mat[i][j] = v;
      }
    }
    return r;
  }

  /// (a, x) read back from the matrix.
  std::pair<std::uint64_t, std::uint64_t> pair() const { return {a, mat[1][0]}; }
};

// f(d, t) by direct simulation of a call tree: each informed node may make at
// most d calls, one per round, each informing a fresh node.
inline std::uint64_t tree_count(unsigned d, unsigned t) {
  std::vector<unsigned> calls_left{d};
  for (unsigned r = 0; r < t; ++r) {
    const std::size_t before = calls_left.size();
    for (std::size_t v = 0; v < before; ++v) {
      if (calls_left[v] == 0) continue;
      --calls_left[v];
      calls_left.push_back(d);
    }
  }
  return calls_left.size();
}

// Minimum broadcast time from `origin` by breadth-first search over informed
// sets. Every round enumerates every set of calls (each informed vertex either
// idles or calls a distinct uninformed neighbor). No pruning of any kind.
inline unsigned exhaustive_broadcast_time(const cayleycast::Graph& g, cayleycast::Vertex origin) {
  const std::size_t n = g.vertex_count();
  const std::uint32_t full = (n >= 32) ? ~0U : ((1U << n) - 1);
  std::set<std::uint32_t> level{1U << origin};
  for (unsigned round = 0;; ++round) {
    if (level.count(full)) return round;
    std::set<std::uint32_t> next;
    for (std::uint32_t informed : level) {
      std::vector<cayleycast::Vertex> callers;
      for (cayleycast::Vertex v = 0; v < n; ++v) {
        if (informed >> v & 1U) callers.push_back(v);
      }
      std::function<void(std::size_t, std::uint32_t)> assign = [&](std::size_t i,
                                                                   std::uint32_t reached) {
        if (i == callers.size()) {
          next.insert(reached);
          return;
        }
        assign(i + 1, reached);
        for (cayleycast::Vertex u : g.neighbors(callers[i])) {
          if (reached >> u & 1U) continue;
          assign(i + 1, reached | (1U << u));
        }
      };
      assign(0, informed);
    }
    level = std::move(next);
    if (round > n) return ~0U;
  }
}

}  // namespace oracle
