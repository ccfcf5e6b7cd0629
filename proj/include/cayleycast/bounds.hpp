#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace cayleycast {

using Count = boost::multiprecision::cpp_int;

/// f(d, 0) = 1;  f(d, t) = 1 + sum_{i=1}^{min(d,t)} f(d, t - i).
/// Counts the vertices a single originator can reach in t rounds when every
/// vertex, after being informed, may call at most d further neighbors.
Count moore_f(unsigned degree, unsigned rounds);

/// M(delta, t) = 2 f(delta - 1, t - 1), an upper bound on the order of any
/// graph with maximum degree delta and broadcast time at most t.
Count moore_bound(unsigned delta, unsigned t);

/// Doubling from the Cartesian product with K2: a (delta, t) network of order
/// b yields a (delta + 1, t + 1) network of order 2b.
Count product_lower_bound(const Count& known);

struct BoundTable {
  unsigned min_delta = 2;
  unsigned max_delta = 2;
  unsigned min_time = 2;
  unsigned max_time = 2;
  std::vector<std::vector<Count>> values;  ///< values[delta - min_delta][t - min_time]

  const Count& at(unsigned delta, unsigned t) const {
    return values.at(delta - min_delta).at(t - min_time);
  }
};

/// M(delta, t) for delta in 2..max_delta and t in 2..max_time.
BoundTable bound_table(unsigned max_delta, unsigned max_time);

enum class TableFormat { tsv, pretty };

std::string render_bound_table(const BoundTable& table, TableFormat format);

}  // namespace cayleycast
