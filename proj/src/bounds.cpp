#include "cayleycast/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "cayleycast/error.hpp"

namespace cayleycast {

Count moore_f(unsigned degree, unsigned rounds) {
  std::vector<Count> f(rounds + 1);
  f[0] = 1;
  for (unsigned t = 1; t <= rounds; ++t) {
    Count sum = 1;
    for (unsigned i = 1; i <= std::min(degree, t); ++i) sum += f[t - i];
    f[t] = std::move(sum);
  }
  return f[rounds];
}

Count moore_bound(unsigned delta, unsigned t) {
  if (delta < 1 || t < 1) throw Error("moore_bound needs delta >= 1 and t >= 1");
  return 2 * moore_f(delta - 1, t - 1);
}

Count product_lower_bound(const Count& known) {
  if (known < 1) throw Error("product_lower_bound needs a known order of at least 1");
  return 2 * known;
}

BoundTable bound_table(unsigned max_delta, unsigned max_time) {
  if (max_delta < 2 || max_time < 2) throw Error("bound table ranges start at 2");
  BoundTable table;
  table.max_delta = max_delta;
  table.max_time = max_time;
  for (unsigned d = 2; d <= max_delta; ++d) {
    // one recurrence fill per row: f(d-1, 0..max_time-1)
    std::vector<Count> f(max_time);
    f[0] = 1;
    for (unsigned t = 1; t < max_time; ++t) {
      Count sum = 1;
      for (unsigned i = 1; i <= std::min(d - 1, t); ++i) sum += f[t - i];
      f[t] = std::move(sum);
    }
    auto& row = table.values.emplace_back();
    for (unsigned t = 2; t <= max_time; ++t) row.push_back(2 * f[t - 1]);
  }
  return table;
}

std::string render_bound_table(const BoundTable& table, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::tsv) {
    out << "delta";
    for (unsigned t = table.min_time; t <= table.max_time; ++t) out << '\t' << t;
    out << '\n';
    for (unsigned d = table.min_delta; d <= table.max_delta; ++d) {
      out << d;
      for (unsigned t = table.min_time; t <= table.max_time; ++t) out << '\t' << table.at(d, t);
      out << '\n';
    }
    return out.str();
  }

  std::size_t width = 5;
  for (const auto& row : table.values) {
    for (const auto& v : row) width = std::max(width, v.str().size());
  }
  auto pad = [&](const std::string& s) { return std::string(width + 1 - s.size(), ' ') + s; };
  out << pad("d/t");
  for (unsigned t = table.min_time; t <= table.max_time; ++t) out << pad(std::to_string(t));
  out << '\n';
  for (unsigned d = table.min_delta; d <= table.max_delta; ++d) {
    out << pad(std::to_string(d));
    for (unsigned t = table.min_time; t <= table.max_time; ++t) out << pad(table.at(d, t).str());
    out << '\n';
  }
  return out.str();
}

}  // namespace cayleycast
