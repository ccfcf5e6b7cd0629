#include "cayleycast/group.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>

#include "cayleycast/error.hpp"
#include "text_cursor.hpp"

namespace cayleycast {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw InvalidGroup(std::string(what) + " must be at least 1");
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::uint64_t n) {
  require_positive(n, "cyclic order");
  GroupSpec g;
  g.kind_ = Kind::cyclic;
  g.params_[0] = n;
  return g;
}

GroupSpec GroupSpec::dihedral(std::uint64_t n) {
  require_positive(n, "dihedral rotation order");
  GroupSpec g;
  g.kind_ = Kind::dihedral;
  g.params_[0] = n;
  return g;
}

GroupSpec GroupSpec::z2pow(std::uint64_t r) {
  require_positive(r, "z2pow rank");
  if (r > 63) throw GroupTooLarge("z2pow rank " + std::to_string(r) + " exceeds 63");
  GroupSpec g;
  g.kind_ = Kind::z2pow;
  g.params_[0] = r;
  return g;
}

GroupSpec GroupSpec::product(GroupSpec left, GroupSpec right) {
  GroupSpec g;
  g.kind_ = Kind::product;
  g.params_[0] = 0;
  g.left_ = std::make_shared<const GroupSpec>(std::move(left));
  g.right_ = std::make_shared<const GroupSpec>(std::move(right));
  return g;
}

GroupSpec GroupSpec::semidirect(std::uint64_t m, std::uint64_t n, std::uint64_t g) {
  require_positive(m, "semidirect acting order");
  require_positive(n, "semidirect normal order");
  if (std::gcd(g, n) != 1) {
    throw InvalidGroup("semidirect(" + std::to_string(m) + "," + std::to_string(n) + "," +
                       std::to_string(g) + "): gcd(g, n) != 1");
  }
  if (pow_mod(g, m, n) != 1 % n) {
    throw InvalidGroup("semidirect(" + std::to_string(m) + "," + std::to_string(n) + "," +
                       std::to_string(g) + "): g^m is not 1 mod n");
  }
  GroupSpec s;
  s.kind_ = Kind::semidirect;
  s.params_[0] = m;
  s.params_[1] = n;
  s.params_[2] = g % n;
  return s;
}

const GroupSpec& GroupSpec::left() const {
  if (kind_ != Kind::product) throw Error("left() on a non-product group");
  return *left_;
}

const GroupSpec& GroupSpec::right() const {
  if (kind_ != Kind::product) throw Error("right() on a non-product group");
  return *right_;
}

std::size_t GroupSpec::arity() const noexcept {
  switch (kind_) {
    case Kind::cyclic:
    case Kind::z2pow:
      return 1;
    case Kind::dihedral:
    case Kind::semidirect:
      return 2;
    case Kind::product:
      return left_->arity() + right_->arity();
  }
  return 0;
}

std::vector<std::uint64_t> GroupSpec::radices() const {
  switch (kind_) {
    case Kind::cyclic:
      return {params_[0]};
    case Kind::dihedral:
      return {2, params_[0]};
    case Kind::z2pow:
      return {std::uint64_t{1} << params_[0]};
    case Kind::semidirect:
      return {params_[0], params_[1]};
    case Kind::product: {
      auto out = left_->radices();
      auto rhs = right_->radices();
      out.insert(out.end(), rhs.begin(), rhs.end());
      return out;
    }
  }
  return {};
}

std::uint64_t GroupSpec::order() const noexcept {
  switch (kind_) {
    case Kind::cyclic:
      return params_[0];
    case Kind::dihedral:
      return mul_sat(2, params_[0]);
    case Kind::z2pow:
      return std::uint64_t{1} << params_[0];
    case Kind::semidirect:
      return mul_sat(params_[0], params_[1]);
    case Kind::product:
      return mul_sat(left_->order(), right_->order());
  }
  return 0;
}

std::string GroupSpec::to_string() const {
  switch (kind_) {
    case Kind::cyclic:
      return "cyclic(" + std::to_string(params_[0]) + ")";
    case Kind::dihedral:
      return "dihedral(" + std::to_string(params_[0]) + ")";
    case Kind::z2pow:
      return "z2pow(" + std::to_string(params_[0]) + ")";
    case Kind::semidirect:
      return "semidirect(" + std::to_string(params_[0]) + "," + std::to_string(params_[1]) +
             "," + std::to_string(params_[2]) + ")";
    case Kind::product:
      return "product(" + left_->to_string() + "," + right_->to_string() + ")";
  }
  return {};
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == GroupSpec::Kind::product) {
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
  }
  return a.params_ == b.params_;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

GroupSpec parse_spec(detail::TextCursor& cur) {
  const std::size_t at = cur.position();
  const std::string word = cur.identifier();
  cur.expect('(');
  if (word == "product") {
    GroupSpec left = parse_spec(cur);
    cur.expect(',');
    GroupSpec right = parse_spec(cur);
    cur.expect(')');
    return GroupSpec::product(std::move(left), std::move(right));
  }
  if (word == "semidirect") {
    const std::uint64_t m = cur.unsigned_integer();
    cur.expect(',');
    const std::uint64_t n = cur.unsigned_integer();
    cur.expect(',');
    const std::uint64_t g = cur.unsigned_integer();
    cur.expect(')');
    return GroupSpec::semidirect(m, n, g);
  }
  const std::uint64_t v = cur.unsigned_integer();
  cur.expect(')');
  if (word == "cyclic") return GroupSpec::cyclic(v);
  if (word == "dihedral") return GroupSpec::dihedral(v);
  if (word == "z2pow") return GroupSpec::z2pow(v);
  throw ParseError("unknown group kind '" + word + "'", at);
}

void parse_element_into(const GroupSpec& group, detail::TextCursor& cur,
                        std::vector<std::uint64_t>& out) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      out.push_back(cur.unsigned_integer());
      return;
    case GroupSpec::Kind::z2pow: {
      const std::size_t at = cur.position();
      const std::string bits = cur.bit_string();
      if (bits.size() != group.param(0)) {
        throw NotAMember("bit string of length " + std::to_string(bits.size()) +
                         " is not an element of " + group.to_string() + " (position " +
                         std::to_string(at) + ")");
      }
      std::uint64_t mask = 0;
      for (char c : bits) mask = (mask << 1U) | static_cast<std::uint64_t>(c == '1');
      out.push_back(mask);
      return;
    }
    case GroupSpec::Kind::dihedral:
    case GroupSpec::Kind::semidirect:
      cur.expect('(');
      out.push_back(cur.unsigned_integer());
      cur.expect(',');
      out.push_back(cur.unsigned_integer());
      cur.expect(')');
      return;
    case GroupSpec::Kind::product:
      cur.expect('(');
      parse_element_into(group.left(), cur, out);
      cur.expect(',');
      parse_element_into(group.right(), cur, out);
      cur.expect(')');
      return;
  }
}

void format_into(const GroupSpec& group, std::span<const std::uint64_t> c, std::string& out) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      out += std::to_string(c[0]);
      return;
    case GroupSpec::Kind::z2pow: {
      const auto r = group.param(0);
      for (std::uint64_t i = 0; i < r; ++i) out += ((c[0] >> (r - 1 - i)) & 1U) ? '1' : '0';
      return;
    }
    case GroupSpec::Kind::dihedral:
    case GroupSpec::Kind::semidirect:
      out += "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ")";
      return;
    case GroupSpec::Kind::product: {
      const std::size_t split = group.left().arity();
      out += '(';
      format_into(group.left(), c.subspan(0, split), out);
      out += ',';
      format_into(group.right(), c.subspan(split), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  detail::TextCursor cur(text);
  GroupSpec g = parse_spec(cur);
  cur.expect_end();
  return g;
}

Element parse_element(const GroupSpec& group, std::string_view text) {
  detail::TextCursor cur(text);
  Element e;
  parse_element_into(group, cur, e.coords);
  cur.expect_end();
  require_member(group, e);
  return e;
}

GeneratorSet parse_generators(const GroupSpec& group, std::string_view text) {
  detail::TextCursor cur(text);
  GeneratorSet out;
  if (cur.at_end()) return out;
  while (true) {
    Element e;
    parse_element_into(group, cur, e.coords);
    require_member(group, e);
    out.push_back(std::move(e));
    if (cur.at_end()) break;
    cur.expect(',');
  }
  return out;
}

std::string format_element(const GroupSpec& group, const Element& e) {
  require_member(group, e);
  std::string out;
  format_into(group, e.coords, out);
  return out;
}

std::string format_generators(const GroupSpec& group, const GeneratorSet& gens) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ',';
    out += format_element(group, gens[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group laws

bool contains(const GroupSpec& group, const Element& e) noexcept {
  const auto radix = group.radices();
  if (e.coords.size() != radix.size()) return false;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    if (e.coords[i] >= radix[i]) return false;
  }
  return true;
}

void require_member(const GroupSpec& group, const Element& e) {
  if (!contains(group, e)) {
    std::string coords;
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
      coords += (i ? "," : "") + std::to_string(e.coords[i]);
    }
    throw NotAMember("element [" + coords + "] is not in " + group.to_string());
  }
}

Element identity(const GroupSpec& group) {
  return Element{std::vector<std::uint64_t>(group.arity(), 0)};
}

void multiply_into(const GroupSpec& group, std::span<const std::uint64_t> a,
                   std::span<const std::uint64_t> b, std::span<std::uint64_t> out) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      out[0] = (a[0] + b[0]) % group.param(0);
      return;
    case GroupSpec::Kind::z2pow:
      out[0] = a[0] ^ b[0];
      return;
    case GroupSpec::Kind::dihedral: {
      // w^a1 x^i * w^a2 x^j = w^(a1+a2) x^((-1)^a2 i + j)
      const std::uint64_t n = group.param(0);
      const std::uint64_t i = b[0] ? (n - a[1]) % n : a[1];
      out[0] = a[0] ^ b[0];
      out[1] = (i + b[1]) % n;
      return;
    }
    case GroupSpec::Kind::semidirect: {
      // (a1,x1)(a2,x2) = (a1+a2, g^a2 x1 + x2)
      const std::uint64_t m = group.param(0);
      const std::uint64_t n = group.param(1);
      const auto twisted =
          static_cast<unsigned __int128>(pow_mod(group.param(2), b[0], n)) * a[1] % n;
      const std::uint64_t x = static_cast<std::uint64_t>((twisted + b[1]) % n);
      out[0] = (a[0] + b[0]) % m;
      out[1] = x;
      return;
    }
    case GroupSpec::Kind::product: {
      const std::size_t split = group.left().arity();
      multiply_into(group.left(), a.subspan(0, split), b.subspan(0, split), out.subspan(0, split));
      multiply_into(group.right(), a.subspan(split), b.subspan(split), out.subspan(split));
      return;
    }
  }
}

void inverse_into(const GroupSpec& group, std::span<const std::uint64_t> a,
                  std::span<std::uint64_t> out) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      out[0] = (group.param(0) - a[0]) % group.param(0);
      return;
    case GroupSpec::Kind::z2pow:
      out[0] = a[0];
      return;
    case GroupSpec::Kind::dihedral: {
      const std::uint64_t n = group.param(0);
      out[0] = a[0];
      out[1] = a[0] ? a[1] : (n - a[1]) % n;
      return;
    }
    case GroupSpec::Kind::semidirect: {
      // (a,x)^-1 = (-a, -g^(-a) x)
      const std::uint64_t m = group.param(0);
      const std::uint64_t n = group.param(1);
      const std::uint64_t inv_a = (m - a[0]) % m;
      const auto twisted =
          static_cast<unsigned __int128>(pow_mod(group.param(2), inv_a, n)) * a[1] % n;
      out[0] = inv_a;
      out[1] = static_cast<std::uint64_t>((n - twisted) % n);
      return;
    }
    case GroupSpec::Kind::product: {
      const std::size_t split = group.left().arity();
      inverse_into(group.left(), a.subspan(0, split), out.subspan(0, split));
      inverse_into(group.right(), a.subspan(split), out.subspan(split));
      return;
    }
  }
}

Element multiply(const GroupSpec& group, const Element& a, const Element& b) {
  require_member(group, a);
  require_member(group, b);
  Element out{std::vector<std::uint64_t>(group.arity())};
  multiply_into(group, a.coords, b.coords, out.coords);
  return out;
}

Element inverse(const GroupSpec& group, const Element& a) {
  require_member(group, a);
  Element out{std::vector<std::uint64_t>(group.arity())};
  inverse_into(group, a.coords, out.coords);
  return out;
}

bool is_involution(const GroupSpec& group, const Element& e) {
  return inverse(group, e) == e;
}

std::uint64_t rank(const GroupSpec& group, const Element& e) {
  require_member(group, e);
  const auto radix = group.radices();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) r = r * radix[i] + e.coords[i];
  return r;
}

Element unrank(const GroupSpec& group, std::uint64_t r) {
  if (r >= group.order()) {
    throw NotAMember("rank " + std::to_string(r) + " out of range for " + group.to_string());
  }
  const auto radix = group.radices();
  Element e{std::vector<std::uint64_t>(radix.size())};
  for (std::size_t i = radix.size(); i-- > 0;) {
    e.coords[i] = r % radix[i];
    r /= radix[i];
  }
  return e;
}

void require_order_within(const GroupSpec& group, std::uint64_t limit) {
  if (group.order() > limit) {
    throw GroupTooLarge(group.to_string() + " has order " +
                        (group.order() == kSaturated ? std::string("beyond 2^64")
                                                     : std::to_string(group.order())) +
                        ", above the limit " + std::to_string(limit));
  }
}

std::vector<Element> enumerate_elements(const GroupSpec& group, std::uint64_t limit) {
  require_order_within(group, limit);
  const auto radix = group.radices();
  std::vector<Element> out;
  out.reserve(group.order());
  std::vector<std::uint64_t> cur(radix.size(), 0);
  for (std::uint64_t k = 0; k < group.order(); ++k) {
    out.push_back(Element{cur});
    for (std::size_t i = radix.size(); i-- > 0;) {
      if (++cur[i] < radix[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

GeneratorReport validate_generators(const GroupSpec& group, const GeneratorSet& gens,
                                    std::uint64_t limit) {
  GeneratorReport report;
  report.group_order = group.order();
  for (const auto& s : gens) {
    if (!contains(group, s)) {
      report.all_members = false;
      report.problems.push_back("generator not in group");
    }
  }
  if (!report.all_members) {
    report.inverse_closed = false;
    return report;
  }

  const Element e = identity(group);
  std::set<Element> seen;
  for (const auto& s : gens) {
    if (s == e) {
      report.identity_free = false;
      report.problems.push_back("identity " + format_element(group, s) + " in generator set");
    }
    if (!seen.insert(s).second) {
      report.duplicate_free = false;
      report.problems.push_back("duplicate generator " + format_element(group, s));
    }
  }
  for (const auto& s : gens) {
    if (!seen.contains(inverse(group, s))) {
      report.inverse_closed = false;
      report.missing_inverse_of = s;
      report.problems.push_back("inverse of " + format_element(group, s) + " (" +
                                format_element(group, inverse(group, s)) + ") missing");
      break;
    }
  }

  require_order_within(group, limit);
  const std::uint64_t n = group.order();
  const std::size_t arity = group.arity();
  std::vector<bool> visited(n, false);
  std::vector<std::uint64_t> frontier{0};
  visited[0] = true;
  std::uint64_t reached = 1;
  std::vector<std::uint64_t> next_coords(arity);
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t r : frontier) {
      const Element v = unrank(group, r);
      for (const auto& s : gens) {
        multiply_into(group, v.coords, s.coords, next_coords);
        const std::uint64_t nr = rank(group, Element{next_coords});
        if (!visited[nr]) {
          visited[nr] = true;
          ++reached;
          next.push_back(nr);
        }
      }
    }
    frontier = std::move(next);
  }
  report.reached = reached;
  report.generates = reached == n;
  if (!report.generates) {
    report.problems.push_back("generates a subgroup of order " + std::to_string(reached) +
                              " of " + std::to_string(n));
  }
  return report;
}

}  // namespace cayleycast
