#pragma once

// Finite groups given by a small declarative description: cyclic, dihedral,
// elementary abelian 2-groups, direct products and semidirect products of two
// cyclic groups. Elements are canonical coordinate tuples and all group laws
// are closed-form, so no multiplication tables are ever materialized.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayleycast {

inline constexpr std::uint64_t kDefaultOrderLimit = 1'000'000;

class GroupSpec {
 public:
  enum class Kind { cyclic, dihedral, z2pow, product, semidirect };

  static GroupSpec cyclic(std::uint64_t n);
  static GroupSpec dihedral(std::uint64_t n);
  static GroupSpec z2pow(std::uint64_t r);
  static GroupSpec product(GroupSpec left, GroupSpec right);
  /// Z_m acting on Z_n by x -> g^k x. Requires gcd(g, n) = 1 and g^m = 1 (mod n).
  static GroupSpec semidirect(std::uint64_t m, std::uint64_t n, std::uint64_t g);

  Kind kind() const noexcept { return kind_; }

  /// cyclic/dihedral: n; z2pow: r; semidirect: m, n, g in that order.
  std::uint64_t param(std::size_t i) const { return params_.at(i); }
  const GroupSpec& left() const;
  const GroupSpec& right() const;

  /// Number of coordinates in an element of this group.
  std::size_t arity() const noexcept;

  /// Exclusive upper bound of every coordinate, in coordinate order. Rank of
  /// an element is its mixed-radix value with the first coordinate most
  /// significant, which coincides with lexicographic order.
  std::vector<std::uint64_t> radices() const;

  /// Group order, saturating at UINT64_MAX.
  std::uint64_t order() const noexcept;

  /// Canonical text form, re-parseable by parse_group_spec.
  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  GroupSpec() = default;

  Kind kind_ = Kind::cyclic;
  std::array<std::uint64_t, 3> params_{1, 0, 0};
  std::shared_ptr<const GroupSpec> left_;
  std::shared_ptr<const GroupSpec> right_;
};

struct Element {
  std::vector<std::uint64_t> coords;

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

using GeneratorSet = std::vector<Element>;

GroupSpec parse_group_spec(std::string_view text);

/// Parses one element literal. Syntax errors raise ParseError; well-formed
/// literals that name no element of `group` raise NotAMember.
Element parse_element(const GroupSpec& group, std::string_view text);

/// Comma-separated element literals, e.g. "(7,1),(5,7),(6,0)".
GeneratorSet parse_generators(const GroupSpec& group, std::string_view text);

std::string format_element(const GroupSpec& group, const Element& e);
std::string format_generators(const GroupSpec& group, const GeneratorSet& gens);

bool contains(const GroupSpec& group, const Element& e) noexcept;
void require_member(const GroupSpec& group, const Element& e);

Element identity(const GroupSpec& group);
Element multiply(const GroupSpec& group, const Element& a, const Element& b);
Element inverse(const GroupSpec& group, const Element& a);

/// Allocation-free forms over raw coordinate spans; no membership checks.
void multiply_into(const GroupSpec& group, std::span<const std::uint64_t> a,
                   std::span<const std::uint64_t> b, std::span<std::uint64_t> out);
void inverse_into(const GroupSpec& group, std::span<const std::uint64_t> a,
                  std::span<std::uint64_t> out);

std::uint64_t rank(const GroupSpec& group, const Element& e);
Element unrank(const GroupSpec& group, std::uint64_t r);

/// Throws GroupTooLarge when the order exceeds `limit`.
void require_order_within(const GroupSpec& group, std::uint64_t limit);

/// All elements in canonical rank order.
std::vector<Element> enumerate_elements(const GroupSpec& group,
                                        std::uint64_t limit = kDefaultOrderLimit);

struct GeneratorReport {
  bool all_members = true;
  bool identity_free = true;
  bool duplicate_free = true;
  bool inverse_closed = true;
  bool generates = false;
  std::uint64_t reached = 0;  ///< size of the subgroup generated
  std::uint64_t group_order = 0;
  std::optional<Element> missing_inverse_of;  ///< witness for inverse-closure failure
  std::vector<std::string> problems;

  /// Usable as a Cayley connection set (generation not required).
  bool connection_set_ok() const noexcept {
    return all_members && identity_free && duplicate_free && inverse_closed;
  }
  bool ok() const noexcept { return connection_set_ok() && generates; }
};

/// Checks membership, identity-freeness, duplicates, inverse-closure, and
/// whether the set generates the whole group (breadth-first closure).
GeneratorReport validate_generators(const GroupSpec& group, const GeneratorSet& gens,
                                    std::uint64_t limit = kDefaultOrderLimit);

bool is_involution(const GroupSpec& group, const Element& e);

}  // namespace cayleycast
