#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "groundwork/report.hpp"
#include "groundwork/sexpr.hpp"

namespace groundwork::ludics {

// A string of natural numbers; the empty address is printed ε.
using Address = std::vector<std::uint32_t>;

Address child(const Address& xi, std::uint32_t i);
bool is_prefix(const Address& prefix, const Address& a);
// Neither is a prefix of the other.
bool disjoint(const Address& a, const Address& b);
std::string to_string(const Address& a);
// Accepts "ε", "eps" and dotted numerals such as "0.1.2".
Address parse_address(const std::string& text);

using Ramification = std::set<std::uint32_t>;

std::set<Address> star(const Address& xi, const Ramification& I);
std::string to_string(const Ramification& I);
// All subsets of {0, ..., n-1}, ordered by size then lexicographically.
std::vector<Ramification> powerset_pool(std::uint32_t n);

struct Pitchfork {
  std::optional<Address> negative;
  std::set<Address> positive;

  bool is_positive() const { return !negative.has_value(); }
  std::set<Address> addresses() const;
  friend bool operator==(const Pitchfork&, const Pitchfork&) = default;
  friend bool operator<(const Pitchfork& a, const Pitchfork& b) {
    return std::tie(a.negative, a.positive) < std::tie(b.negative, b.positive);
  }
};

Pitchfork positive_base(std::set<Address> delta);
Pitchfork negative_base(Address xi, std::set<Address> delta = {});
// The other side of a one-address base: ⊢ξ becomes ξ⊢ and vice versa.
Pitchfork dual(const Pitchfork& p);
// Addresses pairwise disjoint.
Report validate_pitchfork(const Pitchfork& p);
std::string to_string(const Pitchfork& p);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Body of a design. Positive nodes hold one negative child per element of
// the ramification, in increasing order; negative nodes map each
// ramification of N to a positive-rooted subtree.
struct Node {
  enum class Kind { Daimon, Fid, Positive, Negative };
  Kind kind = Kind::Fid;
  Address focus;
  Ramification ramification;
  std::vector<NodePtr> children;
  std::map<Ramification, NodePtr> branches;

  bool is(Kind k) const { return kind == k; }
  bool positive_position() const { return kind != Kind::Negative; }
  const NodePtr* child_at(std::uint32_t i) const;
};

NodePtr daimon_node();
NodePtr fid_node();
NodePtr positive_node(Address focus, Ramification I, std::vector<NodePtr> children);
NodePtr negative_node(Address focus, std::map<Ramification, NodePtr> branches);

// Structural equality.
bool equal(const NodePtr& a, const NodePtr& b);
// Total order consistent with equal(); used for sets of designs.
int compare(const NodePtr& a, const NodePtr& b);

struct Design {
  Pitchfork base;
  NodePtr root;

  friend bool operator==(const Design& a, const Design& b) { return a.base == b.base && equal(a.root, b.root); }
  friend bool operator<(const Design& a, const Design& b) {
    if (!(a.base == b.base)) return a.base < b.base;
    return compare(a.root, b.root) < 0;
  }
};

// Every node instantiates the daimon, positive or negative schema with the
// contexts inferred from the foci used in each premise. Paths in the report
// look like root/{1}/1.3.
Report validate_design(const Design& d);

// Pitchfork of every node, computed top-down with the same inference as
// validate_design. Keyed by path.
std::map<std::string, Pitchfork> node_bases(const Design& d);

// Context of each premise of a positive node whose conclusion context
// (without the focus) is `gamma`: the addresses each premise focuses on.
std::vector<std::set<Address>> premise_contexts(const Node& positive, const std::set<Address>& gamma);

bool contains_daimon(const Design& d);
bool contains_fid(const Design& d);
// Number of pitchforks along the longest branch.
std::size_t depth(const Design& d);
std::size_t node_count(const Design& d);

// Named designs.
Design daimon(Pitchfork base);
Design fid(Pitchfork base);
Design atomic_bomb(const Address& xi);
Design skunk(const Address& xi);
// Negative rule on ξ whose every branch ends in †.
Design negative_sponge(const Address& xi, const std::vector<Ramification>& N);
// Copycat between ξ (negative) and ξ′ (positive), unfolded `depth` times
// over the ramifications in `pool`; the innermost negative nodes have Fid
// above every branch.
Design build_fax(const Address& xi, const Address& xi_prime, std::size_t depth, const std::vector<Ramification>& pool);
// Pool of all I ⊆ {0..arity_bound}.
Design build_fax(const Address& xi, const Address& xi_prime, std::size_t depth, std::uint32_t arity_bound);

// d1 ≤ d2 when d1 is d2 with negative branches removed and positive
// subtrees replaced by Fid.
bool subdesign_order(const Design& d1, const Design& d2);
// Least upper bound of two subdesigns of a common design. Throws
// std::invalid_argument when the designs disagree on an action.
Design join(const Design& d1, const Design& d2);

// Replaces the prefix `from` by `to` in every address of the design.
// Addresses not under `from` are left alone.
Design relocate(const Design& d, const Address& from, const Address& to);

// Text format:
//   (design (base (neg 0) (pos 1)) BODY)
//   BODY := (daimon) | (fid) | (pos ADDR (I...) BODY...) | (neg ADDR ((I...) BODY)...)
NodePtr parse_node(const SExpr& e);
Design parse_design(const SExpr& e);
Design parse_design(const std::string& text);
std::string print_node(const NodePtr& n, int indent = -1);
// Multi-line by default; parse_design(print_design(d)) == d.
std::string print_design(const Design& d, bool one_line = false);

struct RenderOptions {
  // When set, addresses print as this symbol followed by the components,
  // e.g. "ξ" renders 1.1 as ξ11. Components above 9 are dot-separated.
  std::optional<std::string> root_symbol;
  // Addresses wrapped in *...* in the output.
  std::set<Address> highlight;
};

std::string render_address(const Address& a, const RenderOptions& opt);
std::string render_pitchfork(const Pitchfork& p, const RenderOptions& opt);
// Indented tree, one pitchfork per line with its rule label, root first.
std::string render_design(const Design& d, const RenderOptions& opt = {});

}  // namespace groundwork::ludics
