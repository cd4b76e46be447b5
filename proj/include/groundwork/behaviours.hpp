#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/design.hpp"
#include "groundwork/interaction.hpp"

namespace groundwork::ludics {

struct UniverseBounds {
  std::size_t max_depth = 2;
  std::vector<Ramification> pool = powerset_pool(2);
  Pitchfork base;
  std::size_t cap = 1'000'000;
  std::size_t fuel = kDefaultInteractionFuel;

  UniverseBounds with_base(Pitchfork b) const {
    UniverseBounds u = *this;
    u.base = std::move(b);
    return u;
  }
};

struct UniverseTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every valid design on bounds.base with at most max_depth pitchforks on
// each branch and ramifications from the pool, Fid and daimon leaves
// included. Sorted. Throws UniverseTooLarge past bounds.cap.
std::vector<Design> enumerate_universe(const UniverseBounds& bounds);

// A set of designs closing a design on some base into a closed net: one
// design on the dual of each address of the base.
using CounterNet = std::vector<Design>;

// All counter-nets for `base` built from the bounded universes, in the
// order negative address first, then positive addresses.
std::vector<CounterNet> counter_universe(const Pitchfork& base, const UniverseBounds& bounds);

struct OrthogonalSet {
  std::vector<Design> designs;
  // Some candidate ran out of fuel against a member of E and was left out.
  bool inconclusive = false;
};

// The designs of the universe on the dual base orthogonal to every member
// of E. E must be nonempty with a common one-address base; the base of
// `bounds` is ignored.
OrthogonalSet orthogonal_set(const std::vector<Design>& E, const UniverseBounds& bounds);
OrthogonalSet biorthogonal(const std::vector<Design>& E, const UniverseBounds& bounds);

struct NotAMember : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Behaviour {
 public:
  // Computes the counter-nets orthogonal to every generator within the
  // bounds. Counter-nets with a Fid-rooted design are never kept. With no
  // generators the base is taken from the bounds.
  Behaviour(std::vector<Design> generators, UniverseBounds bounds);

  const std::vector<Design>& generators() const { return generators_; }
  const UniverseBounds& bounds() const { return bounds_; }
  const Pitchfork& base() const { return bounds_.base; }
  const std::vector<CounterNet>& counters() const { return counters_; }
  // On a one-address base, the single design of each counter-net.
  const std::vector<Design>& orthogonal() const { return orth_; }
  bool inconclusive() const { return inconclusive_; }

  // Orthogonal to every counter-net. Unknown when fuel runs out.
  Verdict contains(const Design& d) const;
  // The members within the bounds (the biorthogonal of the generators).
  std::vector<Design> members() const;

 private:
  std::vector<Design> generators_;
  UniverseBounds bounds_;
  std::vector<CounterNet> counters_;
  std::vector<Design> orth_;
  bool inconclusive_ = false;
};

// Join of the parts of d used against every counter-net. No counter-nets
// give Fid on a positive base and the skunk on a negative
// one. Throws NotAMember.
Design incarnation_of(const Design& d, const Behaviour& b);
bool is_material(const Design& d, const Behaviour& b);

struct CandidateVerdict {
  enum class Tag { Ground, PseudoGround, NotInBehaviour, Unknown };
  enum class Reason { None, ContainsDaimon, NotMaterial };
  Tag tag = Tag::NotInBehaviour;
  Reason reason = Reason::None;

  friend bool operator==(const CandidateVerdict&, const CandidateVerdict&) = default;
};
// "Ground", "PseudoGround(contains-daimon)", ...
std::string to_string(const CandidateVerdict& v);

CandidateVerdict classify_candidate(const Design& d, const Behaviour& b);

// 1 = {bomb}⊥⊥, ⊤ = {skunk}⊥⊥ on ξ⊢, 0 = {daimon}⊥⊥ on ⊢ξ.
Behaviour behaviour_one(const Address& xi, const UniverseBounds& bounds);
Behaviour behaviour_top(const Address& xi, const UniverseBounds& bounds);
Behaviour behaviour_zero(const Address& xi, const UniverseBounds& bounds);

}  // namespace groundwork::ludics
