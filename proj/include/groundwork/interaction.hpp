#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/design.hpp"
#include "groundwork/report.hpp"

namespace groundwork::ludics {

struct CutNet {
  std::vector<Design> designs;
  // Addresses appearing once positively and once negatively among the bases.
  std::set<Address> cuts;
  std::size_t principal = 0;
  // Uncut addresses.
  Pitchfork base;

  bool closed() const { return !base.negative && base.positive.empty(); }
};

// Checks every design, then: base addresses pairwise disjoint or equal;
// each address in at most two bases, with both polarities when in two; the
// cut graph connected and acyclic. Codes: invalid-design, not-disjoint,
// address-multiplicity, cyclic, disconnected, empty.
std::optional<CutNet> make_cutnet(std::vector<Design> designs, Report& report);

struct NetError : std::runtime_error {
  Report report;
  explicit NetError(Report r);
};
// Throws NetError.
CutNet make_cutnet(std::vector<Design> designs);

struct Action {
  bool positive = true;
  Address focus;
  Ramification ramification;

  friend bool operator==(const Action&, const Action&) = default;
};
// "+ 0.1 {0,2}"
std::string to_string(const Action& a);

enum class Divergence { NoMatchingNegativeAction, FidEncountered };
std::string to_string(Divergence d);

struct InteractionResult {
  enum class Tag { Converged, Diverged, FuelExhausted };
  Tag tag = Tag::Converged;
  std::optional<Design> result;  // when converged
  Address at;                    // when diverged
  Divergence reason = Divergence::NoMatchingNegativeAction;
  // One positive action followed by its negative partner for each
  // consumed pair.
  std::vector<Action> trace;
  // Consumed foci in order, then the addresses of the final daimon.
  std::vector<Address> visited;

  std::size_t pairs() const { return trace.size() / 2; }
  bool converged() const { return tag == Tag::Converged; }
};
std::string to_string(InteractionResult::Tag t);

inline constexpr std::size_t kDefaultInteractionFuel = 100000;

// Closed nets converge to the daimon on the empty base. Nets with uncut
// addresses are also accepted: actions on uncut addresses are copied into
// the result, whose base is the net's base. Below such an action, a
// negative branch whose interaction diverges is left out of the result.
InteractionResult normalize(const CutNet& net, std::size_t fuel = kDefaultInteractionFuel);
// Throws std::invalid_argument when the net is not closed.
InteractionResult normalize_closed(const CutNet& net, std::size_t fuel = kDefaultInteractionFuel);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct BaseMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Convergence of {d, e} for bases ⊢ξ and ξ⊢ in either order; throws
// BaseMismatch otherwise. Computes the verdict only, without the trace.
Verdict orthogonal(const Design& d, const Design& e, std::size_t fuel = kDefaultInteractionFuel);

// Verdict of a closed net given as its designs, without validating it or
// recording a trace. The principal is the design with a positive base.
Verdict closed_verdict(const std::vector<const Design*>& net, std::size_t fuel = kDefaultInteractionFuel);

struct TraceMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Keeps the nodes of d reached by the normalization that produced `trace`:
// negative nodes keep the consumed branches only.
Design used_part(const Design& d, const std::vector<Action>& trace);

// Step-by-step normalization of a closed net; one step consumes one pair.
class Machine {
 public:
  explicit Machine(const CutNet& net, std::size_t fuel = kDefaultInteractionFuel);

  bool done() const;
  // False when already done.
  bool step();
  // False at the start.
  bool back();
  std::size_t steps() const { return history_.size() - 1; }
  const std::vector<Action>& trace() const { return history_.back().trace; }
  // Defined once done().
  InteractionResult result() const;
  // The current designs, those of the original net in their order first.
  std::vector<Design> current() const;

 private:
  struct Entry {
    NodePtr node;
    std::set<Address> context;
    std::size_t owner = 0;
  };
  struct State {
    Entry principal;
    std::map<Address, Entry> env;
    std::vector<Action> trace;
    std::vector<Address> visited;
    std::optional<InteractionResult> outcome;
  };
  std::size_t fuel_;
  std::vector<State> history_;

  void settle(State& s) const;
};

// One block per state of the machine followed by the result, designs in a
// block separated by blank lines. Visited addresses are highlighted.
std::vector<std::string> render_snapshots(const CutNet& net, const RenderOptions& opt = {},
                                          std::size_t fuel = kDefaultInteractionFuel);

// The snapshots joined, each preceded by a "-- step k" line.
std::string render_interaction(const CutNet& net, const RenderOptions& opt = {},
                               std::size_t fuel = kDefaultInteractionFuel);

}  // namespace groundwork::ludics
