#ifndef NSHARDY_HARDY_HPP
#define NSHARDY_HARDY_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nshardy/nosignaling.hpp"
#include "nshardy/rational.hpp"

namespace nshardy {

enum class ArgumentKind { Conventional, Relaxed };

std::string to_string(ArgumentKind k);
ArgumentKind parse_argument_kind(const std::string& text);

/// Maps the argument's logical inputs/outcomes onto the box's physical ones.
///
/// Logical input X of Alice is physical input (swap_alice_inputs ? 1-X : X);
/// alice[X][a] is the physical outcome of logical outcome a on that input.
/// An empty permutation means identity.
struct Relabeling {
  std::array<std::vector<int>, 2> alice;
  std::array<std::vector<int>, 2> bob;
  bool swap_alice_inputs = false;
  bool swap_bob_inputs = false;

  bool is_identity() const;
  friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

/// Success events and the three zero (or bounded) event sets of an argument,
/// in physical coordinates.
///
/// Conventional, logical 1-based outcomes, d_X/d_Y each input's cardinality:
///   success  P(X0=1, Y0=d_Y0)
///   zero[0]  P(X1=a, Y0=d_Y0), a = 2..d_X1
///   zero[1]  P(X0=1, Y1=b),    b = 1..d_Y1-1
///   zero[2]  P(X1=1, Y1=d_Y1)
/// Relaxed:
///   success  P(X0 < Y0)
///   zero[0]  P(X1 < Y0)
///   zero[1]  P(Y1 < X1)
///   zero[2]  P(X0 < Y1)   (bounded by p instead of 0 when p > 0)
/// A reversed argument flips every comparison (relaxed) or reverses every
/// input's outcome order (conventional).
struct ArgumentEvents {
  std::vector<Event> success;
  std::array<std::vector<Event>, 3> zero;
};

struct HardyArgument {
  ArgumentKind kind = ArgumentKind::Relaxed;
  Scenario scenario = Scenario::uniform(2);
  Relabeling relabeling;
  Rational bound;  // p; always 0 for Conventional
  bool reversed = false;
  ArgumentEvents events;
};

/// Validates the inputs and computes the event sets.
/// Throws ValidationError for a bad permutation, p outside [0, 1), or p != 0
/// on a conventional argument.
HardyArgument build_argument(ArgumentKind kind, const Scenario& s, const Rational& p = Rational(0),
                             const Relabeling& relabeling = {}, bool reversed = false);

/// Index of the zero set that may carry mass up to the bound p.
inline constexpr std::size_t kBoundedCondition = 2;

/// Outcome of evaluating PP: either the success mass, or the first violated
/// condition and the event that violates it.
struct PpOutcome {
  bool satisfied = false;
  Rational value;
  std::size_t violated_condition = 0;
  Event violating_event;
  Rational violating_mass;  // total mass of the violated set
};

/// PP of a valid box under `arg`. Throws ValidationError if the box is not a
/// valid no-signaling box or belongs to a different scenario.
PpOutcome evaluate_pp(const JointBox& box, const HardyArgument& arg);

/// True iff every zero condition (and the bound, if any) holds exactly.
bool satisfies_conditions(const JointBox& box, const HardyArgument& arg);

enum class Regime { NoSignaling, LocalRealistic };
std::string to_string(Regime r);

struct OptimizationReport {
  HardyArgument argument;
  Rational optimum;
  JointBox witness;
  Regime regime;
};

/// The Hardy linear program: maximize success mass over the no-signaling
/// polytope with every zero set summing to zero (or to <= p).
LinearProgram hardy_program(const HardyArgument& arg);

/// Exact optimum of `hardy_program`, with its optimal vertex as witness.
OptimizationReport max_success_ns(const HardyArgument& arg);

/// Optimum over deterministic local strategies by exhaustive enumeration.
/// Mixtures never exceed the best deterministic strategy. Requires p = 0.
OptimizationReport max_success_lhv(const HardyArgument& arg);

/// Thrown when a box does not satisfy the base argument's conditions.
class NotSatisfiedError : public std::runtime_error {
public:
  NotSatisfiedError(const std::string& what, PpOutcome outcome)
      : std::runtime_error(what), outcome_(std::move(outcome)) {}
  const PpOutcome& outcome() const { return outcome_; }

private:
  PpOutcome outcome_;
};

struct RelabelingSearch {
  /// All d! outcome permutations per input instead of cyclic shifts and
  /// reversals. Only accepted when every cardinality is <= 4.
  bool exhaustive = false;
};

/// Arguments of the base's kind and bound, related to it by per-input
/// outcome relabelings and optional direction reversal, that the box
/// satisfies with positive success mass. One argument per distinct success
/// set, in deterministic search order.
std::vector<HardyArgument> satisfied_relabelings(const JointBox& box, const HardyArgument& base,
                                                 const RelabelingSearch& search = {});

/// The satisfied relabeled argument (relative to the identity labeling) of
/// largest PP; first in search order among ties, so the identity argument
/// wins when it is optimal.
std::optional<HardyArgument> best_satisfied_argument(const JointBox& box, ArgumentKind kind,
                                                     const Rational& p = Rational(0),
                                                     const RelabelingSearch& search = {});

struct PnResult {
  Rational pp;
  Rational pn;
  std::vector<HardyArgument> family;  // base first
  std::vector<Rational> contributions;

  Rational ppc() const { return pn - pp; }
};

/// Largest total success mass over families of satisfied arguments that
/// contain the base, share its designated input pair, and have pairwise
/// disjoint success sets. Throws NotSatisfiedError if the base is not
/// satisfied.
PnResult compute_pn(const JointBox& box, const HardyArgument& base, const RelabelingSearch& search = {});

/// PN - PP.
Rational ppc(const JointBox& box, const HardyArgument& base, const RelabelingSearch& search = {});

/// Reference quantum value of the two-qubit Hardy probability, (5*sqrt(5)-11)/2.
/// Irrational, so it is carried as a decimal and never computed here.
struct QuantumReference {
  double approx;
  std::string expression;
  bool dimension_independent;
  std::string note;
};

std::optional<QuantumReference> quantum_reference(ArgumentKind kind, int d);

}  // namespace nshardy

#endif  // NSHARDY_HARDY_HPP
