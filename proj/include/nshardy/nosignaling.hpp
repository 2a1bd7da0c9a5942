#ifndef NSHARDY_NOSIGNALING_HPP
#define NSHARDY_NOSIGNALING_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "nshardy/linear_program.hpp"
#include "nshardy/rational.hpp"

namespace nshardy {

enum class Party { Alice, Bob };

/// Output cardinalities for a two-party, two-input scenario.
///
/// alice[X] is the number of outcomes of Alice's input X, bob[Y] likewise.
/// Every cardinality is at least 2.
class Scenario {
public:
  Scenario(std::array<int, 2> alice, std::array<int, 2> bob);
  /// All four cardinalities equal to d.
  static Scenario uniform(int d) { return Scenario({d, d}, {d, d}); }
  /// Alice has dA outcomes on both inputs, Bob has dB.
  static Scenario symmetric(int dA, int dB) { return Scenario({dA, dA}, {dB, dB}); }

  int alice(int x) const { return alice_.at(static_cast<std::size_t>(x)); }
  int bob(int y) const { return bob_.at(static_cast<std::size_t>(y)); }
  int outcomes(Party p, int input) const { return p == Party::Alice ? alice(input) : bob(input); }
  const std::array<int, 2>& alice_dims() const { return alice_; }
  const std::array<int, 2>& bob_dims() const { return bob_; }

  int min_dim() const;
  /// Total number of coordinates P(a,b|X,Y).
  std::size_t num_coords() const { return offsets_[4]; }
  std::size_t block_offset(int x, int y) const { return offsets_[static_cast<std::size_t>(2 * x + y)]; }
  std::size_t block_size(int x, int y) const {
    return static_cast<std::size_t>(alice(x)) * static_cast<std::size_t>(bob(y));
  }
  /// True iff every cardinality is <= the matching one of `other`.
  bool fits_in(const Scenario& other) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

private:
  std::array<int, 2> alice_;
  std::array<int, 2> bob_;
  std::array<std::size_t, 5> offsets_{};
};

/// A single coordinate (X, Y, a, b). Outcomes are 0-based internally.
struct Event {
  int x = 0;
  int y = 0;
  int a = 0;
  int b = 0;

  friend auto operator<=>(const Event&, const Event&) = default;
};

/// "(X1,Y0,a=2,b=3)" with 1-based outcomes.
std::string to_string(const Event& e);

bool in_range(const Scenario& s, const Event& e);

/// Lexicographic (X, Y, a, b) variable index. Throws ValidationError when out of range.
std::size_t index_of(const Scenario& s, const Event& e);
Event event_at(const Scenario& s, std::size_t index);

/// A conditional table P(a,b|X,Y). The table is always complete; validity
/// (positivity, normalization, no-signaling) is a separate check.
class JointBox {
public:
  explicit JointBox(Scenario s) : scenario_(s), table_(s.num_coords()) {}
  JointBox(Scenario s, RationalVector table);

  const Scenario& scenario() const { return scenario_; }
  const RationalVector& table() const { return table_; }

  const Rational& at(const Event& e) const { return table_[index_of(scenario_, e)]; }
  const Rational& at(int x, int y, int a, int b) const { return at(Event{x, y, a, b}); }
  void set(const Event& e, Rational p) { table_[index_of(scenario_, e)] = std::move(p); }

  friend bool operator==(const JointBox&, const JointBox&) = default;

private:
  Scenario scenario_;
  RationalVector table_;
};

/// Rows over the box coordinates, each with a readable label.
struct ConstraintSystem {
  Scenario scenario;
  std::vector<LinearRow> eq_rows;
  std::vector<std::string> eq_labels;
  std::vector<LinearRow> ineq_rows;  // row·x <= rhs
  std::vector<std::string> ineq_labels;

  explicit ConstraintSystem(Scenario s) : scenario(s) {}
  void append(const ConstraintSystem& other);
  /// LP with the given objective and these rows; variables are nonnegative.
  LinearProgram to_lp(RationalVector objective) const;
};

ConstraintSystem build_positivity(const Scenario& s);
ConstraintSystem build_normalization(const Scenario& s);
ConstraintSystem build_nosignaling(const Scenario& s);
/// Normalization plus no-signaling; positivity is left to the LP's
/// nonnegativity flag.
ConstraintSystem build_polytope(const Scenario& s);

enum class ViolationKind { Positivity, Normalization, NoSignaling };

struct Violation {
  ViolationKind kind;
  std::string constraint;  // row label
  Rational residual;       // lhs - rhs
};

std::string to_string(ViolationKind k);

struct ValidityReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

ValidityReport check_box(const JointBox& box);
inline bool is_valid_box(const JointBox& box) { return check_box(box).valid(); }

/// Marginal probability of `outcome` on `party`'s `input`, summed over the
/// far party's input `far_input`.
Rational marginal(const JointBox& box, Party party, int input, int outcome, int far_input = 0);

/// Affine dimension of the no-signaling polytope for `s`.
long polytope_dimension(const Scenario& s);

/// 1/(d_X d_Y) on every entry of every block.
JointBox uniform_box(const Scenario& s);

}  // namespace nshardy

#endif  // NSHARDY_NOSIGNALING_HPP
