#ifndef NSHARDY_VERTICES_HPP
#define NSHARDY_VERTICES_HPP

#include <array>
#include <string>
#include <vector>

#include "nshardy/nosignaling.hpp"

namespace nshardy {

/// Deterministic strategy a = alpha*X + beta, b = gamma*Y + delta (mod d),
/// d being the scenario's smallest cardinality.
struct LocalVertexLabel {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int delta = 0;
  friend auto operator<=>(const LocalVertexLabel&, const LocalVertexLabel&) = default;
};

/// Correlated box supported on b - a = XY + alpha*X + beta*Y + gamma (mod d).
struct NonlocalVertexLabel {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  friend auto operator<=>(const NonlocalVertexLabel&, const NonlocalVertexLabel&) = default;
};

JointBox local_vertex(const Scenario& s, const LocalVertexLabel& label);
JointBox nonlocal_vertex(const Scenario& s, const NonlocalVertexLabel& label);

/// The label (d-1, d-1, 1) whose box satisfies the relaxed zero conditions
/// with d-1 of its d success-block entries on a < b.
NonlocalVertexLabel relaxed_attaining_label(int d);

enum class VertexKind { Local, Nonlocal, All };

struct Vertex {
  VertexKind kind;           // Local or Nonlocal
  std::vector<int> label;    // (alpha, beta, gamma, delta) or (alpha, beta, gamma)
  JointBox box;
};

std::string to_string(VertexKind k);
VertexKind parse_vertex_kind(const std::string& text);

/// All closed-form vertices in label order (local first for All), with
/// boxes whose tables coincide with an earlier entry dropped.
std::vector<Vertex> enumerate_vertices(const Scenario& s, VertexKind kind);

/// A deterministic local strategy: one outcome per input, for each party.
struct DeterministicStrategy {
  std::array<int, 2> alice{};
  std::array<int, 2> bob{};
};

/// Every assignment of outcomes to inputs; count = prod of the four cardinalities.
std::vector<DeterministicStrategy> all_deterministic_strategies(const Scenario& s);
JointBox deterministic_box(const Scenario& s, const DeterministicStrategy& strategy);

/// Exact convex-membership test: is `target` a mixture of `generators`?
bool is_convex_combination(const JointBox& target, const std::vector<JointBox>& generators);

/// True iff the box is a mixture of deterministic local strategies. Throws
/// ValidationError on an invalid box.
bool is_local(const JointBox& box);

/// Pads the table with zero-probability outcomes up to `target`.
JointBox embed(const JointBox& box, const Scenario& target);

}  // namespace nshardy

#endif  // NSHARDY_VERTICES_HPP
