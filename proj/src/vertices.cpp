#include "nshardy/vertices.hpp"

#include <algorithm>

#include "nshardy/error.hpp"

namespace nshardy {

namespace {

int mod(int v, int d) { return ((v % d) + d) % d; }

void check_label(std::initializer_list<int> values, int d) {
  for (int v : values) {
    if (v < 0 || v >= d) {
      throw ValidationError("vertex label " + std::to_string(v) + " out of range [0, " + std::to_string(d - 1) + "]");
    }
  }
}

}  // namespace

JointBox local_vertex(const Scenario& s, const LocalVertexLabel& label) {
  const int d = s.min_dim();
  check_label({label.alpha, label.beta, label.gamma, label.delta}, d);
  JointBox box(s);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      box.set({x, y, mod(label.alpha * x + label.beta, d), mod(label.gamma * y + label.delta, d)}, 1);
    }
  }
  return box;
}

JointBox nonlocal_vertex(const Scenario& s, const NonlocalVertexLabel& label) {
  const int d = s.min_dim();
  check_label({label.alpha, label.beta, label.gamma}, d);
  JointBox box(s);
  const Rational p(1L, static_cast<long>(d));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int shift = mod(x * y + label.alpha * x + label.beta * y + label.gamma, d);
      for (int a = 0; a < d; ++a) box.set({x, y, a, mod(a + shift, d)}, p);
    }
  }
  return box;
}

NonlocalVertexLabel relaxed_attaining_label(int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  return {d - 1, d - 1, 1};
}

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Local: return "local";
    case VertexKind::Nonlocal: return "nonlocal";
    case VertexKind::All: return "all";
  }
  return "unknown";
}

VertexKind parse_vertex_kind(const std::string& text) {
  if (text == "local") return VertexKind::Local;
  if (text == "nonlocal") return VertexKind::Nonlocal;
  if (text == "all") return VertexKind::All;
  throw ValidationError("unknown vertex kind '" + text + "'");
}

std::vector<Vertex> enumerate_vertices(const Scenario& s, VertexKind kind) {
  const int d = s.min_dim();
  std::vector<Vertex> out;
  auto push_unique = [&](VertexKind k, std::vector<int> label, JointBox box) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Vertex& v) { return v.box == box; });
    if (!seen) out.push_back({k, std::move(label), std::move(box)});
  };
  if (kind == VertexKind::Local || kind == VertexKind::All) {
    for (int al = 0; al < d; ++al)
      for (int be = 0; be < d; ++be)
        for (int ga = 0; ga < d; ++ga)
          for (int de = 0; de < d; ++de)
            push_unique(VertexKind::Local, {al, be, ga, de}, local_vertex(s, {al, be, ga, de}));
  }
  if (kind == VertexKind::Nonlocal || kind == VertexKind::All) {
    for (int al = 0; al < d; ++al)
      for (int be = 0; be < d; ++be)
        for (int ga = 0; ga < d; ++ga)
          push_unique(VertexKind::Nonlocal, {al, be, ga}, nonlocal_vertex(s, {al, be, ga}));
  }
  return out;
}

std::vector<DeterministicStrategy> all_deterministic_strategies(const Scenario& s) {
  std::vector<DeterministicStrategy> out;
  for (int a0 = 0; a0 < s.alice(0); ++a0)
    for (int a1 = 0; a1 < s.alice(1); ++a1)
      for (int b0 = 0; b0 < s.bob(0); ++b0)
        for (int b1 = 0; b1 < s.bob(1); ++b1) out.push_back({{a0, a1}, {b0, b1}});
  return out;
}

JointBox deterministic_box(const Scenario& s, const DeterministicStrategy& strategy) {
  JointBox box(s);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) box.set({x, y, strategy.alice[x], strategy.bob[y]}, 1);
  }
  return box;
}

bool is_convex_combination(const JointBox& target, const std::vector<JointBox>& all_generators) {
  const Scenario& s = target.scenario();
  // A nonnegative generator with mass outside the target's support must get
  // weight zero, so it can be dropped up front.
  std::vector<JointBox> generators;
  for (const auto& g : all_generators) {
    if (!(g.scenario() == s)) throw ValidationError("generator scenario mismatch");
    bool inside = true;
    for (std::size_t c = 0; c < s.num_coords() && inside; ++c) {
      if (g.table()[c].sign() < 0) throw ValidationError("generator has a negative entry");
      inside = g.table()[c].is_zero() || !target.table()[c].is_zero();
    }
    if (inside) generators.push_back(g);
  }
  const std::size_t n = generators.size();
  if (n == 0) return false;
  LinearProgram lp(n);
  for (std::size_t c = 0; c < s.num_coords(); ++c) {
    RationalVector row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = generators[k].table()[c];
    lp.add_equality(std::move(row), target.table()[c]);
  }
  lp.add_equality(RationalVector(n, Rational(1)), 1);
  return check_feasible(lp);
}

bool is_local(const JointBox& box) {
  const ValidityReport report = check_box(box);
  if (!report.valid()) {
    throw ValidationError("is_local needs a valid box; first violation: " + report.violations.front().constraint);
  }
  std::vector<JointBox> generators;
  for (const auto& st : all_deterministic_strategies(box.scenario())) {
    generators.push_back(deterministic_box(box.scenario(), st));
  }
  return is_convex_combination(box, generators);
}

JointBox embed(const JointBox& box, const Scenario& target) {
  const Scenario& s = box.scenario();
  if (!s.fits_in(target)) throw ValidationError("embedding target must not shrink any cardinality");
  JointBox out(target);
  for (std::size_t i = 0; i < s.num_coords(); ++i) {
    if (!box.table()[i].is_zero()) out.set(event_at(s, i), box.table()[i]);
  }
  return out;
}

}  // namespace nshardy
