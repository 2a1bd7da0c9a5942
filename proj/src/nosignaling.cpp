#include "nshardy/nosignaling.hpp"

#include <algorithm>

#include "nshardy/error.hpp"

namespace nshardy {

Scenario::Scenario(std::array<int, 2> alice, std::array<int, 2> bob) : alice_(alice), bob_(bob) {
  for (int d : {alice[0], alice[1], bob[0], bob[1]}) {
    if (d < 2) throw ValidationError("every output cardinality must be >= 2, got " + std::to_string(d));
  }
  std::size_t off = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      offsets_[static_cast<std::size_t>(2 * x + y)] = off;
      off += block_size(x, y);
    }
  }
  offsets_[4] = off;
}

int Scenario::min_dim() const {
  return std::min({alice_[0], alice_[1], bob_[0], bob_[1]});
}

bool Scenario::fits_in(const Scenario& other) const {
  return alice_[0] <= other.alice_[0] && alice_[1] <= other.alice_[1] &&
         bob_[0] <= other.bob_[0] && bob_[1] <= other.bob_[1];
}

std::string to_string(const Event& e) {
  return "(X" + std::to_string(e.x) + ",Y" + std::to_string(e.y) + ",a=" + std::to_string(e.a + 1) +
         ",b=" + std::to_string(e.b + 1) + ")";
}

bool in_range(const Scenario& s, const Event& e) {
  return e.x >= 0 && e.x < 2 && e.y >= 0 && e.y < 2 && e.a >= 0 && e.a < s.alice(e.x) && e.b >= 0 &&
         e.b < s.bob(e.y);
}

std::size_t index_of(const Scenario& s, const Event& e) {
  if (!in_range(s, e)) throw ValidationError("event out of range: " + to_string(e));
  return s.block_offset(e.x, e.y) + static_cast<std::size_t>(e.a) * static_cast<std::size_t>(s.bob(e.y)) +
         static_cast<std::size_t>(e.b);
}

Event event_at(const Scenario& s, std::size_t index) {
  if (index >= s.num_coords()) throw ValidationError("coordinate index out of range");
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const std::size_t off = s.block_offset(x, y);
      if (index < off + s.block_size(x, y)) {
        const std::size_t local = index - off;
        const auto db = static_cast<std::size_t>(s.bob(y));
        return Event{x, y, static_cast<int>(local / db), static_cast<int>(local % db)};
      }
    }
  }
  throw InternalError("unreachable coordinate index");
}

JointBox::JointBox(Scenario s, RationalVector table) : scenario_(s), table_(std::move(table)) {
  if (table_.size() != scenario_.num_coords()) {
    throw ValidationError("box table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(scenario_.num_coords()));
  }
}

void ConstraintSystem::append(const ConstraintSystem& other) {
  if (!(other.scenario == scenario)) throw ValidationError("cannot merge constraint systems of different scenarios");
  eq_rows.insert(eq_rows.end(), other.eq_rows.begin(), other.eq_rows.end());
  eq_labels.insert(eq_labels.end(), other.eq_labels.begin(), other.eq_labels.end());
  ineq_rows.insert(ineq_rows.end(), other.ineq_rows.begin(), other.ineq_rows.end());
  ineq_labels.insert(ineq_labels.end(), other.ineq_labels.begin(), other.ineq_labels.end());
}

LinearProgram ConstraintSystem::to_lp(RationalVector objective) const {
  LinearProgram lp(scenario.num_coords());
  lp.objective = std::move(objective);
  lp.eq_constraints = eq_rows;
  lp.ineq_constraints = ineq_rows;
  return lp;
}

ConstraintSystem build_positivity(const Scenario& s) {
  ConstraintSystem cs(s);
  for (std::size_t i = 0; i < s.num_coords(); ++i) {
    RationalVector row(s.num_coords());
    row[i] = -1;
    cs.ineq_rows.push_back({std::move(row), 0});
    cs.ineq_labels.push_back("positivity P" + to_string(event_at(s, i)) + " >= 0");
  }
  return cs;
}

ConstraintSystem build_normalization(const Scenario& s) {
  ConstraintSystem cs(s);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      RationalVector row(s.num_coords());
      const std::size_t off = s.block_offset(x, y);
      for (std::size_t k = 0; k < s.block_size(x, y); ++k) row[off + k] = 1;
      cs.eq_rows.push_back({std::move(row), 1});
      cs.eq_labels.push_back("normalization (X" + std::to_string(x) + ",Y" + std::to_string(y) + ")");
    }
  }
  return cs;
}

ConstraintSystem build_nosignaling(const Scenario& s) {
  ConstraintSystem cs(s);
  // Alice's marginal on (X, a) must not depend on Bob's input.
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < s.alice(x); ++a) {
      RationalVector row(s.num_coords());
      for (int b = 0; b < s.bob(0); ++b) row[index_of(s, {x, 0, a, b})] += 1;
      for (int b = 0; b < s.bob(1); ++b) row[index_of(s, {x, 1, a, b})] -= 1;
      cs.eq_rows.push_back({std::move(row), 0});
      cs.eq_labels.push_back("no-signaling Alice X" + std::to_string(x) + " a=" + std::to_string(a + 1));
    }
  }
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < s.bob(y); ++b) {
      RationalVector row(s.num_coords());
      for (int a = 0; a < s.alice(0); ++a) row[index_of(s, {0, y, a, b})] += 1;
      for (int a = 0; a < s.alice(1); ++a) row[index_of(s, {1, y, a, b})] -= 1;
      cs.eq_rows.push_back({std::move(row), 0});
      cs.eq_labels.push_back("no-signaling Bob Y" + std::to_string(y) + " b=" + std::to_string(b + 1));
    }
  }
  return cs;
}

ConstraintSystem build_polytope(const Scenario& s) {
  ConstraintSystem cs = build_normalization(s);
  cs.append(build_nosignaling(s));
  return cs;
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Positivity: return "positivity";
    case ViolationKind::Normalization: return "normalization";
    case ViolationKind::NoSignaling: return "no-signaling";
  }
  return "unknown";
}

ValidityReport check_box(const JointBox& box) {
  const Scenario& s = box.scenario();
  ValidityReport report;
  for (std::size_t i = 0; i < box.table().size(); ++i) {
    if (box.table()[i].sign() < 0) {
      report.violations.push_back(
          {ViolationKind::Positivity, "positivity P" + to_string(event_at(s, i)) + " >= 0", -box.table()[i]});
    }
  }
  auto expect = [&](ViolationKind kind, std::string label, const Rational& lhs, const Rational& rhs) {
    if (lhs != rhs) report.violations.push_back({kind, std::move(label), lhs - rhs});
  };
  // Same rows and labels as build_normalization / build_nosignaling, summed directly.
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Rational sum;
      const std::size_t off = s.block_offset(x, y);
      for (std::size_t k = 0; k < s.block_size(x, y); ++k) sum += box.table()[off + k];
      expect(ViolationKind::Normalization, "normalization (X" + std::to_string(x) + ",Y" + std::to_string(y) + ")",
             sum, 1);
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < s.alice(x); ++a) {
      expect(ViolationKind::NoSignaling, "no-signaling Alice X" + std::to_string(x) + " a=" + std::to_string(a + 1),
             marginal(box, Party::Alice, x, a, 0), marginal(box, Party::Alice, x, a, 1));
    }
  }
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < s.bob(y); ++b) {
      expect(ViolationKind::NoSignaling, "no-signaling Bob Y" + std::to_string(y) + " b=" + std::to_string(b + 1),
             marginal(box, Party::Bob, y, b, 0), marginal(box, Party::Bob, y, b, 1));
    }
  }
  return report;
}

Rational marginal(const JointBox& box, Party party, int input, int outcome, int far_input) {
  const Scenario& s = box.scenario();
  if (input < 0 || input > 1 || far_input < 0 || far_input > 1) throw ValidationError("input must be 0 or 1");
  if (outcome < 0 || outcome >= s.outcomes(party, input)) {
    throw ValidationError("outcome " + std::to_string(outcome + 1) + " out of range");
  }
  Rational sum;
  if (party == Party::Alice) {
    for (int b = 0; b < s.bob(far_input); ++b) sum += box.at(input, far_input, outcome, b);
  } else {
    for (int a = 0; a < s.alice(far_input); ++a) sum += box.at(far_input, input, a, outcome);
  }
  return sum;
}

long polytope_dimension(const Scenario& s) {
  long joint = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) joint += static_cast<long>(s.alice(x)) * s.bob(y);
  }
  return joint - (s.alice(0) + s.alice(1)) - (s.bob(0) + s.bob(1));
}

JointBox uniform_box(const Scenario& s) {
  JointBox box(s);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const Rational p(1L, static_cast<long>(s.block_size(x, y)));
      for (int a = 0; a < s.alice(x); ++a) {
        for (int b = 0; b < s.bob(y); ++b) box.set({x, y, a, b}, p);
      }
    }
  }
  return box;
}

}  // namespace nshardy
