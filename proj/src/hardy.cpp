#include "nshardy/hardy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "nshardy/error.hpp"
#include "nshardy/linear_program.hpp"
#include "nshardy/vertices.hpp"

namespace nshardy {

std::string to_string(ArgumentKind k) {
  return k == ArgumentKind::Conventional ? "conventional" : "relaxed";
}

ArgumentKind parse_argument_kind(const std::string& text) {
  if (text == "conventional") return ArgumentKind::Conventional;
  if (text == "relaxed") return ArgumentKind::Relaxed;
  throw ValidationError("unknown argument kind '" + text + "'");
}

std::string to_string(Regime r) {
  return r == Regime::NoSignaling ? "no-signaling" : "local-realistic";
}

bool Relabeling::is_identity() const {
  auto identity = [](const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != static_cast<int>(i)) return false;
    }
    return true;
  };
  return !swap_alice_inputs && !swap_bob_inputs && identity(alice[0]) && identity(alice[1]) &&
         identity(bob[0]) && identity(bob[1]);
}

namespace {

using Perm = std::vector<int>;

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Logical cardinalities after the input swaps.
struct LogicalDims {
  std::array<int, 2> alice;
  std::array<int, 2> bob;
};

int physical_alice_input(const Relabeling& r, int x) { return r.swap_alice_inputs ? 1 - x : x; }
int physical_bob_input(const Relabeling& r, int y) { return r.swap_bob_inputs ? 1 - y : y; }

LogicalDims logical_dims(const Scenario& s, const Relabeling& r) {
  return {{s.alice(physical_alice_input(r, 0)), s.alice(physical_alice_input(r, 1))},
          {s.bob(physical_bob_input(r, 0)), s.bob(physical_bob_input(r, 1))}};
}

// Which logical input pair each of the three zero sets lives on.
std::array<std::pair<int, int>, 3> condition_pairs(ArgumentKind kind) {
  if (kind == ArgumentKind::Conventional) return {{{1, 0}, {0, 1}, {1, 1}}};
  return {{{1, 0}, {1, 1}, {0, 1}}};
}

// Event sets in logical coordinates, before relabeling.
ArgumentEvents logical_events(ArgumentKind kind, bool reversed, const LogicalDims& d) {
  ArgumentEvents ev;
  if (kind == ArgumentKind::Conventional) {
    ev.success.push_back({0, 0, 0, d.bob[0] - 1});
    for (int a = 1; a < d.alice[1]; ++a) ev.zero[0].push_back({1, 0, a, d.bob[0] - 1});
    for (int b = 0; b + 1 < d.bob[1]; ++b) ev.zero[1].push_back({0, 1, 0, b});
    ev.zero[2].push_back({1, 1, 0, d.bob[1] - 1});
    if (reversed) {
      auto flip = [&](Event& e) {
        e.a = d.alice[static_cast<std::size_t>(e.x)] - 1 - e.a;
        e.b = d.bob[static_cast<std::size_t>(e.y)] - 1 - e.b;
      };
      std::for_each(ev.success.begin(), ev.success.end(), flip);
      for (auto& set : ev.zero) std::for_each(set.begin(), set.end(), flip);
    }
    return ev;
  }
  auto less = [reversed](int lhs, int rhs) { return reversed ? lhs > rhs : lhs < rhs; };
  auto collect = [&](int x, int y, bool alice_first, std::vector<Event>& out) {
    for (int a = 0; a < d.alice[static_cast<std::size_t>(x)]; ++a) {
      for (int b = 0; b < d.bob[static_cast<std::size_t>(y)]; ++b) {
        if (alice_first ? less(a, b) : less(b, a)) out.push_back({x, y, a, b});
      }
    }
  };
  collect(0, 0, true, ev.success);
  collect(1, 0, true, ev.zero[0]);
  collect(1, 1, false, ev.zero[1]);
  collect(0, 1, true, ev.zero[2]);
  return ev;
}

// Full per-input permutations (identity filled in for empty entries).
struct ResolvedPerms {
  std::array<Perm, 2> alice;
  std::array<Perm, 2> bob;
};

ResolvedPerms resolve(const Relabeling& r, const LogicalDims& d) {
  ResolvedPerms out;
  auto fill = [](const Perm& given, int n, const char* who, int input) {
    if (given.empty()) return identity_perm(n);
    if (given.size() != static_cast<std::size_t>(n)) {
      throw ValidationError(std::string("relabeling for ") + who + " input " + std::to_string(input) +
                            " has " + std::to_string(given.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : given) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
        throw ValidationError(std::string("relabeling for ") + who + " input " + std::to_string(input) +
                              " is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
    return given;
  };
  for (int i = 0; i < 2; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.alice[k] = fill(r.alice[k], d.alice[k], "Alice", i);
    out.bob[k] = fill(r.bob[k], d.bob[k], "Bob", i);
  }
  return out;
}

Event to_physical(const Event& e, const Relabeling& r, const ResolvedPerms& p) {
  return {physical_alice_input(r, e.x), physical_bob_input(r, e.y),
          p.alice[static_cast<std::size_t>(e.x)][static_cast<std::size_t>(e.a)],
          p.bob[static_cast<std::size_t>(e.y)][static_cast<std::size_t>(e.b)]};
}

Rational mass(const JointBox& box, const std::vector<Event>& events) {
  Rational sum;
  for (const auto& e : events) sum += box.at(e);
  return sum;
}

void require_compatible(const JointBox& box, const HardyArgument& arg) {
  if (!(box.scenario() == arg.scenario)) throw ValidationError("box and argument have different scenarios");
  const ValidityReport report = check_box(box);
  if (!report.valid()) {
    throw ValidationError("box is not a valid no-signaling box: " + report.violations.front().constraint);
  }
}

}  // namespace

HardyArgument build_argument(ArgumentKind kind, const Scenario& s, const Rational& p, const Relabeling& relabeling,
                             bool reversed) {
  if (p.sign() < 0 || p >= Rational(1)) throw ValidationError("bound p must lie in [0, 1), got " + p.to_string());
  if (kind == ArgumentKind::Conventional && !p.is_zero()) {
    throw ValidationError("the bound p applies to relaxed arguments only");
  }
  const LogicalDims dims = logical_dims(s, relabeling);
  const ResolvedPerms perms = resolve(relabeling, dims);
  ArgumentEvents logical = logical_events(kind, reversed, dims);

  HardyArgument arg{kind, s, relabeling, p, reversed, {}};
  for (const auto& e : logical.success) arg.events.success.push_back(to_physical(e, relabeling, perms));
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& e : logical.zero[c]) arg.events.zero[c].push_back(to_physical(e, relabeling, perms));
  }
  return arg;
}

PpOutcome evaluate_pp(const JointBox& box, const HardyArgument& arg) {
  require_compatible(box, arg);
  PpOutcome out;
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& set = arg.events.zero[c];
    const Rational m = mass(box, set);
    const Rational limit = (c == kBoundedCondition) ? arg.bound : Rational(0);
    if (m > limit) {
      out.violated_condition = c;
      out.violating_mass = m;
      for (const auto& e : set) {
        if (!box.at(e).is_zero()) {
          out.violating_event = e;
          break;
        }
      }
      return out;
    }
  }
  out.satisfied = true;
  out.value = mass(box, arg.events.success);
  return out;
}

bool satisfies_conditions(const JointBox& box, const HardyArgument& arg) {
  return evaluate_pp(box, arg).satisfied;
}

LinearProgram hardy_program(const HardyArgument& arg) {
  const Scenario& s = arg.scenario;
  ConstraintSystem cs = build_polytope(s);
  auto indicator = [&](const std::vector<Event>& events) {
    RationalVector row(s.num_coords());
    for (const auto& e : events) row[index_of(s, e)] = 1;
    return row;
  };
  for (std::size_t c = 0; c < 3; ++c) {
    const std::string label = "hardy condition " + std::to_string(c + 1);
    if (c == kBoundedCondition && !arg.bound.is_zero()) {
      cs.ineq_rows.push_back({indicator(arg.events.zero[c]), arg.bound});
      cs.ineq_labels.push_back(label);
    } else {
      cs.eq_rows.push_back({indicator(arg.events.zero[c]), 0});
      cs.eq_labels.push_back(label);
    }
  }
  return cs.to_lp(indicator(arg.events.success));
}

OptimizationReport max_success_ns(const HardyArgument& arg) {
  const LpResult res = solve_max(hardy_program(arg));
  if (!res.optimal()) {
    throw InternalError("Hardy program is " + to_string(res.status) + "; the zero box family makes it feasible and bounded");
  }
  JointBox witness(arg.scenario, res.solution);
  const PpOutcome check = evaluate_pp(witness, arg);
  if (!check.satisfied || check.value != res.value) throw InternalError("LP witness does not reproduce the optimum");
  return {arg, res.value, std::move(witness), Regime::NoSignaling};
}

OptimizationReport max_success_lhv(const HardyArgument& arg) {
  if (!arg.bound.is_zero()) throw ValidationError("local-realistic optimization requires p = 0");
  const Scenario& s = arg.scenario;
  const std::set<Event> success(arg.events.success.begin(), arg.events.success.end());
  std::set<Event> forbidden;
  for (const auto& set : arg.events.zero) forbidden.insert(set.begin(), set.end());

  std::optional<DeterministicStrategy> best;
  int best_value = -1;
  for (const auto& st : all_deterministic_strategies(s)) {
    bool allowed = true;
    int value = 0;
    for (int x = 0; x < 2 && allowed; ++x) {
      for (int y = 0; y < 2 && allowed; ++y) {
        const Event e{x, y, st.alice[static_cast<std::size_t>(x)], st.bob[static_cast<std::size_t>(y)]};
        if (forbidden.count(e)) allowed = false;
        if (success.count(e)) value = 1;
      }
    }
    if (allowed && value > best_value) {
      best_value = value;
      best = st;
    }
  }
  if (!best) throw InternalError("no deterministic strategy satisfies the zero conditions");
  return {arg, Rational(best_value), deterministic_box(s, *best), Regime::LocalRealistic};
}

namespace {

std::vector<Perm> perm_family(int n, bool exhaustive) {
  std::vector<Perm> out;
  if (exhaustive) {
    Perm p = identity_perm(n);
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }
  auto add = [&](Perm p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  for (int k = 0; k < n; ++k) {
    Perm p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = (a + k) % n;
    add(std::move(p));
  }
  for (int k = 0; k < n; ++k) {
    Perm p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = ((k - a) % n + n) % n;
    add(std::move(p));
  }
  return out;
}

Perm compose(const Perm& outer, const Perm& inner) {
  Perm out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

struct Candidate {
  HardyArgument argument;
  std::vector<std::size_t> key;  // sorted physical success indices
  Rational mass;
};

std::vector<std::size_t> success_key(const Scenario& s, const std::vector<Event>& events) {
  std::vector<std::size_t> key;
  key.reserve(events.size());
  for (const auto& e : events) key.push_back(index_of(s, e));
  std::sort(key.begin(), key.end());
  return key;
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

std::vector<Candidate> search_candidates(const JointBox& box, const HardyArgument& base,
                                         const RelabelingSearch& search) {
  const Scenario& s = box.scenario();
  const Relabeling& r = base.relabeling;
  const LogicalDims dims = logical_dims(s, r);
  if (search.exhaustive) {
    for (int d : {dims.alice[0], dims.alice[1], dims.bob[0], dims.bob[1]}) {
      if (d > 4) throw ValidationError("exhaustive permutation search is limited to cardinalities <= 4");
    }
  }
  const ResolvedPerms base_perms = resolve(r, dims);

  // Candidate outcome maps per logical input: base ∘ family member.
  std::array<std::vector<Perm>, 2> alice_maps;
  std::array<std::vector<Perm>, 2> bob_maps;
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& p : perm_family(dims.alice[i], search.exhaustive)) alice_maps[i].push_back(compose(base_perms.alice[i], p));
    for (const auto& p : perm_family(dims.bob[i], search.exhaustive)) bob_maps[i].push_back(compose(base_perms.bob[i], p));
  }

  auto mapped_mass = [&](const std::vector<Event>& logical, std::size_t ia, std::size_t jb) {
    Rational sum;
    for (const auto& e : logical) {
      const auto x = static_cast<std::size_t>(e.x);
      const auto y = static_cast<std::size_t>(e.y);
      sum += box.at(physical_alice_input(r, e.x), physical_bob_input(r, e.y),
                    alice_maps[x][ia][static_cast<std::size_t>(e.a)], bob_maps[y][jb][static_cast<std::size_t>(e.b)]);
    }
    return sum;
  };

  const auto pairs = condition_pairs(base.kind);
  std::vector<Candidate> out;
  std::set<std::vector<std::size_t>> seen;

  for (bool rev : {base.reversed, !base.reversed}) {
    const ArgumentEvents logical = logical_events(base.kind, rev, dims);

    // ok[c][i][j]: zero set c holds under map i on its Alice input, j on its Bob input.
    std::array<std::vector<std::vector<bool>>, 3> ok;
    for (std::size_t c = 0; c < 3; ++c) {
      const auto [x, y] = pairs[c];
      const auto na = alice_maps[static_cast<std::size_t>(x)].size();
      const auto nb = bob_maps[static_cast<std::size_t>(y)].size();
      const Rational limit = (c == kBoundedCondition) ? base.bound : Rational(0);
      ok[c].assign(na, std::vector<bool>(nb, false));
      for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) ok[c][i][j] = mapped_mass(logical.zero[c], i, j) <= limit;
      }
    }
    auto holds = [&](std::size_t c, const std::array<std::size_t, 2>& ia, const std::array<std::size_t, 2>& jb) {
      const auto [x, y] = pairs[c];
      return static_cast<bool>(ok[c][ia[static_cast<std::size_t>(x)]][jb[static_cast<std::size_t>(y)]]);
    };

    for (std::size_t i0 = 0; i0 < alice_maps[0].size(); ++i0) {
      for (std::size_t j0 = 0; j0 < bob_maps[0].size(); ++j0) {
        const Rational m = mapped_mass(logical.success, i0, j0);
        if (m.is_zero()) continue;
        std::optional<std::array<std::size_t, 4>> found;
        for (std::size_t j1 = 0; j1 < bob_maps[1].size() && !found; ++j1) {
          for (std::size_t i1 = 0; i1 < alice_maps[1].size() && !found; ++i1) {
            const std::array<std::size_t, 2> ia{i0, i1};
            const std::array<std::size_t, 2> jb{j0, j1};
            if (holds(0, ia, jb) && holds(1, ia, jb) && holds(2, ia, jb)) found = std::array{i0, i1, j0, j1};
          }
        }
        if (!found) continue;
        Relabeling rl = r;
        rl.alice = {alice_maps[0][(*found)[0]], alice_maps[1][(*found)[1]]};
        rl.bob = {bob_maps[0][(*found)[2]], bob_maps[1][(*found)[3]]};
        HardyArgument arg = build_argument(base.kind, s, base.bound, rl, rev);
        auto key = success_key(s, arg.events.success);
        if (!seen.insert(key).second) continue;
        out.push_back({std::move(arg), std::move(key), m});
      }
    }
  }
  return out;
}

// Maximum-weight subfamily of pairwise disjoint success sets.
class Packing {
public:
  Packing(const std::vector<Candidate>& cands, const JointBox& box, Rational ceiling)
      : cands_(cands), box_(box), ceiling_(std::move(ceiling)) {}

  std::vector<std::size_t> solve(Rational start) {
    best_value_ = start;
    std::vector<std::size_t> chosen;
    std::set<std::size_t> covered;
    dfs(0, start, chosen, covered);
    return best_;
  }

  const Rational& best_value() const { return best_value_; }

private:
  void dfs(std::size_t next, const Rational& value, std::vector<std::size_t>& chosen, std::set<std::size_t>& covered) {
    if (value > best_value_) {
      best_value_ = value;
      best_ = chosen;
    }
    if (best_value_ >= ceiling_ || next == cands_.size()) return;
    // Upper bound: mass of every not-yet-covered event some remaining candidate could claim.
    std::set<std::size_t> reachable;
    for (std::size_t k = next; k < cands_.size(); ++k) {
      for (std::size_t idx : cands_[k].key) {
        if (!covered.count(idx)) reachable.insert(idx);
      }
    }
    Rational bound = value;
    for (std::size_t idx : reachable) bound += box_.table()[idx];
    if (bound <= best_value_) return;

    for (std::size_t k = next; k < cands_.size(); ++k) {
      const auto& key = cands_[k].key;
      if (std::any_of(key.begin(), key.end(), [&](std::size_t idx) { return covered.count(idx) > 0; })) continue;
      chosen.push_back(k);
      covered.insert(key.begin(), key.end());
      dfs(k + 1, value + cands_[k].mass, chosen, covered);
      for (std::size_t idx : key) covered.erase(idx);
      chosen.pop_back();
      if (best_value_ >= ceiling_) return;
    }
  }

  const std::vector<Candidate>& cands_;
  const JointBox& box_;
  Rational ceiling_;
  Rational best_value_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<HardyArgument> satisfied_relabelings(const JointBox& box, const HardyArgument& base,
                                                 const RelabelingSearch& search) {
  require_compatible(box, base);
  std::vector<HardyArgument> out;
  for (auto& c : search_candidates(box, base, search)) out.push_back(std::move(c.argument));
  return out;
}

std::optional<HardyArgument> best_satisfied_argument(const JointBox& box, ArgumentKind kind, const Rational& p,
                                                     const RelabelingSearch& search) {
  const HardyArgument identity = build_argument(kind, box.scenario(), p);
  require_compatible(box, identity);
  std::optional<HardyArgument> best;
  Rational best_mass;
  for (auto& c : search_candidates(box, identity, search)) {
    if (!best || c.mass > best_mass) {
      best_mass = c.mass;
      best = std::move(c.argument);
    }
  }
  if (!best && satisfies_conditions(box, identity)) best = identity;
  return best;
}

PnResult compute_pn(const JointBox& box, const HardyArgument& base, const RelabelingSearch& search) {
  const PpOutcome pp = evaluate_pp(box, base);
  if (!pp.satisfied) {
    throw NotSatisfiedError("box violates hardy condition " + std::to_string(pp.violated_condition + 1) +
                                " at " + to_string(pp.violating_event),
                            pp);
  }
  const auto base_key = success_key(box.scenario(), base.events.success);
  std::vector<Candidate> pool;
  for (auto& c : search_candidates(box, base, search)) {
    if (c.key != base_key && disjoint(c.key, base_key)) pool.push_back(std::move(c));
  }

  // The designated block carries total mass 1, which caps PN.
  const Event first = base.events.success.front();
  Rational block_mass;
  for (int a = 0; a < box.scenario().alice(first.x); ++a) {
    for (int b = 0; b < box.scenario().bob(first.y); ++b) block_mass += box.at(first.x, first.y, a, b);
  }
  Packing packing(pool, box, block_mass - pp.value);
  const auto chosen = packing.solve(Rational(0));

  PnResult result;
  result.pp = pp.value;
  result.pn = pp.value + packing.best_value();
  result.family.push_back(base);
  result.contributions.push_back(pp.value);
  for (std::size_t k : chosen) {
    result.family.push_back(pool[k].argument);
    result.contributions.push_back(pool[k].mass);
  }
  return result;
}

Rational ppc(const JointBox& box, const HardyArgument& base, const RelabelingSearch& search) {
  return compute_pn(box, base, search).ppc();
}

std::optional<QuantumReference> quantum_reference(ArgumentKind kind, int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  if (kind == ArgumentKind::Relaxed && d > 2) return std::nullopt;
  return QuantumReference{
      0.09016994374947424,
      "(5*sqrt(5)-11)/2",
      d > 2,
      d > 2 ? "reference only; two-qubit value, dimension independent in quantum mechanics"
            : "reference only; two-qubit maximum, irrational"};
}

}  // namespace nshardy
