#include <doctest.h>

#include <set>

#include "nshardy/error.hpp"
#include "nshardy/hardy.hpp"
#include "nshardy/vertices.hpp"

using namespace nshardy;

namespace {

using Events = std::vector<Event>;

std::set<Event> as_set(const Events& es) { return {es.begin(), es.end()}; }

JointBox pr_box() { return nonlocal_vertex(Scenario::uniform(2), {0, 0, 0}); }

// Bob's outcomes swapped on both inputs: the PR box then satisfies the conventional argument.
Relabeling pr_relabeling() {
  Relabeling r;
  r.bob[0] = {1, 0};
  r.bob[1] = {1, 0};
  return r;
}

// Second route for the local bound: LP over mixtures of deterministic boxes.
Rational lhv_by_lp(const HardyArgument& arg) {
  const Scenario& s = arg.scenario;
  std::vector<JointBox> dets;
  for (const auto& st : all_deterministic_strategies(s)) dets.push_back(deterministic_box(s, st));
  LinearProgram lp(dets.size());
  auto mass_row = [&](const Events& events) {
    RationalVector row(dets.size());
    for (std::size_t k = 0; k < dets.size(); ++k) {
      for (const auto& e : events) row[k] += dets[k].at(e);
    }
    return row;
  };
  lp.objective = mass_row(arg.events.success);
  for (const auto& set : arg.events.zero) lp.add_equality(mass_row(set), 0);
  lp.add_equality(RationalVector(dets.size(), Rational(1)), 1);
  const LpResult r = solve_max(lp);
  REQUIRE(r.optimal());
  return r.value;
}

}  // namespace

TEST_CASE("conventional events follow the four conditions, each input with its own cardinality") {
  const HardyArgument c2 = build_argument(ArgumentKind::Conventional, Scenario::uniform(2));
  CHECK(c2.events.success == Events{{0, 0, 0, 1}});
  CHECK(c2.events.zero[0] == Events{{1, 0, 1, 1}});
  CHECK(c2.events.zero[1] == Events{{0, 1, 0, 0}});
  CHECK(c2.events.zero[2] == Events{{1, 1, 0, 1}});

  const HardyArgument c = build_argument(ArgumentKind::Conventional, Scenario({2, 3}, {4, 5}));
  CHECK(c.events.success == Events{{0, 0, 0, 3}});
  CHECK(c.events.zero[0] == Events{{1, 0, 1, 3}, {1, 0, 2, 3}});
  CHECK(c.events.zero[1] == Events{{0, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 0, 2}, {0, 1, 0, 3}});
  CHECK(c.events.zero[2] == Events{{1, 1, 0, 4}});
}

TEST_CASE("relaxed events and the two-outcome reduction") {
  const HardyArgument r2 = build_argument(ArgumentKind::Relaxed, Scenario::uniform(2));
  CHECK(r2.events.success == Events{{0, 0, 0, 1}});
  CHECK(r2.events.zero[0] == Events{{1, 0, 0, 1}});
  CHECK(r2.events.zero[1] == Events{{1, 1, 1, 0}});
  CHECK(r2.events.zero[2] == Events{{0, 1, 0, 1}});

  // Swapping the outcomes of X1 and Y1 turns the conventional sets into the relaxed ones.
  Relabeling swap;
  swap.alice[1] = {1, 0};
  swap.bob[1] = {1, 0};
  const HardyArgument c2 = build_argument(ArgumentKind::Conventional, Scenario::uniform(2), 0, swap);
  CHECK(as_set(c2.events.success) == as_set(r2.events.success));
  std::set<std::set<Event>> conv, relaxed;
  for (int k = 0; k < 3; ++k) {
    conv.insert(as_set(c2.events.zero[static_cast<std::size_t>(k)]));
    relaxed.insert(as_set(r2.events.zero[static_cast<std::size_t>(k)]));
  }
  CHECK(conv == relaxed);

  const HardyArgument r3 = build_argument(ArgumentKind::Relaxed, Scenario::uniform(3));
  CHECK(r3.events.success == Events{{0, 0, 0, 1}, {0, 0, 0, 2}, {0, 0, 1, 2}});
}

TEST_CASE("argument validation") {
  const Scenario s = Scenario::uniform(3);
  Relabeling bad;
  bad.alice[0] = {0, 0, 1};
  CHECK_THROWS_AS(build_argument(ArgumentKind::Relaxed, s, 0, bad), ValidationError);
  Relabeling short_perm;
  short_perm.bob[1] = {1, 0};
  CHECK_THROWS_AS(build_argument(ArgumentKind::Relaxed, s, 0, short_perm), ValidationError);
  CHECK_THROWS_AS(build_argument(ArgumentKind::Relaxed, s, Rational(1)), ValidationError);
  CHECK_THROWS_AS(build_argument(ArgumentKind::Relaxed, s, Rational(-1, 3)), ValidationError);
  CHECK_THROWS_AS(build_argument(ArgumentKind::Conventional, s, Rational(1, 3)), ValidationError);
  CHECK_THROWS_AS(parse_argument_kind("hardy"), ValidationError);
}

TEST_CASE("input swaps relabel the designated pair") {
  Relabeling r;
  r.swap_alice_inputs = true;
  const HardyArgument arg = build_argument(ArgumentKind::Conventional, Scenario({2, 4}, {3, 3}), 0, r);
  // Logical X0 is physical X1 (4 outcomes); logical X1 is physical X0 (2 outcomes).
  CHECK(arg.events.success == Events{{1, 0, 0, 2}});
  CHECK(arg.events.zero[0] == Events{{0, 0, 1, 2}});
  CHECK(max_success_ns(arg).optimum == Rational(1, 2));
}

TEST_CASE("no-signaling optimum examples") {
  CHECK(max_success_ns(build_argument(ArgumentKind::Conventional, Scenario({2, 5}, {3, 4}))).optimum == Rational(1, 2));
  CHECK(max_success_ns(build_argument(ArgumentKind::Relaxed, Scenario::uniform(3))).optimum == Rational(2, 3));
  CHECK(max_success_ns(build_argument(ArgumentKind::Relaxed, Scenario::symmetric(3, 5))).optimum == Rational(2, 3));
  const OptimizationReport rep = max_success_ns(build_argument(ArgumentKind::Relaxed, Scenario::uniform(4)));
  CHECK(rep.regime == Regime::NoSignaling);
  CHECK(is_valid_box(rep.witness));
  const PpOutcome pp = evaluate_pp(rep.witness, rep.argument);
  CHECK(pp.satisfied);
  CHECK(pp.value == rep.optimum);
}

TEST_CASE("optimum certificate: nothing beats the reported value") {
  for (int d = 2; d <= 4; ++d) {
    for (auto kind : {ArgumentKind::Conventional, ArgumentKind::Relaxed}) {
      const HardyArgument arg = build_argument(kind, Scenario::uniform(d));
      LinearProgram lp = hardy_program(arg);
      const LpResult r = solve_max(lp);
      REQUIRE(r.optimal());
      CHECK(satisfies(lp, r.solution));
      RationalVector neg = lp.objective;
      for (auto& c : neg) c = -c;
      lp.add_inequality(neg, -(r.value + Rational(1, 1000000)));
      CHECK_FALSE(check_feasible(lp));
    }
  }
}

TEST_CASE("generalized relaxed bound is monotone in p") {
  const Scenario s = Scenario::uniform(3);
  Rational previous = -1;
  for (const Rational& p : {Rational(0), Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(9, 10)}) {
    const OptimizationReport rep = max_success_ns(build_argument(ArgumentKind::Relaxed, s, p));
    if (p.is_zero()) CHECK(rep.optimum == Rational(2, 3));
    CHECK(rep.optimum >= previous);
    CHECK(rep.optimum <= Rational(1));
    previous = rep.optimum;
  }
  CHECK(previous > Rational(2, 3));
}

TEST_CASE("local-realistic optimum is zero, by enumeration and by LP") {
  for (int d = 2; d <= 4; ++d) {
    for (auto kind : {ArgumentKind::Conventional, ArgumentKind::Relaxed}) {
      const HardyArgument arg = build_argument(kind, Scenario::uniform(d));
      const OptimizationReport rep = max_success_lhv(arg);
      CHECK(rep.optimum.is_zero());
      CHECK(rep.regime == Regime::LocalRealistic);
      CHECK(satisfies_conditions(rep.witness, arg));
      if (d <= 3) CHECK(lhv_by_lp(arg).is_zero());
    }
  }
  CHECK(max_success_lhv(build_argument(ArgumentKind::Conventional, Scenario({2, 3}, {4, 2}))).optimum.is_zero());
  CHECK_THROWS_AS(max_success_lhv(build_argument(ArgumentKind::Relaxed, Scenario::uniform(3), Rational(1, 5))),
                  ValidationError);
}

TEST_CASE("evaluate_pp") {
  const JointBox pr = pr_box();
  const PpOutcome direct = evaluate_pp(pr, build_argument(ArgumentKind::Conventional, Scenario::uniform(2)));
  CHECK_FALSE(direct.satisfied);
  const PpOutcome relabeled =
      evaluate_pp(pr, build_argument(ArgumentKind::Conventional, Scenario::uniform(2), 0, pr_relabeling()));
  REQUIRE(relabeled.satisfied);
  CHECK(relabeled.value == Rational(1, 2));

  const Scenario s3 = Scenario::uniform(3);
  const PpOutcome v3 = evaluate_pp(nonlocal_vertex(s3, relaxed_attaining_label(3)), build_argument(ArgumentKind::Relaxed, s3));
  REQUIRE(v3.satisfied);
  CHECK(v3.value == Rational(2, 3));

  // A constant-output local vertex either violates a condition or has zero success.
  for (const auto& v : enumerate_vertices(Scenario::uniform(2), VertexKind::Local)) {
    const PpOutcome o = evaluate_pp(v.box, build_argument(ArgumentKind::Conventional, Scenario::uniform(2)));
    CHECK((!o.satisfied || o.value.is_zero()));
    if (!o.satisfied) CHECK_FALSE(v.box.at(o.violating_event).is_zero());
  }

  JointBox invalid = pr;
  invalid.set({0, 0, 0, 0}, Rational(1));
  CHECK_THROWS_AS(evaluate_pp(invalid, build_argument(ArgumentKind::Relaxed, Scenario::uniform(2))), ValidationError);
  CHECK_THROWS_AS(evaluate_pp(pr, build_argument(ArgumentKind::Relaxed, Scenario::uniform(3))), ValidationError);
}

TEST_CASE("best satisfied argument finds the PR labeling") {
  const auto best = best_satisfied_argument(pr_box(), ArgumentKind::Conventional);
  REQUIRE(best.has_value());
  CHECK(evaluate_pp(pr_box(), *best).value == Rational(1, 2));
  // Identity wins ties.
  const Scenario s = Scenario::uniform(4);
  const auto v = best_satisfied_argument(nonlocal_vertex(s, relaxed_attaining_label(4)), ArgumentKind::Relaxed);
  REQUIRE(v.has_value());
  CHECK(v->relabeling.is_identity());
  CHECK_FALSE(v->reversed);
}

TEST_CASE("PN and PPC of the PR box") {
  const HardyArgument base = build_argument(ArgumentKind::Conventional, Scenario::uniform(2), 0, pr_relabeling());
  for (bool exhaustive : {false, true}) {
    const PnResult pn = compute_pn(pr_box(), base, RelabelingSearch{exhaustive});
    CHECK(pn.pp == Rational(1, 2));
    CHECK(pn.pn == Rational(1));
    CHECK(pn.ppc() == Rational(1, 2));
    CHECK(pn.family.size() == 2);
  }
  CHECK(ppc(pr_box(), base) == Rational(1, 2));
  CHECK_THROWS_AS(compute_pn(pr_box(), build_argument(ArgumentKind::Conventional, Scenario::uniform(2))),
                  NotSatisfiedError);
}

TEST_CASE("PN of the attaining nonlocal vertex is one, d = 2..6") {
  for (int d = 2; d <= 6; ++d) {
    const Scenario s = Scenario::uniform(d);
    const JointBox v = nonlocal_vertex(s, relaxed_attaining_label(d));
    const HardyArgument base = build_argument(ArgumentKind::Relaxed, s);
    const PnResult cyclic = compute_pn(v, base);
    CHECK(cyclic.pp == Rational(d - 1, d));
    CHECK(cyclic.pn == Rational(1));
    CHECK(cyclic.ppc() == Rational(1, d));
    if (d <= 4) CHECK(compute_pn(v, base, RelabelingSearch{true}).pn == Rational(1));
  }
  CHECK_THROWS_AS(compute_pn(nonlocal_vertex(Scenario::uniform(5), relaxed_attaining_label(5)),
                             build_argument(ArgumentKind::Relaxed, Scenario::uniform(5)), RelabelingSearch{true}),
                  ValidationError);
}

TEST_CASE("property: PP <= PN <= 1 and PN families are disjoint") {
  for (int d = 2; d <= 3; ++d) {
    const Scenario s = Scenario::uniform(d);
    for (auto kind : {ArgumentKind::Conventional, ArgumentKind::Relaxed}) {
      for (const auto& v : enumerate_vertices(s, VertexKind::All)) {
        for (const auto& base : satisfied_relabelings(v.box, build_argument(kind, s), RelabelingSearch{true})) {
          const PnResult pn = compute_pn(v.box, base, RelabelingSearch{true});
          CHECK(pn.pp <= pn.pn);
          CHECK(pn.pn <= Rational(1));
          std::set<Event> used;
          Rational total;
          for (std::size_t k = 0; k < pn.family.size(); ++k) {
            CHECK(satisfies_conditions(v.box, pn.family[k]));
            for (const auto& e : pn.family[k].events.success) CHECK(used.insert(e).second);
            CHECK(evaluate_pp(v.box, pn.family[k]).value == pn.contributions[k]);
            total += pn.contributions[k];
          }
          CHECK(total == pn.pn);
          // Local boxes never carry Hardy success mass.
          if (v.kind == VertexKind::Local) CHECK(pn.pn.is_zero());
        }
      }
    }
  }
}

TEST_CASE("local boxes have PN = PP = 0 whenever the argument is satisfied") {
  const Scenario s = Scenario::uniform(3);
  const HardyArgument base = build_argument(ArgumentKind::Relaxed, s);
  int satisfied = 0;
  for (const auto& v : enumerate_vertices(s, VertexKind::Local)) {
    if (!satisfies_conditions(v.box, base)) continue;
    ++satisfied;
    const PnResult pn = compute_pn(v.box, base);
    CHECK(pn.pp.is_zero());
    CHECK(pn.ppc().is_zero());
  }
  CHECK(satisfied > 0);
}

TEST_CASE("LP witnesses decompose over the 24 vertices at d = 2") {
  std::vector<JointBox> gens;
  for (const auto& v : enumerate_vertices(Scenario::uniform(2), VertexKind::All)) gens.push_back(v.box);
  for (auto kind : {ArgumentKind::Conventional, ArgumentKind::Relaxed}) {
    const OptimizationReport rep = max_success_ns(build_argument(kind, Scenario::uniform(2)));
    CHECK(rep.optimum == Rational(1, 2));
    CHECK(is_convex_combination(rep.witness, gens));
  }
}

TEST_CASE("quantum reference constant") {
  const auto c2 = quantum_reference(ArgumentKind::Conventional, 2);
  REQUIRE(c2.has_value());
  CHECK(c2->approx == doctest::Approx(0.09017).epsilon(1e-4));
  CHECK_FALSE(c2->dimension_independent);
  CHECK_FALSE(quantum_reference(ArgumentKind::Relaxed, 3).has_value());
  const auto c3 = quantum_reference(ArgumentKind::Conventional, 3);
  REQUIRE(c3.has_value());
  CHECK(c3->approx == c2->approx);
  CHECK(c3->dimension_independent);
}
