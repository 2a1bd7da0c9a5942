#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nshardy/error.hpp"
#include "nshardy/io.hpp"
#include "nshardy/vertices.hpp"

namespace nshardy::cli {

using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

JointBox read_box(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open box file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse box file '" + path + "': " + e.what());
  }
  return box_from_json(j);
}

json pn_to_json(const PnResult& pn) {
  json family = json::array();
  for (std::size_t k = 0; k < pn.family.size(); ++k) {
    family.push_back({{"argument", argument_to_json(pn.family[k])}, {"success_mass", pn.contributions[k].to_string()}});
  }
  return {{"pp", pn.pp.to_string()},     {"pn", pn.pn.to_string()},       {"ppc", pn.ppc().to_string()},
          {"pp_decimal", pn.pp.to_decimal()}, {"pn_decimal", pn.pn.to_decimal()}, {"ppc_decimal", pn.ppc().to_decimal()},
          {"family", std::move(family)}};
}

json not_satisfied_json(const PpOutcome& o) {
  return {{"satisfied", false},
          {"violated_condition", o.violated_condition + 1},
          {"violating_event", event_to_json(o.violating_event)},
          {"violating_mass", o.violating_mass.to_string()}};
}

// Shared by `verify` and `pn`: pick the identity argument, or the best
// satisfied relabeling when the identity labeling is violated.
json analyse(const JointBox& box, ArgumentKind kind, const Rational& p, bool exhaustive, bool include_validity,
             bool& valid) {
  json out;
  const ValidityReport validity = check_box(box);
  valid = validity.valid();
  if (include_validity) {
    json violations = json::array();
    for (const auto& v : validity.violations) {
      violations.push_back({{"kind", to_string(v.kind)}, {"constraint", v.constraint}, {"residual", v.residual.to_string()}});
    }
    out["valid"] = valid;
    out["violations"] = std::move(violations);
  }
  if (!valid) return out;

  const RelabelingSearch search{exhaustive};
  const HardyArgument identity = build_argument(kind, box.scenario(), p);
  const PpOutcome direct = evaluate_pp(box, identity);
  std::optional<HardyArgument> chosen;
  if (direct.satisfied) {
    chosen = identity;
  } else {
    chosen = best_satisfied_argument(box, kind, p, search);
    out["identity_labeling"] = not_satisfied_json(direct);
  }
  if (!chosen) {
    out["pp"] = not_satisfied_json(direct);
    out["pn"] = nullptr;
    return out;
  }
  const PnResult pn = compute_pn(box, *chosen, search);
  out["argument"] = argument_to_json(*chosen);
  out["pp"] = pn.pp.to_string();
  out["pn"] = pn.pn.to_string();
  out["ppc"] = pn.ppc().to_string();
  out["pn_detail"] = pn_to_json(pn);
  return out;
}

}  // namespace

Scenario parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      dims.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--dims expects four integers a0,a1,b0,b1; got '" + text + "'");
    }
  }
  if (dims.size() != 4) throw ValidationError("--dims expects four integers a0,a1,b0,b1; got '" + text + "'");
  return Scenario({dims[0], dims[1]}, {dims[2], dims[3]});
}

SweepRow compute_sweep_row(int d) {
  const Scenario s = Scenario::uniform(d);
  SweepRow row;
  row.d = d;
  row.q_h_gnst = max_success_ns(build_argument(ArgumentKind::Conventional, s)).optimum;
  const HardyArgument relaxed = build_argument(ArgumentKind::Relaxed, s);
  row.q_rh_gnst = max_success_ns(relaxed).optimum;

  // PPC at the optimum: first nonlocal vertex (label order) that satisfies
  // the relaxed argument with PP equal to the LP optimum.
  std::optional<JointBox> attaining;
  for (int al = 0; al < d && !attaining; ++al) {
    for (int be = 0; be < d && !attaining; ++be) {
      for (int ga = 0; ga < d && !attaining; ++ga) {
        JointBox box = nonlocal_vertex(s, {al, be, ga});
        const PpOutcome pp = evaluate_pp(box, relaxed);
        if (pp.satisfied && pp.value == row.q_rh_gnst) attaining = std::move(box);
      }
    }
  }
  if (!attaining) throw InternalError("no nonlocal vertex attains the relaxed optimum at d=" + std::to_string(d));
  row.ppc_gnst = ppc(*attaining, relaxed, RelabelingSearch{d <= 4});
  if (auto q = quantum_reference(ArgumentKind::Conventional, d); q && d == 2) row.quantum_ref = q->approx;
  return row;
}

std::vector<SweepRow> compute_sweep(int d_min, int d_max, int cap) {
  if (d_min < 2 || d_min > d_max || d_max > cap) {
    throw ValidationError("sweep needs 2 <= d-min <= d-max <= " + std::to_string(cap));
  }
  std::vector<SweepRow> rows;
  for (int d = d_min; d <= d_max; ++d) rows.push_back(compute_sweep_row(d));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "d,q_H_gnst,q_RH_gnst,PPC_gnst,quantum_ref,q_H_gnst_decimal,q_RH_gnst_decimal,PPC_gnst_decimal\n";
  for (const auto& r : rows) {
    std::string q;
    if (r.quantum_ref) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", *r.quantum_ref);
      q = buf;
    }
    out += std::to_string(r.d) + "," + r.q_h_gnst.to_string() + "," + r.q_rh_gnst.to_string() + "," +
           r.ppc_gnst.to_string() + "," + q + "," + r.q_h_gnst.to_decimal() + "," + r.q_rh_gnst.to_decimal() + "," +
           r.ppc_gnst.to_decimal() + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Hardy-paradox optimization over no-signaling boxes", "nshardy"};
  app.require_subcommand(1);

  std::string kind_text = "relaxed";
  std::string dims_text;
  std::string p_text = "0";
  std::string regime = "ns";
  std::string out_path;
  std::string box_path;
  std::string vertex_kind = "all";
  int d_min = 2;
  int d_max = 10;
  int cap = kDefaultSweepCap;
  bool exhaustive = false;

  const std::vector<std::string> kinds{"conventional", "relaxed"};

  auto* optimize = app.add_subcommand("optimize", "Maximize a Hardy success probability");
  optimize->add_option("--kind", kind_text)->check(CLI::IsMember(kinds));
  optimize->add_option("--dims", dims_text, "a0,a1,b0,b1")->required();
  optimize->add_option("--p", p_text, "bound on the last relaxed condition, num/den");
  optimize->add_option("--regime", regime)->check(CLI::IsMember({"ns", "lhv"}));

  auto* sweep = app.add_subcommand("sweep", "CSV of q_H, q_RH and PPC against d");
  sweep->add_option("--d-min", d_min);
  sweep->add_option("--d-max", d_max);
  sweep->add_option("--cap", cap, "largest d accepted");
  sweep->add_option("--out", out_path, "CSV path (stdout when omitted)");

  auto* vertices = app.add_subcommand("vertices", "List closed-form vertices as JSON lines");
  vertices->add_option("--dims", dims_text)->required();
  vertices->add_option("--kind", vertex_kind)->check(CLI::IsMember({"local", "nonlocal", "all"}));

  auto* verify = app.add_subcommand("verify", "Validity, PP, PN and PPC of a box file");
  verify->add_option("box", box_path)->required();
  verify->add_option("--kind", kind_text)->check(CLI::IsMember(kinds));
  verify->add_option("--p", p_text);
  verify->add_flag("--exhaustive-perms", exhaustive);

  auto* pn = app.add_subcommand("pn", "PN family of a box file");
  pn->add_option("box", box_path)->required();
  pn->add_option("--kind", kind_text)->check(CLI::IsMember(kinds));
  pn->add_option("--p", p_text);
  pn->add_flag("--exhaustive-perms", exhaustive);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const Rational p = Rational::parse(p_text);
    if (optimize->parsed()) {
      const Scenario s = parse_dims(dims_text);
      const HardyArgument arg = build_argument(parse_argument_kind(kind_text), s, p);
      const OptimizationReport report = regime == "ns" ? max_success_ns(arg) : max_success_lhv(arg);
      out << report_to_json(report).dump(2) << "\n";
      return 0;
    }
    if (sweep->parsed()) {
      const std::string csv = sweep_csv(compute_sweep(d_min, d_max, cap));
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw IoError("cannot write '" + out_path + "'");
        file << csv;
        if (!file) throw IoError("failed writing '" + out_path + "'");
      }
      return 0;
    }
    if (vertices->parsed()) {
      for (const auto& v : enumerate_vertices(parse_dims(dims_text), parse_vertex_kind(vertex_kind))) {
        out << vertex_to_json(v).dump() << "\n";
      }
      return 0;
    }
    if (verify->parsed() || pn->parsed()) {
      const JointBox box = read_box(box_path);
      bool valid = false;
      const json report = analyse(box, parse_argument_kind(kind_text), p, exhaustive, verify->parsed(), valid);
      if (!valid && pn->parsed()) {
        err << "error: box is not a valid no-signaling box\n";
        return kExitInvalid;
      }
      out << report.dump(2) << "\n";
      return valid ? 0 : kExitInvalid;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 1;
}

}  // namespace nshardy::cli
