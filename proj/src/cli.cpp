#include "wkit/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "wkit/error.hpp"
#include "wkit/io.hpp"

namespace wkit::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

/// What a command prints: human lines, or the JSON report behind --json.
struct RunReport {
  std::string command;
  std::string verdict = "pass";
  std::vector<std::string> lines;
  json details = json::object();
  std::optional<json> counterexample;
  std::optional<json> instance;
  double elapsed_ms = 0;

  json to_json() const {
    json j{{"command", command}, {"verdict", verdict}, {"elapsed_ms", elapsed_ms}};
    if (!details.empty()) j["details"] = details;
    if (counterexample) j["counterexample"] = *counterexample;
    if (instance) j["instance"] = *instance;
    return j;
  }
};

json violation_json(const Violation& v, const WitnessTable& keys) {
  return json{{"check", std::string(to_string(v.check))},
              {"X", keys.key(v.x)},
              {"A", keys.key(v.a)},
              {"value", io::to_json(v.value)}};
}

std::string violation_text(const Violation& v, const WitnessTable& keys) {
  return std::string(to_string(v.check)) + " fails at X={" + keys.key(v.x) + "}, A={" + keys.key(v.a) +
         "}: value " + to_string(v.value);
}

int reject(RunReport& report, const Violation& v, const WitnessTable& keys, const std::string& prefix) {
  report.verdict = "fail";
  report.counterexample = violation_json(v, keys);
  report.lines.push_back(prefix + violation_text(v, keys));
  return rejected;
}

// ---------------------------------------------------------------------------

struct Options {
  std::string file;
  std::string from_key;
  std::string to_key;
  std::string request;
  std::string output;
  std::size_t budget = 64;
  std::size_t max_atoms = 0;
};

int cmd_verify(const Options& opt, RunReport& report) {
  const WitnessTable table = io::witness_from_json(io::load_json_file(opt.file));
  const DeltaReport axioms = verify_witness(table);
  report.details["pairs"] = axioms.checked;
  report.details["ground_size"] = table.ground_size();
  if (!axioms.passed()) return reject(report, *axioms.violation, table, "FAIL ");
  const DeltaReport derived = check_derived_properties(table);
  if (!derived.passed()) return reject(report, *derived.violation, table, "FAIL derived property ");
  report.lines.push_back("PASS: witness mapping on " + std::to_string(table.ground_size()) + " elements (" +
                         std::to_string(axioms.checked) + " pairs checked)");
  return pass;
}

int cmd_properties(const Options& opt, RunReport& report) {
  const WitnessTable table = io::witness_from_json(io::load_json_file(opt.file));
  const DeltaReport axioms = verify_witness(table);
  if (!axioms.passed()) return reject(report, *axioms.violation, table, "FAIL not a witness mapping: ");
  const DeltaReport derived = check_derived_properties(table);
  if (!derived.passed()) return reject(report, *derived.violation, table, "FAIL ");
  const EffectAlgebra& alg = *table.algebra();
  const bool zero = table.find_value(alg.zero()).has_value();
  const bool unit = table.find_value(alg.unit()).has_value();
  report.details["delta_below_unit"] = true;
  report.details["antitone"] = true;
  report.details["lower_bound"] = true;
  report.details["zero_absorbs"] = zero ? json(true) : json("n/a");
  report.details["unit_neutral"] = unit ? json(true) : json("n/a");
  report.lines.push_back("D(X,A) <= u for all pairs: holds");
  report.lines.push_back("beta antitone: holds");
  report.lines.push_back("beta(X) lower bound of X: holds");
  report.lines.push_back(std::string("0 in X => beta(X) = 0: ") + (zero ? "holds" : "n/a (0 not in S)"));
  report.lines.push_back(std::string("beta(X) = beta(X + u): ") + (unit ? "holds" : "n/a (u not in S)"));
  return pass;
}

int cmd_delta(const Options& opt, RunReport& report) {
  const WitnessTable table = io::witness_from_json(io::load_json_file(opt.file));
  const FinSubset x = table.parse_key(opt.from_key);
  const FinSubset a = table.parse_key(opt.to_key);
  if (!x.subset_of(a)) throw PreconditionError("--from must be a subset of --to");
  const GroupValue d = delta(table.values(), x, a);
  report.details["X"] = table.key(x);
  report.details["A"] = table.key(a);
  report.details["value"] = io::to_json(d);
  report.lines.push_back("D({" + table.key(x) + "}, {" + table.key(a) + "}) = " + to_string(d));
  return pass;
}

// Extension requests ---------------------------------------------------------

struct Built {
  ExtensionCandidate candidate;
  std::string label;
};

std::vector<std::string> label_list(const json& j) {
  if (!j.is_array()) throw LoadError("expected a list of labels");
  return j.get<std::vector<std::string>>();
}

Built build_candidate(const json& request, const WitnessPair& pair, const fs::path& base_dir);

ExtensionCandidate candidate_ref(const json& ref, const WitnessPair& pair, const fs::path& base_dir) {
  if (ref.is_string()) {
    const fs::path path = base_dir / ref.get<std::string>();
    return io::candidate_from_json(io::load_json_file(path), pair.table());
  }
  if (ref.is_object() && ref.contains("method")) return build_candidate(ref, pair, base_dir).candidate;
  if (ref.is_object()) return io::candidate_from_json(ref, pair.table());
  throw LoadError("candidate reference must be a path, a candidate object or a request object");
}

const json& need(const json& request, const char* name) {
  auto it = request.find(name);
  if (it == request.end()) throw LoadError(std::string("request is missing '") + name + "'");
  return *it;
}

Built build_candidate(const json& request, const WitnessPair& pair, const fs::path& base_dir) {
  const WitnessTable& table = pair.table();
  const GroupSpec& group = pair.algebra()->group();
  const std::string method = need(request, "method").get<std::string>();
  std::optional<std::string> label;
  if (request.contains("label")) label = request["label"].get<std::string>();

  auto pick = [&](std::string fallback) { return label.value_or(fresh_label(table, fallback)); };

  if (method == "zero") return {candidate_zero(pair), pick("0")};
  if (method == "one") return {candidate_one(pair), pick("1")};
  if (method == "complement") {
    const std::string u = need(request, "u").get<std::string>();
    return {candidate_complement(pair, u), pick(u + "'")};
  }
  if (method == "range") {
    const FinSubset u = table.subset_of_labels(label_list(need(request, "U")));
    std::string key = table.key(u);
    std::replace(key.begin(), key.end(), ',', ';');
    return {candidate_range(pair, u), pick("min(" + key + ")")};
  }
  if (method == "commuting") {
    const GroupValue t = io::group_value_from_json(need(request, "t"), group);
    return {candidate_commuting(pair, t), pick("t")};
  }
  if (method == "convex") {
    const Rational theta = parse_rational(need(request, "theta").get<std::string>());
    const ExtensionCandidate c1 = candidate_ref(need(request, "c1"), pair, base_dir);
    const ExtensionCandidate c2 = candidate_ref(need(request, "c2"), pair, base_dir);
    return {candidate_convex(pair, c1, c2, theta), pick("v")};
  }
  if (method == "custom") return {candidate_ref(need(request, "candidate"), pair, base_dir), pick("t")};
  throw LoadError("unknown extension method '" + method + "'");
}

std::optional<WitnessPair> load_pair(const std::string& file, RunReport& report) {
  WitnessTable table = io::witness_from_json(io::load_json_file(file));
  const DeltaReport axioms = verify_witness(table);
  if (!axioms.passed()) {
    reject(report, *axioms.violation, table, "FAIL input is not a witness mapping: ");
    return std::nullopt;
  }
  return WitnessPair(std::move(table));
}

int cmd_extend(const Options& opt, RunReport& report) {
  const std::optional<WitnessPair> pair = load_pair(opt.file, report);
  if (!pair) return rejected;
  const json request = io::load_json_file(opt.request);
  const Built built = [&] {
    try {
      return build_candidate(request, *pair, fs::path(opt.request).parent_path());
    } catch (const json::exception& e) {
      throw LoadError(std::string("request: ") + e.what());
    }
  }();
  report.details["method"] = request.value("method", "");
  report.details["label"] = built.label;
  report.details["target"] = io::to_json(built.candidate.target());

  const DeltaReport check = check_candidate(*pair, built.candidate);
  if (!check.passed()) return reject(report, *check.violation, pair->table(), "FAIL candidate rejected: ");

  const WitnessPair extended = assemble_extension(*pair, built.candidate, built.label);
  const json instance = io::to_json(extended.table());
  if (!opt.output.empty()) io::write_json_file(opt.output, instance);
  report.instance = instance;
  report.lines.push_back("PASS: extended by '" + built.label + "' = " + to_string(built.candidate.target()) +
                         "; new ground size " + std::to_string(extended.table().ground_size()));
  if (!opt.output.empty()) report.lines.push_back("wrote " + opt.output);
  return pass;
}

int cmd_closure(const Options& opt, RunReport& report) {
  const std::optional<WitnessPair> pair = load_pair(opt.file, report);
  if (!pair) return rejected;
  const ClosureResult result = closure_scan(*pair, opt.budget);
  json steps = json::array();
  for (const auto& s : result.steps) {
    steps.push_back({{"method", s.method}, {"label", s.label}, {"value", io::to_json(s.value)}});
    report.lines.push_back("added '" + s.label + "' = " + to_string(s.value) + " (" + s.method + ")");
  }
  report.details["steps"] = steps;
  report.details["fixed_point"] = result.fixed_point;
  report.details["budget_exhausted"] = result.budget_exhausted;
  report.details["scope_limited"] = result.scope_limited;
  report.details["has_zero"] = result.has_zero;
  report.details["has_unit"] = result.has_unit;
  report.details["closed_under_complement"] = result.closed_under_complement;
  report.details["range_in_ground"] = result.range_in_ground;

  const json instance = io::to_json(result.pair.table());
  if (!opt.output.empty()) io::write_json_file(opt.output, instance);
  report.instance = instance;

  auto yes = [](bool b) { return b ? "yes" : "no"; };
  report.lines.push_back(std::string("0 in S: ") + yes(result.has_zero) + ", 1 in S: " + yes(result.has_unit) +
                         ", closed under ': " + yes(result.closed_under_complement) +
                         ", ran(beta) in S: " + yes(result.range_in_ground));
  if (!result.fixed_point) {
    report.verdict = "partial";
    report.lines.push_back(result.budget_exhausted ? "PARTIAL: step budget exhausted"
                                                   : "PARTIAL: ground set reached 16 elements");
    return rejected;
  }
  report.lines.push_back("PASS: fixed point after " + std::to_string(result.steps.size()) + " steps, ground size " +
                         std::to_string(result.pair.table().ground_size()));
  return pass;
}

int cmd_oracle(const Options& opt, RunReport& report) {
  const json doc = io::load_json_file(opt.file);
  const AlgebraRef algebra = io::algebra_from_json(doc.at("algebra"));
  const auto ground = io::ground_from_json(doc.at("ground"), *algebra);
  if (algebra->group().kind() != GroupKind::zvec)
    throw UnsupportedInstance("oracle search needs the zvec backend");
  const auto found = find_observable(algebra, ground, opt.max_atoms);
  if (!found) {
    report.verdict = "fail";
    report.lines.push_back("not found within budget (" + std::to_string(opt.max_atoms) + " atoms)");
    return rejected;
  }
  const json obs = io::to_json(*found);
  report.details["observable"] = obs;
  std::string atoms;
  for (const auto& a : found->atoms()) atoms += (atoms.empty() ? "" : " ") + to_string(a);
  report.lines.push_back("FOUND: atoms " + atoms);
  for (const auto& l : found->labels()) {
    std::string idx;
    for (std::size_t i = 0; i < found->atoms().size(); ++i)
      if (l.atoms.contains(i)) idx += (idx.empty() ? "" : ",") + std::to_string(i);
    report.lines.push_back("  " + l.name + " -> {" + idx + "}");
  }
  return pass;
}

int cmd_from_observable(const Options& opt, RunReport& report) {
  const Observable obs = io::observable_from_json(io::load_json_file(opt.file));
  const WitnessTable table = witness_from_observable(obs);
  const DeltaReport axioms = verify_witness(table);
  const json instance = io::to_json(table);
  if (!opt.output.empty()) io::write_json_file(opt.output, instance);
  report.instance = instance;
  if (!axioms.passed()) return reject(report, *axioms.violation, table, "FAIL ");
  report.lines.push_back("PASS: witness mapping on " + std::to_string(table.ground_size()) + " elements");
  if (!opt.output.empty()) report.lines.push_back("wrote " + opt.output);
  return pass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Witness-mapping toolkit for interval effect algebras", "wkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  Options opt;
  auto* verify = app.add_subcommand("verify", "Check the witness axioms and derived properties");
  verify->add_option("file", opt.file)->required();
  auto* properties = app.add_subcommand("properties", "Report the derived properties of a witness mapping");
  properties->add_option("file", opt.file)->required();
  auto* delta_cmd = app.add_subcommand("delta", "Evaluate D(X, A)");
  delta_cmd->add_option("file", opt.file)->required();
  delta_cmd->add_option("--from", opt.from_key, "Subset key of X")->required();
  delta_cmd->add_option("--to", opt.to_key, "Subset key of A")->required();
  auto* extend = app.add_subcommand("extend", "Extend a witness pair by one element");
  extend->add_option("file", opt.file)->required();
  extend->add_option("--request", opt.request, "Extension request JSON")->required();
  extend->add_option("-o,--output", opt.output, "Where to write the extended instance");
  auto* closure = app.add_subcommand("closure", "Greedy closure under the built-in constructions");
  closure->add_option("file", opt.file)->required();
  closure->add_option("--budget", opt.budget, "Maximum number of extension steps");
  closure->add_option("-o,--output", opt.output, "Where to write the closed instance");
  auto* oracle = app.add_subcommand("oracle", "Search for a covering simple observable (zvec)");
  oracle->add_option("file", opt.file)->required();
  oracle->add_option("--max-atoms", opt.max_atoms, "Atom budget")->required();
  auto* from_obs = app.add_subcommand("from-observable", "Witness mapping induced by an observable");
  from_obs->add_option("file", opt.file)->required();
  from_obs->add_option("-o,--output", opt.output, "Where to write the witness instance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, out);
    return code == 0 ? pass : usage;
  }

  RunReport report;
  report.command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  int code = usage;
  try {
    if (*verify) code = cmd_verify(opt, report);
    else if (*properties) code = cmd_properties(opt, report);
    else if (*delta_cmd) code = cmd_delta(opt, report);
    else if (*extend) code = cmd_extend(opt, report);
    else if (*closure) code = cmd_closure(opt, report);
    else if (*oracle) code = cmd_oracle(opt, report);
    else if (*from_obs) code = cmd_from_observable(opt, report);
  } catch (const LoadError& e) {
    report.verdict = "error";
    report.lines.push_back(std::string("error: ") + e.what());
    code = usage;
  } catch (const UnsupportedInstance& e) {
    report.verdict = "error";
    report.lines.push_back(std::string("unsupported: ") + e.what());
    code = report.command == "extend" ? rejected : usage;
  } catch (const RejectedCandidate& e) {
    report.verdict = "fail";
    report.lines.push_back(std::string("FAIL ") + e.what());
    code = rejected;
  } catch (const AlreadyPresent& e) {
    report.verdict = "fail";
    report.lines.push_back(std::string("FAIL not applicable: ") + e.what());
    code = rejected;
  } catch (const CommutationFailure& e) {
    report.verdict = "fail";
    report.lines.push_back(std::string("FAIL not applicable: ") + e.what());
    code = rejected;
  } catch (const PreconditionError& e) {
    report.verdict = report.command == "extend" ? "fail" : "error";
    report.lines.push_back(std::string(report.command == "extend" ? "FAIL not applicable: " : "error: ") + e.what());
    code = report.command == "extend" ? rejected : usage;
  } catch (const Error& e) {
    report.verdict = "error";
    report.lines.push_back(std::string("error: ") + e.what());
    code = usage;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (as_json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    for (const auto& line : report.lines) out << line << '\n';
  }
  return code;
}

}  // namespace wkit::cli
