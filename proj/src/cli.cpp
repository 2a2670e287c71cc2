#include "spectrum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "spectrum/error.hpp"
#include "spectrum/laws.hpp"
#include "spectrum/oracles.hpp"
#include "spectrum/separators.hpp"
#include "spectrum/theory.hpp"

namespace spectrum::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string semantics;
  std::optional<int> depth;
  std::string states;
  std::string format = "text";
  std::vector<std::string> files;
  std::string formula;
  std::string term;
  std::string alphabet = "a,b";
  std::string sizes = "0,1,2";
  std::uint64_t seed = 0;
  std::string mutant;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    auto b = part.find_first_not_of(" \t");
    auto e = part.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
  }
  return out;
}

std::size_t parse_index(const std::string& text, const std::string& flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(flag + ": expected a non-negative integer, got '" + text + "'");
  return std::stoul(text);
}

SemanticsId semantics_flag(const Options& o, bool required = true) {
  if (o.semantics.empty()) {
    if (required) throw UsageError("--semantics is required");
    return SemanticsId::Trace;
  }
  auto s = parse_semantics(o.semantics);
  if (!s) {
    std::string names;
    for (auto x : all_semantics) names += (names.empty() ? "" : ", ") + std::string(name(x));
    throw UsageError("--semantics: unknown semantics '" + o.semantics + "' (one of " + names + ")");
  }
  return *s;
}

std::size_t num_states(const Model& m) {
  return std::visit([](const auto& x) { return x.num_states(); }, m);
}

const Alphabet& alphabet_of(const Model& m) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet(); }, m);
}

StateId initial_of(const Model& m) {
  return std::visit([](const auto& x) { return x.initial(); }, m);
}

class InputError : public Error {
public:
  using Error::Error;
};

Gps gps_union(const Gps& a, const Gps& b) {
  Alphabet al = a.alphabet();
  for (const auto& l : b.alphabet().labels()) al.intern(l);
  std::vector<std::vector<GpsEntry>> rows;
  for (StateId x = 0; x < a.num_states(); ++x) rows.emplace_back(a.row(x).begin(), a.row(x).end());
  const auto shift = static_cast<StateId>(a.num_states());
  for (StateId x = 0; x < b.num_states(); ++x) {
    std::vector<GpsEntry> row;
    for (const auto& e : b.row(x)) row.push_back({e.prob, *al.find(b.alphabet().label(e.act)), e.dst + shift});
    rows.push_back(std::move(row));
  }
  return Gps(a.num_states() + b.num_states(), a.initial(), std::move(al), std::move(rows));
}

struct Input {
  Model model;
  std::size_t offset = 0;  // first state of the second file
  std::size_t files = 1;
  StateId second_initial = 0;
};

Model load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw InputError(path + ": cannot open file");
  try {
    return load_model(path);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Input load_input(const Options& o) {
  if (o.files.empty()) throw UsageError("a model file is required");
  if (o.files.size() > 2) throw UsageError("at most two model files");
  Input in{load(o.files[0]), 0, o.files.size()};
  if (o.files.size() == 2) {
    Model second = load(o.files[1]);
    if (in.model.index() != second.index()) throw InputError("cannot compare an LTS with a GPS");
    in.offset = num_states(in.model);
    in.second_initial = static_cast<StateId>(in.offset) + initial_of(second);
    if (auto* a = std::get_if<Lts>(&in.model))
      in.model = disjoint_union(*a, std::get<Lts>(second));
    else
      in.model = gps_union(std::get<Gps>(in.model), std::get<Gps>(second));
  }
  return in;
}

std::vector<StateId> state_list(const Options& o, const Input& in) {
  std::vector<StateId> out;
  for (const auto& part : split(o.states, ',')) {
    auto v = parse_index(part, "--states");
    if (in.files == 2 && out.size() == 1) v += in.offset;
    if (v >= num_states(in.model))
      throw UsageError("--states: state " + part + " out of range (" + std::to_string(num_states(in.model)) +
                       " states)");
    out.push_back(static_cast<StateId>(v));
  }
  return out;
}

std::pair<StateId, StateId> state_pair(const Options& o, const Input& in) {
  if (o.states.empty()) {
    if (in.files == 2) return {initial_of(in.model), in.second_initial};
    throw UsageError("--states i,j is required with a single model file");
  }
  auto s = state_list(o, in);
  if (s.size() != 2) throw UsageError("--states: expected two states i,j");
  return {s[0], s[1]};
}

std::vector<StateId> states_or_all(const Options& o, const Input& in) {
  if (!o.states.empty()) return state_list(o, in);
  std::vector<StateId> all(num_states(in.model));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<StateId>(i);
  return all;
}

int default_depth(const Model& m, SemanticsId sem) {
  if (is_coinductive(sem)) return stabilization_depth(std::get<Lts>(m), sem);
  return 2 * static_cast<int>(num_states(m));
}

int depth_flag(const Options& o, const Model& m, SemanticsId sem) {
  if (!o.depth) return default_depth(m, sem);
  if (*o.depth < 0) throw UsageError("--depth: must be non-negative");
  return *o.depth;
}

struct Unbounded {
  std::string method;
  bool equivalent;
};

Unbounded unbounded_verdict(const Model& m, SemanticsId sem, StateId x, StateId y) {
  if (is_coinductive(sem)) {
    int s = stabilization_depth(std::get<Lts>(m), sem);
    return {"fixpoint", equivalent(m, sem, x, y, s)};
  }
  if (is_probabilistic(sem)) return {"graded-bounded", equivalent(m, sem, x, y, static_cast<int>(num_states(m)))};
  return {"automata-oracle", full_trace_like_equivalent(std::get<Lts>(m), sem, x, y)};
}

std::string verdict(bool eq) { return eq ? "equivalent" : "inequivalent"; }

json null_or(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json omega_json(const Omega& o) {
  if (auto* b = std::get_if<bool>(&o)) return *b;
  return render(o);
}

// ---- subcommands -------------------------------------------------------------------------------------

void cmd_check(const Options& o, std::ostream& out) {
  SemanticsId sem = semantics_flag(o);
  Input in = load_input(o);
  require_compatible(in.model, sem);
  auto [x, y] = state_pair(o, in);
  int depth = depth_flag(o, in.model, sem);
  BetaTable table = beta_sequence(in.model, sem, depth);
  auto fd = first_difference(table, x, y);
  Unbounded u = unbounded_verdict(in.model, sem, x, y);
  if (o.format == "json") {
    json per = json::array();
    for (int k = 0; k <= depth; ++k) per.push_back(table[k][x] == table[k][y]);
    json j{{"version", 1},
           {"command", "check"},
           {"semantics", name(sem)},
           {"states", {x, y}},
           {"depth", depth},
           {"per_depth", per},
           {"first_difference", null_or(fd)},
           {"bounded_verdict", verdict(!fd)},
           {"unbounded", {{"method", u.method}, {"equivalent", u.equivalent}}}};
    out << j.dump(2) << "\n";
    return;
  }
  for (int k = 0; k <= depth; ++k) out << "depth " << k << ": " << verdict(table[k][x] == table[k][y]) << "\n";
  if (fd)
    out << "inequivalent at depth " << *fd << "\n";
  else
    out << "equivalent up to depth " << depth << "\n";
  out << "unbounded (" << u.method << "): " << verdict(u.equivalent) << "\n";
}

void cmd_distinguish(const Options& o, std::ostream& out) {
  SemanticsId sem = semantics_flag(o);
  Input in = load_input(o);
  require_compatible(in.model, sem);
  auto [x, y] = state_pair(o, in);
  int depth = depth_flag(o, in.model, sem);
  auto w = distinguish(in.model, sem, x, y, depth);
  const Alphabet& al = alphabet_of(in.model);
  if (o.format == "json") {
    json j{{"version", 1}, {"command", "distinguish"}, {"semantics", name(sem)}, {"states", {x, y}}, {"depth", depth}};
    if (w)
      j["witness"] = {{"formula", print(w->formula, al)},
                      {"depth", w->depth},
                      {"at_x", omega_json(w->at_x)},
                      {"at_y", omega_json(w->at_y)}};
    else
      j["witness"] = nullptr;
    out << j.dump(2) << "\n";
    return;
  }
  if (!w) {
    out << "equivalent up to depth " << depth << "\n";
    return;
  }
  out << print(w->formula, al) << "\n";
  out << "depth " << w->depth << ": " << render(w->at_x) << " at " << x << ", " << render(w->at_y) << " at " << y
      << "\n";
}

void cmd_eval(const Options& o, std::ostream& out) {
  SemanticsId sem = semantics_flag(o);
  if (o.formula.empty()) throw UsageError("--formula is required");
  Input in = load_input(o);
  require_compatible(in.model, sem);
  auto vocab = vocabulary(sem, alphabet_of(in.model));
  Formula f = parse_formula(o.formula, vocab);
  auto states = states_or_all(o, in);
  auto values = eval_states(f, vocab, in.model);
  if (o.format == "json") {
    json vals = json::array();
    for (auto x : states) vals.push_back({{"state", x}, {"value", omega_json(values[x])}});
    json j{{"version", 1},
           {"command", "eval"},
           {"semantics", name(sem)},
           {"formula", print(f, vocab.alphabet)},
           {"depth", uniform_depth(f)},
           {"values", vals}};
    out << j.dump(2) << "\n";
    return;
  }
  if (states.size() == 1) {
    out << render(values[states[0]]) << "\n";
    return;
  }
  for (auto x : states) out << x << ": " << render(values[x]) << "\n";
}

bool implies(const std::map<SemanticsId, bool>& eq, SemanticsId a, SemanticsId b) {
  auto ia = eq.find(a), ib = eq.find(b);
  if (ia == eq.end() || ib == eq.end()) return true;
  return !ia->second || ib->second;
}

void assert_lattice(const std::map<SemanticsId, bool>& eq) {
  using S = SemanticsId;
  static const std::pair<S, S> edges[] = {
      {S::Bisimilarity, S::ReadySimulation}, {S::ReadySimulation, S::Simulation},
      {S::ReadySimulation, S::ReadyTrace},   {S::ReadyTrace, S::Readiness},
      {S::ReadyTrace, S::FailureTrace},      {S::FailureTrace, S::Failures},
      {S::Readiness, S::Failures},           {S::Failures, S::CompletedTrace},
      {S::CompletedTrace, S::Trace},         {S::Simulation, S::Trace},
  };
  for (const auto& [a, b] : edges)
    if (!implies(eq, a, b))
      throw std::logic_error("spectrum inclusion violated: " + std::string(name(a)) + " does not imply " +
                             std::string(name(b)));
}

void cmd_report(const Options& o, std::ostream& out) {
  Input in = load_input(o);
  auto [x, y] = state_pair(o, in);
  std::vector<SemanticsId> sems;
  if (std::holds_alternative<Gps>(in.model))
    sems = {SemanticsId::ProbabilisticTrace};
  else
    sems.assign(lts_semantics.begin(), lts_semantics.end());
  const Alphabet& al = alphabet_of(in.model);
  std::map<SemanticsId, bool> eq;
  json results = json::array();
  std::ostringstream text;
  for (auto sem : sems) {
    int depth = depth_flag(o, in.model, sem);
    Unbounded u = unbounded_verdict(in.model, sem, x, y);
    eq[sem] = u.equivalent;
    BetaTable table = beta_sequence(in.model, sem, depth);
    auto fd = first_difference(table, x, y);
    std::optional<std::string> witness;
    if (fd && has_logic(sem)) {
      auto w = distinguish(in.model, sem, x, y, depth);
      if (w) witness = print(w->formula, al);
    }
    results.push_back({{"semantics", name(sem)},
                       {"equivalent", u.equivalent},
                       {"method", u.method},
                       {"depth", depth},
                       {"first_difference", null_or(fd)},
                       {"witness", witness ? json(*witness) : json(nullptr)}});
    text << name(sem) << ": " << verdict(u.equivalent) << " (" << u.method;
    if (fd) text << ", first difference at depth " << *fd;
    text << ")";
    if (witness) text << " witness " << *witness;
    text << "\n";
  }
  assert_lattice(eq);
  if (o.format == "json") {
    json j{{"version", 1}, {"command", "report"}, {"states", {x, y}}, {"results", results}};
    out << j.dump(2) << "\n";
    return;
  }
  out << text.str();
}

void cmd_beta(const Options& o, std::ostream& out) {
  SemanticsId sem = semantics_flag(o);
  Input in = load_input(o);
  require_compatible(in.model, sem);
  int depth = depth_flag(o, in.model, sem);
  auto states = states_or_all(o, in);
  auto values = beta(in.model, sem, depth);
  const Alphabet& al = alphabet_of(in.model);
  if (o.format == "json") {
    json vals = json::array();
    for (auto x : states) vals.push_back({{"state", x}, {"value", render(values[x], al)}});
    json j{{"version", 1}, {"command", "beta"}, {"semantics", name(sem)}, {"depth", depth}, {"values", vals}};
    out << j.dump(2) << "\n";
    return;
  }
  for (auto x : states) out << x << ": " << render(values[x], al) << "\n";
}

void cmd_normalize(const Options& o, std::ostream& out) {
  SemanticsId sem = semantics_flag(o);
  if (o.term.empty()) throw UsageError("--term is required");
  std::vector<std::string> labels;
  for (auto& l : split(o.alphabet, ','))
    if (!l.empty()) labels.push_back(l);
  TermContext ctx{sem, Alphabet(labels), {}};
  Term t = parse_term(o.term, ctx);
  Term nf = normalize(sem, t);
  int depth = term_depth(t);
  std::string value = render(to_value(sem, nf, depth), ctx.alphabet);
  if (o.format == "json") {
    json j{{"version", 1},          {"command", "normalize"},   {"semantics", name(sem)}, {"term", print(t, ctx)},
           {"normal_form", print(nf, ctx)}, {"depth", depth}, {"value", value}};
    out << j.dump(2) << "\n";
    return;
  }
  out << print(nf, ctx) << "\n";
  out << "value at depth " << depth << ": " << value << "\n";
}

void cmd_laws(const Options& o, std::ostream& out) {
  std::vector<SemanticsId> sems;
  if (o.semantics.empty())
    sems.assign(all_semantics.begin(), all_semantics.end());
  else
    sems = {semantics_flag(o)};
  std::vector<std::size_t> sizes;
  for (const auto& part : split(o.sizes, ',')) {
    auto k = parse_index(part, "--sizes");
    if (k > 4) throw UsageError("--sizes: carrier size " + part + " exceeds 4");
    sizes.push_back(k);
  }
  LawMutant mutant = LawMutant::None;
  if (o.mutant == "failures-no-downclosure")
    mutant = LawMutant::FailuresNoDownclosure;
  else if (o.mutant == "trace-non-distributing")
    mutant = LawMutant::TraceNonDistributing;
  else if (!o.mutant.empty())
    throw UsageError("--mutant: unknown mutant '" + o.mutant + "'");
  if (mutant != LawMutant::None && o.semantics.empty()) throw UsageError("--mutant needs --semantics");

  json reports = json::array();
  for (auto sem : sems) {
    LawReport r;
    try {
      r = check_monad_laws(sem, sizes, o.seed, mutant);
    } catch (const Error& e) {
      throw UsageError(std::string("--mutant: ") + e.what());
    }
    json results = json::array();
    for (const auto& l : r.results) {
      results.push_back({{"law", l.law},
                         {"carrier", l.carrier},
                         {"passed", l.passed},
                         {"exhaustive", l.exhaustive},
                         {"checked", l.checked},
                         {"witness", l.passed ? json(nullptr) : json(l.witness)}});
      if (o.format != "json") {
        out << name(sem) << ": " << (l.passed ? "PASS " : "FAIL ") << l.law << " (|X|=" << l.carrier << ", "
            << l.checked << " checked, " << (l.exhaustive ? "exhaustive" : "sampled") << ")";
        if (!l.passed) out << " witness " << l.witness;
        out << "\n";
      }
    }
    reports.push_back({{"semantics", name(sem)}, {"ok", r.ok()}, {"results", results}});
  }
  if (o.format == "json") {
    json j{{"version", 1}, {"command", "laws"}, {"sizes", sizes}, {"seed", o.seed}, {"reports", reports}};
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded semantics of labelled and probabilistic transition systems"};
  app.name("spectrum");
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool model, bool states) {
    sub->add_option("--semantics", o.semantics, "Semantics id, e.g. failures");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (model) {
      sub->add_option("--depth", o.depth, "Depth bound");
      sub->add_option("files", o.files, "Model files (.aut, .gps); two files are compared side by side");
    }
    if (states) sub->add_option("--states", o.states, "State indices, e.g. 0,4");
  };
  auto* check = app.add_subcommand("check", "Equivalence verdict per depth");
  common(check, true, true);
  auto* dist = app.add_subcommand("distinguish", "Distinguishing formula at the least differing depth");
  common(dist, true, true);
  auto* eval = app.add_subcommand("eval", "Evaluate a formula at states");
  common(eval, true, true);
  eval->add_option("--formula", o.formula, "Formula text");
  auto* report = app.add_subcommand("report", "Verdicts across the whole spectrum");
  common(report, true, true);
  auto* beta_cmd = app.add_subcommand("beta", "Depth-n semantic values");
  common(beta_cmd, true, true);
  auto* norm = app.add_subcommand("normalize", "Normal form of a term in a graded theory");
  common(norm, false, false);
  norm->add_option("--term", o.term, "Term text");
  norm->add_option("--alphabet", o.alphabet, "Comma-separated action labels");
  auto* laws = app.add_subcommand("laws", "Check the graded monad laws on small carriers");
  common(laws, false, false);
  laws->add_option("--sizes", o.sizes, "Carrier sizes, each at most 4");
  laws->add_option("--seed", o.seed, "Sampling seed");
  laws->add_option("--mutant", o.mutant, "failures-no-downclosure or trace-non-distributing");

  std::vector<std::string> argv_store{"spectrum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (check->parsed()) cmd_check(o, out);
    else if (dist->parsed()) cmd_distinguish(o, out);
    else if (eval->parsed()) cmd_eval(o, out);
    else if (report->parsed()) cmd_report(o, out);
    else if (beta_cmd->parsed()) cmd_beta(o, out);
    else if (norm->parsed()) cmd_normalize(o, out);
    else if (laws->parsed()) cmd_laws(o, out);
  } catch (const UsageError& e) {
    err << "spectrum: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnsupportedSemantics& e) {
    err << "spectrum: --semantics: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "spectrum: " << e.what() << "\n";
    return exit_input;
  }
  return exit_ok;
}

}  // namespace spectrum::cli
