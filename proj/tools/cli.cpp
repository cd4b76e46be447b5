#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "groundwork/behaviours.hpp"
#include "groundwork/focusing.hpp"
#include "groundwork/grounds.hpp"
#include "groundwork/interaction.hpp"
#include "groundwork/translation.hpp"
#include "inputs.hpp"

namespace groundwork::cli {

namespace {

using nlohmann::json;
namespace L = ludics;
namespace F = focusing;
namespace G = grounds;

enum class Format { Pretty, TraceLines, Json };

struct Options {
  std::string format = "pretty";
  std::optional<std::size_t> fuel;
  std::optional<std::size_t> depth, pool, cap;
  std::string symbol;

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "trace-lines") return Format::TraceLines;
    return Format::Pretty;
  }
  BoundsSpec bounds() const {
    BoundsSpec s;
    s.depth = depth;
    s.cap = cap;
    s.fuel = fuel;
    if (pool) s.pool = L::powerset_pool(static_cast<std::uint32_t>(*pool));
    return s;
  }
  L::RenderOptions render() const {
    L::RenderOptions o;
    if (!symbol.empty()) o.root_symbol = symbol;
    return o;
  }
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string one_line(const L::Design& d) { return L::print_design(d, true); }

json report_json(const Report& r) {
  json a = json::array();
  for (const auto& v : r) a.push_back({{"code", v.code}, {"message", v.message}, {"path", v.path}});
  return a;
}

void print_report(std::ostream& out, const Report& r) {
  for (const auto& v : r) out << v << "\n";
}

// ---------------------------------------------------------------------------
// Ground terms

int cmd_check(const Options& o, const std::string& path, Io io) {
  const TermFile tf = load_term_file(path);
  json j{{"verb", "check"}, {"term", tf.term.pretty()}, {"linear", G::is_linear(tf.term)}};
  try {
    const G::GroundType g = G::typecheck(tf.term, tf.signature);
    j["ok"] = true;
    j["type"] = g.pretty();
    if (o.fmt() == Format::Json)
      io.out << j.dump() << "\n";
    else
      io.out << tf.term.pretty() << " : " << g.pretty() << "\n";
    return kYes;
  } catch (const G::TypeError& e) {
    j["ok"] = false;
    j["error"] = e.what();
    if (o.fmt() == Format::Json)
      io.out << j.dump() << "\n";
    else
      io.out << "type error: " << e.what() << "\n";
    return kNo;
  }
}

int outcome_status(G::ReductionOutcome::Tag t) {
  switch (t) {
    case G::ReductionOutcome::Tag::Canonical: return kYes;
    case G::ReductionOutcome::Tag::FuelExhausted: return kError;
    default: return kNo;
  }
}

int cmd_reduce(const Options& o, const std::string& path, Io io) {
  const TermFile tf = load_term_file(path);
  const auto r = G::normalize(tf.term, tf.signature, o.fuel.value_or(G::kDefaultReductionFuel));
  const std::string tag = G::to_string(r.tag);
  switch (o.fmt()) {
    case Format::Json: {
      json steps = json::array();
      for (std::size_t i = 0; i < r.trace.size(); ++i)
        steps.push_back({{"equation", r.trace[i].equation},
                         {"position", G::position_string(r.trace[i].position)},
                         {"term", r.history.at(i + 1).pretty()}});
      io.out << json{{"verb", "reduce"}, {"outcome", tag}, {"steps", steps}, {"term", r.term.pretty()}}.dump() << "\n";
      break;
    }
    case Format::TraceLines:
      for (const auto& s : r.trace) io.out << s.equation << " " << G::position_string(s.position) << "\n";
      io.out << tag << "\n";
      break;
    case Format::Pretty:
      io.out << "0  " << r.history.front().pretty() << "\n";
      for (std::size_t i = 0; i < r.trace.size(); ++i)
        io.out << i + 1 << "  " << r.history.at(i + 1).pretty() << "   [" << r.trace[i].equation << " at "
               << G::position_string(r.trace[i].position) << "]\n";
      io.out << tag << " after " << r.trace.size() << " step(s)";
      if (r.tag == G::ReductionOutcome::Tag::Loop) io.out << ", cycle of length " << r.cycle.size() - 1;
      io.out << "\n";
  }
  return outcome_status(r.tag);
}

int cmd_ground(const Options& o, const std::string& path, std::size_t samples, Io io) {
  const TermFile tf = load_term_file(path);
  G::GroundOptions go;
  go.fuel = o.fuel.value_or(G::kDefaultReductionFuel);
  go.samples = samples;
  const auto v = G::denotes_ground(tf.term, tf.signature, go);
  if (o.fmt() == Format::Json)
    io.out << json{{"verb", "ground"}, {"verdict", G::to_string(v.tag)}, {"reason", v.reason}}.dump() << "\n";
  else
    io.out << G::to_string(v.tag) << (v.reason.empty() ? "" : ": " + v.reason) << "\n";
  switch (v.tag) {
    case G::GroundVerdict::Tag::Yes: return kYes;
    case G::GroundVerdict::Tag::No: return kNo;
    default: return kError;
  }
}

// ---------------------------------------------------------------------------
// Designs and nets

int cmd_design_validate(const Options& o, const std::string& path, Io io) {
  const L::Design d = load_design(path);
  const Report r = L::validate_design(d);
  if (o.fmt() == Format::Json) {
    io.out << json{{"verb", "design-validate"}, {"ok", ok(r)}, {"violations", report_json(r)}}.dump() << "\n";
  } else if (ok(r)) {
    io.out << "ok\n";
  } else {
    print_report(io.out, r);
  }
  return ok(r) ? kYes : kNo;
}

L::CutNet net_or_throw(std::vector<L::Design> designs) {
  Report r;
  auto net = L::make_cutnet(std::move(designs), r);
  if (!net) {
    std::ostringstream s;
    s << "not a cut-net:";
    for (const auto& v : r) s << "\n  " << v;
    throw InputError(s.str());
  }
  return *net;
}

int interaction_status(const L::InteractionResult& r) {
  switch (r.tag) {
    case L::InteractionResult::Tag::Converged: return kYes;
    case L::InteractionResult::Tag::Diverged: return kNo;
    default: return kError;
  }
}

std::string outcome_line(const L::InteractionResult& r) {
  std::string s = L::to_string(r.tag) + " after " + std::to_string(r.pairs()) + " pair(s)";
  if (r.tag == L::InteractionResult::Tag::Diverged) s += " at " + L::to_string(r.at) + " (" + L::to_string(r.reason) + ")";
  return s;
}

int cmd_interact(const Options& o, const std::string& path, const std::string& render, Io io) {
  const L::CutNet net = net_or_throw(load_net(path));
  const std::size_t fuel = o.fuel.value_or(L::kDefaultInteractionFuel);
  const L::InteractionResult r = L::normalize(net, fuel);
  switch (o.fmt()) {
    case Format::Json: {
      json trace = json::array();
      for (const auto& a : r.trace) trace.push_back(L::to_string(a));
      json visited = json::array();
      for (const auto& a : r.visited) visited.push_back(L::to_string(a));
      json j{{"verb", "interact"}, {"outcome", L::to_string(r.tag)}, {"trace", trace}, {"visited", visited}};
      if (r.result) j["result"] = one_line(*r.result);
      if (r.tag == L::InteractionResult::Tag::Diverged) {
        j["at"] = L::to_string(r.at);
        j["reason"] = L::to_string(r.reason);
      }
      io.out << j.dump() << "\n";
      break;
    }
    case Format::TraceLines:
      for (const auto& a : r.trace) io.out << L::to_string(a) << "\n";
      io.out << outcome_line(r) << "\n";
      break;
    case Format::Pretty:
      if (render == "snapshots") {
        if (!net.closed()) throw InputError("snapshots need a closed net");
        io.out << L::render_interaction(net, o.render(), fuel);
        if (!r.converged()) io.out << outcome_line(r) << "\n";
        break;
      }
      io.out << outcome_line(r) << "\n";
      for (const auto& a : r.trace) io.out << "  " << L::to_string(a) << "\n";
      if (r.result) io.out << L::render_design(*r.result, o.render());
  }
  return interaction_status(r);
}

// ---------------------------------------------------------------------------
// Behaviours

int verdict_status(L::Verdict v) {
  return v == L::Verdict::Yes ? kYes : v == L::Verdict::No ? kNo : kError;
}

L::Behaviour make_behaviour(const Options& o, const std::string& path) {
  BehaviourFile bf = load_behaviour_file(path, o.bounds());
  return L::Behaviour(std::move(bf.generators), std::move(bf.bounds));
}

std::string bounds_line(const L::UniverseBounds& b) {
  return "depth " + std::to_string(b.max_depth) + ", pool of " + std::to_string(b.pool.size()) + " ramification(s)";
}

int cmd_orth(const Options& o, const std::vector<std::string>& designs, const std::string& behaviour, Io io) {
  if (!behaviour.empty()) {
    const L::Behaviour b = make_behaviour(o, behaviour);
    json nets = json::array();
    for (const auto& c : b.counters()) {
      json net = json::array();
      for (const auto& d : c) net.push_back(one_line(d));
      nets.push_back(net);
    }
    if (o.fmt() == Format::Json) {
      io.out << json{{"verb", "orth"}, {"counters", nets}, {"inconclusive", b.inconclusive()}}.dump() << "\n";
    } else {
      io.out << b.counters().size() << " counter-net(s) on " << L::to_string(b.base()) << ", " << bounds_line(b.bounds())
             << (b.inconclusive() ? " (inconclusive)" : "") << "\n";
      for (const auto& c : b.counters()) {
        for (std::size_t k = 0; k < c.size(); ++k) io.out << (k ? " | " : "") << one_line(c[k]);
        io.out << "\n";
      }
    }
    return b.inconclusive() ? kError : kYes;
  }
  if (designs.size() != 2) throw InputError("orth needs two --design files or one --behaviour file");
  const L::Design d = load_design(designs[0]);
  const L::Design e = load_design(designs[1]);
  const L::Verdict v = L::orthogonal(d, e, o.fuel.value_or(L::kDefaultInteractionFuel));
  if (o.fmt() == Format::Json)
    io.out << json{{"verb", "orth"}, {"verdict", L::to_string(v)}}.dump() << "\n";
  else
    io.out << L::to_string(v) << "\n";
  return verdict_status(v);
}

int cmd_behaviour(const Options& o, const std::string& path, const std::string& contains, bool members, Io io) {
  const L::Behaviour b = make_behaviour(o, path);
  json j{{"verb", "behaviour"},
         {"base", L::to_string(b.base())},
         {"generators", b.generators().size()},
         {"counters", b.counters().size()},
         {"inconclusive", b.inconclusive()}};
  int status = b.inconclusive() ? kError : kYes;
  std::ostringstream text;
  text << "behaviour on " << L::to_string(b.base()) << ", " << bounds_line(b.bounds()) << "\n"
       << b.generators().size() << " generator(s), " << b.counters().size() << " counter-net(s)"
       << (b.inconclusive() ? " (inconclusive)" : "") << "\n";
  if (!contains.empty()) {
    const L::Verdict v = b.contains(load_design(contains));
    j["contains"] = L::to_string(v);
    text << "contains: " << L::to_string(v) << "\n";
    status = verdict_status(v);
  }
  if (members) {
    const auto ms = b.members();
    json list = json::array();
    text << ms.size() << " member(s)\n";
    for (const auto& m : ms) {
      list.push_back(one_line(m));
      text << "  " << one_line(m) << "\n";
    }
    j["members"] = list;
  }
  if (o.fmt() == Format::Json)
    io.out << j.dump() << "\n";
  else
    io.out << text.str();
  return status;
}

int cmd_incarnate(const Options& o, const std::string& design, const std::string& behaviour, Io io) {
  const L::Behaviour b = make_behaviour(o, behaviour);
  const L::Design d = load_design(design);
  try {
    const L::Design inc = L::incarnation_of(d, b);
    const bool material = inc == d;
    if (o.fmt() == Format::Json)
      io.out << json{{"verb", "incarnate"}, {"incarnation", one_line(inc)}, {"material", material}}.dump() << "\n";
    else
      io.out << L::render_design(inc, o.render()) << (material ? "material\n" : "not material\n");
    return kYes;
  } catch (const L::NotAMember&) {
    if (o.fmt() == Format::Json)
      io.out << json{{"verb", "incarnate"}, {"member", false}}.dump() << "\n";
    else
      io.out << "not a member\n";
    return kNo;
  }
}

int classification_status(const L::CandidateVerdict& v) {
  switch (v.tag) {
    case L::CandidateVerdict::Tag::Ground: return kYes;
    case L::CandidateVerdict::Tag::Unknown: return kError;
    default: return kNo;
  }
}

int cmd_classify(const Options& o, const std::string& design, const std::string& behaviour, Io io) {
  const L::Behaviour b = make_behaviour(o, behaviour);
  const L::CandidateVerdict v = L::classify_candidate(load_design(design), b);
  if (o.fmt() == Format::Json)
    io.out << json{{"verb", "classify"}, {"verdict", L::to_string(v)}}.dump() << "\n";
  else
    io.out << L::to_string(v) << "\n";
  return classification_status(v);
}

// ---------------------------------------------------------------------------
// Translation

int cmd_translate(const Options& o, const std::string& term, const std::string& env_path, const std::string& out_path,
                  Io io) {
  const TermFile tf = load_term_file(term);
  translation::TranslationEnv env = env_path.empty() ? translation::TranslationEnv{} : load_env(env_path, o.bounds());
  if (env_path.empty()) o.bounds().apply(env.bounds);
  try {
    const translation::Translation tr = translation::translate(tf.term, env);
    const L::CandidateVerdict v = translation::check_translation(tf.term, tr.design, env);
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw InputError(out_path + ": cannot write");
      f << L::print_design(tr.design) << "\n";
    }
    if (o.fmt() == Format::Json) {
      io.out << json{{"verb", "translate"},
                     {"type", tr.type.pretty()},
                     {"design", one_line(tr.design)},
                     {"classification", L::to_string(v)}}
                    .dump()
             << "\n";
    } else {
      io.out << L::print_design(tr.design) << "\n";
      io.out << "type: " << tr.type.pretty() << "\n";
      io.out << "classification: " << L::to_string(v) << "\n";
    }
    return kYes;
  } catch (const translation::TranslationError& e) {
    if (o.fmt() == Format::Json)
      io.out << json{{"verb", "translate"}, {"error", e.code}, {"message", e.what()}}.dump() << "\n";
    else
      io.out << e.code << ": " << e.what() << "\n";
    return kNo;
  }
}

// ---------------------------------------------------------------------------
// Focusing

json derivation_json(const F::Derivation& d) {
  json prem = json::array();
  for (const auto& p : d.premises) prem.push_back(derivation_json(p));
  json sels = json::array();
  for (const auto& s : d.selections) {
    json a = json::array();
    for (const auto& f : s) a.push_back(f.pretty());
    sels.push_back(a);
  }
  json j{{"sequent", F::to_string(d.conclusion)}, {"rule", F::to_string(d.rule)}, {"premises", prem}};
  if (d.focus) {
    j["focus"] = d.focus->pretty();
    j["selections"] = sels;
  }
  return j;
}

std::optional<F::Derivation> search(const Options& o, const F::Sequent& s, bool daimon, Io io, int& status) {
  const F::SearchResult r = F::focused_search(s, o.fuel.value_or(F::kDefaultSearchFuel), daimon);
  status = r.tag == F::SearchResult::Tag::Found ? kYes : r.tag == F::SearchResult::Tag::None ? kNo : kError;
  if (!r.derivation) {
    if (o.fmt() == Format::Json)
      io.out << json{{"outcome", F::to_string(r.tag)}}.dump() << "\n";
    else
      io.out << F::to_string(r.tag) << "\n";
  }
  return r.derivation;
}

int cmd_focus(const Options& o, const std::string& path, bool daimon, Io io) {
  const F::Sequent s = load_sequent(path);
  int status = kError;
  auto d = search(o, s, daimon, io, status);
  if (!d) return status;
  if (o.fmt() == Format::Json)
    io.out << json{{"verb", "focus"}, {"outcome", "Found"}, {"derivation", derivation_json(*d)}}.dump() << "\n";
  else
    io.out << F::render(*d);
  return status;
}

void print_strategy(const Options& o, const F::Strategy& st, Io io) {
  if (o.fmt() == Format::Json) {
    json games = json::array();
    for (const auto& g : st) games.push_back(F::to_string(g));
    io.out << json{{"verb", "to-strategy"}, {"games", games}}.dump() << "\n";
  } else if (o.fmt() == Format::TraceLines) {
    io.out << F::strategy_to_sexpr(st).to_string() << "\n";
  } else {
    for (const auto& g : st) io.out << F::to_string(g) << "\n";
  }
}

int cmd_to_strategy(const Options& o, const std::string& path, bool daimon, const std::string& out_path, Io io) {
  const F::Sequent s = load_sequent(path);
  int status = kError;
  auto d = search(o, s, daimon, io, status);
  if (!d) return status;
  const F::Strategy st = F::derivation_to_strategy(*d);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw InputError(out_path + ": cannot write");
    f << F::strategy_to_sexpr(st).to_string() << "\n";
  }
  print_strategy(o, st, io);
  return kYes;
}

int cmd_to_derivation(const Options& o, const std::string& strategy, const std::string& sequent, Io io) {
  const F::Strategy st = load_strategy(strategy);
  const F::Sequent s = load_sequent(sequent);
  Report r;
  auto d = F::strategy_to_derivation(st, s, r);
  if (o.fmt() == Format::Json) {
    json j{{"verb", "to-derivation"}, {"ok", d.has_value()}, {"violations", report_json(r)}};
    if (d) j["derivation"] = derivation_json(*d);
    io.out << j.dump() << "\n";
  } else if (d) {
    io.out << F::render(*d);
  } else {
    print_report(io.out, r);
  }
  return d ? kYes : kNo;
}

// ---------------------------------------------------------------------------
// REPL

void repl_net(const Options& o, const std::string& path, Io io) {
  const L::CutNet net = net_or_throw(load_net(path));
  if (!net.closed()) throw InputError("the repl steps closed nets only");
  L::Machine m(net, o.fuel.value_or(L::kDefaultInteractionFuel));
  auto show = [&] {
    io.out << "-- step " << m.steps() << "\n";
    const auto ds = m.current();
    for (std::size_t k = 0; k < ds.size(); ++k) io.out << (k ? "\n" : "") << L::render_design(ds[k], o.render());
  };
  auto finish = [&] {
    const auto r = m.result();
    io.out << outcome_line(r) << "\n";
    if (r.result) io.out << L::render_design(*r.result, o.render());
  };
  std::string line;
  while (std::getline(io.in, line)) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "q") return;
    if (cmd == "step" || cmd == "s") {
      if (m.step()) show();
      if (m.done()) finish();
    } else if (cmd == "back" || cmd == "b") {
      if (m.back())
        show();
      else
        io.out << "already at step 0\n";
    } else if (cmd == "show") {
      show();
    } else if (cmd == "trace") {
      for (const auto& a : m.trace()) io.out << L::to_string(a) << "\n";
    } else {
      io.out << "commands: step, back, show, trace, quit\n";
    }
  }
}

void repl_term(const Options& o, const std::string& path, Io io) {
  const TermFile tf = load_term_file(path);
  std::vector<G::Term> history{tf.term};
  std::vector<G::Step> steps;
  const std::size_t fuel = o.fuel.value_or(G::kDefaultReductionFuel);
  auto show = [&] { io.out << steps.size() << "  " << history.back().pretty() << "\n"; };
  // The outcome normalize would report for the current term, if terminal.
  auto terminal = [&]() -> std::optional<std::string> {
    const G::Term& t = history.back();
    for (std::size_t i = 0; i + 1 < history.size(); ++i)
      if (history[i] == t) return "Loop at step " + std::to_string(steps.size()) + ", back to step " + std::to_string(i);
    if (t.is_primitive_head()) return std::string("Canonical");
    if (steps.size() >= fuel) return std::string("FuelExhausted");
    if (!G::reduce_step(t, tf.signature)) return std::string("Stuck");
    return std::nullopt;
  };
  std::string line;
  while (std::getline(io.in, line)) {
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "q") return;
    if (cmd == "step" || cmd == "s") {
      if (auto t = terminal()) {
        io.out << *t << "\n";
        continue;
      }
      auto st = G::reduce_step(history.back(), tf.signature);
      history.push_back(st->result);
      steps.push_back(*st);
      io.out << steps.size() << "  " << history.back().pretty() << "   [" << st->equation << " at "
             << G::position_string(st->position) << "]\n";
      if (auto t = terminal()) io.out << *t << "\n";
    } else if (cmd == "back" || cmd == "b") {
      if (steps.empty()) {
        io.out << "already at step 0\n";
        continue;
      }
      steps.pop_back();
      history.pop_back();
      show();
    } else if (cmd == "show") {
      show();
    } else if (cmd == "trace") {
      for (const auto& s : steps) io.out << s.equation << " " << G::position_string(s.position) << "\n";
    } else {
      io.out << "commands: step, back, show, trace, quit\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground terms, designs, behaviours and focused proofs"};
  app.require_subcommand(1);
  Options o;
  Io io{in, out, err};
  std::function<int()> action;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "pretty, trace-lines or json")
        ->check(CLI::IsMember({"pretty", "trace-lines", "json"}));
    sub->add_option("--fuel", o.fuel, "step budget");
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "maximal design depth");
    sub->add_option("--pool", o.pool, "ramifications: all subsets of {0..N-1}");
    sub->add_option("--cap", o.cap, "universe size cap");
  };
  auto symbol = [&](CLI::App* sub) {
    sub->add_option("--symbol", o.symbol, "render addresses under this root symbol, e.g. ξ");
  };

  std::string term, design, net, behaviour, env, sequent, strategy, out_path, render = "result", contains;
  std::vector<std::string> designs;
  std::size_t samples = 0;
  bool daimon = false, members = false;

  auto* check = app.add_subcommand("check", "typecheck a ground term");
  check->add_option("--term", term)->required();
  common(check);
  check->callback([&] { action = [&] { return cmd_check(o, term, io); }; });

  auto* reduce = app.add_subcommand("reduce", "normalize a ground term");
  reduce->add_option("--term", term)->required();
  common(reduce);
  reduce->callback([&] { action = [&] { return cmd_reduce(o, term, io); }; });

  auto* ground = app.add_subcommand("ground", "does a term denote a ground");
  ground->add_option("--term", term)->required();
  ground->add_option("--samples", samples, "closed instances tried per binder");
  common(ground);
  ground->callback([&] { action = [&] { return cmd_ground(o, term, samples, io); }; });

  auto* dv = app.add_subcommand("design-validate", "check a design");
  dv->add_option("--design", design)->required();
  common(dv);
  dv->callback([&] { action = [&] { return cmd_design_validate(o, design, io); }; });

  auto* interact = app.add_subcommand("interact", "normalize a cut-net");
  interact->add_option("--net", net)->required();
  interact->add_option("--render", render, "result or snapshots")->check(CLI::IsMember({"result", "snapshots"}));
  common(interact);
  symbol(interact);
  interact->callback([&] { action = [&] { return cmd_interact(o, net, render, io); }; });

  auto* orth = app.add_subcommand("orth", "orthogonality of two designs, or the orthogonal of a behaviour");
  orth->add_option("--design", designs);
  orth->add_option("--behaviour", behaviour);
  common(orth);
  bounds(orth);
  orth->callback([&] { action = [&] { return cmd_orth(o, designs, behaviour, io); }; });

  auto* beh = app.add_subcommand("behaviour", "summarize a behaviour");
  beh->add_option("--behaviour", behaviour)->required();
  beh->add_option("--contains", contains, "design to test for membership");
  beh->add_flag("--members", members, "enumerate the members within the bounds");
  common(beh);
  bounds(beh);
  beh->callback([&] { action = [&] { return cmd_behaviour(o, behaviour, contains, members, io); }; });

  auto* inc = app.add_subcommand("incarnate", "incarnation of a member");
  inc->add_option("--design", design)->required();
  inc->add_option("--behaviour", behaviour)->required();
  common(inc);
  bounds(inc);
  symbol(inc);
  inc->callback([&] { action = [&] { return cmd_incarnate(o, design, behaviour, io); }; });

  auto* cls = app.add_subcommand("classify", "ground or pseudo-ground");
  cls->add_option("--design", design)->required();
  cls->add_option("--behaviour", behaviour)->required();
  common(cls);
  bounds(cls);
  cls->callback([&] { action = [&] { return cmd_classify(o, design, behaviour, io); }; });

  auto* tr = app.add_subcommand("translate", "translate a linear term into a design");
  tr->add_option("--term", term)->required();
  tr->add_option("--env", env, "atoms, constants and bounds");
  tr->add_option("--out", out_path, "write the design here");
  common(tr);
  bounds(tr);
  tr->callback([&] { action = [&] { return cmd_translate(o, term, env, out_path, io); }; });

  auto* focus = app.add_subcommand("focus", "focused proof search");
  focus->add_option("--sequent", sequent)->required();
  focus->add_flag("--daimon", daimon, "allow the daimon rule");
  common(focus);
  focus->callback([&] { action = [&] { return cmd_focus(o, sequent, daimon, io); }; });

  auto* ts = app.add_subcommand("to-strategy", "search, then read the derivation as a strategy");
  ts->add_option("--sequent", sequent)->required();
  ts->add_flag("--daimon", daimon, "allow the daimon rule");
  ts->add_option("--out", out_path, "write the strategy here");
  common(ts);
  ts->callback([&] { action = [&] { return cmd_to_strategy(o, sequent, daimon, out_path, io); }; });

  auto* td = app.add_subcommand("to-derivation", "rebuild a derivation from a strategy");
  td->add_option("--strategy", strategy)->required();
  td->add_option("--sequent", sequent)->required();
  common(td);
  td->callback([&] { action = [&] { return cmd_to_derivation(o, strategy, sequent, io); }; });

  auto* repl = app.add_subcommand("repl", "step through a net or a term");
  auto* repl_net_opt = repl->add_option("--net", net);
  repl->add_option("--term", term)->excludes(repl_net_opt);
  common(repl);
  symbol(repl);
  repl->callback([&] {
    action = [&] {
      if (!net.empty())
        repl_net(o, net, io);
      else if (!term.empty())
        repl_term(o, term, io);
      else
        throw InputError("repl needs --net or --term");
      return kYes;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kError;
  }
  try {
    return action();
  } catch (const InputError& e) {
    err << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

}  // namespace groundwork::cli
