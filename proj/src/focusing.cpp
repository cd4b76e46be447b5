#include "groundwork/focusing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace groundwork::focusing {

using K = PFormula::Kind;

struct PFormula::Node {
  Kind kind = Kind::One;
  std::string name;
  std::optional<PFormula> l, r;
  std::string key;
};

namespace {

const char* head_of(K k) {
  switch (k) {
    case K::PosAtom: return "atom+";
    case K::NegAtom: return "atom-";
    case K::Tensor: return "tensor";
    case K::Plus: return "plus";
    case K::Par: return "par";
    case K::With: return "with";
    case K::One: return "one";
    case K::Zero: return "zero";
    case K::Top: return "top";
    case K::Bottom: return "bottom";
  }
  return "";
}

const char* symbol_of(K k) {
  switch (k) {
    case K::Tensor: return " ⊗ ";
    case K::Plus: return " ⊕ ";
    case K::Par: return " ⅋ ";
    case K::With: return " & ";
    case K::One: return "1";
    case K::Zero: return "0";
    case K::Top: return "⊤";
    case K::Bottom: return "⊥";
    default: return "";
  }
}

bool binary(K k) { return k == K::Tensor || k == K::Plus || k == K::Par || k == K::With; }

}  // namespace

PFormula::PFormula() : PFormula(one()) {}

PFormula PFormula::pos_atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = K::PosAtom;
  n->key = "(atom+ " + name + ")";
  n->name = std::move(name);
  return PFormula(std::move(n));
}

PFormula PFormula::neg_atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = K::NegAtom;
  n->key = "(atom- " + name + ")";
  n->name = std::move(name);
  return PFormula(std::move(n));
}

namespace {

std::shared_ptr<PFormula::Node> make_binary(K k, PFormula a, PFormula b) {
  auto n = std::make_shared<PFormula::Node>();
  n->kind = k;
  n->key = std::string("(") + head_of(k) + " " + a.key() + " " + b.key() + ")";
  n->l = std::move(a);
  n->r = std::move(b);
  return n;
}

std::shared_ptr<PFormula::Node> make_unit(K k) {
  auto n = std::make_shared<PFormula::Node>();
  n->kind = k;
  n->key = std::string("(") + head_of(k) + ")";
  return n;
}

}  // namespace

PFormula PFormula::tensor(PFormula a, PFormula b) { return PFormula(make_binary(K::Tensor, std::move(a), std::move(b))); }
PFormula PFormula::plus(PFormula a, PFormula b) { return PFormula(make_binary(K::Plus, std::move(a), std::move(b))); }
PFormula PFormula::par(PFormula a, PFormula b) { return PFormula(make_binary(K::Par, std::move(a), std::move(b))); }
PFormula PFormula::with(PFormula a, PFormula b) { return PFormula(make_binary(K::With, std::move(a), std::move(b))); }
PFormula PFormula::one() {
  static const PFormula f(make_unit(K::One));
  return f;
}
PFormula PFormula::zero() {
  static const PFormula f(make_unit(K::Zero));
  return f;
}
PFormula PFormula::top() {
  static const PFormula f(make_unit(K::Top));
  return f;
}
PFormula PFormula::bottom() {
  static const PFormula f(make_unit(K::Bottom));
  return f;
}

PFormula::Kind PFormula::kind() const { return node_->kind; }

bool PFormula::positive() const {
  switch (kind()) {
    case K::PosAtom:
    case K::Tensor:
    case K::Plus:
    case K::One:
    case K::Zero:
      return true;
    default:
      return false;
  }
}

const std::string& PFormula::name() const {
  if (!is_atom()) throw std::logic_error("name() of a compound formula");
  return node_->name;
}

const PFormula& PFormula::left() const {
  if (!node_->l) throw std::logic_error("left() of a non-binary formula");
  return *node_->l;
}

const PFormula& PFormula::right() const {
  if (!node_->r) throw std::logic_error("right() of a non-binary formula");
  return *node_->r;
}

PFormula PFormula::dual() const {
  switch (kind()) {
    case K::PosAtom: return neg_atom(name());
    case K::NegAtom: return pos_atom(name());
    case K::Tensor: return par(left().dual(), right().dual());
    case K::Par: return tensor(left().dual(), right().dual());
    case K::Plus: return with(left().dual(), right().dual());
    case K::With: return plus(left().dual(), right().dual());
    case K::One: return bottom();
    case K::Bottom: return one();
    case K::Zero: return top();
    case K::Top: return zero();
  }
  return *this;
}

std::string PFormula::pretty() const {
  switch (kind()) {
    case K::PosAtom: return name();
    case K::NegAtom: return name() + "⊥";
    default: break;
  }
  if (!binary(kind())) return symbol_of(kind());
  auto side = [](const PFormula& f) { return binary(f.kind()) ? "(" + f.pretty() + ")" : f.pretty(); };
  return side(left()) + symbol_of(kind()) + side(right());
}

std::string PFormula::to_sexpr() const { return key(); }

const std::string& PFormula::key() const { return node_->key; }

PFormula parse_pformula(const SExpr& e) {
  if (!e.is_list() || e.size() == 0) e.fail("expected a formula form, got " + e.to_string());
  const std::string h = e.head();
  const auto& xs = e.items();
  auto arity = [&](std::size_t n) {
    if (xs.size() != n + 1)
      e.fail("'" + h + "' expects " + std::to_string(n) + " argument(s), got " + std::to_string(xs.size() - 1));
  };
  if (h == "atom+" || h == "atom-") {
    arity(1);
    if (!xs[1].is_atom()) xs[1].fail("atom name expected");
    return h == "atom+" ? PFormula::pos_atom(xs[1].text()) : PFormula::neg_atom(xs[1].text());
  }
  if (h == "dual") {
    arity(1);
    return parse_pformula(xs[1]).dual();
  }
  static const std::map<std::string, K> binaries{
      {"tensor", K::Tensor}, {"plus", K::Plus}, {"par", K::Par}, {"with", K::With}};
  if (auto it = binaries.find(h); it != binaries.end()) {
    arity(2);
    PFormula a = parse_pformula(xs[1]);
    PFormula b = parse_pformula(xs[2]);
    switch (it->second) {
      case K::Tensor: return PFormula::tensor(a, b);
      case K::Plus: return PFormula::plus(a, b);
      case K::Par: return PFormula::par(a, b);
      default: return PFormula::with(a, b);
    }
  }
  static const std::map<std::string, PFormula (*)()> units{
      {"one", &PFormula::one}, {"zero", &PFormula::zero}, {"top", &PFormula::top}, {"bottom", &PFormula::bottom}};
  if (auto it = units.find(h); it != units.end()) {
    arity(0);
    return it->second();
  }
  e.fail("unknown formula form '" + (h.empty() ? e.to_string() : h) + "'");
}

PFormula parse_pformula(std::string_view text) { return parse_pformula(parse_sexpr(text)); }

std::string to_string(const Sequent& s) {
  std::string out = "⊢";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : " ") + s[i].pretty();
  return out;
}

Sequent parse_sequent(const SExpr& e) {
  if (!e.is_form("sequent")) return {parse_pformula(e)};
  Sequent s;
  for (std::size_t i = 1; i < e.size(); ++i) s.push_back(parse_pformula(e[i]));
  return s;
}

Sequent parse_sequent(std::string_view text) { return parse_sequent(parse_sexpr(text)); }

namespace {

std::vector<std::string> keys(const Sequent& s) {
  std::vector<std::string> k;
  for (const auto& f : s) k.push_back(f.key());
  std::sort(k.begin(), k.end());
  return k;
}

bool non_atomic_negative(const PFormula& f) { return f.negative() && !f.is_atom(); }

std::size_t count_non_atomic_negatives(const Sequent& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), non_atomic_negative));
}

Sequent concat(Sequent a, const Sequent& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Sequent without(const Sequent& s, std::size_t i) {
  Sequent out;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (k != i) out.push_back(s[k]);
  return out;
}

bool is_axiom(const Sequent& s) {
  return s.size() == 2 && s[0].is_atom() && s[1].is_atom() && s[0].positive() != s[1].positive() &&
         s[0].name() == s[1].name();
}

// Assignments of the context to `n` premises, in a fixed order. `f` returns
// true to stop.
void for_each_split(const Sequent& ctx, std::size_t n, const std::function<bool(std::vector<Sequent>&)>& f) {
  if (n == 0) {
    if (ctx.empty()) {
      std::vector<Sequent> none;
      f(none);
    }
    return;
  }
  std::vector<std::size_t> slot(ctx.size(), 0);
  for (;;) {
    std::vector<Sequent> parts(n);
    for (std::size_t k = 0; k < ctx.size(); ++k) parts[slot[k]].push_back(ctx[k]);
    if (f(parts)) return;
    std::size_t k = 0;
    while (k < slot.size() && ++slot[k] == n) slot[k++] = 0;
    if (k == slot.size()) return;
  }
}

// Premise i of a positive cluster: the selected formula, then its context.
Sequent positive_premise(const PFormula& leaf, const Sequent& part) { return concat({leaf}, part); }

}  // namespace

bool same_multiset(const Sequent& a, const Sequent& b) { return keys(a) == keys(b); }

std::vector<Sequent> negative_branches(const PFormula& f) {
  switch (f.kind()) {
    case K::Par: {
      std::vector<Sequent> out;
      for (const auto& a : negative_branches(f.left()))
        for (const auto& b : negative_branches(f.right())) out.push_back(concat(a, b));
      return out;
    }
    case K::With: {
      auto out = negative_branches(f.left());
      for (auto& b : negative_branches(f.right())) out.push_back(std::move(b));
      return out;
    }
    case K::Bottom: return {Sequent{}};
    case K::Top: return {};
    default: return {Sequent{f}};
  }
}

std::vector<Sequent> positive_alternatives(const PFormula& f) {
  switch (f.kind()) {
    case K::Tensor: {
      std::vector<Sequent> out;
      for (const auto& a : positive_alternatives(f.left()))
        for (const auto& b : positive_alternatives(f.right())) out.push_back(concat(a, b));
      return out;
    }
    case K::Plus: {
      auto out = positive_alternatives(f.left());
      for (auto& b : positive_alternatives(f.right())) out.push_back(std::move(b));
      return out;
    }
    case K::One: return {Sequent{}};
    case K::Zero: return {};
    default: return {Sequent{f}};
  }
}

// ---------------------------------------------------------------------------
// Derivations

bool Derivation::contains_daimon() const {
  if (rule == Rule::Daimon) return true;
  return std::any_of(premises.begin(), premises.end(), [](const Derivation& p) { return p.contains_daimon(); });
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || !same_multiset(a.conclusion, b.conclusion) || a.focus != b.focus) return false;
  if (a.selections.size() != b.selections.size() || a.premises.size() != b.premises.size()) return false;
  for (std::size_t i = 0; i < a.selections.size(); ++i)
    if (!same_multiset(a.selections[i], b.selections[i])) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!(a.premises[i] == b.premises[i])) return false;
  return true;
}

std::string to_string(Derivation::Rule r) {
  switch (r) {
    case Derivation::Rule::PositiveCluster: return "positive";
    case Derivation::Rule::NegativeCluster: return "negative";
    case Derivation::Rule::Axiom: return "axiom";
    case Derivation::Rule::Daimon: return "daimon";
  }
  return {};
}

namespace {

void render_into(const Derivation& d, std::size_t indent, std::ostringstream& out) {
  out << std::string(indent, ' ') << to_string(d.conclusion) << "  ";
  switch (d.rule) {
    case Derivation::Rule::Axiom: out << "ax"; break;
    case Derivation::Rule::Daimon: out << "†"; break;
    default: {
      out << (d.rule == Derivation::Rule::PositiveCluster ? "(+) " : "(-) ") << d.focus->pretty() << " {";
      for (std::size_t i = 0; i < d.selections.size(); ++i) {
        out << (i ? " | " : "");
        for (std::size_t j = 0; j < d.selections[i].size(); ++j)
          out << (j ? ", " : "") << d.selections[i][j].pretty();
      }
      out << "}";
    }
  }
  out << "\n";
  for (const auto& p : d.premises) render_into(p, indent + 2, out);
}

void validate_into(const Derivation& d, const std::string& path, Report& r) {
  auto fail = [&](const std::string& code, const std::string& msg) { r.push_back({code, msg, path}); };
  using R = Derivation::Rule;
  if (count_non_atomic_negatives(d.conclusion) > 1)
    fail("bad-sequent", to_string(d.conclusion) + " has two non-atomic negative formulas");
  switch (d.rule) {
    case R::Daimon:
      if (!d.premises.empty()) fail("bad-premises", "daimon with premises");
      return;
    case R::Axiom:
      if (!is_axiom(d.conclusion)) fail("bad-axiom", to_string(d.conclusion) + " is not X, X⊥");
      if (!d.premises.empty()) fail("bad-premises", "axiom with premises");
      return;
    default:
      break;
  }
  if (!d.focus) return fail("bad-focus", "cluster without a focus");
  const PFormula& f = *d.focus;
  auto at = std::find(d.conclusion.begin(), d.conclusion.end(), f);
  if (at == d.conclusion.end()) return fail("bad-focus", f.pretty() + " is not in " + to_string(d.conclusion));
  const Sequent ctx = without(d.conclusion, static_cast<std::size_t>(at - d.conclusion.begin()));
  if (d.rule == R::NegativeCluster) {
    if (!non_atomic_negative(f)) return fail("bad-focus", f.pretty() + " is not a non-atomic negative formula");
    const auto branches = negative_branches(f);
    if (d.selections.size() != branches.size()) return fail("bad-selection", "not every branch of the focus is taken");
    for (std::size_t k = 0; k < branches.size(); ++k)
      if (!same_multiset(d.selections[k], branches[k])) return fail("bad-selection", "branch " + std::to_string(k));
    if (d.premises.size() != branches.size()) return fail("bad-premises", "one premise per branch expected");
    for (std::size_t k = 0; k < branches.size(); ++k) {
      const Derivation& p = d.premises[k];
      if (!same_multiset(p.conclusion, concat(ctx, branches[k])))
        fail("bad-premises", "premise " + std::to_string(k) + " concludes " + to_string(p.conclusion));
      if (p.rule == R::NegativeCluster) fail("not-alternating", "negative cluster above a negative cluster");
      validate_into(p, path + "/" + std::to_string(k), r);
    }
    return;
  }
  if (!f.positive() || f.is_atom()) return fail("bad-focus", f.pretty() + " is not a non-atomic positive formula");
  if (count_non_atomic_negatives(d.conclusion) != 0)
    return fail("bad-focus", "positive step while a negative formula is left");
  const auto alts = positive_alternatives(f);
  if (d.selections.size() != 1 ||
      std::none_of(alts.begin(), alts.end(), [&](const Sequent& a) { return same_multiset(a, d.selections[0]); }))
    return fail("bad-selection", "not a decomposition of " + f.pretty());
  const Sequent& sel = d.selections[0];
  if (d.premises.size() != sel.size()) return fail("bad-premises", "one premise per selected formula expected");
  Sequent rest;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const Derivation& p = d.premises[i];
    auto it = std::find(p.conclusion.begin(), p.conclusion.end(), sel[i]);
    if (it == p.conclusion.end()) {
      fail("bad-premises", "premise " + std::to_string(i) + " lacks " + sel[i].pretty());
      continue;
    }
    for (const auto& g : without(p.conclusion, static_cast<std::size_t>(it - p.conclusion.begin()))) rest.push_back(g);
    if (sel[i].is_atom() && p.rule != R::Axiom)
      fail("not-alternating", "premise " + std::to_string(i) + " on an atom must be an axiom");
    if (!sel[i].is_atom() && !(p.rule == R::NegativeCluster && p.focus == sel[i]))
      fail("not-alternating", "premise " + std::to_string(i) + " must decompose " + sel[i].pretty());
    validate_into(p, path + "/" + std::to_string(i), r);
  }
  if (!same_multiset(rest, ctx)) fail("bad-premises", "premise contexts do not split " + to_string(ctx));
}

}  // namespace

std::string render(const Derivation& d) {
  std::ostringstream out;
  render_into(d, 0, out);
  return out.str();
}

Report validate_derivation(const Derivation& d) {
  Report r;
  validate_into(d, "", r);
  return r;
}

// ---------------------------------------------------------------------------
// Search

std::string to_string(SearchResult::Tag t) {
  switch (t) {
    case SearchResult::Tag::Found: return "Found";
    case SearchResult::Tag::None: return "None";
    case SearchResult::Tag::FuelExhausted: return "FuelExhausted";
  }
  return {};
}

namespace {

struct OutOfFuel {};

class Searcher {
 public:
  Searcher(std::size_t fuel, bool daimon) : fuel_(fuel), daimon_(daimon) {}

  std::optional<Derivation> prove(const Sequent& s) {
    tick();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (non_atomic_negative(s[i])) return negative(s, i);
    if (is_axiom(s)) return Derivation{s, Derivation::Rule::Axiom, std::nullopt, {}, {}};
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].positive() || s[i].is_atom()) continue;
      if (auto d = positive(s, i)) return d;
    }
    if (daimon_) return Derivation{s, Derivation::Rule::Daimon, std::nullopt, {}, {}};
    return std::nullopt;
  }

 private:
  std::size_t fuel_;
  bool daimon_;

  void tick() {
    if (fuel_ == 0) throw OutOfFuel{};
    --fuel_;
  }

  std::optional<Derivation> negative(const Sequent& s, std::size_t i) {
    const Sequent ctx = without(s, i);
    Derivation d{s, Derivation::Rule::NegativeCluster, s[i], negative_branches(s[i]), {}};
    for (const auto& b : d.selections) {
      auto p = prove(concat(ctx, b));
      if (!p) return std::nullopt;
      d.premises.push_back(std::move(*p));
    }
    return d;
  }

  std::optional<Derivation> positive(const Sequent& s, std::size_t i) {
    const Sequent ctx = without(s, i);
    for (const auto& sel : positive_alternatives(s[i])) {
      std::optional<Derivation> found;
      for_each_split(ctx, sel.size(), [&](std::vector<Sequent>& parts) {
        tick();
        std::vector<Derivation> premises;
        for (std::size_t k = 0; k < sel.size(); ++k) {
          const Sequent ps = positive_premise(sel[k], parts[k]);
          if (sel[k].is_atom()) {
            if (!is_axiom(ps)) return false;
            premises.push_back({ps, Derivation::Rule::Axiom, std::nullopt, {}, {}});
            continue;
          }
          auto p = prove(ps);
          if (!p) return false;
          premises.push_back(std::move(*p));
        }
        found = Derivation{s, Derivation::Rule::PositiveCluster, s[i], {sel}, std::move(premises)};
        return true;
      });
      if (found) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

SearchResult focused_search(const Sequent& s, std::size_t fuel, bool daimon_mode) {
  if (count_non_atomic_negatives(s) > 1)
    throw std::invalid_argument(to_string(s) + " has more than one non-atomic negative formula");
  try {
    Searcher strict(fuel, false);
    if (auto d = strict.prove(s)) return {SearchResult::Tag::Found, std::move(d)};
    if (!daimon_mode) return {SearchResult::Tag::None, std::nullopt};
    Searcher loose(fuel, true);
    return {SearchResult::Tag::Found, loose.prove(s)};
  } catch (const OutOfFuel&) {
    return {SearchResult::Tag::FuelExhausted, std::nullopt};
  }
}

// ---------------------------------------------------------------------------
// Games and strategies

namespace {

std::string move_key(const Move& m) {
  std::string k = m.focus ? m.focus->key() : "†";
  for (const auto& c : keys(m.choices)) k += " " + c;
  return k;
}

// Occurrence of `g` in f as a subformula.
bool subformula(const PFormula& g, const PFormula& f) {
  if (g == f) return true;
  switch (f.kind()) {
    case K::Tensor:
    case K::Plus:
    case K::Par:
    case K::With:
      return subformula(g, f.left()) || subformula(g, f.right());
    default:
      return false;
  }
}

}  // namespace

bool operator==(const Move& a, const Move& b) { return move_key(a) == move_key(b); }
bool operator<(const Move& a, const Move& b) { return move_key(a) < move_key(b); }

std::string to_string(const Move& m) {
  if (m.is_daimon()) return "†";
  std::string out = "(" + m.focus->pretty() + ", {";
  for (std::size_t i = 0; i < m.choices.size(); ++i) out += (i ? ", " : "") + m.choices[i].pretty();
  return out + "})";
}

std::string to_string(const Game& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? ", " : "") + to_string(g[i]);
  return out;
}

Report validate_game(const Game& g) {
  Report r;
  if (g.empty()) {
    r.push_back({"empty-game", "a game has at least one move", ""});
    return r;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Move& m = g[i];
    const std::string path = std::to_string(i);
    if (m.is_daimon()) {
      if (i + 1 != g.size()) r.push_back({"daimon-not-last", "moves after †", path});
    } else {
      for (const auto& c : m.choices)
        if (!subformula(c, *m.focus) || c == *m.focus || (!c.is_atom() && c.positive() == m.focus->positive()))
          r.push_back({"bad-choice", c.pretty() + " is not a choice for " + m.focus->pretty(), path});
      if (!seen.insert(m.focus->key()).second)
        r.push_back({"repeated-focus", m.focus->pretty() + " is focused twice", path});
    }
    if (i == 0) continue;
    const Move& prev = g[i - 1];
    if (m.positive() == prev.positive()) r.push_back({"not-alternating", "two consecutive moves share a polarity", path});
    if (!m.positive() && prev.positive() && !prev.is_daimon() &&
        std::find(prev.choices.begin(), prev.choices.end(), *m.focus) == prev.choices.end())
      r.push_back({"unchosen-focus", m.focus->pretty() + " is not among the previous choices", path});
  }
  return r;
}

Report validate_strategy(const Strategy& st, const Sequent& s) {
  Report r;
  if (st.empty()) r.push_back({"empty-strategy", "no games", ""});
  std::size_t n = 0;
  for (const auto& g : st) {
    const std::string path = std::to_string(n++);
    for (auto v : validate_game(g)) {
      v.path = path + "/" + v.path;
      r.push_back(std::move(v));
    }
    if (g.empty()) continue;
    if (g.size() > 1 && !st.count(Game(g.begin(), g.end() - 1)))
      r.push_back({"not-prefix-closed", "missing the prefix of " + to_string(g), path});
    if (!g.front().is_daimon() && std::find(s.begin(), s.end(), *g.front().focus) == s.end())
      r.push_back({"foreign-focus", g.front().focus->pretty() + " is not in " + to_string(s), path});
  }
  return r;
}

namespace {

void collect_games(const Derivation& d, const Game& prefix, Strategy& out) {
  using R = Derivation::Rule;
  switch (d.rule) {
    case R::Axiom:
      return;
    case R::Daimon: {
      Game g = prefix;
      g.push_back(Move::daimon());
      out.insert(std::move(g));
      return;
    }
    case R::NegativeCluster:
      for (std::size_t k = 0; k < d.premises.size(); ++k) {
        Game g = prefix;
        g.push_back(Move{d.focus, d.selections[k]});
        out.insert(g);
        collect_games(d.premises[k], g, out);
      }
      return;
    case R::PositiveCluster: {
      Game g = prefix;
      g.push_back(Move{d.focus, d.selections[0]});
      out.insert(g);
      for (const auto& p : d.premises) collect_games(p, g, out);
      return;
    }
  }
}

const PFormula& negative_atom_of(const Sequent& axiom) { return axiom[0].positive() ? axiom[1] : axiom[0]; }

// Continuations: the remaining moves of every game extending the current
// position, the position itself excluded.
using Continuations = std::vector<Game>;

class Rebuilder {
 public:
  explicit Rebuilder(Report& r) : report_(r) {}

  std::optional<Derivation> build(const Sequent& s, const Continuations& cs, const std::string& path) {
    using R = Derivation::Rule;
    std::set<Move> firsts;
    for (const auto& c : cs) firsts.insert(c.front());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!non_atomic_negative(s[i])) continue;
      const PFormula& n = s[i];
      for (const auto& m : firsts)
        if (m.is_daimon() || !(*m.focus == n))
          return fail("conflict", "expected a move on " + n.pretty() + ", got " + to_string(m), path);
      const auto branches = negative_branches(n);
      Derivation d{s, R::NegativeCluster, n, branches, {}};
      const Sequent ctx = without(s, i);
      std::set<Move> matched;
      for (std::size_t k = 0; k < branches.size(); ++k) {
        const Move m{n, branches[k]};
        if (!firsts.count(m))
          return fail("missing-branch", "no move " + to_string(m), path);
        matched.insert(m);
        auto p = build(concat(ctx, branches[k]), after(cs, m), path + "/" + std::to_string(k));
        if (!p) return std::nullopt;
        d.premises.push_back(std::move(*p));
      }
      for (const auto& m : firsts)
        if (!matched.count(m)) return fail("illegal-move", to_string(m) + " is not a branch of " + n.pretty(), path);
      return d;
    }
    if (firsts.empty()) {
      if (is_axiom(s)) return Derivation{s, R::Axiom, std::nullopt, {}, {}};
      return fail("incomplete", "nothing closes " + to_string(s), path);
    }
    if (firsts.size() > 1) return fail("conflict", "several moves at one position", path);
    const Move m = *firsts.begin();
    if (m.is_daimon()) {
      if (!after(cs, m).empty()) return fail("illegal-move", "moves after †", path);
      return Derivation{s, R::Daimon, std::nullopt, {}, {}};
    }
    if (is_axiom(s) && m.choices.empty() && *m.focus == negative_atom_of(s) && after(cs, m).empty())
      return Derivation{s, R::Axiom, std::nullopt, {}, {}};
    auto at = std::find(s.begin(), s.end(), *m.focus);
    if (at == s.end() || !m.focus->positive() || m.focus->is_atom())
      return fail("illegal-move", to_string(m) + " does not act on " + to_string(s), path);
    const auto alts = positive_alternatives(*m.focus);
    auto alt = std::find_if(alts.begin(), alts.end(), [&](const Sequent& a) { return same_multiset(a, m.choices); });
    if (alt == alts.end()) return fail("illegal-move", to_string(m) + " is not a decomposition", path);
    const Sequent sel = *alt;
    const Continuations next = after(cs, m);
    for (const auto& c : next)
      if (c.front().is_daimon() || std::find(sel.begin(), sel.end(), *c.front().focus) == sel.end())
        return fail("illegal-move", to_string(c.front()) + " does not follow " + to_string(m), path);
    std::vector<Continuations> per(sel.size());
    for (std::size_t k = 0; k < sel.size(); ++k)
      for (const auto& c : next)
        if (*c.front().focus == sel[k]) per[k].push_back(c);
    const Sequent ctx = without(s, static_cast<std::size_t>(at - s.begin()));
    std::optional<Derivation> found;
    Report saved = report_;
    for_each_split(ctx, sel.size(), [&](std::vector<Sequent>& parts) {
      std::vector<Derivation> premises;
      for (std::size_t k = 0; k < sel.size(); ++k) {
        const Sequent ps = positive_premise(sel[k], parts[k]);
        if (sel[k].is_atom()) {
          if (!is_axiom(ps)) return false;
          premises.push_back({ps, R::Axiom, std::nullopt, {}, {}});
          continue;
        }
        auto p = build(ps, per[k], path + "/" + std::to_string(k));
        report_ = saved;
        if (!p) return false;
        premises.push_back(std::move(*p));
      }
      found = Derivation{s, R::PositiveCluster, m.focus, {sel}, std::move(premises)};
      return true;
    });
    if (!found) return fail("unrealizable", "no split of " + to_string(ctx) + " fits " + to_string(m), path);
    return found;
  }

 private:
  Report& report_;

  std::optional<Derivation> fail(const std::string& code, const std::string& msg, const std::string& path) {
    report_.push_back({code, msg, path});
    return std::nullopt;
  }

  static Continuations after(const Continuations& cs, const Move& m) {
    Continuations out;
    for (const auto& c : cs)
      if (c.size() > 1 && c.front() == m) out.emplace_back(c.begin() + 1, c.end());
    return out;
  }
};

}  // namespace

Strategy derivation_to_strategy(const Derivation& d) {
  Strategy out;
  if (d.rule == Derivation::Rule::Axiom) {
    out.insert(Game{Move{negative_atom_of(d.conclusion), {}}});
    return out;
  }
  collect_games(d, {}, out);
  return out;
}

std::optional<Derivation> strategy_to_derivation(const Strategy& st, const Sequent& s, Report& report) {
  if (st.empty()) {
    report.push_back({"empty-strategy", "no games", ""});
    return std::nullopt;
  }
  for (const auto& v : validate_strategy(st, s))
    if (v.code == "not-prefix-closed" || v.code == "empty-game") {
      report.push_back(v);
      return std::nullopt;
    }
  // Only the maximal games matter once prefix closure holds; any game
  // contributes its moves.
  Continuations cs(st.begin(), st.end());
  Rebuilder rb(report);
  return rb.build(s, cs, "");
}

SExpr strategy_to_sexpr(const Strategy& st) {
  std::string out = "(strategy";
  for (const auto& g : st) {
    out += "\n  (game";
    for (const auto& m : g) {
      if (m.is_daimon()) {
        out += " (move daimon)";
        continue;
      }
      out += " (move " + m.focus->to_sexpr() + " (";
      for (std::size_t i = 0; i < m.choices.size(); ++i) out += (i ? " " : "") + m.choices[i].to_sexpr();
      out += "))";
    }
    out += ")";
  }
  return parse_sexpr(out + ")");
}

Strategy parse_strategy(const SExpr& e) {
  if (!e.is_form("strategy")) e.fail("expected (strategy ...)");
  Strategy st;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& g = e[i];
    if (!g.is_form("game")) g.fail("expected (game ...)");
    Game game;
    for (std::size_t j = 1; j < g.size(); ++j) {
      const SExpr& m = g[j];
      if (!m.is_form("move")) m.fail("expected (move F (choices ...))");
      if (m.size() == 2 && m[1].is_atom() && m[1].text() == "daimon") {
        game.push_back(Move::daimon());
        continue;
      }
      if (m.size() != 3 || !m[2].is_list()) m.fail("expected (move F (choices ...))");
      Move mv{parse_pformula(m[1]), {}};
      for (const auto& c : m[2].items()) mv.choices.push_back(parse_pformula(c));
      game.push_back(std::move(mv));
    }
    st.insert(std::move(game));
  }
  return st;
}

}  // namespace groundwork::focusing
