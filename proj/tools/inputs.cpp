#include "inputs.hpp"

#include <functional>

#include "groundwork/atomic_base.hpp"
#include "groundwork/sexpr.hpp"

namespace groundwork::cli {

namespace fs = std::filesystem;
using namespace ludics;

namespace {

// Runs f, turning parse and validation failures into located InputErrors.
template <class F>
auto located(const fs::path& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    // The message already starts with line:column.
    throw InputError(path.string() + ":" + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<SExpr> read_forms(const fs::path& path) {
  if (!fs::exists(path)) throw InputError(path.string() + ": no such file");
  return located(path, [&] { return parse_sexprs(read_file(path.string())); });
}

SExpr read_one(const fs::path& path) {
  auto forms = read_forms(path);
  if (forms.size() != 1) throw InputError(path.string() + ": expected exactly one top-level form");
  return forms.front();
}

std::size_t number(const SExpr& e) {
  if (!e.is_atom()) e.fail("number expected");
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(e.text(), &used);
    if (used != e.text().size()) e.fail("number expected, got " + e.text());
    return v;
  } catch (const std::logic_error&) {
    e.fail("number expected, got " + e.text());
  }
}

Ramification ramification(const SExpr& e) {
  if (!e.is_list()) e.fail("ramification (i ...) expected");
  Ramification I;
  for (const auto& x : e.items()) I.insert(static_cast<std::uint32_t>(number(x)));
  return I;
}

// Recognizes a bounds item; false when `e` is something else.
bool bounds_item(const SExpr& e, BoundsSpec& spec) {
  auto single = [&] {
    if (e.size() != 2) e.fail("(" + e.head() + " N) expected");
    return number(e[1]);
  };
  if (e.is_form("depth")) {
    spec.depth = single();
  } else if (e.is_form("cap")) {
    spec.cap = single();
  } else if (e.is_form("fuel")) {
    spec.fuel = single();
  } else if (e.is_form("pool")) {
    if (e.size() == 2 && e[1].is_atom()) {
      spec.pool = powerset_pool(static_cast<std::uint32_t>(number(e[1])));
    } else {
      std::vector<Ramification> pool;
      for (std::size_t i = 1; i < e.size(); ++i) pool.push_back(ramification(e[i]));
      spec.pool = std::move(pool);
    }
  } else {
    return false;
  }
  return true;
}

Design design_item(const SExpr& e, const fs::path& dir) {
  if (e.is_string()) return load_design(dir / e.text());
  if (e.is_form("named")) {
    if (e.size() != 3 || !e[2].is_atom()) e.fail("(named one|top|zero|bomb|skunk|daimon ADDR)");
    const std::string& what = e[1].text();
    const Address a = parse_address(e[2].text());
    if (what == "one" || what == "bomb") return atomic_bomb(a);
    if (what == "top" || what == "skunk") return skunk(a);
    if (what == "zero" || what == "daimon") return daimon(positive_base({a}));
    e.fail("unknown named design '" + what + "'");
  }
  return parse_design(e);
}

}  // namespace

void BoundsSpec::apply(UniverseBounds& b) const {
  if (depth) b.max_depth = *depth;
  if (cap) b.cap = *cap;
  if (fuel) b.fuel = *fuel;
  if (pool) b.pool = *pool;
}

TermFile load_term_file(const fs::path& path) {
  auto forms = read_forms(path);
  return located(path, [&] {
    background::AtomicBase base;
    std::optional<grounds::Signature> sig;
    std::optional<grounds::Term> term;
    for (const auto& f : forms) {
      if (f.is_form("base")) {
        base = background::parse_base(f);
      } else if (f.is_form("signature")) {
        sig = grounds::parse_signature(f, base);
      } else {
        if (term) f.fail("more than one term in the file");
        const auto syntax = (sig ? sig->base() : base).syntax();
        if (f.is_form("term") && f.size() != 2) f.fail("(term T)");
        term = grounds::parse_term(f.is_form("term") ? f[1] : f, syntax);
      }
    }
    if (!term) throw InputError(path.string() + ": no term");
    return TermFile{sig ? *sig : grounds::Signature(base), *term};
  });
}

Design load_design(const fs::path& path) {
  const SExpr e = read_one(path);
  return located(path, [&] { return parse_design(e); });
}

std::vector<Design> load_net(const fs::path& path) {
  const SExpr e = read_one(path);
  return located(path, [&] {
    if (!e.is_form("net")) e.fail("expected (net ...)");
    std::vector<Design> out;
    for (std::size_t i = 1; i < e.size(); ++i) out.push_back(design_item(e[i], path.parent_path()));
    return out;
  });
}

BehaviourFile load_behaviour_file(const fs::path& path, const BoundsSpec& overrides) {
  const SExpr e = read_one(path);
  return located(path, [&] {
    if (!e.is_form("behaviour")) e.fail("expected (behaviour ...)");
    BehaviourFile out;
    BoundsSpec spec;
    for (std::size_t i = 1; i < e.size(); ++i) {
      const SExpr& item = e[i];
      if (bounds_item(item, spec)) continue;
      if (item.is_form("generators")) {
        for (std::size_t k = 1; k < item.size(); ++k) out.generators.push_back(design_item(item[k], path.parent_path()));
      } else if ((item.is_form("base") || item.is_form("base-neg")) && item.size() == 2) {
        const Address a = parse_address(item[1].text());
        out.bounds.base = item.is_form("base") ? positive_base({a}) : negative_base(a);
      } else {
        item.fail("unexpected item in behaviour");
      }
    }
    spec.apply(out.bounds);
    overrides.apply(out.bounds);
    if (out.generators.empty() && out.bounds.base.addresses().empty())
      e.fail("a behaviour without generators needs (base ADDR) or (base-neg ADDR)");
    return out;
  });
}

translation::TranslationEnv load_env(const fs::path& path, const BoundsSpec& overrides) {
  const SExpr e = read_one(path);
  return located(path, [&] {
    if (!e.is_form("env")) e.fail("expected (env ...)");
    translation::TranslationEnv env;
    BoundsSpec spec;
    for (std::size_t i = 1; i < e.size(); ++i) {
      const SExpr& item = e[i];
      if (bounds_item(item, spec)) continue;
      if (item.is_form("atom")) {
        if (item.size() < 2 || !item[1].is_atom()) item.fail("(atom NAME ITEM ...)");
        auto& gens = env.atoms[item[1].text()];
        for (std::size_t k = 2; k < item.size(); ++k) gens.push_back(design_item(item[k], path.parent_path()));
      } else if (item.is_form("constant")) {
        if (item.size() != 3 || !item[1].is_atom()) item.fail("(constant NAME ITEM)");
        env.constants.insert_or_assign(item[1].text(), design_item(item[2], path.parent_path()));
      } else if (item.is_form("fax-depth")) {
        if (item.size() != 2) item.fail("(fax-depth N)");
        env.fax_depth = number(item[1]);
      } else {
        item.fail("unexpected item in env");
      }
    }
    spec.apply(env.bounds);
    overrides.apply(env.bounds);
    return env;
  });
}

focusing::Sequent load_sequent(const fs::path& path) {
  const SExpr e = read_one(path);
  return located(path, [&] { return focusing::parse_sequent(e); });
}

focusing::Strategy load_strategy(const fs::path& path) {
  const SExpr e = read_one(path);
  return located(path, [&] { return focusing::parse_strategy(e); });
}

}  // namespace groundwork::cli
