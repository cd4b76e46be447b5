#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groundwork/behaviours.hpp"
#include "groundwork/focusing.hpp"
#include "groundwork/grounds.hpp"
#include "groundwork/translation.hpp"

namespace groundwork::cli {

// An input problem, already located: "file:line:col: message".
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// .gt: optional (base ...) and (signature ...) forms, then the term, bare
// or as (term T).
struct TermFile {
  grounds::Signature signature;
  grounds::Term term;
};
TermFile load_term_file(const std::filesystem::path& path);

// .dsn: one (design ...) form.
ludics::Design load_design(const std::filesystem::path& path);

// .net: (net ITEM ...), an ITEM being a design form or a quoted path to a
// .dsn file, relative to the net file.
std::vector<ludics::Design> load_net(const std::filesystem::path& path);

// Bounds overrides shared by .bhv and .env files: (depth N), (pool N) for
// all subsets of {0..N-1} or (pool (I...) ...), (cap N), (fuel N).
struct BoundsSpec {
  std::optional<std::size_t> depth, cap, fuel;
  std::optional<std::vector<ludics::Ramification>> pool;

  void apply(ludics::UniverseBounds& b) const;
};

// .bhv:
//   (behaviour (generators ITEM ...) (depth 3) (pool 2))
// where ITEM is a design form, a quoted path, or (named one|top|zero ADDR).
// A behaviour with no generators needs (base ADDR) or (base-neg ADDR).
struct BehaviourFile {
  std::vector<ludics::Design> generators;
  ludics::UniverseBounds bounds;
};
BehaviourFile load_behaviour_file(const std::filesystem::path& path, const BoundsSpec& overrides = {});

// .env for translate:
//   (env (atom One ITEM ...) (constant w ITEM) (fax-depth 3) (depth 3) (pool 1))
translation::TranslationEnv load_env(const std::filesystem::path& path, const BoundsSpec& overrides = {});

// .frm: (sequent F ...) or one formula.
focusing::Sequent load_sequent(const std::filesystem::path& path);
// .stg: (strategy ...).
focusing::Strategy load_strategy(const std::filesystem::path& path);

}  // namespace groundwork::cli
