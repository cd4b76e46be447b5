#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace groundwork {

// One failed check. `code` is a stable kebab-case identifier (e.g.
// "unbound-variable"), `path` locates the offending node when relevant.
struct Violation {
  std::string code;
  std::string message;
  std::string path;
};

// Empty report means "ok".
using Report = std::vector<Violation>;

inline bool ok(const Report& r) { return r.empty(); }

inline std::ostream& operator<<(std::ostream& out, const Violation& v) {
  out << v.code;
  if (!v.path.empty()) out << " at " << v.path;
  if (!v.message.empty()) out << ": " << v.message;
  return out;
}

}  // namespace groundwork
