#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace tricubo {

// One violated invariant. Findings are data: validation and verification
// return them instead of throwing, so callers can collect and print all
// of them or fail on the first.
struct Finding {
  std::string kind;               // stable kebab-case identifier
  std::vector<std::int64_t> ids;  // offending cell/edge/vertex ids
  std::string detail;

  std::string str() const {
    std::ostringstream os;
    os << kind;
    if (!ids.empty()) {
      os << " [";
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) os << ",";
        os << ids[i];
      }
      os << "]";
    }
    if (!detail.empty()) os << ": " << detail;
    return os.str();
  }
};

struct Report {
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }

  void add(std::string kind, std::vector<std::int64_t> ids, std::string detail = {}) {
    findings.push_back(Finding{std::move(kind), std::move(ids), std::move(detail)});
  }

  bool has(const std::string& kind) const {
    for (const auto& f : findings)
      if (f.kind == kind) return true;
    return false;
  }

  std::string str() const {
    std::ostringstream os;
    for (const auto& f : findings) os << f.str() << "\n";
    return os.str();
  }
};

}  // namespace tricubo
