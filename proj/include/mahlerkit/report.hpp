#pragma once

#include <string>
#include <vector>

namespace mahlerkit {

// One checked relation "lhs relation rhs". Used by hypothesis validators,
// lemma certificates and proof-parameter audits alike.
struct CheckRow {
  std::string name;
  std::string lhs;
  std::string rhs;
  std::string relation;
  bool pass = false;
  std::string note;
};

struct Report {
  std::vector<CheckRow> rows;

  bool passed() const {
    for (const auto& row : rows) {
      if (!row.pass) return false;
    }
    return true;
  }

  const CheckRow* first_failure() const {
    for (const auto& row : rows) {
      if (!row.pass) return &row;
    }
    return nullptr;
  }
};

}  // namespace mahlerkit
