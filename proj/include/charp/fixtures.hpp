#pragma once

#include <string>
#include <vector>

namespace charp {

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string got;
  std::string note;  // how the expected value is established
};

struct FixtureResult {
  std::string id;
  std::vector<FixtureCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Built-in worked examples: finite-extension fixtures with frozen expected
/// values, runnable from the CLI via `verify <id>` or `verify all`.
const std::vector<std::string>& fixture_ids();
FixtureResult run_fixture(const std::string& id);

}  // namespace charp
