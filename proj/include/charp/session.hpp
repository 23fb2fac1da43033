#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "charp/divisor.hpp"
#include "charp/extension.hpp"
#include "charp/ideal.hpp"
#include "charp/pmap.hpp"
#include "charp/testideal.hpp"

namespace charp {

struct SessionOptions {
  uint32_t default_p = 0;               // 0: no implicit ring
  std::string default_vars;             // comma-separated
  Order default_order = Order::Grevlex;
  int max_e = 8;
  long long step_cap = 1'000'000;
  uint64_t seed = 0;
  bool json = false;
};

struct Transcript {
  std::string text;   // plain transcript (one block per producing statement)
  std::string json;   // mirrored structured output (filled in json mode)
  int exit_code = 0;
};

/// Execute a line-oriented session script. Statements are separated by
/// newlines or ';', '#' starts a comment. Identical input and options give
/// byte-identical output.
Transcript run_session(const std::string& script, const SessionOptions& opt = {});

}  // namespace charp
