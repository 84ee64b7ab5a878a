#pragma once

#include <stdexcept>
#include <string>

namespace latcomm {

// Bad experiment configuration (unknown keys, out-of-range parameters,
// malformed JSON).  Maps to process exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation hit its configured resource cap (term count, enumeration
// depth).  Maps to process exit code 3.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what, long long reached_ = -1)
      : std::runtime_error(what), reached(reached_) {}
  long long reached;
};

}  // namespace latcomm
