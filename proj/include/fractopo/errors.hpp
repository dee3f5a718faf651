#pragma once

#include <stdexcept>
#include <string>

namespace fractopo {

// Error taxonomy mirrored by the CLI exit codes:
//   verification failure (reported, not thrown)  -> exit 1
//   input_error / domain_error / precondition_error -> exit 2
//   capacity_error                                -> exit 3
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A numeric or structural argument escapes its admissible domain
// (e.g. evaluation point outside a generator's interval).
class domain_error : public input_error {
 public:
  explicit domain_error(const std::string& what) : input_error(what) {}
};

// An operation was called on a value that fails its precondition
// (e.g. chain extraction on a family that fails the axioms).
class precondition_error : public input_error {
 public:
  explicit precondition_error(const std::string& what) : input_error(what) {}
};

// Request exceeds a hard implementation bound (brute-force caps, level caps).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fractopo
