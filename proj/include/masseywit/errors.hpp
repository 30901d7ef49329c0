#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace masseywit {

// Bad arguments, malformed files, violated construction invariants.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A word's exponents were stored with too little p-adic precision for the
// target group; carries the minimum precision that would have sufficed.
struct precision_error : input_error {
  precision_error(const std::string& msg, uint32_t required)
      : input_error(msg), required_precision(required) {}
  uint32_t required_precision;
};

// The banded system of the commutator solver was inconsistent at some level.
struct no_solution_error : std::runtime_error {
  no_solution_error(const std::string& msg, uint32_t lvl)
      : std::runtime_error(msg), level(lvl) {}
  uint32_t level;
};

// A sequence of classes fails the consecutive cup-product condition.
struct triviality_error : std::runtime_error {
  triviality_error(const std::string& msg, std::size_t idx)
      : std::runtime_error(msg), index(idx) {}
  std::size_t index;  // first i with cup(alpha_i, alpha_{i+1}) != 0
};

// The layered witness search ran out of budget.
struct search_exhausted : std::runtime_error {
  search_exhausted(const std::string& msg, uint64_t tried, uint64_t limit)
      : std::runtime_error(msg), nodes_tried(tried), budget(limit) {}
  uint64_t nodes_tried;
  uint64_t budget;
};

// An enumeration would exceed the configured size budget.
struct resource_error : std::runtime_error {
  resource_error(const std::string& msg, uint64_t need, uint64_t limit)
      : std::runtime_error(msg), required_bits(need), budget_bits(limit) {}
  uint64_t required_bits;
  uint64_t budget_bits;
};

// The cyclic witness recipe produced a non-homomorphism: the input pair is
// outside the Kummerian hypotheses (or there is a bug upstream).
struct non_kummerian_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state the theory rules out was reached; always a bug, never swallowed.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace masseywit
