#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgof {

class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration-model retry budget exhausted under the strict policy.
class construction_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class estimation_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too many bootstrap replicates failed to produce an estimate.
class test_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sgof
