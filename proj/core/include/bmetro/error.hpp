#pragma once

#include <stdexcept>
#include <string>

namespace bmetro {

/// Failure raised by every module. The kind maps onto the CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    invalid_argument,  // bad input or violated precondition
    infeasible,        // physically unbounded/undefined request (e.g. HNLS holds)
    numerical,         // truncation, integration or conditioning failure
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] void throw_invalid(const std::string& what);
[[noreturn]] void throw_infeasible(const std::string& what);
[[noreturn]] void throw_numerical(const std::string& what);

}  // namespace bmetro
