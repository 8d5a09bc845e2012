#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lforge {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr const char* kVersion = "0.1.0";

enum class ErrorKind {
  usage,
  config,
  capacity,
  parse,
  validation,
  solver,
  colouring,
  assembly,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Deterministic fan-out of one user seed into per-subsystem streams.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

}  // namespace lforge
