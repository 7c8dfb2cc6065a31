#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace designlab {

// Invalid input values (non-finite entries, mismatched dimensions, bad parameters).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A dense-size or enumeration guard was exceeded. `guard()` names the guard.
class SizeGuardError : public std::length_error {
 public:
  SizeGuardError(std::string guard, const std::string& detail)
      : std::length_error(guard + ": " + detail), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

// An internal cross-check between two independent computations disagreed.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_size(bool ok, const char* guard, const std::string& detail) {
  if (!ok) throw SizeGuardError(guard, detail);
}

// 2^e as an exact integer; e must be < 63.
constexpr std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

}  // namespace designlab
