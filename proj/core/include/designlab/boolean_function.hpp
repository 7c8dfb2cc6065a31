#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace designlab {

// Truth table over n_vars inputs; input x is the integer whose most
// significant bit is variable 0. Bit x lives in byte x/8, bit x%8.
class BooleanFunction {
 public:
  BooleanFunction(int n_vars, std::vector<std::uint8_t> packed);

  static BooleanFunction constant(int n_vars, bool value);
  static BooleanFunction from_predicate(int n_vars, const std::function<bool(std::uint64_t)>& pred);
  // Exactly `count` satisfying inputs, placed by a seeded shuffle.
  static BooleanFunction with_count(int n_vars, std::uint64_t count, std::uint64_t seed);

  // File layout: 8-byte little-endian n_vars header, then the packed table.
  static BooleanFunction load(const std::string& path);
  void save(const std::string& path) const;

  static BooleanFunction from_hex(int n_vars, const std::string& hex);
  std::string to_hex() const;

  int n_vars() const { return n_vars_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_vars_; }
  bool operator()(std::uint64_t x) const { return (bytes_[x >> 3] >> (x & 7)) & 1u; }
  std::uint64_t sat_count() const { return sat_count_; }
  BooleanFunction negated() const;
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  int n_vars_;
  std::vector<std::uint8_t> bytes_;
  std::uint64_t sat_count_ = 0;
};

inline constexpr int kMaxBooleanVars = 24;

}  // namespace designlab
