#include "designlab/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>

#include "designlab/errors.hpp"
#include "designlab/rng.hpp"

namespace designlab {

namespace {

std::size_t byte_count(int n_vars) { return std::max<std::size_t>(1, (std::size_t{1} << n_vars) / 8); }

}  // namespace

BooleanFunction::BooleanFunction(int n_vars, std::vector<std::uint8_t> packed)
    : n_vars_(n_vars), bytes_(std::move(packed)) {
  if (n_vars < 0) throw DomainError("BooleanFunction: negative variable count");
  require_size(n_vars <= kMaxBooleanVars, "boolean n_vars <= 24", std::to_string(n_vars) + " variables");
  if (bytes_.size() != byte_count(n_vars))
    throw DomainError("BooleanFunction: truth table must hold exactly 2^n_vars bits");
  if (n_vars < 3) {
    // Unused high bits of the single byte must be clear.
    const std::uint8_t valid = static_cast<std::uint8_t>((1u << (1u << n_vars)) - 1u);
    bytes_[0] &= valid;
  }
  for (auto b : bytes_) sat_count_ += static_cast<std::uint64_t>(std::popcount(b));
}

BooleanFunction BooleanFunction::constant(int n_vars, bool value) {
  return from_predicate(n_vars, [value](std::uint64_t) { return value; });
}

BooleanFunction BooleanFunction::from_predicate(int n_vars,
                                                const std::function<bool(std::uint64_t)>& pred) {
  if (n_vars < 0 || n_vars > kMaxBooleanVars)
    throw SizeGuardError("boolean n_vars <= 24", std::to_string(n_vars) + " variables");
  std::vector<std::uint8_t> bytes(byte_count(n_vars), 0);
  const std::uint64_t size = std::uint64_t{1} << n_vars;
  for (std::uint64_t x = 0; x < size; ++x)
    if (pred(x)) bytes[x >> 3] |= static_cast<std::uint8_t>(1u << (x & 7));
  return BooleanFunction(n_vars, std::move(bytes));
}

BooleanFunction BooleanFunction::with_count(int n_vars, std::uint64_t count, std::uint64_t seed) {
  if (n_vars < 0 || n_vars > kMaxBooleanVars)
    throw SizeGuardError("boolean n_vars <= 24", std::to_string(n_vars) + " variables");
  const std::uint64_t size = std::uint64_t{1} << n_vars;
  if (count > size) throw DomainError("with_count: count exceeds 2^n_vars");
  std::vector<std::uint64_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  const CounterRng rng(seed, 0xb001);
  for (std::uint64_t i = size; i > 1; --i) std::swap(order[i - 1], order[rng.below(i, i)]);
  std::vector<std::uint8_t> bytes(byte_count(n_vars), 0);
  for (std::uint64_t i = 0; i < count; ++i)
    bytes[order[i] >> 3] |= static_cast<std::uint8_t>(1u << (order[i] & 7));
  return BooleanFunction(n_vars, std::move(bytes));
}

BooleanFunction BooleanFunction::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open truth-table file '" + path + "'");
  unsigned char header[8];
  if (!in.read(reinterpret_cast<char*>(header), 8)) throw DomainError("truth-table file: short header");
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i) n = (n << 8) | header[i];
  if (n > kMaxBooleanVars) throw SizeGuardError("boolean n_vars <= 24", std::to_string(n) + " variables");
  std::vector<std::uint8_t> bytes(byte_count(static_cast<int>(n)));
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
    throw DomainError("truth-table file: truncated table");
  in.peek();
  if (!in.eof()) throw DomainError("truth-table file: trailing bytes");
  return BooleanFunction(static_cast<int>(n), std::move(bytes));
}

void BooleanFunction::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write truth-table file '" + path + "'");
  unsigned char header[8];
  auto n = static_cast<std::uint64_t>(n_vars_);
  for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>((n >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(header), 8);
  out.write(reinterpret_cast<const char*>(bytes_.data()), static_cast<std::streamsize>(bytes_.size()));
}

BooleanFunction BooleanFunction::from_hex(int n_vars, const std::string& hex) {
  if (n_vars < 0 || n_vars > kMaxBooleanVars)
    throw SizeGuardError("boolean n_vars <= 24", std::to_string(n_vars) + " variables");
  if (hex.size() != 2 * byte_count(n_vars)) throw DomainError("truth table hex has wrong length");
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(std::stoul(hex.substr(2 * i, 2), nullptr, 16));
  return BooleanFunction(n_vars, std::move(bytes));
}

std::string BooleanFunction::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes_.size() * 2);
  for (auto b : bytes_) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

BooleanFunction BooleanFunction::negated() const {
  const BooleanFunction& self = *this;
  return from_predicate(n_vars_, [&self](std::uint64_t x) { return !self(x); });
}

}  // namespace designlab
