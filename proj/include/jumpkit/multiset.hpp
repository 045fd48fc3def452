#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "error.hpp"
#include "number.hpp"

namespace jumpkit {

/// Sorted multiset of limit jumps, every entry in [0, 1).
class JumpMultiset {
 public:
  JumpMultiset() = default;
  explicit JumpMultiset(std::vector<Rational> values) : values_(std::move(values)) {
    for (const auto& v : values_)
      require(v >= 0 && v < 1, ErrorKind::InvalidArgument, "jump " + to_string(v) + " outside [0,1)");
    std::sort(values_.begin(), values_.end());
  }
  JumpMultiset(std::initializer_list<Rational> values) : JumpMultiset(std::vector<Rational>(values)) {}

  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::size_t multiplicity(const Rational& v) const {
    auto [lo, hi] = std::equal_range(values_.begin(), values_.end(), v);
    return static_cast<std::size_t>(hi - lo);
  }

  /// Least common multiple of the denominators (1 for the empty multiset).
  Integer common_denominator() const {
    Integer l = 1;
    for (const auto& v : values_) l = boost::multiprecision::lcm(l, denominator(v));
    return l;
  }

  friend bool operator==(const JumpMultiset&, const JumpMultiset&) = default;

 private:
  std::vector<Rational> values_;
};

/// Sorted multiset of d-jumps; every entry lies in [0, d-1].
class DJumps {
 public:
  DJumps() = default;
  DJumps(std::int64_t d, std::vector<std::int64_t> values) : d_(d), values_(std::move(values)) {
    require(d_ >= 1, ErrorKind::InvalidArgument, "tame degree must be positive");
    for (auto v : values_)
      require(v >= 0 && v <= d_ - 1, ErrorKind::InvalidArgument,
              "d-jump " + std::to_string(v) + " outside [0, " + std::to_string(d_ - 1) + "]");
    std::sort(values_.begin(), values_.end());
  }

  std::int64_t d() const noexcept { return d_; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (auto v : values_) s += v;
    return s;
  }

  friend bool operator==(const DJumps&, const DJumps&) = default;

 private:
  std::int64_t d_ = 1;
  std::vector<std::int64_t> values_;
};

inline std::string to_string(const JumpMultiset& j) {
  if (j.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += ", ";
    out += to_string(j.values()[i]);
  }
  return out;
}

inline std::string to_string(const DJumps& j) {
  if (j.size() == 0) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(j.values()[i]);
  }
  return out;
}

/// Parses a comma-separated list of rationals; "(none)" or blank gives the empty multiset.
inline JumpMultiset parse_jumps(const std::string& text) {
  std::vector<Rational> values;
  std::string item;
  auto flush = [&] {
    std::string trimmed;
    for (char c : item)
      if (c != ' ' && c != '\t') trimmed.push_back(c);
    if (!trimmed.empty() && trimmed != "(none)") values.push_back(parse_rational(trimmed));
    item.clear();
  };
  for (char c : text) {
    if (c == ',') flush();
    else item.push_back(c);
  }
  flush();
  return JumpMultiset(std::move(values));
}

}  // namespace jumpkit
