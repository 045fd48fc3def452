#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "multiset.hpp"
#include "number.hpp"

namespace jumpkit {

/// Expression tree for the tori handled by the engine.
class TorusSpec {
 public:
  enum class Kind { Gm, Res, ResQuot, NormOneQuadratic, Product };

  static TorusSpec gm() { return TorusSpec(Kind::Gm, 1, {}); }
  static TorusSpec res(std::int64_t n) { return TorusSpec(Kind::Res, n, {}); }
  /// (Res_{L/K} Gm) / Gm.
  static TorusSpec res_quot(std::int64_t n) { return TorusSpec(Kind::ResQuot, n, {}); }
  static TorusSpec norm_one_quadratic() { return TorusSpec(Kind::NormOneQuadratic, 2, {}); }
  static TorusSpec product(std::vector<TorusSpec> factors) { return TorusSpec(Kind::Product, 1, std::move(factors)); }

  Kind kind() const noexcept { return kind_; }
  std::int64_t degree() const noexcept { return n_; }
  const std::vector<TorusSpec>& factors() const noexcept { return factors_; }

  std::int64_t dimension() const {
    switch (kind_) {
      case Kind::Gm: return 1;
      case Kind::Res: return n_;
      case Kind::ResQuot: return n_ - 1;
      case Kind::NormOneQuadratic: return 1;
      case Kind::Product: {
        std::int64_t s = 0;
        for (const auto& f : factors_) s += f.dimension();
        return s;
      }
    }
    return 0;
  }

  /// Least common multiple of the atom degrees; the order function is
  /// quasi-linear with this period.
  std::int64_t period() const {
    if (kind_ != Kind::Product) return kind_ == Kind::Gm ? 1 : n_;
    std::int64_t l = 1;
    for (const auto& f : factors_) l = std::lcm(l, f.period());
    return l;
  }

  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;

 private:
  TorusSpec(Kind kind, std::int64_t n, std::vector<TorusSpec> factors)
      : kind_(kind), n_(n), factors_(std::move(factors)) {
    require(n_ >= 1, ErrorKind::InvalidArgument, "extension degree must be >= 1");
  }

  Kind kind_;
  std::int64_t n_;
  std::vector<TorusSpec> factors_;
};

/// Text form: factors joined by '*', each `gm`, `res:N`, `resquot:N` or `norm1quad`,
/// optionally raised to a repetition count with `^k`. Example: `gm*norm1quad^3`.
inline TorusSpec parse_torus(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  require(!s.empty(), ErrorKind::ParseError, "empty torus description");
  std::vector<TorusSpec> factors;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('*', pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    require(!term.empty(), ErrorKind::ParseError, "empty factor in '" + text + "'");
    std::int64_t repeat = 1;
    if (auto caret = term.find('^'); caret != std::string::npos) {
      repeat = parse_int64(term.substr(caret + 1));
      require(repeat >= 1, ErrorKind::ParseError, "repetition count must be positive");
      term = term.substr(0, caret);
    }
    std::string head = term, arg;
    if (auto colon = term.find(':'); colon != std::string::npos) {
      head = term.substr(0, colon);
      arg = term.substr(colon + 1);
    }
    auto degree = [&] {
      require(!arg.empty(), ErrorKind::ParseError, "'" + head + "' needs a degree, e.g. " + head + ":4");
      std::int64_t n = parse_int64(arg);
      require(n >= 1, ErrorKind::ParseError, "degree must be positive");
      return n;
    };
    TorusSpec atom = TorusSpec::gm();
    if (head == "gm" && arg.empty()) atom = TorusSpec::gm();
    else if (head == "res") atom = TorusSpec::res(degree());
    else if (head == "resquot") atom = TorusSpec::res_quot(degree());
    else if (head == "norm1quad" && arg.empty()) atom = TorusSpec::norm_one_quadratic();
    else fail(ErrorKind::ParseError, "unknown torus factor '" + term + "'");
    for (std::int64_t i = 0; i < repeat; ++i) factors.push_back(atom);
    pos = end + 1;
  }
  return factors.size() == 1 ? factors.front() : TorusSpec::product(std::move(factors));
}

inline std::string to_string(const TorusSpec& spec) {
  switch (spec.kind()) {
    case TorusSpec::Kind::Gm: return "gm";
    case TorusSpec::Kind::Res: return "res:" + std::to_string(spec.degree());
    case TorusSpec::Kind::ResQuot: return "resquot:" + std::to_string(spec.degree());
    case TorusSpec::Kind::NormOneQuadratic: return "norm1quad";
    case TorusSpec::Kind::Product: {
      std::string out;
      for (const auto& f : spec.factors()) out += (out.empty() ? "" : "*") + to_string(f);
      return out;
    }
  }
  return "";
}

/// Multiplicities of the exponents chi_d^{j} in the special-fibre Lie algebra.
struct CharacterDecomp {
  std::int64_t d = 1;
  std::vector<std::int64_t> exponents;  // sorted, each in [0, d)

  friend bool operator==(const CharacterDecomp&, const CharacterDecomp&) = default;
};

inline std::string to_string(const CharacterDecomp& c) {
  std::string out;
  for (std::size_t i = 0; i < c.exponents.size(); ++i) out += (i ? ", " : "") + std::to_string(c.exponents[i]);
  if (out.empty()) out = "(none)";
  return out + " mod " + std::to_string(c.d);
}

inline JumpMultiset jumps_of_extension(const JumpMultiset& toric, const JumpMultiset& abelian);

inline JumpMultiset torus_jumps(const TorusSpec& spec) {
  std::vector<Rational> values;
  switch (spec.kind()) {
    case TorusSpec::Kind::Gm: values.push_back(0); break;
    case TorusSpec::Kind::Res:
      for (std::int64_t nu = 0; nu < spec.degree(); ++nu) values.push_back(make_rational(nu, spec.degree()));
      break;
    case TorusSpec::Kind::ResQuot:
      // Res jumps with one copy of 0 removed: 0 -> Gm -> Res -> Res/Gm -> 0 is universally exact.
      for (std::int64_t nu = 1; nu < spec.degree(); ++nu) values.push_back(make_rational(nu, spec.degree()));
      break;
    case TorusSpec::Kind::NormOneQuadratic: values.push_back(make_rational(1, 2)); break;
    case TorusSpec::Kind::Product: {
      JumpMultiset acc;
      for (const auto& f : spec.factors()) acc = jumps_of_extension(acc, torus_jumps(f));
      return acc;
    }
  }
  return JumpMultiset(std::move(values));
}

/// {floor(d i / n) : i = 0..n-1}, the d-jumps of Res_{L/K} Gm with [L:K] = n.
inline DJumps d_jumps_closed_form(std::int64_t n, std::int64_t d) {
  require(n >= 1 && d >= 1, ErrorKind::InvalidArgument, "n and d must be positive");
  std::vector<std::int64_t> values;
  values.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) values.push_back(static_cast<std::int64_t>((Integer(d) * i / n)));
  return DJumps(d, std::move(values));
}

/// The multiplicity of i is the number of jumps in [i/d, (i+1)/d).
inline DJumps edixhoven_graded(const JumpMultiset& jumps, std::int64_t d) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be positive");
  std::vector<std::int64_t> values;
  values.reserve(jumps.size());
  for (const auto& j : jumps.values()) values.push_back(static_cast<std::int64_t>(floor_of(j * d)));
  return DJumps(d, std::move(values));
}

inline DJumps torus_d_jumps(const TorusSpec& spec, std::int64_t d) {
  switch (spec.kind()) {
    case TorusSpec::Kind::Res: return d_jumps_closed_form(spec.degree(), d);
    case TorusSpec::Kind::Product: {
      std::vector<std::int64_t> values;
      for (const auto& f : spec.factors()) {
        auto part = torus_d_jumps(f, d);
        values.insert(values.end(), part.values().begin(), part.values().end());
      }
      return DJumps(d, std::move(values));
    }
    default: return edixhoven_graded(torus_jumps(spec), d);
  }
}

/// Total length of the base-change cokernel at level d (sum of the d-jumps).
inline Integer order_function(const TorusSpec& spec, std::int64_t d) { return Integer(torus_d_jumps(spec, d).sum()); }

inline Rational tame_conductor(const JumpMultiset& jumps) {
  Rational s = 0;
  for (const auto& j : jumps.values()) s += j;
  return s;
}

/// ord(alpha + q*n) == ord(alpha) + q*n*c_tame with n the period of the spec.
inline bool order_recursion_check(const TorusSpec& spec, std::int64_t alpha, std::int64_t q) {
  require(alpha >= 1 && q >= 0, ErrorKind::InvalidArgument, "need alpha >= 1 and q >= 0");
  const std::int64_t n = spec.period();
  const Rational c = tame_conductor(torus_jumps(spec));
  const Rational lhs = Rational(order_function(spec, alpha + q * n));
  const Rational rhs = Rational(order_function(spec, alpha)) + Rational(q * n) * c;
  return lhs == rhs;
}

/// Jumps of B for a universally exact 0 -> T -> B -> A -> 0 (the caller asserts exactness).
inline JumpMultiset jumps_of_extension(const JumpMultiset& toric, const JumpMultiset& abelian) {
  std::vector<Rational> values = toric.values();
  values.insert(values.end(), abelian.values().begin(), abelian.values().end());
  return JumpMultiset(std::move(values));
}

inline CharacterDecomp character_decomposition(const DJumps& dj) {
  CharacterDecomp out;
  out.d = dj.d();
  for (auto j : dj.values()) out.exponents.push_back(j % dj.d());
  std::sort(out.exponents.begin(), out.exponents.end());
  return out;
}

/// Inverse of character_decomposition; exact because d-jumps never exceed d-1.
inline DJumps d_jumps_from_characters(const CharacterDecomp& chars) { return DJumps(chars.d, chars.exponents); }

inline CharacterDecomp merge_characters(const CharacterDecomp& a, const CharacterDecomp& b) {
  require(a.d == b.d, ErrorKind::InvalidArgument, "character decompositions at different levels");
  CharacterDecomp out{a.d, a.exponents};
  out.exponents.insert(out.exponents.end(), b.exponents.begin(), b.exponents.end());
  std::sort(out.exponents.begin(), out.exponents.end());
  return out;
}

}  // namespace jumpkit
