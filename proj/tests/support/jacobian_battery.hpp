#pragma once

#include <map>
#include <string>
#include <vector>

#include "jumpkit/zeta.hpp"

namespace battery {

using jumpkit::DivisorData;
using jumpkit::JacobianSpec;
using jumpkit::MotivicPoly;

inline JacobianSpec make_spec(std::int64_t n, std::int64_t p, std::int64_t e_tilde, const std::string& jumps,
                              std::map<std::int64_t, DivisorData> divisors) {
  JacobianSpec s;
  s.n = n;
  s.p = p;
  s.e_tilde = e_tilde;
  s.abelian_jumps = jumpkit::parse_jumps(jumps);
  s.divisors = std::move(divisors);
  return s;
}

inline DivisorData data(std::int64_t t, std::int64_t u, std::int64_t phi, MotivicPoly ab = 1) {
  return DivisorData{t, u, jumpkit::Integer(phi), std::move(ab)};
}

/// Abelian part trivial: Z = 2Lz/(1 - Lz^2).
inline JacobianSpec degenerate_spec() { return make_spec(2, 2, 1, "", {{1, data(0, 0, 1)}}); }

inline JacobianSpec toric_rank_one_spec() { return make_spec(2, 2, 1, "0", {{1, data(1, 0, 1)}}); }

/// Specs with toric ranks 0, 1 and 2 and several stabilization indices.
inline std::vector<JacobianSpec> specs() {
  const MotivicPoly a = MotivicPoly::atom("A"), b = MotivicPoly::atom("B"), l = MotivicPoly::lefschetz(1);
  return {
      degenerate_spec(),
      toric_rank_one_spec(),
      make_spec(2, 2, 3, "0, 1/3", {{1, data(2, 0, 1, a)}, {3, data(1, 1, 2, b)}}),
      make_spec(3, 3, 2, "1/2", {{1, data(1, 0, 1)}, {2, data(0, 1, 4, a)}}),
      make_spec(4, 2, 1, "", {{1, data(0, 0, 3)}}),
      make_spec(2, 2, 5, "0, 1/5, 2/5", {{1, data(2, 1, 1, a)}, {5, data(0, 2, 5, a * b)}}),
      make_spec(9, 3, 4, "1/4, 3/4", {{1, data(1, 1, 1)}, {2, data(2, 0, 3, a)}, {4, data(0, 0, 1, l - 1)}}),
      make_spec(5, 5, 3, "0, 0, 2/3", {{1, data(2, 1, 2, a)}, {3, data(1, 0, 1)}}),
  };
}

}  // namespace battery
