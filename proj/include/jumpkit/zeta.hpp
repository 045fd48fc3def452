#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "jumps.hpp"
#include "motivic.hpp"
#include "number.hpp"

namespace jumpkit {

using IntPoly = std::vector<Integer>;  // coefficient of x^i at index i

/// A_j(x) with sum_{q>=0} q^j x^q = A_j(x) / (1-x)^{j+1}.
inline IntPoly power_sum_closed_form(std::int64_t j) {
  require(j >= 0, ErrorKind::InvalidArgument, "power index must be non-negative");
  IntPoly a{1};
  // A_{k+1} = x * ((1-x) A_k' + (k+1) A_k)
  for (std::int64_t k = 0; k < j; ++k) {
    IntPoly inner(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      inner[i] += a[i] * (k + 1);
      if (i >= 1) {
        Integer deriv = a[i] * static_cast<std::int64_t>(i);  // coefficient of x^{i-1} in A_k'
        inner[i - 1] += deriv;
        inner[i] -= deriv;
      }
    }
    IntPoly next(inner.size() + 1, 0);
    for (std::size_t i = 0; i < inner.size(); ++i) next[i + 1] = inner[i];
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    a = std::move(next);
  }
  return a;
}

namespace detail {

inline IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// (1 - x)^k
inline IntPoly one_minus_x_pow(std::int64_t k) {
  IntPoly out(static_cast<std::size_t>(k + 1), 0);
  for (std::int64_t i = 0; i <= k; ++i) out[i] = (i % 2 ? -1 : 1) * binomial(k, i);
  return out;
}

/// Substitutes x = L^a z^b.
inline ZPoly substitute_x(const IntPoly& poly, std::int64_t a, std::int64_t b) {
  ZPoly out;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (poly[i] != 0) out[static_cast<std::int64_t>(i) * b] += MotivicPoly::lefschetz(a * static_cast<std::int64_t>(i), poly[i]);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

inline const MotivicPoly& l_minus_one() {
  static const MotivicPoly v = MotivicPoly::lefschetz(1) - MotivicPoly(1);
  return v;
}

}  // namespace detail

/// Motivic zeta function of Res_{L/K} Gm for a purely wild L/K of degree n = p^m.
inline CycloRational zeta_induced_torus(std::int64_t n, std::int64_t p) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p=" + std::to_string(p) + " is not prime");
  require(power_of(n, p) >= 1, ErrorKind::NotPurelyWild,
          "n=" + std::to_string(n) + " is not a positive power of p=" + std::to_string(p));
  const TorusSpec res = TorusSpec::res(n);
  const MotivicPoly fibre = detail::l_minus_one() * MotivicPoly::lefschetz(n - 1);
  ZPoly numerator;
  for (std::int64_t alpha = 1; alpha <= n; ++alpha) {
    if (alpha % p == 0) continue;
    const auto ord = static_cast<std::int64_t>(order_function(res, alpha));
    numerator[alpha] += fibre.shift_l(ord);
  }
  const std::int64_t a = n * (n - 1) / 2;
  return reduce(CycloRational(std::move(numerator), {{a, n}}));
}

/// Input data attached to a tame divisor alpha' of e(C).
struct DivisorData {
  std::int64_t toric_rank = 0;     // t(alpha')
  std::int64_t unipotent_rank = 0; // u(alpha')
  Integer phi_tilde = 1;           // #Phi(N~(alpha'))_tors
  MotivicPoly ab_class = 1;        // class of the abelian part of N~(alpha')^0_k

  friend bool operator==(const DivisorData&, const DivisorData&) = default;
};

/// Toric and abelian input data of a semiabelian Jacobian with one push-out singularity.
struct JacobianSpec {
  std::int64_t n = 2;        // [L:K], a positive power of p
  std::int64_t p = 2;
  std::int64_t e_tilde = 1;  // stabilization index of the normalization
  JumpMultiset abelian_jumps;
  std::map<std::int64_t, DivisorData> divisors;

  /// e(C) = lcm(e_tilde, n).
  std::int64_t stabilization_index() const { return std::lcm(e_tilde, n); }
  std::int64_t abelian_dimension() const { return static_cast<std::int64_t>(abelian_jumps.size()); }

  /// Divisors of e(C) prime to p, i.e. the values gcd(alpha, e(C)) for p not dividing alpha.
  std::vector<std::int64_t> tame_divisors() const {
    std::vector<std::int64_t> out;
    const std::int64_t e = stabilization_index();
    for (std::int64_t a = 1; a <= e; ++a)
      if (e % a == 0 && a % p != 0) out.push_back(a);
    return out;
  }

  void validate() const {
    auto check = [](bool ok, const std::string& what) { require(ok, ErrorKind::SpecInvariantViolation, what); };
    check(is_prime(p), "p=" + std::to_string(p) + " is not prime");
    check(power_of(n, p) >= 1, "n=" + std::to_string(n) + " is not a positive power of p");
    check(e_tilde >= 1, "e_tilde must be positive");
    for (const auto& j : abelian_jumps.values())
      check(Integer(e_tilde) % denominator(j) == 0,
            "denominator of abelian jump " + to_string(j) + " does not divide e_tilde");
    const auto needed = tame_divisors();
    for (auto a : needed) check(divisors.count(a) == 1, "missing data for divisor " + std::to_string(a));
    for (const auto& [a, data] : divisors) {
      check(std::find(needed.begin(), needed.end(), a) != needed.end(),
            "divisor " + std::to_string(a) + " is not a divisor of e(C) prime to p");
      check(data.toric_rank >= 0 && data.unipotent_rank >= 0, "ranks must be non-negative");
      check(data.toric_rank + data.unipotent_rank <= abelian_dimension(),
            "t + u exceeds the abelian dimension at divisor " + std::to_string(a));
      check(data.phi_tilde >= 1, "phi_tilde must be positive at divisor " + std::to_string(a));
    }
  }

  friend bool operator==(const JacobianSpec&, const JacobianSpec&) = default;
};

/// c_tame = ([L:K] - 1)/2 + c_tame(abelian part).
inline Rational jacobian_conductor(const JacobianSpec& spec) {
  return make_rational(spec.n - 1, 2) + tame_conductor(spec.abelian_jumps);
}

inline std::int64_t potential_toric_rank(const JacobianSpec& spec) {
  std::int64_t t = 0;
  for (const auto& [a, data] : spec.divisors) t = std::max(t, data.toric_rank);
  return t;
}

/// ord_B(d) = ord_{Res_{L/K} Gm}(d) + sum of the abelian d-jumps.
inline Integer jacobian_order(const JacobianSpec& spec, std::int64_t d) {
  return order_function(TorusSpec::res(spec.n), d) + edixhoven_graded(spec.abelian_jumps, d).sum();
}

/// #Phi(N(alpha'))_tors = [L:K] * #Phi(N~(alpha'))_tors.
inline Integer component_count(const JacobianSpec& spec, std::int64_t alpha_prime) {
  spec.validate();
  const std::int64_t e = spec.stabilization_index();
  require(alpha_prime >= 1 && e % alpha_prime == 0 && alpha_prime % spec.p != 0, ErrorKind::BadDivisor,
          std::to_string(alpha_prime) + " is not a divisor of e(C)=" + std::to_string(e) + " prime to p");
  return Integer(spec.n) * spec.divisors.at(alpha_prime).phi_tilde;
}

inline CycloRational zeta_jacobian(const JacobianSpec& spec) {
  spec.validate();
  const std::int64_t e = spec.stabilization_index();
  const Rational ec = Rational(e) * jacobian_conductor(spec);
  require(denominator(ec) == 1, ErrorKind::NonIntegralExponent, "e(C)*c_tame = " + to_string(ec) + " is not an integer");
  const auto x_exp = static_cast<std::int64_t>(numerator(ec));
  const std::int64_t t_max = potential_toric_rank(spec);

  ZPoly numerator;
  for (std::int64_t alpha = 1; alpha <= e; ++alpha) {
    if (alpha % spec.p == 0) continue;
    const std::int64_t alpha_prime = std::gcd(alpha, e);
    const DivisorData& data = spec.divisors.at(alpha_prime);
    const std::int64_t t = data.toric_rank;

    MotivicPoly coeff = MotivicPoly::lefschetz(spec.n - 1) * detail::l_minus_one().pow(t) *
                        MotivicPoly::lefschetz(data.unipotent_rank) * data.ab_class *
                        MotivicPoly(Integer(spec.n) * data.phi_tilde);
    coeff = coeff.shift_l(static_cast<std::int64_t>(jacobian_order(spec, alpha)));

    // sum_q ((alpha + q e)/alpha')^t x^q over the common denominator (1-x)^{t_max+1}
    const Integer head = alpha / alpha_prime, step = e / alpha_prime;
    IntPoly series{0};
    for (std::int64_t j = 0; j <= t; ++j) {
      const Integer weight = binomial(t, j) * pow_int(head, t - j) * pow_int(step, j);
      IntPoly part = detail::intpoly_mul(power_sum_closed_form(j), detail::one_minus_x_pow(t_max - j));
      if (part.size() > series.size()) series.resize(part.size(), 0);
      for (std::size_t i = 0; i < part.size(); ++i) series[i] += weight * part[i];
    }
    ZPoly term = zpoly_mul({{alpha, coeff}}, detail::substitute_x(series, x_exp, e));
    numerator = zpoly_add(std::move(numerator), term);
  }
  std::vector<CycloFactor> den(static_cast<std::size_t>(t_max + 1), CycloFactor{x_exp, e});
  return reduce(CycloRational(std::move(numerator), std::move(den)));
}

/// Pole of Z(L^{-s}): s = a/b common to all denominator factors, order = their count.
struct PoleReport {
  Rational s;
  std::int64_t order = 1;

  friend bool operator==(const PoleReport&, const PoleReport&) = default;
};

inline std::string to_string(const PoleReport& p) {
  return "s=" + to_string(p.s) + " order=" + std::to_string(p.order);
}

inline PoleReport pole_report(const CycloRational& r) {
  const CycloRational reduced = reduce(r);
  const auto& den = reduced.denominator();
  require(!den.empty(), ErrorKind::NoPole, "the function is a polynomial in z");
  const Rational s = den.front().ratio();
  for (const auto& f : den)
    require(f.ratio() == s, ErrorKind::UniquenessViolated,
            "denominator factors disagree: " + to_string(s) + " vs " + to_string(f.ratio()));
  return PoleReport{s, static_cast<std::int64_t>(den.size())};
}

}  // namespace jumpkit
