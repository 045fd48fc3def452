// One PASS/FAIL line per acceptance criterion; exit status is nonzero when any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "jumpkit/jumpkit.hpp"
#include "support/jacobian_battery.hpp"
#include "support/oracles.hpp"

using namespace jumpkit;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

/// Runs a criterion; a time budget of zero means untimed.
bool report(int number, const std::string& title, double budget_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream line;
  if (budget_seconds > 0) {
    line.precision(3);
    line << std::fixed << " [" << seconds << " s, budget " << budget_seconds << " s]";
    if (seconds >= budget_seconds) v.expect(false, "over time budget");
  }
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << number << " " << title << line.str();
  if (!v.pass) std::cout << " : " << v.detail;
  std::cout << "\n";
  return v.pass;
}

std::int64_t smallest_prime_factor(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

TruncSeries small_series(const DVRConfig& c, std::mt19937_64& rng, int min_val) {
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(c.precision()), 0);
  for (int i = min_val; i < min_val + 3; ++i)
    coeffs[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(c.p()));
  return TruncSeries(c, coeffs);
}

EisensteinPoly random_eisenstein(const DVRConfig& c, int n, std::mt19937_64& rng) {
  const auto unit = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(c.p() - 1));
  std::vector<TruncSeries> lower{TruncSeries::monomial(c, 1, unit) + small_series(c, rng, 2)};
  for (int i = 1; i < n; ++i) lower.push_back(small_series(c, rng, 1));
  return EisensteinPoly(lower);
}

}  // namespace

int main() {
  bool all = true;

  all &= report(1, "cokernel oracle equals closed form for t^n - pi, n <= 5, d = 1 mod n, d <= 25", 5.0, [](Verdict& v) {
    for (std::int64_t n = 2; n <= 5; ++n) {
      const DVRConfig c(smallest_prime_factor(n), kDefaultPrecision);
      for (std::int64_t d = 1; d <= 25; d += n) {
        std::vector<std::int64_t> expected;
        for (std::int64_t nu = 0; nu < n; ++nu) expected.push_back(nu * (d - 1) / n);
        const DJumps oracle = cokernel_d_jumps_oracle(EisensteinPoly::pure(c, static_cast<int>(n)), TameContext(d, c));
        const std::string where = "n=" + std::to_string(n) + " d=" + std::to_string(d);
        v.expect(oracle == DJumps(d, expected), where + " oracle " + to_string(oracle));
        v.expect(oracle == d_jumps_closed_form(n, d), where + " closed form");
      }
    }
  });

  all &= report(2, "jumps of Res(n) are nu/n with conductor (n-1)/2, n <= 12", 0, [](Verdict& v) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      std::vector<Rational> expected;
      for (std::int64_t nu = 0; nu < n; ++nu) expected.push_back(make_rational(nu, n));
      const JumpMultiset j = torus_jumps(TorusSpec::res(n));
      v.expect(j == JumpMultiset(expected), "jumps n=" + std::to_string(n));
      v.expect(tame_conductor(j) == make_rational(n - 1, 2), "conductor n=" + std::to_string(n));
    }
  });

  all &= report(3, "order recursion for Res(n), n <= 12, alpha <= 50, q <= 20", 2.0, [](Verdict& v) {
    // p runs over the primes dividing n; alpha and alpha + q n stay prime to p
    for (std::int64_t n = 1; n <= 12; ++n)
      for (std::int64_t p : {2, 3, 5, 7, 11}) {
        if (n > 1 && n % p != 0) continue;
        for (std::int64_t alpha = 1; alpha <= 50; ++alpha) {
          if (alpha % p == 0) continue;
          for (std::int64_t q = 0; q <= 20; ++q)
            if ((alpha + q * n) % p != 0)
              v.expect(order_recursion_check(TorusSpec::res(n), alpha, q),
                       "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha) + " q=" + std::to_string(q));
        }
      }
  });

  all &= report(4, "zeta of Res(2) at p = 2 renders canonically with a simple pole at s = 1/2", 0, [](Verdict& v) {
    const CycloRational z = reduce(zeta_induced_torus(2, 2));
    v.expect(to_string(z) == "((L-1)*L*z)/(1 - L^1*z^2)", "rendering " + to_string(z));
    v.expect(pole_report(z) == PoleReport{make_rational(1, 2), 1}, "pole " + to_string(pole_report(z)));
  });

  all &= report(5, "closed-form torus zeta matches direct summation to z^30, n in {2, 3, 4}", 0, [](Verdict& v) {
    for (std::int64_t n = 2; n <= 4; ++n) {
      const std::int64_t p = smallest_prime_factor(n);
      v.expect(expand(zeta_induced_torus(n, p), 30) == oracle::torus_zeta_series(n, p, 30), "n=" + std::to_string(n));
    }
  });

  all &= report(6, "Klein four map is an isogeny of index 16 and jumps differ across it", 0, [](Verdict& v) {
    v.expect(is_isogeny(klein_four_isogeny()) == IsogenyResult{true, 16}, "isogeny");
    const NonInvarianceReport r = jumps_non_invariance_demo();
    const Rational h = make_rational(1, 2);
    v.expect(r.left == JumpMultiset{0, make_rational(1, 4), h, make_rational(3, 4)}, "left " + to_string(r.left));
    v.expect(r.right == JumpMultiset{0, h, h, h}, "right " + to_string(r.right));
    v.expect(r.differ, "differ");
  });

  all &= report(7, "two-point gluing fails base change, wild-point gluing (degree <= 5) commutes", 0, [](Verdict& v) {
    const DVRConfig c2(2, kDefaultPrecision);
    const GluingSpec two = GluingSpec::two_points(c2);
    v.expect(tor_defect(two) == 1, "tor defect");
    const BaseChangeReport bc = base_change_commutes(two, ResidueField{});
    v.expect(!bc.commutes && bc.defect == 1, "two-points base change");
    v.expect(nilpotent_witness(two, parse_slice_poly("pi*t - pi", c2)).all_true(), "nilpotent witness");
    std::mt19937_64 rng(20240607);
    for (std::int64_t p : {2, 3, 5}) {
      const DVRConfig c(p, kDefaultPrecision);
      for (int n = 1; n <= 5; ++n)
        for (const EisensteinPoly& poly : {EisensteinPoly::pure(c, n), random_eisenstein(c, n, rng)}) {
          const GluingSpec wild = GluingSpec::wild_point(poly);
          const std::string where = "p=" + std::to_string(p) + " P=" + to_string(poly.coefficients());
          const BaseChangeReport k = base_change_commutes(wild, ResidueField{});
          v.expect(k.commutes && k.defect == 0, where + " to k");
          for (std::int64_t d = 1; d <= 7; ++d) {
            if (d % p == 0) continue;
            const BaseChangeReport kd = base_change_commutes(wild, TameContext(d, c));
            v.expect(kd.commutes && kd.defect == 0, where + " to K(" + std::to_string(d) + ")");
          }
        }
    }
  });

  all &= report(8, "Jacobian battery: pole location, pole order and series to z^30", 10.0, [](Verdict& v) {
    bool saw[3] = {false, false, false};
    for (const JacobianSpec& spec : battery::specs()) {
      const CycloRational z = zeta_jacobian(spec);
      const std::string where = to_string(z);
      const std::int64_t t = potential_toric_rank(spec);
      if (t <= 2) saw[t] = true;
      const PoleReport pole = pole_report(z);
      v.expect(pole.s == make_rational(spec.n - 1, 2) + tame_conductor(spec.abelian_jumps), where + " pole location");
      v.expect(pole.order == t + 1, where + " pole order");
      v.expect(expand(z, 30) == oracle::jacobian_zeta_series(spec, 30), where + " series");
    }
    v.expect(saw[0] && saw[1] && saw[2], "battery covers toric ranks 0, 1, 2");
  });

  all &= report(9, "conductor is additive over extensions, 200 random pairs", 0, [](Verdict& v) {
    std::mt19937_64 rng(9);
    auto random_multiset = [&] {
      std::vector<Rational> values;
      const auto size = rng() % 8;
      for (std::uint64_t i = 0; i < size; ++i) {
        const auto den = static_cast<std::int64_t>(1 + rng() % 30);
        values.push_back(make_rational(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den)), den));
      }
      return JumpMultiset(values);
    };
    for (int trial = 0; trial < 200; ++trial) {
      const JumpMultiset a = random_multiset(), b = random_multiset();
      v.expect(tame_conductor(jumps_of_extension(a, b)) == tame_conductor(a) + tame_conductor(b),
               "trial " + std::to_string(trial));
    }
  });

  return all ? 0 : 1;
}
