#pragma once

// Fiber products A' = A x_{A/I} R with A = O_K[t], studied on the slice of
// polynomials of degree <= D. Membership in A' is a set of linear conditions
// C v == 0 (mod pi^m, or exactly) on the coefficient vector v, which turns every
// base-change question into finite linear algebra over O_K, O_{K(d)} or k.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "motivic.hpp"
#include "valuation.hpp"

namespace jumpkit {

inline constexpr int kDefaultDegreeBound = 12;

using SlicePoly = std::vector<TruncSeries>;  // coefficient of t^i at index i

/// O_K[t] restricted to degree <= degree_bound.
struct PolyAlgebra {
  DVRConfig config;
  int degree_bound;

  PolyAlgebra(const DVRConfig& c, int d) : config(c), degree_bound(d) {
    require(degree_bound >= 2, ErrorKind::InvalidArgument, "degree bound must be >= 2");
  }
};

inline int poly_degree(const SlicePoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!f[i].is_zero()) return i;
  return -1;
}

/// Either the wild point (I = <P>, R = O_K, A/I = O_L) or two residue points
/// (I = functions vanishing at t = 0 and t = 1 on the special fibre, R = k).
class GluingSpec {
 public:
  enum class Kind { WildPoint, TwoPoints };

  static GluingSpec wild_point(const EisensteinPoly& poly, int degree_bound = kDefaultDegreeBound) {
    return GluingSpec(Kind::WildPoint, PolyAlgebra(poly.config(), degree_bound), poly);
  }
  static GluingSpec two_points(const DVRConfig& config, int degree_bound = kDefaultDegreeBound) {
    return GluingSpec(Kind::TwoPoints, PolyAlgebra(config, degree_bound), std::nullopt);
  }

  Kind kind() const noexcept { return kind_; }
  const PolyAlgebra& algebra() const noexcept { return algebra_; }
  const DVRConfig& config() const noexcept { return algebra_.config; }
  int degree_bound() const noexcept { return algebra_.degree_bound; }
  const EisensteinPoly& poly() const {
    require(poly_.has_value(), ErrorKind::InvalidArgument, "two-point gluing has no Eisenstein polynomial");
    return *poly_;
  }

  GluingSpec with_degree_bound(int degree_bound) const {
    return GluingSpec(kind_, PolyAlgebra(config(), degree_bound), poly_);
  }

 private:
  GluingSpec(Kind kind, PolyAlgebra algebra, std::optional<EisensteinPoly> poly)
      : kind_(kind), algebra_(std::move(algebra)), poly_(std::move(poly)) {}

  Kind kind_;
  PolyAlgebra algebra_;
  std::optional<EisensteinPoly> poly_;
};

/// Reads a polynomial in t and pi such as "pi*t - pi" or "t^2 - pi".
inline SlicePoly parse_slice_poly(const std::string& text, const DVRConfig& config) {
  const MotivicPoly poly = parse_motivic(text);
  SlicePoly out;
  for (const auto& [m, c] : poly.terms()) {
    require(m.l == 0, ErrorKind::ParseError, "L is not allowed in '" + text + "'");
    std::int64_t t_exp = 0, pi_exp = 0;
    for (const auto& [name, e] : m.atoms) {
      if (name == "t") t_exp = e;
      else if (name == "pi") pi_exp = e;
      else fail(ErrorKind::ParseError, "unknown variable '" + name + "' in '" + text + "'");
    }
    require(pi_exp < config.precision(), ErrorKind::PrecisionExhausted, "power of pi beyond the precision");
    if (out.size() <= static_cast<std::size_t>(t_exp)) out.resize(static_cast<std::size_t>(t_exp) + 1, TruncSeries(config));
    const auto residue = static_cast<std::int64_t>(c % config.p());
    out[t_exp] = out[t_exp] + TruncSeries::monomial(config, static_cast<int>(pi_exp), residue);
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

inline std::string to_string(const SlicePoly& f) {
  std::string out;
  for (int i = poly_degree(f); i >= 0; --i) {
    if (f[i].is_zero()) continue;
    const std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    const std::string coeff = to_string(f[i]);
    std::string term;
    if (mono.empty()) term = "(" + coeff + ")";
    else term = coeff == "1" ? mono : "(" + coeff + ")*" + mono;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

/// Monic polynomial P = t^n + ... read from text; must be Eisenstein.
inline EisensteinPoly parse_eisenstein(const std::string& text, const DVRConfig& config) {
  SlicePoly f = parse_slice_poly(text, config);
  const int n = poly_degree(f);
  require(n >= 1, ErrorKind::ParseError, "'" + text + "' has degree < 1");
  require(f[n] == TruncSeries::constant(config, 1), ErrorKind::ParseError, "'" + text + "' is not monic");
  f.pop_back();
  return EisensteinPoly(std::move(f));
}

namespace detail {

inline SlicePoly pad(SlicePoly f, std::size_t size, const DVRConfig& config) {
  f.resize(std::max(size, f.size()), TruncSeries(config));
  return f;
}

inline void check_slice(const SlicePoly& f, const GluingSpec& spec) {
  for (const auto& c : f)
    require(c.config() == spec.config(), ErrorKind::ConfigMismatch, "polynomial and gluing disagree on config");
  require(poly_degree(f) <= spec.degree_bound(), ErrorKind::DegreeBound,
          "degree " + std::to_string(poly_degree(f)) + " exceeds bound " + std::to_string(spec.degree_bound()));
}

/// Remainder of f modulo the monic polynomial P, as n coefficients.
inline SlicePoly remainder_mod(const SlicePoly& f, const EisensteinPoly& poly) {
  const int n = poly.degree();
  SlicePoly r = pad(f, static_cast<std::size_t>(n), poly.config());
  for (int k = static_cast<int>(r.size()) - 1; k >= n; --k) {
    const TruncSeries c = r[k];
    if (c.is_zero()) continue;
    for (int i = 0; i < n; ++i) r[k - n + i] = r[k - n + i] - c * poly.coeff(i);
    r[k] = TruncSeries(poly.config());
  }
  r.resize(n, TruncSeries(poly.config()));
  return r;
}

inline SlicePoly poly_mul(const SlicePoly& a, const SlicePoly& b, const DVRConfig& config) {
  if (a.empty() || b.empty()) return {};
  SlicePoly out(a.size() + b.size() - 1, TruncSeries(config));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

/// Membership conditions C v == 0 (mod pi^modulus), or exactly when modulus is empty.
struct Conditions {
  SeriesMatrix rows;
  std::optional<int> modulus;
};

inline Conditions membership_conditions(const GluingSpec& spec) {
  const DVRConfig& config = spec.config();
  const std::size_t width = static_cast<std::size_t>(spec.degree_bound()) + 1;
  const TruncSeries zero(config), one = TruncSeries::constant(config, 1);
  if (spec.kind() == GluingSpec::Kind::TwoPoints) {
    // f(1) - f(0) = sum_{i>=1} a_i must lie in pi*O_K.
    SeriesMatrix c(1, width, one);
    c(0, 0) = zero;
    return {c, 1};
  }
  const EisensteinPoly& poly = spec.poly();
  const int n = poly.degree();
  // f mod P must be a constant: coefficients 1..n-1 of the remainder vanish.
  SeriesMatrix c(static_cast<std::size_t>(std::max(n - 1, 1)), width, zero);
  if (n == 1) return {c, std::nullopt};
  for (std::size_t j = 0; j < width; ++j) {
    SlicePoly mono(j + 1, zero);
    mono[j] = one;
    const SlicePoly r = remainder_mod(mono, poly);
    for (int i = 1; i < n; ++i) c(static_cast<std::size_t>(i - 1), j) = r[i];
  }
  return {c, std::nullopt};
}

inline Conditions embed_conditions(const Conditions& c, std::int64_t d) {
  Conditions out{c.rows, std::nullopt};
  for (std::size_t r = 0; r < c.rows.rows(); ++r)
    for (std::size_t k = 0; k < c.rows.cols(); ++k) out.rows(r, k) = c.rows(r, k).embed(d);
  if (c.modulus) out.modulus = static_cast<int>(*c.modulus * d);
  return out;
}

/// O-basis (as columns) of {v : C v == 0 mod pi^m}. With C U = X diag(pi^{s_k}) for
/// unimodular U, X the conditions read pi^{s_k} w_k == 0 for w = U^{-1} v.
inline std::vector<SlicePoly> lattice_basis(const Conditions& c, const DVRConfig& config) {
  const int precision = config.precision();
  if (c.modulus)
    require(*c.modulus < precision, ErrorKind::PrecisionExhausted, "condition modulus reaches the precision");
  const auto dec = smith_decompose(c.rows, config);
  const std::size_t width = c.rows.cols();
  std::vector<SlicePoly> basis;
  for (std::size_t k = 0; k < width; ++k) {
    SlicePoly column(width, TruncSeries(config));
    for (std::size_t r = 0; r < width; ++r) column[r] = dec.right(r, k);
    if (k < dec.exponents.size()) {
      if (!c.modulus) continue;
      const int scale = std::max(0, *c.modulus - dec.exponents[k]);
      for (auto& x : column) x = x.shifted_up(scale);
    }
    basis.push_back(std::move(column));
  }
  return basis;
}

inline bool satisfies(const Conditions& c, const SlicePoly& v) {
  for (std::size_t r = 0; r < c.rows.rows(); ++r) {
    TruncSeries acc(v.front().config());
    for (std::size_t k = 0; k < c.rows.cols(); ++k) acc = acc + c.rows(r, k) * v[k];
    if (c.modulus ? acc.valuation() < *c.modulus : !acc.is_zero()) return false;
  }
  return true;
}

/// Rank over F_p of the residues of the given columns.
inline std::size_t residue_rank(const std::vector<std::vector<std::int64_t>>& columns, std::int64_t p) {
  if (columns.empty()) return 0;
  auto m = columns;
  const std::size_t height = m.front().size();
  std::size_t rank = 0;
  for (std::size_t row = 0; row < height && rank < m.size(); ++row) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][row] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    const std::int64_t inv = mod_inverse(m[rank][row], p);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == rank || m[k][row] == 0) continue;
      const std::int64_t f = mod_mul(m[k][row], inv, p);
      for (std::size_t r = 0; r < height; ++r) m[k][r] = mod_reduce(m[k][r] - mod_mul(f, m[rank][r], p), p);
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<std::int64_t>> residues(const std::vector<SlicePoly>& columns) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& col : columns) {
    std::vector<std::int64_t> r;
    for (const auto& x : col) r.push_back(x.residue());
    out.push_back(std::move(r));
  }
  return out;
}

inline SeriesMatrix as_matrix(const std::vector<SlicePoly>& columns, const DVRConfig& config) {
  const std::size_t height = columns.empty() ? 0 : columns.front().size();
  SeriesMatrix m(height, columns.size(), TruncSeries(config));
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (std::size_t r = 0; r < height; ++r) m(r, k) = columns[k][r];
  return m;
}

}  // namespace detail

/// f lies in A x_{A/I} R.
inline bool fiber_membership(const SlicePoly& f, const GluingSpec& spec) {
  detail::check_slice(f, spec);
  if (spec.kind() == GluingSpec::Kind::TwoPoints) {
    TruncSeries diff(spec.config());
    for (std::size_t i = 1; i < f.size(); ++i) diff = diff + f[i];
    return diff.valuation() >= 1;
  }
  const SlicePoly r = detail::remainder_mod(f, spec.poly());
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!r[i].is_zero()) return false;
  return true;
}

/// f lies in pi * A'.
inline bool in_uniformizer_multiple(const SlicePoly& f, const GluingSpec& spec) {
  SlicePoly quotient;
  for (const auto& c : f) {
    if (c.valuation() < 1) return false;
    quotient.push_back(c.shifted_down(1));
  }
  return fiber_membership(quotient, spec);
}

/// Steps of the non-reducedness argument; later steps are absent once one fails.
struct NilpotentReport {
  bool member = false;
  std::optional<bool> outside_pi_multiple;
  std::optional<bool> square_in_pi_multiple;

  bool all_true() const { return member && outside_pi_multiple.value_or(false) && square_in_pi_multiple.value_or(false); }
};

inline SlicePoly canonical_nilpotent(const DVRConfig& config) {
  return {TruncSeries::monomial(config, 1, -1), TruncSeries::monomial(config, 1, 1)};  // pi*t - pi
}

inline NilpotentReport nilpotent_witness(const GluingSpec& spec, const std::optional<SlicePoly>& candidate = std::nullopt) {
  require(spec.kind() == GluingSpec::Kind::TwoPoints, ErrorKind::InvalidArgument,
          "the nilpotent witness concerns the two-point gluing");
  const SlicePoly f = candidate ? *candidate : canonical_nilpotent(spec.config());
  NilpotentReport out;
  out.member = fiber_membership(f, spec);
  if (!out.member) return out;
  out.outside_pi_multiple = !in_uniformizer_multiple(f, spec);
  if (!*out.outside_pi_multiple) return out;
  const SlicePoly square = detail::poly_mul(f, f, spec.config());
  detail::check_slice(square, spec);
  out.square_in_pi_multiple = in_uniformizer_multiple(square, spec);
  return out;
}

/// Base change to the residue field k, or to O_{K(d)}.
struct ResidueField {};
using BaseChangeTarget = std::variant<ResidueField, TameContext>;

struct BaseChangeReport {
  bool commutes = false;
  std::int64_t defect = 0;  // kernel dimension (rank) + cokernel dimension (length)
  std::int64_t kernel = 0;
  std::int64_t cokernel = 0;
};

/// Compares (A x_{A/I} R) (x) D' with (A (x) D') x_{(A (x) D')/I_{D'}} (R (x) D') on the degree-D slice.
inline BaseChangeReport base_change_commutes(const GluingSpec& spec, const BaseChangeTarget& target) {
  const DVRConfig& config = spec.config();
  const auto conditions = detail::membership_conditions(spec);
  const auto source_basis = detail::lattice_basis(conditions, config);
  const auto width = static_cast<std::size_t>(spec.degree_bound()) + 1;

  BaseChangeReport out;
  if (std::holds_alternative<ResidueField>(target)) {
    const std::int64_t p = config.p();
    const std::size_t image_rank = detail::residue_rank(detail::residues(source_basis), p);
    // Reduced conditions are exact linear equations over k.
    std::vector<std::vector<std::int64_t>> cond_rows;
    for (std::size_t r = 0; r < conditions.rows.rows(); ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < width; ++k) row.push_back(conditions.rows(r, k).residue());
      cond_rows.push_back(std::move(row));
    }
    const std::size_t target_dim = width - detail::residue_rank(cond_rows, p);
    out.kernel = static_cast<std::int64_t>(source_basis.size() - image_rank);
    out.cokernel = static_cast<std::int64_t>(target_dim - image_rank);
  } else {
    const TameContext& ctx = std::get<TameContext>(target);
    require(ctx.base() == config, ErrorKind::ConfigMismatch, "tame context and gluing disagree on config");
    const std::int64_t d = ctx.d();
    std::vector<SlicePoly> image;
    for (const auto& v : source_basis) {
      SlicePoly e;
      for (const auto& x : v) e.push_back(x.embed(d));
      image.push_back(std::move(e));
    }
    const auto target_conditions = detail::embed_conditions(conditions, d);
    const auto target_basis = detail::lattice_basis(target_conditions, config);
    for (const auto& v : image)
      if (!detail::satisfies(target_conditions, v))
        throw std::logic_error("base-changed fiber product does not contain the image");
    const auto image_dec = smith_decompose(detail::as_matrix(image, config), config);
    const auto target_dec = smith_decompose(detail::as_matrix(target_basis, config), config);
    require(!target_dec.exhausted || target_dec.exponents.size() == target_basis.size(), ErrorKind::PrecisionExhausted,
            "target lattice basis degenerate at this precision");
    const auto image_rank = static_cast<std::int64_t>(image_dec.exponents.size());
    const auto target_rank = static_cast<std::int64_t>(target_dec.exponents.size());
    out.kernel = static_cast<std::int64_t>(image.size()) - image_rank;
    std::int64_t length = 0;
    for (int s : image_dec.exponents) length += s;
    for (int s : target_dec.exponents) length -= s;
    // A rank drop leaves a free summand in the cokernel; it is counted once per rank.
    out.cokernel = length + (target_rank - image_rank);
  }
  out.defect = out.kernel + out.cokernel;
  out.commutes = out.defect == 0;
  return out;
}

/// dim_k of the kernel of (A x_{A/I} R) (x) k -> A (x) k on the degree-D slice.
inline std::int64_t tor_defect(const GluingSpec& spec) { return base_change_commutes(spec, ResidueField{}).kernel; }

inline std::int64_t tor_defect(const GluingSpec& spec, int degree_bound) {
  return tor_defect(spec.with_degree_bound(degree_bound));
}

/// Every t^j with j <= D is sum_{i<n} a_i t^i with a_i in A': the remainder mod P
/// contributes constants, the multiple of P lies in I.
inline bool generator_check(const GluingSpec& spec) {
  require(spec.kind() == GluingSpec::Kind::WildPoint, ErrorKind::InvalidArgument,
          "generator check applies to the wild-point gluing");
  const DVRConfig& config = spec.config();
  const EisensteinPoly& poly = spec.poly();
  const int n = poly.degree();
  const TruncSeries zero(config), one = TruncSeries::constant(config, 1);
  for (int j = 0; j <= spec.degree_bound(); ++j) {
    SlicePoly mono(static_cast<std::size_t>(j) + 1, zero);
    mono[j] = one;
    const SlicePoly r = detail::remainder_mod(mono, poly);
    SlicePoly in_ideal = detail::pad(mono, static_cast<std::size_t>(n), config);
    for (int i = 0; i < n; ++i) in_ideal[i] = in_ideal[i] - r[i];
    if (!fiber_membership(in_ideal, spec)) return false;
    // coefficient attached to generator 1: in_ideal + r_0; to generator t^i: the constant r_i
    SlicePoly recombined = in_ideal;
    for (int i = 0; i < n; ++i) {
      if (!fiber_membership(SlicePoly{r[i]}, spec)) return false;
      recombined[i] = recombined[i] + r[i];
    }
    if (detail::pad(recombined, mono.size(), config) != detail::pad(mono, recombined.size(), config)) return false;
  }
  return true;
}

}  // namespace jumpkit
