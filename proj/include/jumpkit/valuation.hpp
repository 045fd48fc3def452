#pragma once

// Truncated discrete valuation rings F_p[[pi]] / (pi^N), Eisenstein
// polynomials over them, and Smith normal form over the truncated ring.
//
// The tame extension O_{K(d)} is modelled by the same truncated ring read in
// the uniformizer pi_d, with pi_K = pi_d^d. Elements of O_K are moved there
// with TruncSeries::embed(d).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "multiset.hpp"
#include "number.hpp"

namespace jumpkit {

inline constexpr int kDefaultPrecision = 64;

/// Residue characteristic p and truncation order N.
class DVRConfig {
 public:
  explicit DVRConfig(std::int64_t p, int precision = kDefaultPrecision) : p_(p), precision_(precision) {
    require(is_prime(p_), ErrorKind::InvalidArgument, "residue characteristic " + std::to_string(p_) + " is not prime");
    require(p_ < (std::int64_t{1} << 62), ErrorKind::InvalidArgument, "residue characteristic too large");
    require(precision_ >= 2, ErrorKind::InvalidArgument, "precision must be at least 2");
  }

  std::int64_t p() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }

  friend bool operator==(const DVRConfig&, const DVRConfig&) = default;

 private:
  std::int64_t p_;
  int precision_;
};

namespace detail {

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod_reduce(a, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_reduce(t, p);
}

}  // namespace detail

/// Element of F_p[[pi]] known modulo pi^N. Coefficient i multiplies pi^i.
class TruncSeries {
 public:
  explicit TruncSeries(const DVRConfig& config) : config_(config), coeffs_(config.precision(), 0) {}

  TruncSeries(const DVRConfig& config, const std::vector<std::int64_t>& coeffs) : TruncSeries(config) {
    for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i)
      coeffs_[i] = detail::mod_reduce(coeffs[i], config_.p());
  }

  static TruncSeries constant(const DVRConfig& config, std::int64_t c) { return TruncSeries(config, {c}); }

  /// u * pi^k; zero when k >= N.
  static TruncSeries monomial(const DVRConfig& config, int k, std::int64_t u = 1) {
    TruncSeries s(config);
    if (k >= 0 && k < config.precision()) s.coeffs_[k] = detail::mod_reduce(u, config.p());
    return s;
  }

  const DVRConfig& config() const noexcept { return config_; }
  int precision() const noexcept { return config_.precision(); }
  std::int64_t coeff(int i) const { return coeffs_.at(i); }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::int64_t residue() const { return coeffs_[0]; }

  /// Smallest index with a nonzero coefficient; N when the element is zero to precision.
  int valuation() const {
    for (int i = 0; i < precision(); ++i)
      if (coeffs_[i] != 0) return i;
    return precision();
  }
  bool is_zero() const { return valuation() == precision(); }
  bool is_unit() const { return coeffs_[0] != 0; }

  TruncSeries operator-() const {
    TruncSeries out(config_);
    for (int i = 0; i < precision(); ++i) out.coeffs_[i] = detail::mod_reduce(-coeffs_[i], config_.p());
    return out;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check_same(b);
    TruncSeries out(a.config_);
    for (int i = 0; i < a.precision(); ++i) out.coeffs_[i] = (a.coeffs_[i] + b.coeffs_[i]) % a.config_.p();
    return out;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_same(b);
    const int n = a.precision();
    const std::int64_t p = a.config_.p();
    TruncSeries out(a.config_);
    const int va = a.valuation(), vb = b.valuation();
    for (int i = va; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = vb; i + j < n; ++j) {
        if (b.coeffs_[j] == 0) continue;
        out.coeffs_[i + j] = (out.coeffs_[i + j] + detail::mod_mul(a.coeffs_[i], b.coeffs_[j], p)) % p;
      }
    }
    return out;
  }

  TruncSeries scaled(std::int64_t c) const { return *this * constant(config_, c); }

  /// a * b^{-1} for a unit b.
  TruncSeries divide_unit(const TruncSeries& b) const {
    check_same(b);
    require(b.is_unit(), ErrorKind::NonUnitDivisor,
            "divisor has valuation " + std::to_string(b.valuation()) + ", expected 0");
    return *this * b.inverse();
  }

  TruncSeries inverse() const {
    require(is_unit(), ErrorKind::NonUnitDivisor, "element is not a unit");
    const std::int64_t p = config_.p();
    const int n = precision();
    TruncSeries inv(config_);
    const std::int64_t b0inv = detail::mod_inverse(coeffs_[0], p);
    inv.coeffs_[0] = b0inv;
    for (int k = 1; k < n; ++k) {
      std::int64_t acc = 0;
      for (int i = 1; i <= k; ++i) acc = (acc + detail::mod_mul(coeffs_[i], inv.coeffs_[k - i], p)) % p;
      inv.coeffs_[k] = detail::mod_mul(detail::mod_reduce(-acc, p), b0inv, p);
    }
    return inv;
  }

  /// Multiplication by pi^k.
  TruncSeries shifted_up(int k) const {
    TruncSeries out(config_);
    for (int i = 0; i + k < precision(); ++i) out.coeffs_[i + k] = coeffs_[i];
    return out;
  }

  /// Exact division by pi^k; the top k coefficients of the quotient are unknown and set to zero.
  TruncSeries shifted_down(int k) const {
    require(valuation() >= k, ErrorKind::NonUnitDivisor,
            "valuation " + std::to_string(valuation()) + " below " + std::to_string(k));
    TruncSeries out(config_);
    for (int i = k; i < precision(); ++i) out.coeffs_[i - k] = coeffs_[i];
    return out;
  }

  /// Image under pi_K -> pi_d^d, read in the uniformizer of K(d).
  TruncSeries embed(std::int64_t d) const {
    TruncSeries out(config_);
    for (int i = 0; i < precision(); ++i) {
      const std::int64_t idx = static_cast<std::int64_t>(i) * d;
      if (idx >= precision()) break;
      out.coeffs_[idx] = coeffs_[i];
    }
    return out;
  }

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

 private:
  void check_same(const TruncSeries& other) const {
    require(config_ == other.config_, ErrorKind::ConfigMismatch,
            "p=" + std::to_string(config_.p()) + ",N=" + std::to_string(config_.precision()) + " vs p=" +
                std::to_string(other.config_.p()) + ",N=" + std::to_string(other.config_.precision()));
  }

  DVRConfig config_;
  std::vector<std::int64_t> coeffs_;
};

/// Renders with the symmetric residue representative, e.g. "pi - pi^2".
inline std::string to_string(const TruncSeries& s, const std::string& var = "pi") {
  const std::int64_t p = s.config().p();
  std::string out;
  for (int i = 0; i < s.precision(); ++i) {
    std::int64_t c = s.coeff(i);
    if (c == 0) continue;
    if (c > p / 2) c -= p;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::int64_t mag = c < 0 ? -c : c;
    std::string term = mono.empty() ? std::to_string(mag) : (mag == 1 ? mono : std::to_string(mag) + "*" + mono);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

/// The tame extension K(d) of degree d prime to p.
class TameContext {
 public:
  TameContext(std::int64_t d, const DVRConfig& base) : d_(d), base_(base) {
    require(d_ >= 1, ErrorKind::InvalidArgument, "tame degree must be positive");
    require(d_ % base_.p() != 0, ErrorKind::InvalidArgument,
            "tame degree " + std::to_string(d_) + " divisible by p=" + std::to_string(base_.p()));
  }
  std::int64_t d() const noexcept { return d_; }
  const DVRConfig& base() const noexcept { return base_; }

 private:
  std::int64_t d_;
  DVRConfig base_;
};

/// Monic Eisenstein polynomial t^n + a_{n-1} t^{n-1} + ... + a_0.
class EisensteinPoly {
 public:
  explicit EisensteinPoly(std::vector<TruncSeries> lower) : lower_(std::move(lower)) {
    require(!lower_.empty(), ErrorKind::InvalidArgument, "Eisenstein polynomial needs degree >= 1");
    for (const auto& a : lower_)
      require(a.config() == lower_.front().config(), ErrorKind::ConfigMismatch, "coefficients disagree on config");
    require(lower_[0].valuation() == 1, ErrorKind::InvalidArgument,
            "constant coefficient has valuation " + std::to_string(lower_[0].valuation()) + ", expected 1");
    for (std::size_t i = 1; i < lower_.size(); ++i)
      require(lower_[i].valuation() >= 1, ErrorKind::InvalidArgument,
              "coefficient of t^" + std::to_string(i) + " is a unit");
  }

  /// t^n - pi.
  static EisensteinPoly pure(const DVRConfig& config, int n) {
    std::vector<TruncSeries> lower(n, TruncSeries(config));
    lower[0] = TruncSeries::monomial(config, 1, -1);
    return EisensteinPoly(std::move(lower));
  }

  int degree() const noexcept { return static_cast<int>(lower_.size()); }
  const TruncSeries& coeff(int i) const { return lower_.at(i); }
  const std::vector<TruncSeries>& lower() const noexcept { return lower_; }
  const DVRConfig& config() const { return lower_.front().config(); }

  /// Full coefficient list a_0 .. a_{n-1}, 1.
  std::vector<TruncSeries> coefficients() const {
    auto all = lower_;
    all.push_back(TruncSeries::constant(config(), 1));
    return all;
  }

  friend bool operator==(const EisensteinPoly&, const EisensteinPoly&) = default;

 private:
  std::vector<TruncSeries> lower_;
};

inline std::string to_string(const EisensteinPoly& poly, const std::string& var = "pi") {
  std::string out = poly.degree() == 1 ? "t" : "t^" + std::to_string(poly.degree());
  for (int i = poly.degree() - 1; i >= 0; --i) {
    if (poly.coeff(i).is_zero()) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "*t" : "*t^" + std::to_string(i));
    out += " + (" + to_string(poly.coeff(i), var) + ")" + mono;
  }
  return out;
}

/// Sorted exponents e_1 <= ... <= e_r of a Smith form diag(pi^{e_i}).
struct ElemDivisors {
  std::vector<int> exponents;

  int sum() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
  }
  friend bool operator==(const ElemDivisors&, const ElemDivisors&) = default;
};

using SeriesMatrix = Matrix<TruncSeries>;

/// Result of the elimination behind smith_normal_form. `exponents` holds the
/// pivot valuations found before the remaining block vanished to precision;
/// `right` is the unimodular column transform with M*right = left*diag.
struct SmithDecomposition {
  std::vector<int> exponents;
  bool exhausted = false;
  SeriesMatrix right;
};

inline SmithDecomposition smith_decompose(SeriesMatrix m, const DVRConfig& config) {
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      require(m(r, c).config() == config, ErrorKind::ConfigMismatch, "matrix entries disagree on config");

  SmithDecomposition out;
  const TruncSeries zero(config);
  out.right = identity_matrix(cols, zero, TruncSeries::constant(config, 1));
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    int best = config.precision();
    std::size_t br = k, bc = k;
    for (std::size_t r = k; r < rows; ++r)
      for (std::size_t c = k; c < cols; ++c) {
        int v = m(r, c).valuation();
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    if (best >= config.precision()) {
      out.exhausted = true;
      break;
    }
    m.swap_rows(k, br);
    m.swap_cols(k, bc);
    out.right.swap_cols(k, bc);
    const TruncSeries unit = m(k, k).shifted_down(best);
    for (std::size_t r = k + 1; r < rows; ++r) {
      if (m(r, k).is_zero()) continue;
      const TruncSeries f = m(r, k).shifted_down(best).divide_unit(unit);
      for (std::size_t c = k; c < cols; ++c) m(r, c) = m(r, c) - f * m(k, c);
    }
    for (std::size_t c = k + 1; c < cols; ++c) {
      if (m(k, c).is_zero()) continue;
      const TruncSeries f = m(k, c).shifted_down(best).divide_unit(unit);
      for (std::size_t r = 0; r < cols; ++r) out.right(r, c) = out.right(r, c) - f * out.right(r, k);
      m(k, c) = zero;
    }
    out.exponents.push_back(best);
  }
  return out;
}

/// Elementary divisor exponents of a matrix over the truncated ring. Throws
/// PrecisionExhausted when some pivot vanishes modulo pi^N.
inline ElemDivisors smith_normal_form(const SeriesMatrix& m) {
  require(m.rows() > 0 && m.cols() > 0, ErrorKind::InvalidArgument, "empty matrix");
  const DVRConfig config = m(0, 0).config();
  auto dec = smith_decompose(m, config);
  require(!dec.exhausted, ErrorKind::PrecisionExhausted,
          "pivot " + std::to_string(dec.exponents.size()) + " has valuation >= N=" +
              std::to_string(config.precision()));
  return ElemDivisors{dec.exponents};
}

/// Q with P(pi_d^{(d-1)/n} t) = pi_d^{d-1} Q(t); Q has coefficients in O_{K(d)}.
inline EisensteinPoly eisenstein_rescale(const EisensteinPoly& poly, const TameContext& ctx) {
  const std::int64_t n = poly.degree();
  const std::int64_t d = ctx.d();
  require(poly.config() == ctx.base(), ErrorKind::ConfigMismatch, "polynomial and tame context disagree on config");
  require(d % n == 1 % n, ErrorKind::CongruenceViolation,
          "d=" + std::to_string(d) + " is not 1 mod n=" + std::to_string(n));
  const DVRConfig& config = poly.config();
  const int precision = config.precision();
  require(d - 1 < precision, ErrorKind::PrecisionExhausted,
          "leading coefficient pi_d^" + std::to_string(d - 1) + " vanishes modulo pi_d^" + std::to_string(precision));
  const std::int64_t step = (d - 1) / n;

  // a_i(pi_d^d) * pi_d^{step*i} / pi_d^{d-1}, computed index-wise so no digit of a_i is lost
  // before the division.
  std::vector<TruncSeries> lower;
  lower.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> coeffs(precision, 0);
    const TruncSeries& a = poly.coeff(static_cast<int>(i));
    for (int k = 0; k < precision; ++k) {
      if (a.coeff(k) == 0) continue;
      const std::int64_t idx = static_cast<std::int64_t>(k) * d + step * i - (d - 1);
      if (idx >= precision) break;
      coeffs[idx] = a.coeff(k);
    }
    lower.emplace_back(config, coeffs);
  }
  return EisensteinPoly(std::move(lower));
}

namespace detail {

using QuotientElem = std::vector<TruncSeries>;  // coefficients of 1, t, ..., t^{n-1}

inline QuotientElem mul_mod(const QuotientElem& a, const QuotientElem& b, const EisensteinPoly& q) {
  const std::size_t n = static_cast<std::size_t>(q.degree());
  const TruncSeries zero(q.config());
  std::vector<TruncSeries> prod(2 * n - 1, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = prod[i + j] + a[i] * b[j];
  // t^n = -(q_0 + ... + q_{n-1} t^{n-1})
  for (std::size_t k = prod.size(); k-- > n;) {
    const TruncSeries c = prod[k];
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = prod[k - n + i] - c * q.coeff(static_cast<int>(i));
    prod[k] = zero;
  }
  prod.resize(n, zero);
  return prod;
}

}  // namespace detail

/// Columns: images of an O_K-basis of O_L in O_{L (x) K(d)}; its Smith form is the
/// cokernel of O_L (x) O_{K(d)} -> O_{L (x) K(d)}, whose exponents are the d-jumps of Res_{L/K} Gm.
///
/// O_{L (x) K(d)} is O_{K(d)}[t]/Q with Q = eisenstein_rescale(P). The generator T of
/// O_L = O_K[T]/P maps to pi_d^{(d-1)/n} t; the images of an O_K-basis of O_L (the
/// powers of T, optionally transformed by `basis_change`) are computed by ring
/// arithmetic in the quotient and their Smith form gives the cokernel.
inline SeriesMatrix cokernel_relation_matrix(const EisensteinPoly& poly, const TameContext& ctx,
                                             const std::optional<SeriesMatrix>& basis_change = std::nullopt) {
  const int n = poly.degree();
  const std::int64_t d = ctx.d();
  const EisensteinPoly q = eisenstein_rescale(poly, ctx);
  const DVRConfig& config = poly.config();
  const TruncSeries zero(config);
  const TruncSeries one = TruncSeries::constant(config, 1);
  const int step = static_cast<int>((d - 1) / n);

  detail::QuotientElem image_of_t(n, zero);
  if (n == 1) {
    // t itself reduces to -q_0 in O_{K(d)}[t]/(t + q_0).
    image_of_t[0] = -q.coeff(0) * TruncSeries::monomial(config, step);
  } else {
    image_of_t[1] = TruncSeries::monomial(config, step);
  }

  // powers[nu] = image of T^nu
  std::vector<detail::QuotientElem> powers;
  detail::QuotientElem unit(n, zero);
  unit[0] = one;
  powers.push_back(unit);
  for (int nu = 1; nu <= n; ++nu) powers.push_back(detail::mul_mod(powers.back(), image_of_t, q));

  // The ring map is well defined: P(image of T) vanishes in the quotient.
  detail::QuotientElem p_at_t = powers[n];
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) p_at_t[c] = p_at_t[c] + poly.coeff(i).embed(d) * powers[i][c];
  for (const auto& c : p_at_t)
    require(c.is_zero(), ErrorKind::PrecisionExhausted, "P does not vanish on the image of T at this precision");

  SeriesMatrix images(n, n, zero);
  for (int nu = 0; nu < n; ++nu)
    for (int c = 0; c < n; ++c) images(c, nu) = powers[nu][c];

  if (basis_change) {
    require(basis_change->rows() == static_cast<std::size_t>(n) && basis_change->cols() == static_cast<std::size_t>(n),
            ErrorKind::InvalidArgument, "basis change must be n x n");
    const auto check = smith_normal_form(*basis_change);
    for (int e : check.exponents)
      require(e == 0, ErrorKind::InvalidArgument, "basis change is not unimodular over O_K");
    SeriesMatrix embedded(n, n, zero);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) embedded(r, c) = (*basis_change)(r, c).embed(d);
    images = multiply(images, embedded, zero);
  }
  return images;
}

inline DJumps cokernel_d_jumps_oracle(const EisensteinPoly& poly, const TameContext& ctx,
                                      const std::optional<SeriesMatrix>& basis_change = std::nullopt) {
  const ElemDivisors divisors = smith_normal_form(cokernel_relation_matrix(poly, ctx, basis_change));
  const std::int64_t d = ctx.d();
  std::vector<std::int64_t> values(divisors.exponents.begin(), divisors.exponents.end());
  return DJumps(d, std::move(values));
}

}  // namespace jumpkit
