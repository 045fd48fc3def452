#pragma once

// Integer lattices with an action of a finite abelian group, equivariant maps
// between them and isogeny detection.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"
#include "jumps.hpp"
#include "matrix.hpp"
#include "number.hpp"

namespace jumpkit {

using IntMatrix = Matrix<Integer>;

inline IntMatrix int_identity(std::size_t n) { return identity_matrix<Integer>(n, 0, 1); }
inline IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) { return multiply<Integer>(a, b, 0); }

/// Z/m_1 x ... x Z/m_r.
struct FiniteAbelianGroup {
  std::vector<std::int64_t> factors;

  explicit FiniteAbelianGroup(std::vector<std::int64_t> f = {}) : factors(std::move(f)) {
    for (auto m : factors) require(m >= 2, ErrorKind::InvalidArgument, "cyclic factor must be >= 2");
  }
  std::int64_t order() const {
    std::int64_t o = 1;
    for (auto m : factors) o *= m;
    return o;
  }
  std::size_t generator_count() const noexcept { return factors.size(); }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

/// Free Z-module of rank `rank`; generators[i] is the action of the i-th cyclic generator.
struct GLattice {
  FiniteAbelianGroup group;
  std::size_t rank = 0;
  std::vector<IntMatrix> generators;

  friend bool operator==(const GLattice&, const GLattice&) = default;
};

/// Fraction-free Gaussian elimination (Bareiss).
inline Integer determinant(IntMatrix m) {
  require(m.square(), ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix (all positive).
inline std::vector<Integer> integer_smith_form(IntMatrix m) {
  std::vector<Integer> diag;
  const std::size_t rows = m.rows(), cols = m.cols();
  using boost::multiprecision::abs;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    for (;;) {
      // smallest nonzero entry of the remaining block as pivot
      std::size_t br = rows, bc = cols;
      for (std::size_t r = k; r < rows; ++r)
        for (std::size_t c = k; c < cols; ++c)
          if (m(r, c) != 0 && (br == rows || abs(m(r, c)) < abs(m(br, bc)))) {
            br = r;
            bc = c;
          }
      if (br == rows) return diag;
      m.swap_rows(k, br);
      m.swap_cols(k, bc);
      bool clean = true;
      for (std::size_t r = k + 1; r < rows; ++r) {
        Integer q = m(r, k) / m(k, k);
        if (q != 0)
          for (std::size_t c = k; c < cols; ++c) m(r, c) -= q * m(k, c);
        if (m(r, k) != 0) clean = false;
      }
      for (std::size_t c = k + 1; c < cols; ++c) {
        Integer q = m(k, c) / m(k, k);
        if (q != 0)
          for (std::size_t r = k; r < rows; ++r) m(r, c) -= q * m(r, k);
        if (m(k, c) != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      std::size_t bad = rows;
      for (std::size_t r = k + 1; r < rows && bad == rows; ++r)
        for (std::size_t c = k + 1; c < cols; ++c)
          if (m(r, c) % m(k, k) != 0) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      for (std::size_t c = k; c < cols; ++c) m(k, c) += m(bad, c);
    }
    diag.push_back(abs(m(k, k)));
  }
  return diag;
}

inline bool validate(const GLattice& lat) {
  if (lat.generators.size() != lat.group.generator_count()) return false;
  for (const auto& g : lat.generators)
    if (g.rows() != lat.rank || g.cols() != lat.rank) return false;
  const IntMatrix id = int_identity(lat.rank);
  for (std::size_t i = 0; i < lat.generators.size(); ++i) {
    const auto& g = lat.generators[i];
    if (determinant(g) == 0) return false;
    IntMatrix power = id;
    for (std::int64_t k = 0; k < lat.group.factors[i]; ++k) power = int_multiply(power, g);
    if (power != id) return false;
    for (std::size_t j = i + 1; j < lat.generators.size(); ++j)
      if (int_multiply(g, lat.generators[j]) != int_multiply(lat.generators[j], g)) return false;
  }
  return true;
}

/// Z[G] with basis the group elements in mixed-radix order; generator i acts by translation.
inline GLattice regular_representation(const FiniteAbelianGroup& group) {
  const auto order = static_cast<std::size_t>(group.order());
  GLattice lat{group, order, {}};
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < group.factors.size(); ++i) {
    const std::int64_t m = group.factors[i];
    IntMatrix g(order, order, 0);
    for (std::size_t x = 0; x < order; ++x) {
      const std::int64_t digit = (static_cast<std::int64_t>(x) / stride) % m;
      const std::int64_t shifted = static_cast<std::int64_t>(x) + (digit + 1 == m ? -(m - 1) * stride : stride);
      g(static_cast<std::size_t>(shifted), x) = 1;
    }
    lat.generators.push_back(std::move(g));
    stride *= m;
  }
  return lat;
}

/// Rank-one lattice on which generator i acts by the scalar values[i] (typically +-1).
inline GLattice rank_one_lattice(const FiniteAbelianGroup& group, const std::vector<std::int64_t>& values) {
  require(values.size() == group.generator_count(), ErrorKind::InvalidArgument, "one scalar per generator");
  GLattice lat{group, 1, {}};
  for (auto v : values) lat.generators.push_back(IntMatrix{{Integer(v)}});
  return lat;
}

inline GLattice direct_sum(const std::vector<GLattice>& parts) {
  require(!parts.empty(), ErrorKind::InvalidArgument, "empty direct sum");
  GLattice out{parts.front().group, 0, {}};
  for (const auto& p : parts) {
    require(p.group == out.group, ErrorKind::InvalidArgument, "direct sum over different groups");
    out.rank += p.rank;
  }
  for (std::size_t g = 0; g < out.group.generator_count(); ++g) {
    IntMatrix m(out.rank, out.rank, 0);
    std::size_t offset = 0;
    for (const auto& p : parts) {
      for (std::size_t r = 0; r < p.rank; ++r)
        for (std::size_t c = 0; c < p.rank; ++c) m(offset + r, offset + c) = p.generators[g](r, c);
      offset += p.rank;
    }
    out.generators.push_back(std::move(m));
  }
  return out;
}

/// Integer matrix (target.rank x source.rank) from source to target.
struct LatticeMap {
  GLattice source;
  GLattice target;
  IntMatrix matrix;
};

inline bool is_equivariant(const LatticeMap& f) {
  if (f.source.group != f.target.group) return false;
  if (f.matrix.rows() != f.target.rank || f.matrix.cols() != f.source.rank) return false;
  for (std::size_t g = 0; g < f.source.generators.size(); ++g)
    if (int_multiply(f.matrix, f.source.generators[g]) != int_multiply(f.target.generators[g], f.matrix)) return false;
  return true;
}

struct IsogenyResult {
  bool isogeny = false;
  Integer cokernel_order = 0;  // |det|; 0 when the map is not an isogeny

  friend bool operator==(const IsogenyResult&, const IsogenyResult&) = default;
};

/// An equivariant map of equal ranks is an isogeny iff det != 0; the cokernel order is
/// computed from the determinant and from the Smith form and the two must agree.
inline IsogenyResult is_isogeny(const LatticeMap& f) {
  require(f.source.rank == f.target.rank, ErrorKind::InvalidArgument, "source and target ranks differ");
  require(is_equivariant(f), ErrorKind::NotEquivariant, "map does not commute with the group action");
  using boost::multiprecision::abs;
  const Integer det = abs(determinant(f.matrix));
  if (det == 0) return {false, 0};
  const auto diag = integer_smith_form(f.matrix);
  Integer product = 1;
  for (const auto& d : diag) product *= d;
  if (diag.size() != f.source.rank || product != det)
    throw std::logic_error("determinant and Smith form disagree on the cokernel order");
  return {true, det};
}

/// The Klein four group example: Z + V_sigma + V_tau + V_sigmatau -> Z[Gal(L/K)].
inline LatticeMap klein_four_isogeny() {
  const FiniteAbelianGroup v4({2, 2});
  GLattice source = direct_sum({rank_one_lattice(v4, {1, 1}), rank_one_lattice(v4, {-1, 1}),
                                rank_one_lattice(v4, {1, -1}), rank_one_lattice(v4, {-1, -1})});
  // Basis of Z[G] in mixed-radix order: e, sigma, tau, sigma*tau.
  IntMatrix m{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  return LatticeMap{std::move(source), regular_representation(v4), std::move(m)};
}

struct NonInvarianceReport {
  JumpMultiset left;
  JumpMultiset right;
  bool differ = false;  // multisets differ while the connecting map is an isogeny
  IsogenyResult connecting;
};

inline NonInvarianceReport compare_jumps_across_isogeny(const TorusSpec& left, const TorusSpec& right,
                                                        const LatticeMap& connecting) {
  NonInvarianceReport out{torus_jumps(left), torus_jumps(right), false, is_isogeny(connecting)};
  out.differ = out.left != out.right && out.connecting.isogeny;
  return out;
}

/// Res_{L/K} Gm versus Gm x three quadratic norm-one tori for a biquadratic L/K.
inline NonInvarianceReport jumps_non_invariance_demo() {
  const TorusSpec right = TorusSpec::product({TorusSpec::gm(), TorusSpec::norm_one_quadratic(),
                                              TorusSpec::norm_one_quadratic(), TorusSpec::norm_one_quadratic()});
  return compare_jumps_across_isogeny(TorusSpec::res(4), right, klein_four_isogeny());
}

}  // namespace jumpkit
