#pragma once

// Polynomials in the Lefschetz class L (Laurent in L) and opaque atoms with
// integer coefficients, and rational functions in z whose denominator is a
// product of factors (1 - L^a z^b).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "number.hpp"

namespace jumpkit {

struct Monomial {
  std::int64_t l = 0;                                      // exponent of L, may be negative
  std::vector<std::pair<std::string, std::int64_t>> atoms;  // sorted by name, positive exponents

  bool is_one() const { return l == 0 && atoms.empty(); }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.l = a.l + b.l;
    std::size_t i = 0, j = 0;
    while (i < a.atoms.size() || j < b.atoms.size()) {
      if (j == b.atoms.size() || (i < a.atoms.size() && a.atoms[i].first < b.atoms[j].first)) {
        out.atoms.push_back(a.atoms[i++]);
      } else if (i == a.atoms.size() || b.atoms[j].first < a.atoms[i].first) {
        out.atoms.push_back(b.atoms[j++]);
      } else {
        out.atoms.emplace_back(a.atoms[i].first, a.atoms[i].second + b.atoms[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }
};

/// Element of Z[L, L^{-1}, atoms] in canonical sorted-term form.
class MotivicPoly {
 public:
  MotivicPoly() = default;
  MotivicPoly(int c) : MotivicPoly(Integer(c)) {}  // NOLINT: implicit integer embedding
  MotivicPoly(const Integer& c) {                  // NOLINT
    if (c != 0) terms_[Monomial{}] = c;
  }

  static MotivicPoly lefschetz(std::int64_t k = 1, const Integer& c = 1) {
    MotivicPoly p;
    if (c != 0) p.terms_[Monomial{k, {}}] = c;
    return p;
  }
  static MotivicPoly atom(const std::string& name, std::int64_t k = 1) {
    MotivicPoly p;
    p.terms_[Monomial{0, {{name, k}}}] = 1;
    return p;
  }
  static MotivicPoly from_terms(const std::map<Monomial, Integer>& terms) {
    MotivicPoly p;
    for (const auto& [m, c] : terms)
      if (c != 0) p.terms_[m] = c;
    return p;
  }

  const std::map<Monomial, Integer>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1; }

  /// The integer value if the polynomial is constant.
  std::optional<Integer> as_constant() const {
    if (terms_.empty()) return Integer(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }

  MotivicPoly operator-() const {
    MotivicPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  MotivicPoly& operator+=(const MotivicPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MotivicPoly& operator-=(const MotivicPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MotivicPoly operator+(MotivicPoly a, const MotivicPoly& b) { return a += b; }
  friend MotivicPoly operator-(MotivicPoly a, const MotivicPoly& b) { return a -= b; }
  friend MotivicPoly operator*(const MotivicPoly& a, const MotivicPoly& b) {
    MotivicPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  MotivicPoly& operator*=(const MotivicPoly& o) { return *this = *this * o; }

  MotivicPoly pow(std::int64_t k) const {
    require(k >= 0, ErrorKind::InvalidArgument, "negative power of a polynomial");
    MotivicPoly out = 1;
    for (std::int64_t i = 0; i < k; ++i) out *= *this;
    return out;
  }

  /// Multiplication by L^k.
  MotivicPoly shift_l(std::int64_t k) const {
    MotivicPoly out;
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      s.l += k;
      out.terms_[s] = c;
    }
    return out;
  }

  friend bool operator==(const MotivicPoly&, const MotivicPoly&) = default;

 private:
  void add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Integer> terms_;
};

/// Quotient by (L - 1) when it divides exactly.
inline std::optional<MotivicPoly> divide_by_l_minus_one(const MotivicPoly& poly) {
  // Group by the atom part; each group is a Laurent polynomial in L.
  std::map<std::vector<std::pair<std::string, std::int64_t>>, std::map<std::int64_t, Integer>> groups;
  for (const auto& [m, c] : poly.terms()) groups[m.atoms][m.l] = c;
  std::map<Monomial, Integer> quotient;
  for (const auto& [atoms, coeffs] : groups) {
    const std::int64_t lo = coeffs.begin()->first, hi = coeffs.rbegin()->first;
    if (lo == hi) return std::nullopt;
    // c_e = q_{e-1} - q_e, solved from the top degree down.
    Integer carry = 0;  // q_e for the current e
    for (std::int64_t e = hi; e > lo; --e) {
      auto it = coeffs.find(e);
      Integer c = it == coeffs.end() ? Integer(0) : it->second;
      Integer q = c + carry;  // q_{e-1}
      if (q != 0) quotient[Monomial{e - 1, atoms}] = q;
      carry = q;
    }
    if (coeffs.begin()->second + carry != 0) return std::nullopt;
  }
  return MotivicPoly::from_terms(quotient);
}

namespace detail {

inline std::string monomial_body(const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& f) { out += (out.empty() ? "" : "*") + f; };
  if (m.l == 1) append("L");
  else if (m.l != 0) append("L^" + std::to_string(m.l));
  for (const auto& [name, e] : m.atoms) append(e == 1 ? name : name + "^" + std::to_string(e));
  return out;
}

/// Appends one signed term to a sum being rendered.
inline void append_term(std::string& out, const Integer& c, const std::string& body) {
  const bool negative = c < 0;
  const Integer mag = negative ? Integer(-c) : c;
  std::string term;
  if (body.empty()) term = mag.str();
  else if (mag == 1) term = body;
  else term = mag.str() + "*" + body;
  if (out.empty()) out = (negative ? "-" : "") + term;
  else out += (negative ? " - " : " + ") + term;
}

}  // namespace detail

/// Expanded canonical form, terms ascending in (L exponent, atoms). Zero is "0".
inline std::string to_string(const MotivicPoly& poly) {
  std::string out;
  for (const auto& [m, c] : poly.terms()) detail::append_term(out, c, detail::monomial_body(m));
  return out.empty() ? "0" : out;
}

namespace detail {

/// Recursive-descent parser for +, -, *, ^, parentheses, integers and identifiers.
/// "L" is the Lefschetz class; every other identifier becomes an atom.
class ExprParser {
 public:
  explicit ExprParser(std::string text) : text_(std::move(text)) {}

  MotivicPoly parse() {
    MotivicPoly value = expr();
    skip_space();
    require(pos_ == text_.size(), ErrorKind::ParseError, "unexpected '" + text_.substr(pos_) + "' in '" + text_ + "'");
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MotivicPoly expr() {
    MotivicPoly value;
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    value = negative ? -term() : term();
    for (;;) {
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  MotivicPoly term() {
    MotivicPoly value = factor();
    while (accept('*')) value *= factor();
    return value;
  }

  std::int64_t integer_literal(bool allow_sign) {
    skip_space();
    std::size_t start = pos_;
    if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    require(pos_ > start && !(pos_ == start + 1 && text_[start] == '-'), ErrorKind::ParseError,
            "expected integer at offset " + std::to_string(start) + " in '" + text_ + "'");
    return parse_int64(text_.substr(start, pos_ - start));
  }

  MotivicPoly factor() {
    skip_space();
    require(pos_ < text_.size(), ErrorKind::ParseError, "unexpected end of '" + text_ + "'");
    MotivicPoly base;
    bool pure_l = false;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      require(accept(')'), ErrorKind::ParseError, "missing ')' in '" + text_ + "'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      base = MotivicPoly(Integer(text_.substr(start, pos_ - start)));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '[') {
      std::size_t start = pos_;
      if (c == '[') {
        auto close = text_.find(']', pos_);
        require(close != std::string::npos, ErrorKind::ParseError, "missing ']' in '" + text_ + "'");
        pos_ = close + 1;
      } else {
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      if (name == "L") {
        base = MotivicPoly::lefschetz(1);
        pure_l = true;
      } else {
        base = MotivicPoly::atom(name);
      }
    } else {
      fail(ErrorKind::ParseError, std::string("unexpected '") + c + "' in '" + text_ + "'");
    }
    if (accept('^')) {
      std::int64_t e = integer_literal(true);
      if (pure_l) return MotivicPoly::lefschetz(e);
      require(e >= 0, ErrorKind::ParseError, "negative exponent allowed only on L");
      return base.pow(e);
    }
    return base;
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MotivicPoly parse_motivic(const std::string& text) { return detail::ExprParser(text).parse(); }

/// Denominator factor (1 - L^a z^b).
struct CycloFactor {
  std::int64_t a = 0;
  std::int64_t b = 1;

  Rational ratio() const { return make_rational(a, b); }
  friend auto operator<=>(const CycloFactor&, const CycloFactor&) = default;
  friend bool operator==(const CycloFactor&, const CycloFactor&) = default;
};

using ZPoly = std::map<std::int64_t, MotivicPoly>;  // z-degree -> coefficient, no zero entries

/// numerator(z) / prod (1 - L^a z^b), numerator a polynomial in z over MotivicPoly.
class CycloRational {
 public:
  CycloRational() = default;
  CycloRational(ZPoly numerator, std::vector<CycloFactor> denominator) : denominator_(std::move(denominator)) {
    for (auto& [k, c] : numerator) {
      require(k >= 0, ErrorKind::InvalidArgument, "negative power of z");
      if (!c.is_zero()) numerator_[k] = std::move(c);
    }
    for (const auto& f : denominator_) require(f.b >= 1, ErrorKind::InvalidArgument, "factor z-exponent must be positive");
    std::sort(denominator_.begin(), denominator_.end());
  }

  const ZPoly& numerator() const noexcept { return numerator_; }
  const std::vector<CycloFactor>& denominator() const noexcept { return denominator_; }

  friend bool operator==(const CycloRational&, const CycloRational&) = default;

 private:
  ZPoly numerator_;
  std::vector<CycloFactor> denominator_;
};

inline ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out[ka + kb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

inline ZPoly zpoly_add(ZPoly a, const ZPoly& b) {
  for (const auto& [k, c] : b) a[k] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second.is_zero(); });
  return a;
}

/// Quotient by (1 - L^a z^b) when the division is exact. The factor has constant
/// term 1, so divisibility over the fraction field agrees with divisibility here.
inline std::optional<ZPoly> divide_by_factor(const ZPoly& num, const CycloFactor& f) {
  if (num.empty()) return ZPoly{};
  const std::int64_t deg = num.rbegin()->first;
  if (deg < f.b) return std::nullopt;
  // q_k = c_k + L^a q_{k-b}
  std::vector<MotivicPoly> q(static_cast<std::size_t>(deg + 1));
  for (std::int64_t k = 0; k <= deg; ++k) {
    auto it = num.find(k);
    MotivicPoly v = it == num.end() ? MotivicPoly{} : it->second;
    if (k >= f.b) v += q[k - f.b].shift_l(f.a);
    q[k] = std::move(v);
  }
  for (std::int64_t k = deg - f.b + 1; k <= deg; ++k)
    if (!q[k].is_zero()) return std::nullopt;
  ZPoly out;
  for (std::int64_t k = 0; k <= deg - f.b; ++k)
    if (!q[k].is_zero()) out[k] = std::move(q[k]);
  return out;
}

/// Cancels every denominator factor that divides the numerator exactly.
inline CycloRational reduce(const CycloRational& r) {
  ZPoly num = r.numerator();
  std::vector<CycloFactor> den = r.denominator();
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < den.size(); ++i) {
      if (i > 0 && den[i] == den[i - 1]) continue;
      if (auto q = divide_by_factor(num, den[i])) {
        num = std::move(*q);
        den.erase(den.begin() + static_cast<std::ptrdiff_t>(i));
        progress = true;
        break;
      }
    }
  }
  return CycloRational(std::move(num), std::move(den));
}

/// Coefficients of z^0 .. z^order of the formal expansion.
inline std::vector<MotivicPoly> expand(const CycloRational& r, std::int64_t order) {
  require(order >= 0, ErrorKind::InvalidArgument, "negative expansion order");
  std::vector<MotivicPoly> series(static_cast<std::size_t>(order + 1));
  for (const auto& [k, c] : r.numerator())
    if (k <= order) series[k] = c;
  for (const auto& f : r.denominator()) {
    // multiply by 1/(1 - L^a z^b): s_k += L^a s_{k-b}, ascending k
    for (std::int64_t k = f.b; k <= order; ++k)
      if (!series[k - f.b].is_zero()) series[k] += series[k - f.b].shift_l(f.a);
  }
  return series;
}

namespace detail {

inline Integer zpoly_content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& [k, c] : p)
    for (const auto& [m, v] : c.terms()) g = boost::multiprecision::gcd(g, v);
  return g;
}

inline std::string render_residual(const ZPoly& p) {
  std::string out;
  for (const auto& [k, c] : p)
    for (const auto& [m, v] : c.terms()) {
      std::string body = monomial_body(m);
      if (k > 0) body += (body.empty() ? "" : "*") + (k == 1 ? std::string("z") : "z^" + std::to_string(k));
      append_term(out, v, body);
    }
  return out;
}

inline std::string render_numerator(const ZPoly& num) {
  if (num.empty()) return "0";
  ZPoly rest = num;

  Integer g = zpoly_content(rest);
  for (auto& [k, c] : rest) {
    std::map<Monomial, Integer> t;
    for (const auto& [m, v] : c.terms()) t[m] = v / g;
    c = MotivicPoly::from_terms(t);
  }

  int l_minus_one = 0;
  for (;;) {
    ZPoly next;
    bool ok = true;
    for (const auto& [k, c] : rest) {
      auto q = divide_by_l_minus_one(c);
      if (!q) {
        ok = false;
        break;
      }
      next[k] = std::move(*q);
    }
    if (!ok) break;
    rest = std::move(next);
    ++l_minus_one;
  }

  // Common monomial content: L power, atom powers, z power.
  std::optional<Monomial> common;
  for (const auto& [k, c] : rest)
    for (const auto& [m, v] : c.terms()) {
      if (!common) {
        common = m;
        continue;
      }
      common->l = std::min(common->l, m.l);
      std::vector<std::pair<std::string, std::int64_t>> kept;
      for (const auto& [name, e] : common->atoms) {
        auto it = std::find_if(m.atoms.begin(), m.atoms.end(), [&](const auto& a) { return a.first == name; });
        if (it != m.atoms.end()) kept.emplace_back(name, std::min(e, it->second));
      }
      common->atoms = std::move(kept);
    }
  const std::int64_t z_min = rest.begin()->first;
  ZPoly residual;
  for (const auto& [k, c] : rest) {
    std::map<Monomial, Integer> t;
    for (const auto& [m, v] : c.terms()) {
      Monomial r = m;
      r.l -= common->l;
      for (auto& [name, e] : r.atoms) {
        auto it = std::find_if(common->atoms.begin(), common->atoms.end(), [&](const auto& a) { return a.first == name; });
        if (it != common->atoms.end()) e -= it->second;
      }
      std::erase_if(r.atoms, [](const auto& a) { return a.second == 0; });
      t[r] = v;
    }
    residual[k - z_min] = MotivicPoly::from_terms(t);
  }

  if (residual.begin()->second.terms().begin()->second < 0) {
    g = -g;
    for (auto& [k, c] : residual) c = -c;
  }

  std::vector<std::string> factors;
  if (g != 1 && g != -1) factors.push_back(g.str());
  if (l_minus_one == 1) factors.push_back("(L-1)");
  else if (l_minus_one > 1) factors.push_back("(L-1)^" + std::to_string(l_minus_one));
  if (std::string body = monomial_body(*common); !body.empty()) factors.push_back(body);
  if (z_min == 1) factors.push_back("z");
  else if (z_min > 1) factors.push_back("z^" + std::to_string(z_min));
  const bool residual_is_one = residual.size() == 1 && residual.begin()->first == 0 && residual.begin()->second.is_one();
  if (!residual_is_one) factors.push_back("(" + render_residual(residual) + ")");

  std::string out = g == -1 ? "-" : "";
  if (factors.empty()) return out + "1";
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
  return out;
}

}  // namespace detail

/// Canonical rendering, e.g. "((L-1)*L*z)/(1 - L^1*z^2)". The numerator is shown as
/// integer content * (L-1)^k * monomial content * z^j * (residual).
inline std::string to_string(const CycloRational& r) {
  std::string out = "(" + detail::render_numerator(r.numerator()) + ")";
  const auto& den = r.denominator();
  if (den.empty()) return out;
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < den.size();) {
    std::size_t j = i;
    while (j < den.size() && den[j] == den[i]) ++j;
    std::string f = "(1 - L^" + std::to_string(den[i].a) + "*z^" + std::to_string(den[i].b) + ")";
    if (j - i > 1) f += "^" + std::to_string(j - i);
    parts.push_back(f);
    i = j;
  }
  out += "/";
  if (parts.size() == 1) return out + parts.front();
  out += "(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out + ")";
}

/// Splits a polynomial over L, atoms and the atom `z` into a z-polynomial.
inline ZPoly to_zpoly(const MotivicPoly& poly, const std::string& var = "z") {
  ZPoly out;
  for (const auto& [m, c] : poly.terms()) {
    Monomial rest = m;
    std::int64_t k = 0;
    std::erase_if(rest.atoms, [&](const auto& a) {
      if (a.first != var) return false;
      k = a.second;
      return true;
    });
    out[k] += MotivicPoly::from_terms({{rest, c}});
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/// Inverse of to_string(CycloRational): "(numerator)" optionally followed by
/// "/" and a product of "(1 - L^a*z^b)" factors, each with an optional "^m".
inline CycloRational parse_cyclo_rational(const std::string& text) {
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '/' && depth == 0) {
      require(slash == std::string::npos, ErrorKind::ParseError, "more than one '/' in '" + text + "'");
      slash = i;
    }
  }
  require(depth == 0, ErrorKind::ParseError, "unbalanced parentheses in '" + text + "'");
  ZPoly num = to_zpoly(parse_motivic(text.substr(0, slash)));
  std::vector<CycloFactor> den;
  if (slash != std::string::npos) {
    std::string d;
    for (char c : text.substr(slash + 1))
      if (!std::isspace(static_cast<unsigned char>(c))) d.push_back(c);
    static const std::regex factor_re(R"(\(1-L\^(-?\d+)\*z\^(\d+)\)(?:\^(\d+))?)");
    if (d.size() >= 2 && d.front() == '(' && d[1] == '(' && d.back() == ')') d = d.substr(1, d.size() - 2);
    std::size_t pos = 0;
    while (pos < d.size()) {
      std::smatch m;
      std::string tail = d.substr(pos);
      require(std::regex_search(tail, m, factor_re, std::regex_constants::match_continuous), ErrorKind::ParseError,
              "bad denominator factor at '" + tail + "'");
      const std::int64_t mult = m[3].matched ? parse_int64(m[3].str()) : 1;
      for (std::int64_t i = 0; i < mult; ++i) den.push_back({parse_int64(m[1].str()), parse_int64(m[2].str())});
      pos += static_cast<std::size_t>(m.length(0));
      if (pos < d.size()) {
        require(d[pos] == '*', ErrorKind::ParseError, "expected '*' between denominator factors");
        ++pos;
      }
    }
  }
  return CycloRational(std::move(num), std::move(den));
}

}  // namespace jumpkit
