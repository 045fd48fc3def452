#pragma once

// Line-oriented spec files:
//
//   file    := { line }
//   line    := blank | comment | header | entry
//   comment := '#' any-text
//   header  := '[' name [ ' ' argument ] ']'
//   entry   := key '=' value
//
// Every entry belongs to the most recent header. Keys are unique within a
// section; unknown sections and keys are rejected by the typed loaders.

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jumps.hpp"
#include "lattice.hpp"
#include "motivic.hpp"
#include "number.hpp"
#include "pushout.hpp"
#include "valuation.hpp"
#include "zeta.hpp"

namespace jumpkit {

struct SpecSection {
  std::string name;
  std::string argument;  // empty when the header has none
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return &v;
    return nullptr;
  }
  const std::string& at(const std::string& key) const {
    const std::string* v = find(key);
    require(v != nullptr, ErrorKind::ParseError, "section [" + title() + "] lacks key '" + key + "'");
    return *v;
  }
  std::string title() const { return argument.empty() ? name : name + " " + argument; }

  void only_keys(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : entries)
      require(allowed.count(k) == 1, ErrorKind::ParseError, "unknown key '" + k + "' in [" + title() + "]");
  }

  friend bool operator==(const SpecSection&, const SpecSection&) = default;
};

struct SpecDocument {
  std::vector<SpecSection> sections;

  std::vector<const SpecSection*> all(const std::string& name) const {
    std::vector<const SpecSection*> out;
    for (const auto& s : sections)
      if (s.name == name) out.push_back(&s);
    return out;
  }
  const SpecSection& one(const std::string& name, const std::string& argument = "") const {
    const SpecSection* found = nullptr;
    for (const auto& s : sections) {
      if (s.name != name || s.argument != argument) continue;
      require(found == nullptr, ErrorKind::ParseError, "duplicate section [" + s.title() + "]");
      found = &s;
    }
    require(found != nullptr, ErrorKind::ParseError,
            "missing section [" + (argument.empty() ? name : name + " " + argument) + "]");
    return *found;
  }
  void only_sections(const std::set<std::string>& allowed) const {
    for (const auto& s : sections)
      require(allowed.count(s.name) == 1, ErrorKind::ParseError, "unknown section [" + s.name + "]");
  }

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace detail

inline SpecDocument parse_spec_document(const std::string& text) {
  SpecDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      require(line.back() == ']', ErrorKind::ParseError, where + "unterminated section header");
      const std::string inner = detail::trim(line.substr(1, line.size() - 2));
      const auto space = inner.find_first_of(" \t");
      SpecSection section;
      section.name = inner.substr(0, space);
      if (space != std::string::npos) section.argument = detail::trim(inner.substr(space));
      require(detail::valid_name(section.name), ErrorKind::ParseError, where + "bad section name '" + section.name + "'");
      require(section.argument.find_first_of(" \t") == std::string::npos, ErrorKind::ParseError,
              where + "section argument must be a single word");
      doc.sections.push_back(std::move(section));
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::ParseError, where + "expected 'key = value'");
    require(!doc.sections.empty(), ErrorKind::ParseError, where + "entry before any section header");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    require(detail::valid_name(key), ErrorKind::ParseError, where + "bad key '" + key + "'");
    auto& section = doc.sections.back();
    require(section.find(key) == nullptr, ErrorKind::ParseError, where + "duplicate key '" + key + "'");
    section.entries.emplace_back(key, value);
  }
  return doc;
}

inline std::string to_string(const SpecDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.sections.size(); ++i) {
    const auto& s = doc.sections[i];
    if (i) out += "\n";
    out += "[" + s.title() + "]\n";
    for (const auto& [k, v] : s.entries) out += k + " = " + v + "\n";
  }
  return out;
}

// ---- torus ----------------------------------------------------------------

inline TorusSpec load_torus(const SpecDocument& doc) {
  doc.only_sections({"torus"});
  const auto& s = doc.one("torus");
  s.only_keys({"spec"});
  return parse_torus(s.at("spec"));
}

inline SpecDocument torus_document(const TorusSpec& spec) {
  return SpecDocument{{SpecSection{"torus", "", {{"spec", to_string(spec)}}}}};
}

// ---- jacobian -------------------------------------------------------------

inline JacobianSpec load_jacobian(const SpecDocument& doc) {
  doc.only_sections({"jacobian", "divisor"});
  const auto& head = doc.one("jacobian");
  head.only_keys({"n", "p", "e_tilde", "abelian_jumps"});
  JacobianSpec spec;
  spec.n = parse_int64(head.at("n"));
  spec.p = parse_int64(head.at("p"));
  spec.e_tilde = parse_int64(head.at("e_tilde"));
  spec.abelian_jumps = parse_jumps(head.find("abelian_jumps") ? *head.find("abelian_jumps") : "");
  for (const SpecSection* s : doc.all("divisor")) {
    s->only_keys({"toric_rank", "unipotent_rank", "phi_tilde", "ab_class"});
    require(!s->argument.empty(), ErrorKind::ParseError, "[divisor] needs the divisor as argument");
    const std::int64_t alpha = parse_int64(s->argument);
    require(spec.divisors.count(alpha) == 0, ErrorKind::ParseError, "duplicate [divisor " + s->argument + "]");
    DivisorData data;
    data.toric_rank = s->find("toric_rank") ? parse_int64(*s->find("toric_rank")) : 0;
    data.unipotent_rank = s->find("unipotent_rank") ? parse_int64(*s->find("unipotent_rank")) : 0;
    data.phi_tilde = s->find("phi_tilde") ? Integer(parse_int64(*s->find("phi_tilde"))) : Integer(1);
    data.ab_class = s->find("ab_class") ? parse_motivic(*s->find("ab_class")) : MotivicPoly(1);
    spec.divisors.emplace(alpha, std::move(data));
  }
  spec.validate();
  return spec;
}

inline SpecDocument jacobian_document(const JacobianSpec& spec) {
  SpecDocument doc;
  doc.sections.push_back({"jacobian",
                          "",
                          {{"n", std::to_string(spec.n)},
                           {"p", std::to_string(spec.p)},
                           {"e_tilde", std::to_string(spec.e_tilde)},
                           {"abelian_jumps", to_string(spec.abelian_jumps)}}});
  for (const auto& [alpha, data] : spec.divisors)
    doc.sections.push_back({"divisor",
                            std::to_string(alpha),
                            {{"toric_rank", std::to_string(data.toric_rank)},
                             {"unipotent_rank", std::to_string(data.unipotent_rank)},
                             {"phi_tilde", to_string(data.phi_tilde)},
                             {"ab_class", to_string(data.ab_class)}}});
  return doc;
}

// ---- gluing ---------------------------------------------------------------

inline GluingSpec load_gluing(const SpecDocument& doc, int default_precision = kDefaultPrecision,
                              int default_degree_bound = kDefaultDegreeBound) {
  doc.only_sections({"gluing"});
  const auto& s = doc.one("gluing");
  s.only_keys({"kind", "p", "precision", "degree_bound", "poly"});
  const std::string& kind = s.at("kind");
  const int precision = s.find("precision") ? static_cast<int>(parse_int64(*s.find("precision"))) : default_precision;
  const int bound = s.find("degree_bound") ? static_cast<int>(parse_int64(*s.find("degree_bound"))) : default_degree_bound;
  const DVRConfig config(parse_int64(s.at("p")), precision);
  if (kind == "two-points") {
    require(s.find("poly") == nullptr, ErrorKind::ParseError, "two-points gluing takes no 'poly'");
    return GluingSpec::two_points(config, bound);
  }
  require(kind == "wild-point", ErrorKind::ParseError, "kind must be 'two-points' or 'wild-point', got '" + kind + "'");
  return GluingSpec::wild_point(parse_eisenstein(s.at("poly"), config), bound);
}

inline SpecDocument gluing_document(const GluingSpec& spec) {
  SpecSection s{"gluing", "", {}};
  const bool wild = spec.kind() == GluingSpec::Kind::WildPoint;
  s.entries.emplace_back("kind", wild ? "wild-point" : "two-points");
  s.entries.emplace_back("p", std::to_string(spec.config().p()));
  s.entries.emplace_back("precision", std::to_string(spec.config().precision()));
  s.entries.emplace_back("degree_bound", std::to_string(spec.degree_bound()));
  if (wild) {
    SlicePoly full = spec.poly().coefficients();
    s.entries.emplace_back("poly", to_string(full));
  }
  return SpecDocument{{std::move(s)}};
}

// ---- lattices -------------------------------------------------------------

/// Rows separated by ';', entries by whitespace: "1 0; 0 -1".
inline IntMatrix parse_int_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  std::string row_text;
  std::istringstream rows_in(text);
  while (std::getline(rows_in, row_text, ';')) {
    std::istringstream cells(row_text);
    std::vector<Integer> row;
    std::string cell;
    while (cells >> cell) row.push_back(Integer(parse_int64(cell)));
    require(!row.empty(), ErrorKind::ParseError, "empty matrix row in '" + text + "'");
    require(rows.empty() || rows.front().size() == row.size(), ErrorKind::ParseError, "ragged matrix '" + text + "'");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorKind::ParseError, "empty matrix");
  IntMatrix m(rows.size(), rows.front().size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

inline std::string to_string(const IntMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + to_string(m(r, c));
  }
  return out;
}

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_int64(trim(item)));
  return out;
}

inline GLattice load_lattice_section(const SpecSection& s, const FiniteAbelianGroup& group) {
  std::set<std::string> allowed{"regular"};
  for (std::size_t i = 1; i <= group.generator_count(); ++i) allowed.insert("gen" + std::to_string(i));
  s.only_keys(allowed);
  if (const std::string* regular = s.find("regular")) {
    require(*regular == "true", ErrorKind::ParseError, "'regular' must be 'true'");
    require(s.entries.size() == 1, ErrorKind::ParseError, "'regular' excludes explicit generators");
    return regular_representation(group);
  }
  GLattice lat{group, 0, {}};
  for (std::size_t i = 1; i <= group.generator_count(); ++i) {
    IntMatrix g = parse_int_matrix(s.at("gen" + std::to_string(i)));
    require(g.square(), ErrorKind::ParseError, "generator matrix must be square");
    if (i == 1) lat.rank = g.rows();
    require(g.rows() == lat.rank, ErrorKind::ParseError, "generator matrices of different sizes");
    lat.generators.push_back(std::move(g));
  }
  require(validate(lat), ErrorKind::InvalidArgument, "[" + s.title() + "] is not a valid G-lattice");
  return lat;
}

}  // namespace detail

inline LatticeMap load_lattice_map(const SpecDocument& doc) {
  doc.only_sections({"group", "lattice", "map"});
  const auto& g = doc.one("group");
  g.only_keys({"factors"});
  const FiniteAbelianGroup group(detail::parse_int_list(g.at("factors")));
  for (const SpecSection* s : doc.all("lattice"))
    require(s->argument == "source" || s->argument == "target", ErrorKind::ParseError,
            "lattice section must be [lattice source] or [lattice target]");
  GLattice source = detail::load_lattice_section(doc.one("lattice", "source"), group);
  GLattice target = detail::load_lattice_section(doc.one("lattice", "target"), group);
  const auto& m = doc.one("map");
  m.only_keys({"matrix"});
  IntMatrix matrix = parse_int_matrix(m.at("matrix"));
  require(matrix.rows() == target.rank && matrix.cols() == source.rank, ErrorKind::ParseError,
          "map matrix must be (target rank) x (source rank)");
  return LatticeMap{std::move(source), std::move(target), std::move(matrix)};
}

inline SpecDocument lattice_map_document(const LatticeMap& f) {
  SpecDocument doc;
  std::string factors;
  for (auto m : f.source.group.factors) factors += (factors.empty() ? "" : ", ") + std::to_string(m);
  doc.sections.push_back({"group", "", {{"factors", factors}}});
  for (const auto* which : {"source", "target"}) {
    const GLattice& lat = std::string(which) == "source" ? f.source : f.target;
    SpecSection s{"lattice", which, {}};
    for (std::size_t i = 0; i < lat.generators.size(); ++i)
      s.entries.emplace_back("gen" + std::to_string(i + 1), to_string(lat.generators[i]));
    doc.sections.push_back(std::move(s));
  }
  doc.sections.push_back({"map", "", {{"matrix", to_string(f.matrix)}}});
  return doc;
}

}  // namespace jumpkit
