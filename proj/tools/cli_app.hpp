#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jumpkit/jumps.hpp"
#include "jumpkit/lattice.hpp"
#include "jumpkit/motivic.hpp"
#include "jumpkit/pushout.hpp"
#include "jumpkit/spec_format.hpp"
#include "jumpkit/valuation.hpp"
#include "jumpkit/zeta.hpp"

namespace jumpkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline int env_int(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  return static_cast<int>(parse_int64(raw));
}

inline SpecDocument read_spec_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::ParseError, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_document(buffer.str());
}

inline std::int64_t smallest_prime_factor(std::int64_t n) {
  for (std::int64_t f = 2; f <= n / f; ++f)
    if (n % f == 0) return f;
  return n >= 2 ? n : 2;
}

inline void print_series(std::ostream& out, const CycloRational& r, std::int64_t order) {
  const auto coeffs = expand(r, order);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) out << "z^" << k << ": " << to_string(coeffs[k]) << "\n";
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tame base-change invariants of tori and semiabelian Jacobians", "jumpkit"};
  app.require_subcommand(1);

  int precision = kDefaultPrecision;
  int degree_bound = kDefaultDegreeBound;
  try {
    precision = detail::env_int("JUMPKIT_PRECISION", kDefaultPrecision);
    degree_bound = detail::env_int("JUMPKIT_DEGREE_BOUND", kDefaultDegreeBound);
  } catch (const Error& e) {
    err << "usage: bad environment override: " << e.what() << "\n";
    return kExitUsage;
  }
  app.add_option("--precision", precision, "series precision N (env JUMPKIT_PRECISION)")->check(CLI::Range(2, 1 << 20));
  app.add_option("--degree-bound", degree_bound, "slice degree bound D (env JUMPKIT_DEGREE_BOUND)")
      ->check(CLI::Range(2, 1 << 16));

  std::string torus_text, spec_path, jumps_text, zeta_text, poly_text, f_text, target_text, kind_text, check_text;
  std::string basis_text;
  std::int64_t d = 0, n = 0, p = 0, alpha = 0, series = -1;
  bool demo = false, non_invariance = false;

  auto torus_source = [&](CLI::App* sub) {
    // exactly one of --torus and --spec
    auto* source = sub->add_option_group("source");
    source->add_option("--torus", torus_text, "torus expression, e.g. res:4 or gm*norm1quad^3");
    source->add_option("--spec", spec_path, "spec file with a [torus] section")->check(CLI::ExistingFile);
    source->require_option(1);
    return source;
  };
  auto load_torus_arg = [&]() -> TorusSpec {
    if (!spec_path.empty()) return load_torus(detail::read_spec_file(spec_path));
    require(!torus_text.empty(), ErrorKind::InvalidArgument, "give --torus or --spec");
    return parse_torus(torus_text);
  };
  auto check_tame = [&] {
    if (p != 0) {
      require(is_prime(p), ErrorKind::InvalidArgument, "p=" + std::to_string(p) + " is not prime");
      require(d % p != 0, ErrorKind::InvalidArgument, "d=" + std::to_string(d) + " is divisible by p");
    }
  };

  auto* jumps = app.add_subcommand("jumps", "limit jumps of a torus");
  torus_source(jumps);

  auto* djumps = app.add_subcommand("d-jumps", "d-jumps of a torus");
  torus_source(djumps);
  djumps->add_option("--d", d, "tame degree")->required()->check(CLI::PositiveNumber);
  djumps->add_option("--p", p, "residue characteristic (checks d prime to p)");

  auto* order = app.add_subcommand("order", "order function ord(d)");
  torus_source(order);
  order->add_option("--d", d, "tame degree")->required()->check(CLI::PositiveNumber);
  order->add_option("--p", p, "residue characteristic (checks d prime to p)");

  auto* conductor = app.add_subcommand("conductor", "tame base-change conductor");
  auto* conductor_source = torus_source(conductor);
  conductor_source->add_option("--jumps", jumps_text, "explicit jump multiset, e.g. \"0, 1/4\"");
  conductor_source->add_option("--jacobian", spec_path, "jacobian spec file")->check(CLI::ExistingFile);

  auto* characters = app.add_subcommand("characters", "character decomposition of the d-jumps");
  torus_source(characters);
  characters->add_option("--d", d, "tame degree")->required()->check(CLI::PositiveNumber);
  characters->add_option("--p", p, "residue characteristic (checks d prime to p)");

  auto* zeta_torus = app.add_subcommand("zeta-torus", "motivic zeta function of Res_{L/K} Gm");
  zeta_torus->add_option("--n", n, "degree [L:K]")->required();
  zeta_torus->add_option("--p", p, "residue characteristic")->required();
  zeta_torus->add_option("--series", series, "also print the expansion up to z^K");

  auto* zeta_jac = app.add_subcommand("zeta-jacobian", "motivic zeta function of a semiabelian Jacobian");
  zeta_jac->add_option("--spec", spec_path, "jacobian spec file")->required()->check(CLI::ExistingFile);
  zeta_jac->add_option("--series", series, "also print the expansion up to z^K");

  auto* pole = app.add_subcommand("pole", "pole location and order");
  auto* pole_zeta = pole->add_option("--zeta", zeta_text, "rational function in canonical rendering");
  auto* pole_spec = pole->add_option("--spec", spec_path, "jacobian spec file")->check(CLI::ExistingFile);
  auto* pole_n = pole->add_option("--n", n, "degree of an induced torus");
  pole->add_option("--p", p, "residue characteristic (with --n)");
  pole_zeta->excludes(pole_spec)->excludes(pole_n);
  pole_spec->excludes(pole_n);

  auto* oracle = app.add_subcommand("oracle-cokernel", "d-jumps from the integral cokernel");
  auto* oracle_n = oracle->add_option("--n", n, "degree of t^n - pi");
  auto* oracle_poly = oracle->add_option("--poly", poly_text, "Eisenstein polynomial in t and pi");
  oracle_n->excludes(oracle_poly);
  oracle->add_option("--d", d, "tame degree, d = 1 mod n")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--p", p, "residue characteristic (default: smallest prime factor of n)");
  oracle->add_option("--basis-change", basis_text, "integer unimodular matrix, rows separated by ';'");

  auto* isogeny = app.add_subcommand("isogeny", "isogeny test for an equivariant lattice map");
  auto* iso_spec = isogeny->add_option("--spec", spec_path, "lattice-map spec file")->check(CLI::ExistingFile);
  auto* iso_demo = isogeny->add_flag("--demo", demo, "the Klein four map");
  auto* iso_jumps = isogeny->add_flag("--non-invariance", non_invariance, "jumps on both sides of the Klein four map");
  iso_spec->excludes(iso_demo)->excludes(iso_jumps);

  auto* pushout = app.add_subcommand("pushout", "fiber-product diagnostics");
  pushout->add_option("--check", check_text, "membership | nilpotent | tor-defect | generators | base-change")
      ->required()
      ->check(CLI::IsMember({"membership", "nilpotent", "tor-defect", "generators", "base-change"}));
  auto* push_spec = pushout->add_option("--spec", spec_path, "gluing spec file")->check(CLI::ExistingFile);
  auto* push_kind = pushout->add_option("--kind", kind_text, "two-points | wild-point")
                        ->check(CLI::IsMember({"two-points", "wild-point"}));
  pushout->add_option("--poly", poly_text, "Eisenstein polynomial for wild-point, default t^2 - pi");
  pushout->add_option("--p", p, "residue characteristic (default 2)");
  pushout->add_option("--f", f_text, "polynomial in t and pi");
  pushout->add_option("--target", target_text, "k, or a tame degree d");
  push_spec->excludes(push_kind);

  auto* components = app.add_subcommand("components", "torsion component count at a tame divisor");
  components->add_option("--spec", spec_path, "jacobian spec file")->required()->check(CLI::ExistingFile);
  components->add_option("--alpha", alpha, "divisor of e(C) prime to p")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (jumps->parsed()) {
      out << to_string(torus_jumps(load_torus_arg())) << "\n";
    } else if (djumps->parsed()) {
      check_tame();
      out << to_string(torus_d_jumps(load_torus_arg(), d)) << "\n";
    } else if (order->parsed()) {
      check_tame();
      out << to_string(order_function(load_torus_arg(), d)) << "\n";
    } else if (conductor->parsed()) {
      if (!jumps_text.empty()) {
        out << to_string(tame_conductor(parse_jumps(jumps_text))) << "\n";
      } else if (!spec_path.empty() && conductor->count("--jacobian") > 0) {
        out << to_string(jacobian_conductor(load_jacobian(detail::read_spec_file(spec_path)))) << "\n";
      } else {
        out << to_string(tame_conductor(torus_jumps(load_torus_arg()))) << "\n";
      }
    } else if (characters->parsed()) {
      check_tame();
      out << to_string(character_decomposition(torus_d_jumps(load_torus_arg(), d))) << "\n";
    } else if (zeta_torus->parsed()) {
      const CycloRational z = zeta_induced_torus(n, p);
      out << to_string(z) << "\n";
      if (series >= 0) detail::print_series(out, z, series);
    } else if (zeta_jac->parsed()) {
      const CycloRational z = zeta_jacobian(load_jacobian(detail::read_spec_file(spec_path)));
      out << to_string(z) << "\n";
      if (series >= 0) detail::print_series(out, z, series);
    } else if (pole->parsed()) {
      CycloRational z;
      if (!zeta_text.empty()) z = parse_cyclo_rational(zeta_text);
      else if (!spec_path.empty()) z = zeta_jacobian(load_jacobian(detail::read_spec_file(spec_path)));
      else {
        require(n != 0 && p != 0, ErrorKind::InvalidArgument, "give --zeta, --spec, or --n with --p");
        z = zeta_induced_torus(n, p);
      }
      out << to_string(pole_report(z)) << "\n";
    } else if (oracle->parsed()) {
      require(n != 0 || !poly_text.empty(), ErrorKind::InvalidArgument, "give --n or --poly");
      if (p == 0) p = n != 0 ? detail::smallest_prime_factor(n) : 2;
      const DVRConfig config(p, precision);
      const EisensteinPoly poly = !poly_text.empty() ? parse_eisenstein(poly_text, config)
                                                     : EisensteinPoly::pure(config, static_cast<int>(n));
      const TameContext ctx(d, config);
      std::optional<SeriesMatrix> change;
      if (!basis_text.empty()) {
        const IntMatrix m = parse_int_matrix(basis_text);
        SeriesMatrix s(m.rows(), m.cols(), TruncSeries(config));
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c)
            s(r, c) = TruncSeries::constant(config, static_cast<std::int64_t>(m(r, c) % p));
        change = std::move(s);
      }
      out << to_string(cokernel_d_jumps_oracle(poly, ctx, change)) << "\n";
    } else if (isogeny->parsed()) {
      if (non_invariance) {
        const auto report = jumps_non_invariance_demo();
        out << "left: " << to_string(report.left) << "\n";
        out << "right: " << to_string(report.right) << "\n";
        out << "isogeny=" << (report.connecting.isogeny ? "true" : "false")
            << " cokernel_order=" << to_string(report.connecting.cokernel_order) << "\n";
        out << "differ=" << (report.differ ? "true" : "false") << "\n";
      } else {
        require(demo || !spec_path.empty(), ErrorKind::InvalidArgument, "give --spec, --demo or --non-invariance");
        const LatticeMap f = demo ? klein_four_isogeny() : load_lattice_map(detail::read_spec_file(spec_path));
        const auto result = is_isogeny(f);
        out << "isogeny=" << (result.isogeny ? "true" : "false")
            << " cokernel_order=" << to_string(result.cokernel_order) << "\n";
      }
    } else if (pushout->parsed()) {
      std::optional<GluingSpec> spec;
      if (!spec_path.empty()) {
        spec = load_gluing(detail::read_spec_file(spec_path), precision, degree_bound);
      } else {
        require(!kind_text.empty(), ErrorKind::InvalidArgument, "give --spec or --kind");
        const DVRConfig config(p == 0 ? 2 : p, precision);
        if (kind_text == "two-points") spec = GluingSpec::two_points(config, degree_bound);
        else spec = GluingSpec::wild_point(parse_eisenstein(poly_text.empty() ? "t^2 - pi" : poly_text, config), degree_bound);
      }
      auto bool_text = [](bool b) { return b ? "true" : "false"; };
      if (check_text == "membership") {
        require(!f_text.empty(), ErrorKind::InvalidArgument, "membership needs --f");
        out << bool_text(fiber_membership(parse_slice_poly(f_text, spec->config()), *spec)) << "\n";
      } else if (check_text == "nilpotent") {
        std::optional<SlicePoly> f;
        if (!f_text.empty()) f = parse_slice_poly(f_text, spec->config());
        const auto r = nilpotent_witness(*spec, f);
        auto opt = [&](const std::optional<bool>& b) { return b ? std::string(bool_text(*b)) : std::string("n/a"); };
        out << "member=" << bool_text(r.member) << " not_in_pi=" << opt(r.outside_pi_multiple)
            << " square_in_pi=" << opt(r.square_in_pi_multiple) << "\n";
      } else if (check_text == "tor-defect") {
        out << tor_defect(*spec) << "\n";
      } else if (check_text == "generators") {
        out << bool_text(generator_check(*spec)) << "\n";
      } else {
        BaseChangeTarget target = ResidueField{};
        if (!target_text.empty() && target_text != "k")
          target = TameContext(parse_int64(target_text), spec->config());
        const auto r = base_change_commutes(*spec, target);
        out << "commutes=" << bool_text(r.commutes) << " defect=" << r.defect << "\n";
      }
    } else if (components->parsed()) {
      out << to_string(component_count(load_jacobian(detail::read_spec_file(spec_path)), alpha)) << "\n";
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace jumpkit::cli
