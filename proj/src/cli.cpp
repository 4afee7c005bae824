#include "qsphere/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "qsphere/haar.hpp"
#include "qsphere/levy.hpp"
#include "qsphere/measures.hpp"
#include "qsphere/spectral.hpp"
#include "qsphere/verify.hpp"

namespace qsphere {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string float17(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17Lg", v);
  return buf;
}

FamilyKind parse_family(const std::string& name) {
  if (name == "classical") return FamilyKind::Classical;
  if (name == "half" || name == "half-liberated") return FamilyKind::HalfLiberated;
  if (name == "free") return FamilyKind::Free;
  throw std::invalid_argument("unknown family \"" + name +
                              "\" (expected classical, half, half-liberated, or free)");
}

struct GeneratorFlags {
  std::string family = "classical";
  int N = 3;
  std::string b = "1";
  std::string nu_path;

  void attach(CLI::App* cmd, const char* flag_name) {
    cmd->add_option(flag_name, family, "family: classical, half, half-liberated, free")
        ->required();
    cmd->add_option("--N", N, "ambient dimension (>= 2)")->required();
    cmd->add_option("--b", b, "drift coefficient, rational string");
    cmd->add_option("--nu", nu_path, "path to a jump-measure JSON file");
  }

  LevyMeasure load_measure(std::ostream& err, const Rational& bound) const {
    if (nu_path.empty()) return LevyMeasure{};
    std::ifstream in(nu_path);
    if (!in) throw std::invalid_argument("cannot open measure file \"" + nu_path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    LevyMeasure nu = levy_from_json_text(buf.str());
    validate_levy(nu, bound);
    for (const std::size_t i : negative_density_pieces(nu)) {
      err << "warning: density piece " << i << " samples negative; the measure may fail "
          << "positivity\n";
    }
    return nu;
  }

  Generator generator(std::ostream& err) const {
    const Family fam{parse_family(family), N};
    validate_family(fam);
    return Generator{fam, LevyPair{parse_rational(b), load_measure(err, Rational(1))}};
  }
};

void print_poly_object(std::ostream& out, const std::string& format, ordered_json meta,
                       const Poly& p) {
  if (format == "pretty") {
    out << p.to_string() << "\n";
    return;
  }
  std::vector<std::string> coeffs;
  for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(format_rational(p.coeff(k)));
  if (p.is_zero()) coeffs.push_back("0");
  if (format == "csv") {
    out << "k,coeff\n";
    for (std::size_t k = 0; k < coeffs.size(); ++k) out << k << "," << coeffs[k] << "\n";
    return;
  }
  meta["coeffs"] = coeffs;
  out << meta.dump() << "\n";
}

void print_value_object(std::ostream& out, const std::string& format, ordered_json meta,
                        const Rational& value) {
  if (format == "json") {
    meta["value"] = format_rational(value);
    out << meta.dump() << "\n";
  } else if (format == "csv") {
    out << "value\n" << format_rational(value) << "\n";
  } else {
    out << format_rational(value) << "\n";
  }
}

int run_verify(std::ostream& out) {
  const auto results = run_verification();
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.pass) {
      ++passed;
      out << "PASS " << r.name << "\n";
    } else {
      out << "FAIL " << r.name << (r.detail.empty() ? "" : " — " + r.detail) << "\n";
    }
  }
  out << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> commands = {"poly",     "moments", "haar",       "ebi",
                                                 "phi",      "spectrum", "specdim",   "heat-trace",
                                                 "central",  "verify"};
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && commands.count(args[0]) == 0) {
    err << "unknown command: " << args[0] << "\n";
    return 2;
  }

  CLI::App app{"exact spectra of invariant Markov generators on three spheres"};
  app.require_subcommand(1);

  std::string format = "pretty";
  const auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
  };

  // poly
  auto* poly_cmd = app.add_subcommand("poly", "print the orthonormalized level polynomial q_s");
  std::string poly_family;
  int poly_N = 3, poly_s = 0;
  poly_cmd->add_option("--family", poly_family)->required();
  poly_cmd->add_option("--N", poly_N)->required();
  poly_cmd->add_option("--s", poly_s)->required();
  add_format(poly_cmd);

  // moments
  auto* mom_cmd = app.add_subcommand("moments", "print moments of the coordinate u11");
  std::string mom_family;
  int mom_N = 3, mom_smax = 0;
  mom_cmd->add_option("--family", mom_family)->required();
  mom_cmd->add_option("--N", mom_N)->required();
  mom_cmd->add_option("--smax", mom_smax)->required();
  add_format(mom_cmd);

  // haar / ebi / phi
  std::string word_model, word_text;
  int word_N = 3, ebi_smax = -1;
  auto* haar_cmd = app.add_subcommand("haar", "Haar-state moment of a word in the u_ij");
  auto* ebi_cmd = app.add_subcommand("ebi", "conditional expectation of a word onto the "
                                            "u11 polynomial algebra");
  auto* phi_cmd = app.add_subcommand("phi", "idempotent state value on a word");
  for (auto* cmd : {haar_cmd, ebi_cmd, phi_cmd}) {
    cmd->add_option("--model", word_model, "model: classical, half, half-liberated, free")
        ->required();
    cmd->add_option("--N", word_N)->required();
    cmd->add_option("--word", word_text, "word like \"u11^2 u22^2\" or \"u{1,12}\"")->required();
    add_format(cmd);
  }
  ebi_cmd->add_option("--smax", ebi_smax, "truncation degree (default: word length)");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues and multiplicities s = 0..smax");
  GeneratorFlags spec_flags;
  int spec_smax = 10;
  spec_flags.attach(spec_cmd, "--family");
  spec_cmd->add_option("--smax", spec_smax)->required();
  add_format(spec_cmd);

  // specdim
  auto* dim_cmd = app.add_subcommand("specdim", "spectral dimension of the generator");
  GeneratorFlags dim_flags;
  double dim_z = 0;
  int dim_zeta_smax = 1000;
  dim_flags.attach(dim_cmd, "--family");
  auto* z_opt = dim_cmd->add_option("--z", dim_z, "also print the partial zeta sum at z");
  dim_cmd->add_option("--smax", dim_zeta_smax, "terms in the partial zeta sum");
  add_format(dim_cmd);

  // heat-trace
  auto* heat_cmd = app.add_subcommand("heat-trace", "partial heat trace at time t");
  GeneratorFlags heat_flags;
  std::string heat_t = "1";
  int heat_smax = 20;
  heat_flags.attach(heat_cmd, "--family");
  heat_cmd->add_option("--t", heat_t, "time, rational string (> 0)")->required();
  heat_cmd->add_option("--smax", heat_smax)->required();
  add_format(heat_cmd);

  // central
  auto* cen_cmd = app.add_subcommand("central", "eigenvalues of a central generator on the "
                                                "free sphere");
  int cen_N = 3, cen_s = -1, cen_smax = -1;
  std::string cen_b = "1", cen_nu;
  cen_cmd->add_option("--N", cen_N)->required();
  cen_cmd->add_option("--b", cen_b);
  cen_cmd->add_option("--nu", cen_nu, "path to a jump-measure JSON file (support in [-N, N])");
  cen_cmd->add_option("--s", cen_s);
  cen_cmd->add_option("--smax", cen_smax);
  add_format(cen_cmd);

  // verify
  app.add_subcommand("verify", "run the self-check battery");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (poly_cmd->parsed()) {
      const Family fam{parse_family(poly_family), poly_N};
      validate_family(fam);
      if (poly_s < 0) throw std::invalid_argument("level s must be >= 0");
      ordered_json meta;
      meta["family"] = family_name(fam.kind);
      meta["N"] = fam.N;
      meta["s"] = poly_s;
      print_poly_object(out, format, std::move(meta), family_q(fam, poly_s));
      return 0;
    }

    if (mom_cmd->parsed()) {
      const Family fam{parse_family(mom_family), mom_N};
      validate_family(fam);
      if (mom_smax < 0) throw std::invalid_argument("smax must be >= 0");
      const MomentFunctional mf{fam};
      std::vector<std::string> values;
      for (int k = 0; k <= mom_smax; ++k) values.push_back(format_rational(moment(mf, k)));
      if (format == "json") {
        ordered_json j;
        j["family"] = family_name(fam.kind);
        j["N"] = fam.N;
        j["moments"] = values;
        out << j.dump() << "\n";
      } else if (format == "csv") {
        out << "k,moment\n";
        for (std::size_t k = 0; k < values.size(); ++k) out << k << "," << values[k] << "\n";
      } else {
        for (std::size_t k = 0; k < values.size(); ++k) {
          out << "m_" << k << " = " << values[k] << "\n";
        }
      }
      return 0;
    }

    if (haar_cmd->parsed() || phi_cmd->parsed() || ebi_cmd->parsed()) {
      const FamilyKind kind = parse_family(word_model);
      validate_family(Family{kind, word_N});
      const Word w = parse_word(word_text, kind, word_N);
      ordered_json meta;
      meta["model"] = family_name(kind);
      meta["N"] = word_N;
      meta["word"] = word_text;
      if (haar_cmd->parsed()) {
        print_value_object(out, format, std::move(meta), haar_moment(w));
      } else if (phi_cmd->parsed()) {
        print_value_object(out, format, std::move(meta), phi(w));
      } else {
        const int smax = ebi_smax < 0 ? static_cast<int>(w.letters.size()) : ebi_smax;
        meta["smax"] = smax;
        print_poly_object(out, format, std::move(meta), ebi(w, smax));
      }
      return 0;
    }

    if (spec_cmd->parsed()) {
      const Generator g = spec_flags.generator(err);
      if (spec_smax < 0) throw std::invalid_argument("smax must be >= 0");
      const auto entries = spectrum(g, spec_smax);
      if (format == "json") {
        ordered_json j;
        j["family"] = family_name(g.family.kind);
        j["N"] = g.family.N;
        j["b"] = format_rational(g.pair.b);
        j["nu"] = ordered_json::parse(levy_to_json_text(g.pair.nu));
        ordered_json rows = ordered_json::array();
        for (const auto& e : entries) {
          ordered_json row;
          row["s"] = e.s;
          row["m"] = e.multiplicity.get_str();
          row["lambda"] = format_rational(e.lambda);
          rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
        out << j.dump() << "\n";
      } else if (format == "csv") {
        out << "s,m,lambda_num,lambda_float\n";
        for (const auto& e : entries) {
          out << e.s << "," << e.multiplicity.get_str() << "," << format_rational(e.lambda)
              << "," << float17(to_double(e.lambda)) << "\n";
        }
      } else {
        for (const auto& e : entries) {
          out << "s=" << e.s << " m=" << e.multiplicity.get_str()
              << " lambda=" << format_rational(e.lambda) << "\n";
        }
      }
      return 0;
    }

    if (dim_cmd->parsed()) {
      const Generator g = dim_flags.generator(err);
      const SpectralDimension d = spectral_dimension(g);
      if (!d.warning.empty()) err << "warning: " << d.warning << "\n";
      const bool regressed = d.method == DimensionMethod::NumericRegression;
      const std::string text = !d.finite         ? "infinite"
                               : regressed       ? float17(to_double(d.value))
                                                 : format_rational(d.value);
      double zeta_value = 0;
      if (*z_opt) zeta_value = zeta_partial(g, dim_z, dim_zeta_smax);
      if (format == "json") {
        ordered_json j;
        j["family"] = family_name(g.family.kind);
        j["N"] = g.family.N;
        j["b"] = format_rational(g.pair.b);
        j["finite"] = d.finite;
        j["value"] = d.finite ? ordered_json(text) : ordered_json(nullptr);
        j["method"] = regressed ? "numeric-regression" : "exact-order";
        j["regression_estimate"] = d.regression_estimate;
        j["warning"] = d.warning;
        if (*z_opt) {
          j["zeta"] = ordered_json{{"z", dim_z}, {"smax", dim_zeta_smax}, {"value", zeta_value}};
        }
        out << j.dump() << "\n";
      } else {
        out << text << "\n";
        if (*z_opt) {
          out << "zeta(" << float17(dim_z) << ", smax=" << dim_zeta_smax
              << ") = " << float17(zeta_value) << "\n";
        }
      }
      return 0;
    }

    if (heat_cmd->parsed()) {
      const Generator g = heat_flags.generator(err);
      const Rational t = parse_rational(heat_t);
      const long double value = heat_trace_partial(g, t, heat_smax);
      if (format == "json") {
        ordered_json j;
        j["family"] = family_name(g.family.kind);
        j["N"] = g.family.N;
        j["b"] = format_rational(g.pair.b);
        j["t"] = format_rational(t);
        j["smax"] = heat_smax;
        j["value"] = static_cast<double>(value);
        out << j.dump() << "\n";
      } else if (format == "csv") {
        out << "value\n" << float17(value) << "\n";
      } else {
        out << float17(value) << "\n";
      }
      return 0;
    }

    if (cen_cmd->parsed()) {
      if (cen_N < 2) throw std::invalid_argument("ambient dimension N must be >= 2");
      const Rational b = parse_rational(cen_b);
      LevyMeasure nu;
      if (!cen_nu.empty()) {
        std::ifstream in(cen_nu);
        if (!in) throw std::invalid_argument("cannot open measure file \"" + cen_nu + "\"");
        std::ostringstream buf;
        buf << in.rdbuf();
        nu = levy_from_json_text(buf.str());
        for (const std::size_t i : negative_density_pieces(nu)) {
          err << "warning: density piece " << i << " samples negative; the measure may fail "
              << "positivity\n";
        }
      }
      if (cen_s >= 0 && cen_smax >= 0) {
        throw std::invalid_argument("pass exactly one of --s and --smax");
      }
      if (cen_s >= 0) {
        ordered_json meta;
        meta["N"] = cen_N;
        meta["b"] = format_rational(b);
        meta["s"] = cen_s;
        print_value_object(out, format, std::move(meta), central_eigenvalue(cen_N, b, nu, cen_s));
        return 0;
      }
      if (cen_smax < 0) throw std::invalid_argument("pass exactly one of --s and --smax");
      if (format == "json") {
        ordered_json j;
        j["N"] = cen_N;
        j["b"] = format_rational(b);
        ordered_json rows = ordered_json::array();
        for (int s = 0; s <= cen_smax; ++s) {
          ordered_json row;
          row["s"] = s;
          row["lambda"] = format_rational(central_eigenvalue(cen_N, b, nu, s));
          rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
        out << j.dump() << "\n";
      } else if (format == "csv") {
        out << "s,lambda_num,lambda_float\n";
        for (int s = 0; s <= cen_smax; ++s) {
          const Rational lam = central_eigenvalue(cen_N, b, nu, s);
          out << s << "," << format_rational(lam) << "," << float17(to_double(lam)) << "\n";
        }
      } else {
        for (int s = 0; s <= cen_smax; ++s) {
          out << "s=" << s << " lambda=" << format_rational(central_eigenvalue(cen_N, b, nu, s))
              << "\n";
        }
      }
      return 0;
    }

    return run_verify(out);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace qsphere
