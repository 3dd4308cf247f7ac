#pragma once

// Subcommands of the `wgshift` tool. Each command writes its report to `out`,
// diagnostics to `err`, and returns the process exit code.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wgshift/wgshift.hpp"

namespace wgshift::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_differential_failure = 1,
  exit_parse = 2,
  exit_validation = 3,
  exit_wrong_kind = 4,
  exit_not_eigenvalue = 5,
};

enum class Format { text, json };

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t max_n = 8;
  std::vector<FieldContext> fields;
  double zero_rate = 0.25;
};

namespace detail {

/// Thrown inside a command to leave with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

inline InstanceFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{exit_parse, path + ": cannot read file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const InstanceError& e) {
    const int code = e.kind() == InstanceError::Kind::syntax ? exit_parse : exit_validation;
    throw Exit{code, path + ": " + e.what()};
  }
}

inline FieldElement parse_lambda(const std::string& text, const FieldContext& field) {
  try {
    return parse_element(text, field);
  } catch (const Error& e) {
    throw Exit{exit_parse, std::string("--lambda: ") + e.what()};
  }
}

inline std::string node_set_text(const NodeSet& s) {
  std::string out = "{";
  const auto m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + std::to_string(m[i]);
  return out + "}";
}

inline Json node_set_json(const NodeSet& s) { return s.members(); }

template <class Range>
std::string list_text(const Range& values) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : values) {
    std::ostringstream os;
    os << v;
    out += (first ? "" : ", ") + os.str();
    first = false;
  }
  return out + "]";
}

inline Json elements_json(const std::vector<FieldElement>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

inline std::string_view class_name(PointClass c) {
  switch (c) {
    case PointClass::wandering: return "wandering";
    case PointClass::quasi_periodic: return "quasi-periodic";
    case PointClass::periodic: return "periodic";
  }
  return "";
}

inline std::string sparse_text(const SparseVector& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, value] : v) {
    out += (first ? "" : ", ") + std::to_string(a) + ": " + value.to_string();
    first = false;
  }
  return out + "}";
}

inline Json sparse_json(const SparseVector& v) {
  Json out = Json::object();
  for (const auto& [a, value] : v) out[std::to_string(a)] = value.to_string();
  return out;
}

/// Descending-degree rendering such as "x^2 + 4x" or "x^2 - 16".
inline std::string polynomial_text(const Polynomial<FieldElement>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.coefficients().size(); i-- > 0;) {
    const FieldElement& c = p[i];
    if (c.is_zero()) continue;
    bool negative = c.kind() == FieldKind::rational && c.rational() < 0;
    const FieldElement mag = negative ? -c : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (!mag.is_one() || i == 0) out += mag.to_string();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

inline std::string spectrum_text(const SpectrumDescription& s, const FieldContext& field) {
  if (s.all_nonzero()) return s.includes_zero ? "F" : "F∖{0}";
  if (s.empty()) return "empty spectrum";
  return format_values(s.values(field));
}

inline Json spectrum_json(const SpectrumDescription& s, const FieldContext& field) {
  Json out;
  out["includes_zero"] = s.includes_zero;
  if (s.all_nonzero()) {
    out["nonzero_part"] = "all";
    out["values"] = s.includes_zero ? "F" : "F∖{0}";
  } else {
    Json witnesses = Json::array();
    for (const auto& w : s.explicit_values()) {
      Json j;
      j["value"] = w.value.to_string();
      j["cycle"] = w.cycle_id;
      j["period"] = w.period;
      j["cycle_product"] = w.cycle_product.to_string();
      witnesses.push_back(std::move(j));
    }
    out["nonzero_part"] = std::move(witnesses);
    out["values"] = elements_json(s.values(field));
  }
  out["branch"] = std::string(branch_label(s.branch()));
  return out;
}

inline void write(std::ostream& out, Format format, const Json& report, const std::string& text) {
  if (format == Format::json)
    out << report.dump(2) << "\n";
  else
    out << text;
}

inline std::size_t default_window(const CoFinitePresentation& p) {
  return static_cast<std::size_t>(p.boundary()) + 8;
}

// ---------------------------------------------------------------------------

inline int analyze_finite(const WeightedShift& shift, Format format, std::ostream& out) {
  const SpectrumReport rep = spectrum_report(shift);
  std::ostringstream t;
  Json j;
  j["field"] = rep.field;
  j["kind"] = "finite";
  j["n"] = rep.n;
  j["phi"] = shift.graph().table();
  j["weights"] = elements_json(shift.weights());
  t << "field: " << rep.field << "\n"
    << "n: " << rep.n << "\n"
    << "phi: " << list_text(shift.graph().table()) << "\n"
    << "weights: " << list_text(shift.weights()) << "\n";

  Json classes = Json::array();
  t << "classification:\n";
  for (Node a = 0; a < rep.n; ++a) {
    classes.push_back(std::string(class_name(rep.classes[a])));
    t << "  " << a << ": " << class_name(rep.classes[a]) << "\n";
  }
  j["classification"] = std::move(classes);

  Json cycles = Json::array();
  t << "cycles:\n";
  for (const auto& c : rep.cycles) {
    Json cj;
    cj["id"] = c.id;
    cj["nodes"] = c.nodes;
    cj["length"] = c.nodes.size();
    cj["product"] = c.product.to_string();
    cj["avoids_down_zero"] = c.avoids_zero;
    cycles.push_back(std::move(cj));
    t << "  cycle " << c.id << ": " << list_text(c.nodes) << " length " << c.nodes.size()
      << " product " << c.product << (c.avoids_zero ? "" : " (inside ↓Z)") << "\n";
  }
  j["cycles"] = std::move(cycles);

  j["Z"] = node_set_json(rep.zero_set);
  j["down_Z"] = node_set_json(rep.down_zero);
  j["kernel_support"] = node_set_json(rep.kernel_support);
  j["onto"] = rep.onto;
  t << "Z: " << node_set_text(rep.zero_set) << "\n"
    << "↓Z: " << node_set_text(rep.down_zero) << "\n"
    << "kernel support: " << node_set_text(rep.kernel_support) << "\n"
    << "φ(Γ∖Z) = Γ: " << (rep.onto ? "yes" : "no (not onto)") << "\n";

  j["spectrum"] = spectrum_json(rep.spectrum, shift.field());
  t << "branch: " << branch_label(rep.spectrum.branch()) << "\n"
    << "spectrum: " << spectrum_text(rep.spectrum, shift.field()) << "\n";
  if (!rep.spectrum.explicit_values().empty()) {
    t << "witnesses:\n";
    for (const auto& w : rep.spectrum.explicit_values())
      t << "  " << w.value << ": cycle " << w.cycle_id << ", " << w.value << "^" << w.period
        << " = " << w.cycle_product << "\n";
  }

  Json pairs = Json::array();
  if (!rep.eigenpairs.empty()) t << "eigenvectors:\n";
  for (const auto& pair : rep.eigenpairs) {
    const bool ok = verify_eigenpair(shift, pair);
    Json pj;
    pj["lambda"] = pair.lambda.to_string();
    pj["vector"] = sparse_json(pair.vector);
    pj["component"] = pair.witness_component;
    pj["anchor"] = pair.anchor;
    pj["verified"] = ok;
    pairs.push_back(std::move(pj));
    t << "  λ = " << pair.lambda << ": " << sparse_text(pair.vector)
      << (ok ? " verified" : " NOT VERIFIED") << "\n";
  }
  j["eigenvectors"] = std::move(pairs);

  write(out, format, j, t.str());
  return exit_ok;
}

inline Json window_json(const WindowVector& w) {
  Json j;
  j["window"] = w.window;
  j["anchor"] = w.anchor;
  j["values"] = elements_json(w.values);
  return j;
}

inline int analyze_cofinite(const CoFinitePresentation& p, Format format, std::ostream& out) {
  const PresentationSummary summary = classify_presentation(p);
  const SpectrumDescription spec = infinite_spectrum(p);
  std::ostringstream t;
  Json j;
  j["field"] = p.field().name();
  j["kind"] = "cofinite";
  j["B"] = p.boundary();
  j["phi_table"] = p.phi_table();
  j["weight_table"] = elements_json(p.weight_table());
  j["tail_weight"] = p.tail_weight().to_string();
  t << "field: " << p.field().name() << "\n"
    << "cofinite presentation, B = " << p.boundary() << "\n"
    << "phi_table: " << list_text(p.phi_table()) << "\n"
    << "weight_table: " << list_text(p.weight_table()) << "\n"
    << "tail_weight: " << p.tail_weight() << "\n";

  Json classes = Json::array();
  t << "classification:\n";
  for (std::size_t a = 0; a < summary.classes.size(); ++a) {
    classes.push_back(std::string(class_name(summary.classes[a])));
    t << "  " << a << ": " << class_name(summary.classes[a]) << "\n";
  }
  t << "  n >= " << p.boundary() << ": wandering\n";
  j["classification"] = std::move(classes);

  Json cycles = Json::array();
  t << "cycles:" << (summary.cycles.empty() ? " none" : "") << "\n";
  for (std::size_t id = 0; id < summary.cycles.size(); ++id) {
    FieldElement c = p.field().one();
    for (auto a : summary.cycles[id]) c *= p.weight(a);
    Json cj;
    cj["id"] = id;
    cj["nodes"] = summary.cycles[id];
    cj["product"] = c.to_string();
    cycles.push_back(std::move(cj));
    t << "  cycle " << id << ": " << list_text(summary.cycles[id]) << " product " << c << "\n";
  }
  j["cycles"] = std::move(cycles);
  j["wandering_in_down_Z"] = summary.wandering_in_down_zero;
  t << "W ⊆ ↓Z: " << (summary.wandering_in_down_zero ? "yes" : "no") << "\n";

  j["spectrum"] = spectrum_json(spec, p.field());
  t << "branch: " << branch_label(spec.branch()) << "\n"
    << "spectrum = " << spectrum_text(spec, p.field()) << "\n";

  // One window eigenvector per explicit eigenvalue; r = 1 stands in for the
  // whole of F \ {0}.
  std::vector<FieldElement> shown;
  if (spec.includes_zero) shown.push_back(p.field().zero());
  if (spec.all_nonzero()) {
    shown.push_back(p.field().one());
  } else {
    for (const auto& w : spec.explicit_values()) shown.push_back(w.value);
  }
  const std::size_t window = default_window(p);
  Json windows = Json::array();
  if (!shown.empty()) t << "eigenvectors (window " << window << "):\n";
  for (const auto& r : shown) {
    const WindowVector w = eigenvector_window(p, r, window);
    const bool ok = window_verify(p, r, w);
    Json wj = window_json(w);
    wj["lambda"] = r.to_string();
    wj["verified"] = ok;
    windows.push_back(std::move(wj));
    t << "  λ = " << r << ": " << list_text(w.values) << (ok ? " verified" : " NOT VERIFIED")
      << "\n";
  }
  j["eigenvectors"] = std::move(windows);

  write(out, format, j, t.str());
  return exit_ok;
}

}  // namespace detail

inline int guarded(std::ostream& err, auto&& body) {
  try {
    return body();
  } catch (const detail::Exit& e) {
    if (!e.message.empty()) err << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case Errc::not_an_eigenvalue: return exit_not_eigenvalue;
      case Errc::window_too_small:
      case Errc::invalid_argument:
      case Errc::length_mismatch: return exit_validation;
      default: return exit_differential_failure;
    }
  }
}

inline int cmd_analyze(const std::string& path, Format format, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    const InstanceFile inst = detail::load(path);
    return inst.is_finite() ? detail::analyze_finite(inst.finite(), format, out)
                            : detail::analyze_cofinite(inst.cofinite(), format, out);
  });
}

inline int cmd_oracle(const std::string& path, Format format, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    const InstanceFile inst = detail::load(path);
    if (!inst.is_finite())
      throw detail::Exit{exit_wrong_kind, path + ": the oracle needs a finite instance"};
    const WeightedShift& shift = inst.finite();
    const auto matrix = build_matrix(shift);
    const auto poly = char_poly(matrix, shift.field().one());
    const auto oracle = roots_in_field(poly, shift.field());
    const auto theorem = spectrum(shift).values(shift.field());
    const bool pass = oracle == theorem;

    std::ostringstream t;
    Json j;
    Json rows = Json::array();
    t << "field: " << shift.field().name() << "\nmatrix:\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      std::vector<FieldElement> row;
      for (std::size_t c = 0; c < matrix.size(); ++c) row.push_back(matrix(i, c));
      rows.push_back(detail::elements_json(row));
      t << "  " << detail::list_text(row) << "\n";
    }
    j["field"] = shift.field().name();
    j["matrix"] = std::move(rows);
    j["char_poly"] = detail::polynomial_text(poly);
    j["char_poly_coefficients"] = detail::elements_json(poly.coefficients());
    j["oracle_spectrum"] = detail::elements_json(oracle);
    j["theorem_spectrum"] = detail::elements_json(theorem);
    j["result"] = pass ? "PASS" : "FAIL";
    t << "char_poly: " << detail::polynomial_text(poly) << "\n"
      << "oracle spectrum: " << format_values(oracle) << "\n"
      << "theorem spectrum: " << format_values(theorem) << "\n"
      << (pass ? "PASS" : "FAIL") << "\n";
    detail::write(out, format, j, t.str());
    return pass ? exit_ok : exit_differential_failure;
  });
}

inline int cmd_eigvec(const std::string& path, const std::string& lambda_text,
                      std::optional<std::size_t> window, Format format, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    const InstanceFile inst = detail::load(path);
    const FieldElement lambda = detail::parse_lambda(lambda_text, inst.field);
    std::ostringstream t;
    Json j;
    j["lambda"] = lambda.to_string();
    t << "λ = " << lambda << "\n";
    bool ok;
    if (inst.is_finite()) {
      const EigenPair pair = eigenvector(inst.finite(), lambda);
      ok = verify_eigenpair(inst.finite(), pair);
      j["vector"] = detail::sparse_json(pair.vector);
      j["component"] = pair.witness_component;
      j["anchor"] = pair.anchor;
      t << "y = " << detail::sparse_text(pair.vector) << "\n";
    } else {
      const CoFinitePresentation& p = inst.cofinite();
      const WindowVector w = eigenvector_window(p, lambda, window.value_or(detail::default_window(p)));
      ok = window_verify(p, lambda, w);
      j["window"] = w.window;
      j["anchor"] = w.anchor;
      j["values"] = detail::elements_json(w.values);
      t << "window: " << w.window << "\n"
        << "x = " << detail::list_text(w.values) << "\n";
    }
    j["verified"] = ok;
    t << (ok ? "verified" : "NOT VERIFIED") << "\n";
    detail::write(out, format, j, t.str());
    return ok ? exit_ok : exit_differential_failure;
  });
}

inline int cmd_window_verify(const std::string& path, const std::string& lambda_text,
                             std::size_t window, Format format, std::ostream& out,
                             std::ostream& err) {
  return guarded(err, [&] {
    const InstanceFile inst = detail::load(path);
    if (inst.is_finite())
      throw detail::Exit{exit_wrong_kind, path + ": window-verify needs a cofinite instance"};
    const CoFinitePresentation& p = inst.cofinite();
    const FieldElement lambda = detail::parse_lambda(lambda_text, inst.field);
    if (!infinite_spectrum(p).contains(lambda))
      throw Error(Errc::not_an_eigenvalue, lambda.to_string() + " is not an eigenvalue");
    const WindowVector w = !lambda.is_zero() && !p.tail_weight().is_zero()
                               ? wandering_eigenvector_window(p, lambda, window)
                               : eigenvector_window(p, lambda, window);
    const bool ok = window_verify(p, lambda, w);
    const auto residuals = ok ? std::vector<std::uint64_t>{} : window_residuals(p, lambda, w);

    std::ostringstream t;
    Json j;
    j["lambda"] = lambda.to_string();
    j["window"] = window;
    j["result"] = ok ? "PASS" : "FAIL";
    if (!ok) j["residuals"] = residuals;
    t << "λ = " << lambda << ", window " << window << ": " << (ok ? "PASS" : "FAIL") << "\n";
    for (auto a : residuals)
      t << "  residual at " << a << ": w x_φ = " << p.weight(a) * w.values[p.phi(a)]
        << ", λ x = " << lambda * w.values[a] << "\n";
    detail::write(out, format, j, t.str());
    return ok ? exit_ok : exit_differential_failure;
  });
}

inline int cmd_fuzz(const FuzzConfig& config, Format format, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    if (config.max_n < 1 || config.max_n > 12)
      throw detail::Exit{exit_validation, "--max-n must be in [1, 12]"};
    if (!(config.zero_rate >= 0.0 && config.zero_rate <= 1.0))
      throw detail::Exit{exit_validation, "--zero-rate must be in [0, 1]"};

    std::ostringstream t;
    Json j;
    j["seed"] = config.seed;
    j["count"] = config.count;
    j["max_n"] = config.max_n;
    j["zero_rate"] = config.zero_rate;
    Json per_field = Json::array();
    Json failures = Json::array();
    std::size_t total = 0, passed = 0;
    for (std::size_t f = 0; f < config.fields.size(); ++f) {
      const FieldContext& field = config.fields[f];
      std::size_t ok = 0;
      for (std::size_t i = 0; i < config.count; ++i) {
        Rng rng(derive_seed(config.seed, f, i));
        const WeightedShift shift = random_shift(rng, field, config.max_n, config.zero_rate);
        DifferentialResult res;
        try {
          res = differential_check(shift);
        } catch (const Error& e) {
          res.detail = e.what();
        }
        if (res.passed()) {
          ++ok;
          continue;
        }
        const InstanceFile inst{field, shift};
        Json fj;
        fj["field"] = field.descriptor();
        fj["index"] = i;
        fj["detail"] = res.detail;
        fj["instance"] = instance_to_json(inst);
        failures.push_back(fj);
        t << "FAIL " << field.descriptor() << " #" << i << ": " << res.detail << "\n"
          << serialize_instance(inst);
      }
      Json pj;
      pj["field"] = field.descriptor();
      pj["passed"] = ok;
      pj["count"] = config.count;
      per_field.push_back(std::move(pj));
      t << field.descriptor() << ": " << ok << "/" << config.count
        << (ok == config.count ? " PASS" : " FAIL") << "\n";
      total += config.count;
      passed += ok;
    }
    const bool all = passed == total;
    j["fields"] = std::move(per_field);
    j["failures"] = std::move(failures);
    j["passed"] = passed;
    j["total"] = total;
    j["result"] = all ? "PASS" : "FAIL";
    t << passed << "/" << total << (all ? " PASS" : " FAIL") << "\n";
    detail::write(out, format, j, t.str());
    return all ? exit_ok : exit_differential_failure;
  });
}

/// "gfp:7" or "rational".
inline FieldContext parse_field_descriptor(const std::string& text) {
  if (text == "rational") return FieldContext::rationals();
  if (text.rfind("gfp:", 0) == 0) {
    const std::string digits = text.substr(4);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 10)
      throw detail::Exit{exit_parse, "--field: malformed prime in \"" + text + "\""};
    try {
      return FieldContext::prime(std::stoull(digits));
    } catch (const Error& e) {
      throw detail::Exit{exit_validation, std::string("--field: ") + e.what()};
    }
  }
  throw detail::Exit{exit_parse, "--field: expected gfp:P or rational, got \"" + text + "\""};
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact eigenvalues and eigenvectors of weighted generalized shifts", "wgshift"};
  app.require_subcommand(1);
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string path, lambda;
  std::optional<std::size_t> window;
  std::size_t required_window = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "Classification, spectrum and eigenvectors");
  analyze_cmd->add_option("file", path, "Instance file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Characteristic-polynomial cross-check");
  oracle_cmd->add_option("file", path, "Instance file")->required();

  auto* eigvec_cmd = app.add_subcommand("eigvec", "Construct and verify one eigenvector");
  eigvec_cmd->add_option("file", path, "Instance file")->required();
  eigvec_cmd->add_option("--lambda", lambda, "Eigenvalue literal")->required();
  eigvec_cmd->add_option("--window", window, "Window size for cofinite instances");

  auto* window_cmd = app.add_subcommand("window-verify", "Verify a wandering eigenvector window");
  window_cmd->add_option("file", path, "Instance file")->required();
  window_cmd->add_option("--lambda", lambda, "Eigenvalue literal")->required();
  window_cmd->add_option("--window", required_window, "Window size K")->required();

  FuzzConfig fuzz;
  std::vector<std::string> field_names;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded differential testing against the oracle");
  fuzz_cmd->add_option("--seed", fuzz.seed, "PRNG seed")->required();
  fuzz_cmd->add_option("--count", fuzz.count, "Instances per field")->required();
  fuzz_cmd->add_option("--max-n", fuzz.max_n, "Largest index set")->required();
  fuzz_cmd->add_option("--field", field_names, "gfp:P or rational (repeatable)")
      ->required()
      ->delimiter(',');
  fuzz_cmd->add_option("--zero-rate", fuzz.zero_rate, "Probability of a zero weight")
      ->capture_default_str();

  // Subcommands accept --format after their own arguments too.
  for (auto* sub : {analyze_cmd, oracle_cmd, eigvec_cmd, window_cmd, fuzz_cmd})
    sub->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_parse;
  }

  const Format format = format_name == "json" ? Format::json : Format::text;
  if (*analyze_cmd) return cmd_analyze(path, format, out, err);
  if (*oracle_cmd) return cmd_oracle(path, format, out, err);
  if (*eigvec_cmd) return cmd_eigvec(path, lambda, window, format, out, err);
  if (*window_cmd) return cmd_window_verify(path, lambda, required_window, format, out, err);
  return guarded(err, [&] {
    for (const auto& name : field_names) fuzz.fields.push_back(parse_field_descriptor(name));
    return cmd_fuzz(fuzz, format, out, err);
  });
}

}  // namespace wgshift::cli
