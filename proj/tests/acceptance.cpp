// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wgshift_cli.hpp"

namespace wgshift {
namespace {

struct Verdict {
  bool ok = true;
  std::string note;

  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

std::vector<WeightedShift> master_instances(const FieldContext& field, std::size_t field_index) {
  std::vector<WeightedShift> out;
  out.reserve(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(20261015, field_index, i));
    out.push_back(random_shift(rng, field, 8, 0.25));
  }
  return out;
}

std::string where(const FieldContext& f, std::size_t i) {
  return f.descriptor() + " #" + std::to_string(i);
}

Verdict differential(const std::vector<FieldContext>& fields, double& seconds) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto shifts = master_instances(fields[fi], fi);
    for (std::size_t i = 0; i < shifts.size(); ++i)
      if (spectrum(shifts[i]).values(fields[fi]) != oracle_spectrum(shifts[i]))
        v.fail(where(fields[fi], i) + ": spectrum differs from oracle");
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 60.0) v.fail("took " + std::to_string(seconds) + " s");
  return v;
}

Verdict eigenpairs(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto shifts = master_instances(fields[fi], fi);
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      const auto spec = spectrum(shifts[i]);
      for (const auto& w : spec.explicit_values()) {
        try {
          const EigenPair pair = eigenvector(shifts[i], w.value);
          if (!verify_eigenpair(shifts[i], pair) || !oracle_verify_eigenpair(shifts[i], pair))
            v.fail(where(fields[fi], i) + ": eigenpair fails");
          else if (!pair.vector.at(pair.anchor).is_one())
            v.fail(where(fields[fi], i) + ": anchor is not 1");
        } catch (const Error& e) {
          v.fail(where(fields[fi], i) + ": " + e.what());
        }
      }
    }
  }
  return v;
}

Verdict kernel_triangle(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto shifts = master_instances(fields[fi], fi);
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      const WeightedShift& s = shifts[i];
      const bool in_spectrum = spectrum(s).includes_zero;
      const bool not_onto = !image(s.graph(), s.zero_set().complement()).full();
      const bool singular = char_poly(build_matrix(s), s.field().one())[0].is_zero();
      if (in_spectrum != not_onto || not_onto != singular)
        v.fail(where(fields[fi], i) + ": kernel criteria disagree");
    }
  }
  return v;
}

Verdict unit_weights(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const FieldContext& f = fields[fi];
    for (std::size_t i = 0; i < 200; ++i) {
      Rng rng(derive_seed(404, fi, i));
      const FunctionalGraph g = random_graph(rng, static_cast<std::size_t>(rng.between(1, 8)));
      const WeightedShift s(g, f, std::vector<FieldElement>(g.size(), f.one()));
      const auto by_order = unit_shift_spectrum(g, f).values(f);
      if (by_order != spectrum(s).values(f) || by_order != oracle_spectrum(s))
        v.fail(where(f, i) + ": unit-weight spectra disagree");
    }
  }
  const auto gf7 = FieldContext::prime(7);
  if (unit_shift_spectrum(FunctionalGraph({1, 2, 0}), gf7).values(gf7) !=
      test::elems(gf7, {1, 2, 4}))
    v.fail("GF(7) 3-cycle spot value");
  return v;
}

Verdict components(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t i = 0; i < 200; ++i) {
    const FieldContext& f = fields[i % fields.size()];
    Rng rng(derive_seed(505, 0, i));
    const WeightedShift s = random_shift(rng, f, 8, 0.25);
    std::set<FieldElement> merged;
    for (std::size_t c = 0; c < s.analysis().component_count(); ++c)
      for (const auto& r : spectrum(restrict_to_component(s, c).shift).values(f)) merged.insert(r);
    if (spectrum(s).values(f) != std::vector<FieldElement>(merged.begin(), merged.end()))
      v.fail(where(f, i) + ": union of component spectra differs");
  }
  return v;
}

Verdict block(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t i = 0; i < 100; ++i) {
    const FieldContext& f = fields[i % fields.size()];
    Rng rng(derive_seed(606, 0, i));
    if (!block_check(random_shift(rng, f, 6, 0.25), 2)) v.fail(where(f, i) + ": block check");
  }
  return v;
}

Verdict wandering(const std::vector<FieldContext>& fields) {
  Verdict v;
  for (std::size_t i = 0; i < 50; ++i) {
    const FieldContext& f = fields[i % fields.size()];
    Rng rng(derive_seed(707, 0, i));
    const auto p = random_presentation(rng, f, 12, 0.25);
    if (!infinite_spectrum(p).all_nonzero()) v.fail(where(f, i) + ": nonzero part not all of F");
    for (int j = 0; j < 50; ++j) {
      const FieldElement r = random_nonzero(rng, f);
      if (!window_verify(p, r, wandering_eigenvector_window(p, r, 64)))
        v.fail(where(f, i) + ": window for " + r.to_string());
    }
  }

  const auto q = FieldContext::rationals();
  const CoFinitePresentation shift(q, {}, {}, q.one());
  for (const auto& r : {q.from_int(2), q.from_fraction(-3, 5), q.from_int(7)}) {
    const auto x = wandering_eigenvector_window(shift, r, 64);
    for (std::size_t n = 0; n < 64; ++n)
      if (x.values[n] != pow(r, static_cast<long long>(n))) v.fail("x_n != r^n");
  }
  const auto spec = infinite_spectrum(shift);
  if (!(spec.all_nonzero() && spec.includes_zero && branch_label(spec.branch()) == "W⊄↓Z, Γ≠φ(Γ∖Z)"))
    v.fail("unilateral shift spectrum");

  const auto path = std::filesystem::temp_directory_path() / "wgshift_acceptance_shift.json";
  std::ofstream(path) << serialize_instance({q, shift});
  std::ostringstream out, err;
  const int code = cli::cmd_analyze(path.string(), cli::Format::text, out, err);
  std::filesystem::remove(path);
  if (code != 0 || out.str().find("branch: W⊄↓Z, Γ≠φ(Γ∖Z)\n") == std::string::npos ||
      out.str().find("spectrum = F\n") == std::string::npos)
    v.fail("analyze report for the unilateral shift");
  return v;
}

Verdict degenerate(const std::vector<FieldContext>& fields) {
  Verdict v;
  std::size_t not_onto = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const FieldContext& f = fields[i % fields.size()];
    Rng rng(derive_seed(808, 0, i));
    const auto n = static_cast<std::size_t>(rng.between(1, 8));
    const FunctionalGraph g = random_graph(rng, n);
    std::vector<FieldElement> w;
    for (std::size_t a = 0; a < n; ++a) w.push_back(random_weight(rng, f, 0.25));
    for (const auto& c : analyze(g).cycles) w[c.nodes[rng.below(c.length())]] = f.zero();
    const WeightedShift s(g, f, w);
    const auto spec = spectrum(s);
    if (!spec.explicit_values().empty()) v.fail(where(f, i) + ": nonzero eigenvalue");
    if (zero_in_spectrum(s)) {
      ++not_onto;
      if (spec.values(f) != std::vector<FieldElement>{f.zero()}) v.fail(where(f, i) + ": not {0}");
    }
    if (oracle_spectrum(s) != spec.values(f)) v.fail(where(f, i) + ": oracle disagrees");
    std::vector<FieldElement> x_n(n, f.zero());
    x_n.push_back(f.one());
    if (char_poly(build_matrix(s), f.one()) != Polynomial<FieldElement>(x_n))
      v.fail(where(f, i) + ": char_poly is not x^n");
  }
  if (not_onto == 0) v.fail("no instance exercised the {0} case");
  return v;
}

Verdict determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wgshift_acceptance";
  fs::create_directories(dir);
  const auto q = FieldContext::rationals();
  const auto gf7 = FieldContext::prime(7);
  auto save = [&](const std::string& name, const InstanceFile& inst) {
    const fs::path p = dir / name;
    std::ofstream(p) << serialize_instance(inst);
    return p.string();
  };
  const std::string cyc = save("cycle.json", {gf7, test::make_shift(gf7, {1, 2, 0}, {3, 1, 2})});
  const std::string swap = save("swap.json", {q, test::make_shift(q, {1, 0, 0}, {2, 8, 1})});
  const std::string jump = save("jump.json", {q, CoFinitePresentation(q, {3}, {q.from_int(2)}, q.one())});

  using Cmd = std::function<int(cli::Format, std::ostream&, std::ostream&)>;
  std::vector<std::pair<std::string, Cmd>> commands = {
      {"analyze finite", [&](auto f, auto& o, auto& e) { return cli::cmd_analyze(cyc, f, o, e); }},
      {"analyze cofinite", [&](auto f, auto& o, auto& e) { return cli::cmd_analyze(jump, f, o, e); }},
      {"oracle", [&](auto f, auto& o, auto& e) { return cli::cmd_oracle(swap, f, o, e); }},
      {"eigvec", [&](auto f, auto& o, auto& e) { return cli::cmd_eigvec(swap, "-4", {}, f, o, e); }},
      {"eigvec window",
       [&](auto f, auto& o, auto& e) { return cli::cmd_eigvec(jump, "3", 12, f, o, e); }},
      {"window-verify",
       [&](auto f, auto& o, auto& e) { return cli::cmd_window_verify(jump, "1/2", 20, f, o, e); }},
      {"fuzz",
       [&](auto f, auto& o, auto& e) {
         return cli::cmd_fuzz({5, 100, 8, {gf7, q}, 0.25}, f, o, e);
       }},
  };
  for (const auto& [name, cmd] : commands) {
    for (const auto format : {cli::Format::text, cli::Format::json}) {
      std::ostringstream o1, e1, o2, e2;
      const int c1 = cmd(format, o1, e1);
      const int c2 = cmd(format, o2, e2);
      if (c1 != 0 || c2 != 0) v.fail(name + ": nonzero exit");
      if (o1.str() != o2.str() || e1.str() != e2.str()) v.fail(name + ": output differs");
      if (o1.str().empty()) v.fail(name + ": no output");
    }
  }
  fs::remove_all(dir);
  return v;
}

}  // namespace
}  // namespace wgshift

int main() {
  using namespace wgshift;
  const auto fields = test::small_fields();
  bool all = true;
  auto report = [&](int id, const std::string& name, auto&& check) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << id << " (" << name << "): " << (v.ok ? "PASS" : "FAIL");
    if (!v.note.empty()) std::cout << " - " << v.note;
    std::cout << "\n";
    all = all && v.ok;
  };

  double seconds = 0;
  report(1, "spectrum equals oracle, 6 fields x 1000",
         [&] { return differential(fields, seconds); });
  std::cout << "  criterion 1 runtime: " << std::fixed << std::setprecision(2) << seconds << " s\n";
  report(2, "eigenpairs verify with anchor 1", [&] { return eigenpairs(fields); });
  report(3, "zero eigenvalue criteria agree", [&] { return kernel_triangle(fields); });
  report(4, "unit weights via element orders", [&] { return unit_weights(fields); });
  report(5, "component decomposition", [&] { return components(fields); });
  report(6, "block check with d = 2", [&] { return block(fields); });
  report(7, "wandering windows at K = 64", [&] { return wandering(fields); });
  report(8, "degenerate instances", [&] { return degenerate(fields); });
  report(9, "CLI determinism", [&] { return determinism(); });
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}
