#pragma once

// Closed-form spectrum vs. characteristic-polynomial spectrum, plus exact
// verification of every constructed eigenvector.

#include <string>
#include <vector>

#include "wgshift/oracle.hpp"
#include "wgshift/shift.hpp"

namespace wgshift {

struct DifferentialResult {
  std::vector<FieldElement> theorem;
  std::vector<FieldElement> oracle;
  bool spectra_match = false;
  bool eigenpairs_ok = false;
  /// Empty when both checks pass.
  std::string detail;

  bool passed() const noexcept { return spectra_match && eigenpairs_ok; }
};

inline std::string format_values(const std::vector<FieldElement>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i].to_string();
  return out + "}";
}

inline DifferentialResult differential_check(const WeightedShift& shift) {
  DifferentialResult res;
  res.theorem = spectrum(shift).values(shift.field());
  res.oracle = oracle_spectrum(shift);
  res.spectra_match = res.theorem == res.oracle;
  if (!res.spectra_match)
    res.detail = "theorem " + format_values(res.theorem) + " != oracle " + format_values(res.oracle);

  res.eigenpairs_ok = true;
  for (const FieldElement& r : res.theorem) {
    std::string problem;
    try {
      const EigenPair pair = eigenvector(shift, r);
      if (!oracle_verify_eigenpair(shift, pair))
        problem = "fails A y = lambda y";
      else if (!r.is_zero() && !pair.vector.at(pair.anchor).is_one())
        problem = "anchor coordinate is not 1";
    } catch (const Error& e) {
      problem = e.what();
    }
    if (!problem.empty()) {
      res.eigenpairs_ok = false;
      res.detail += (res.detail.empty() ? "" : "; ") + std::string("eigenvector for ") +
                    r.to_string() + ": " + problem;
    }
  }
  return res;
}

}  // namespace wgshift
