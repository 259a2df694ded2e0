#pragma once

// Exact invariants of the density engine, shared by the unit suite and the
// acceptance runner. Each check returns human-readable failures.

#include <string>
#include <vector>

#include "lucasdensity/density.hpp"

namespace props {

using namespace lucasdensity;

inline QuadElem elem(long disc, const char* u, const char* v) {
  Rational a(u), b(v);
  a.canonicalize();
  b.canonicalize();
  return qf_make(Integer(disc), a, b);
}

/// One element per routing family: Q = 0, zeta = -1, Q = 1 imaginary,
/// zeta = i, zeta = omega^2.
inline std::vector<QuadElem> fixed_gammas() {
  return {elem(8, "3", "1"), elem(29, "-27/2", "-5/2"), elem(-15, "17/32", "7/32"), elem(-4, "48/50", "7/50"),
          elem(-3, "683/686", "37/686")};
}

inline std::string where(const QuadElem& g, long d) { return to_string(g) + " d=" + std::to_string(d); }

inline std::vector<std::string> check_delta_one(const std::vector<QuadElem>& gs) {
  std::vector<std::string> bad;
  for (const auto& g : gs) {
    if (dispatch(g, 1).delta != 1) bad.push_back(where(g, 1) + ": delta(1) != 1");
  }
  return bad;
}

/// d | d' implies delta(d') <= delta(d).
inline std::vector<std::string> check_monotone(const std::vector<QuadElem>& gs, long dmax) {
  std::vector<std::string> bad;
  for (const auto& g : gs) {
    std::vector<Rational> delta(static_cast<std::size_t>(dmax) + 1);
    for (long d = 1; d <= dmax; ++d) delta[static_cast<std::size_t>(d)] = dispatch(g, d).delta;
    for (long d = 1; d <= dmax; ++d) {
      for (long m = 2 * d; m <= dmax; m += d) {
        if (delta[static_cast<std::size_t>(m)] > delta[static_cast<std::size_t>(d)]) {
          bad.push_back(where(g, m) + ": exceeds delta(" + std::to_string(d) + ")");
        }
      }
    }
  }
  return bad;
}

/// delta = delta+ + delta-, and delta+ = delta- over imaginary fields.
inline std::vector<std::string> check_split(const std::vector<QuadElem>& gs, long dmax) {
  std::vector<std::string> bad;
  for (const auto& g : gs) {
    for (long d = 1; d <= dmax; ++d) {
      const DensityResult r = dispatch(g, d);
      if (r.delta != r.delta_plus + r.delta_minus) bad.push_back(where(g, d) + ": split does not add up");
      if (g.disc_k < 0 && r.delta_plus != r.delta_minus) bad.push_back(where(g, d) + ": delta+ != delta-");
      Rational t = 0;
      for (const auto& s : r.trace) t += s.coefficient * s.value;
      if (t != r.delta) bad.push_back(where(g, d) + ": trace sum differs");
    }
  }
  return bad;
}

/// gamma, its conjugate and its inverse give identical densities.
inline std::vector<std::string> check_conjugation(const std::vector<QuadElem>& gs, long dmax) {
  std::vector<std::string> bad;
  for (const auto& g : gs) {
    for (long d = 1; d <= dmax; ++d) {
      const DensityResult a = dispatch(g, d), b = dispatch(qf_conj(g), d), c = dispatch(qf_inv(g), d);
      if (a.delta != b.delta || a.delta_plus != b.delta_plus || a.delta != c.delta) {
        bad.push_back(where(g, d) + ": conjugate differs");
      }
    }
  }
  return bad;
}

/// delta_g(d) against the -g recombination, componentwise.
inline std::vector<std::string> check_switch(const std::vector<QuadElem>& gs, long dmax) {
  std::vector<std::string> bad;
  for (const auto& g : gs) {
    const QuadElem m = qf_neg(g);
    for (long d = 1; d <= dmax; ++d) {
      const DensityResult r = dispatch(g, d);
      Rational plus, minus;
      if (d % 2 == 0 && d % 4 != 0) {
        const DensityResult a = dispatch(m, 2 * d), b = dispatch(m, d / 2), c = dispatch(m, d);
        plus = a.delta_plus + b.delta_plus - c.delta_plus;
        minus = a.delta_minus + b.delta_minus - c.delta_minus;
      } else {
        const DensityResult c = dispatch(m, d);
        plus = c.delta_plus;
        minus = c.delta_minus;
      }
      if (r.delta_plus != plus || r.delta_minus != minus) bad.push_back(where(g, d) + ": switch identity fails");
    }
  }
  return bad;
}

}  // namespace props
