#pragma once

// Published densities for the 18 reference rows, plus their printed
// intermediate columns. Values are strings so the ledger stays literal.

#include <optional>
#include <string>
#include <vector>

#include "lucasdensity/quadfield.hpp"

namespace lucasdensity::cli {

struct TableRow {
  int table;                  // 1: generic field, 2: Q(i), 3: Q(sqrt(-3))
  std::string u, v;           // gamma = u + v sqrt(radicand)
  long radicand;
  unsigned long h;
  std::string zeta;           // root_name spelling
  std::string root_u, root_v;  // printed gamma~^(1/h2), or ^(1/h6) for table 3
  std::optional<int> q_flag;   // table 1 only
  std::optional<long> conductor;
  unsigned long d;
  std::string expected;  // ledger value
  std::string printed;   // as typeset; differs from expected on one row
  std::string num;       // truncated decimal column
  std::string exp;       // empirical column at 10^7
  std::string note;

  SequenceContext context() const;
  QuadElem printed_root() const;
  std::string gamma_label() const;
};

const std::vector<TableRow>& table_ledger();

/// Fibonacci anchor: (a1, a2) = (1, -1), d = 2.
inline constexpr const char* kFibonacciDensity = "2/3";

}  // namespace lucasdensity::cli
