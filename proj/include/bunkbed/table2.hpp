#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bunkbed/rational.hpp"
#include "bunkbed/report.hpp"
#include "bunkbed/roots.hpp"

namespace bunkbed {

// Published two-decimal interval for gadget size n, if any.
std::optional<std::pair<Rational, Rational>> table2_reference(int n);
std::vector<int> table2_published_sizes();

struct Table2Row {
  int n = 0;
  bool skipped = false;
  std::string skip_reason;
  int degree = 0;
  int max_boundary = 0;
  double seconds = 0;
  NegativeRegion region;
  // Brackets around the left and right end of the (single) negative span.
  Rational low_lo, low_hi, high_lo, high_hi;
  std::string floor_low, floor_high;    // floor to two decimals
  std::string inward_low, inward_high;  // ceil of left end, floor of right end
  std::optional<std::pair<Rational, Rational>> reference;
  bool within_tolerance = false;  // both ends within 0.01 of the reference
  bool inward_exact = false;      // inward rendering equals the reference
};

Table2Row table2_row(int n, const Rational& p, const Rational& width = Rational(1, 10000));
VerificationReport table2_report(const std::vector<int>& ns, const Rational& p);
nlohmann::json table2_row_json(const Table2Row& row);
// Plain-text table from a report produced by table2_report.
std::string table2_text(const VerificationReport& r);

}  // namespace bunkbed
