#include "bunkbed/table2.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

#include "bunkbed/errors.hpp"
#include "bunkbed/glue.hpp"

namespace bunkbed {
namespace {

const std::map<int, std::pair<const char*, const char*>>& published() {
  static const std::map<int, std::pair<const char*, const char*>> t{
      {3, {"70/100", "108/100"}},  {4, {"62/100", "125/100"}},  {5, {"59/100", "132/100"}},
      {6, {"58/100", "136/100"}},  {11, {"56/100", "142/100"}}, {21, {"56/100", "142/100"}},
      {31, {"56/100", "143/100"}}, {41, {"56/100", "143/100"}}, {51, {"56/100", "143/100"}},
      {1001, {"56/100", "143/100"}}};
  return t;
}

Rational ceil_to(const Rational& r, int digits) { return -floor_to(-r, digits); }

// Two-decimal rendering of a root known to lie in (lo, hi); empty if the bracket straddles a grid point.
std::string render(const Rational& lo, const Rational& hi, bool up) {
  Rational a = up ? ceil_to(lo, 2) : floor_to(lo, 2);
  Rational b = up ? ceil_to(hi, 2) : floor_to(hi, 2);
  if (a != b) return "";
  return truncate_decimal(a, 2);
}

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? Rational(a - b) : Rational(b - a); }

}  // namespace

std::optional<std::pair<Rational, Rational>> table2_reference(int n) {
  auto it = published().find(n);
  if (it == published().end()) return std::nullopt;
  return std::make_pair(parse_rational(it->second.first), parse_rational(it->second.second));
}

std::vector<int> table2_published_sizes() {
  std::vector<int> out;
  for (const auto& [n, v] : published()) out.push_back(n);
  return out;
}

Table2Row table2_row(int n, const Rational& p, const Rational& width) {
  Table2Row row;
  row.n = n;
  row.reference = table2_reference(n);
  auto t0 = std::chrono::steady_clock::now();
  CounterexamplePolys polys;
  try {
    polys = counterexample_polynomial(n, p);
  } catch (const GuardError& e) {
    row.skipped = true;
    row.skip_reason = e.what();
    return row;
  }
  row.degree = polys.numerator.degree();
  row.max_boundary = polys.stats.max_boundary;
  row.region = isolate_negative_region(polys.numerator, Rational(0), Rational(10), width);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (row.region.negative.size() != 1) return row;
  const NegativeSpan& s = row.region.negative.front();
  row.low_lo = s.start.low;
  row.low_hi = s.start.high;
  row.high_lo = s.end.low;
  row.high_hi = s.end.high;
  row.floor_low = render(row.low_lo, row.low_hi, false);
  row.floor_high = render(row.high_lo, row.high_hi, false);
  row.inward_low = render(row.low_lo, row.low_hi, true);
  row.inward_high = render(row.high_lo, row.high_hi, false);
  if (row.reference && !row.floor_low.empty() && !row.floor_high.empty()) {
    Rational tol(1, 100);
    row.within_tolerance = abs_diff(floor_to(row.low_lo, 2), row.reference->first) <= tol &&
                           abs_diff(floor_to(row.high_lo, 2), row.reference->second) <= tol;
    row.inward_exact = !row.inward_low.empty() && !row.inward_high.empty() &&
                       ceil_to(row.low_lo, 2) == row.reference->first && floor_to(row.high_lo, 2) == row.reference->second;
  }
  return row;
}

nlohmann::json table2_row_json(const Table2Row& row) {
  nlohmann::json j;
  j["n"] = row.n;
  if (row.skipped) {
    j["skipped"] = row.skip_reason;
    return j;
  }
  j["numerator_degree"] = row.degree;
  j["max_boundary"] = row.max_boundary;
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& s : row.region.negative) {
    spans.push_back({{"start", {to_string(s.start.low), to_string(s.start.high)}},
                     {"end", {to_string(s.end.low), to_string(s.end.high)}}});
  }
  j["negative_spans"] = spans;
  j["floor"] = {row.floor_low, row.floor_high};
  j["inward"] = {row.inward_low, row.inward_high};
  if (row.reference) {
    j["published"] = {truncate_decimal(row.reference->first, 2), truncate_decimal(row.reference->second, 2)};
    j["within_0.01"] = row.within_tolerance;
    j["inward_matches"] = row.inward_exact;
  }
  return j;
}

VerificationReport table2_report(const std::vector<int>& ns, const Rational& p) {
  VerificationReport r;
  r.claim = "table2";
  r.instance = "hollom-gadget-network";
  r.grid = {{"p", to_string(p)}, {"n", ns}, {"domain", {"0", "10"}}};
  r.request = {{"kind", "table2"}, {"n", ns}, {"p", to_string(p)}};
  r.quantities["rows"] = nlohmann::json::array();
  bool ok = true;
  for (int n : ns) {
    Table2Row row = table2_row(n, p);
    r.quantities["rows"].push_back(table2_row_json(row));
    if (row.skipped) {
      r.skipped.push_back("n=" + std::to_string(n) + ": " + row.skip_reason);
      continue;
    }
    bool row_ok = row.region.negative.size() == 1 && (!row.reference || row.within_tolerance);
    if (!row_ok && ok) {
      ok = false;
      r.witness = nlohmann::json{{"n", n}, {"p", to_string(p)}, {"row", table2_row_json(row)}};
    }
  }
  r.verdict = ok ? Verdict::holds : Verdict::fails;
  return r;
}

std::string table2_text(const VerificationReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "n" << std::setw(16) << "floor" << std::setw(16) << "inward" << std::setw(16)
      << "published" << "match\n";
  for (const auto& row : r.quantities.at("rows")) {
    out << std::setw(6) << row.at("n").get<int>();
    if (row.contains("skipped")) {
      out << "skipped: " << row.at("skipped").get<std::string>() << "\n";
      continue;
    }
    auto pair = [](const nlohmann::json& a) {
      return "[" + a[0].get<std::string>() + ", " + a[1].get<std::string>() + "]";
    };
    out << std::setw(16) << pair(row.at("floor")) << std::setw(16) << pair(row.at("inward"));
    if (row.contains("published")) {
      out << std::setw(16) << pair(row.at("published"));
      out << (row.at("within_0.01").get<bool>() ? "yes" : "NO");
      if (row.at("inward_matches").get<bool>()) out << " (inward exact)";
    } else {
      out << std::setw(16) << "-" << "-";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace bunkbed
