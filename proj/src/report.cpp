#include "bunkbed/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bunkbed {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::open_no_violation: return "open-conjecture-no-violation";
  }
  return "?";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::holds;
  if (s == "fails") return Verdict::fails;
  if (s == "open-conjecture-no-violation") return Verdict::open_no_violation;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["claim"] = claim;
  j["instance"] = instance;
  j["grid"] = grid;
  j["quantities"] = quantities;
  j["verdict"] = verdict_name(verdict);
  if (witness) j["witness"] = *witness;
  if (!skipped.empty()) j["skipped"] = skipped;
  j["request"] = request;
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.claim = j.at("claim").get<std::string>();
  r.instance = j.value("instance", "");
  r.grid = j.value("grid", nlohmann::json::object());
  r.quantities = j.value("quantities", nlohmann::json::object());
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  if (j.contains("witness")) r.witness = j.at("witness");
  if (j.contains("skipped")) r.skipped = j.at("skipped").get<std::vector<std::string>>();
  r.request = j.value("request", nlohmann::json::object());
  return r;
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

std::vector<VerificationReport> reports_from_json(const nlohmann::json& j) {
  if (j.value("schema", 0) != kReportSchema) throw std::invalid_argument("unsupported report schema");
  std::vector<VerificationReport> out;
  for (const auto& r : j.at("reports")) out.push_back(VerificationReport::from_json(r));
  return out;
}

std::string summary_table(const std::vector<VerificationReport>& reports) {
  std::size_t wc = 5, wi = 8;
  for (const auto& r : reports) {
    wc = std::max(wc, r.claim.size());
    wi = std::max(wi, r.instance.size());
  }
  wi = std::min<std::size_t>(wi, 40);
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() > w) s = s.substr(0, w - 3) + "...";
    return s + std::string(w - s.size() + 2, ' ');
  };
  out << pad("claim", wc) << pad("instance", wi) << "verdict\n";
  out << std::string(wc + wi + 4 + 28, '-') << "\n";
  for (const auto& r : reports) {
    out << pad(r.claim, wc) << pad(r.instance, wi) << verdict_name(r.verdict);
    if (!r.skipped.empty()) out << " (" << r.skipped.size() << " skipped)";
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> diff_reports(const VerificationReport& expected, const VerificationReport& actual) {
  std::vector<std::string> out;
  if (expected.claim != actual.claim) out.push_back("claim: " + expected.claim + " vs " + actual.claim);
  if (expected.verdict != actual.verdict) {
    out.push_back("verdict: " + verdict_name(expected.verdict) + " vs " + verdict_name(actual.verdict));
  }
  nlohmann::json patch = nlohmann::json::diff(expected.quantities, actual.quantities);
  for (const auto& op : patch) out.push_back("quantities" + op.at("path").get<std::string>() + ": " + op.at("op").get<std::string>());
  if (expected.witness.has_value() != actual.witness.has_value() ||
      (expected.witness && *expected.witness != *actual.witness)) {
    out.push_back("witness differs");
  }
  return out;
}

}  // namespace bunkbed
