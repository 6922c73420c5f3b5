#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bunkbed {

enum class Verdict { holds, fails, open_no_violation };

std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

struct VerificationReport {
  std::string claim;
  std::string instance;
  nlohmann::json grid = nlohmann::json::object();
  nlohmann::json quantities = nlohmann::json::object();
  Verdict verdict = Verdict::holds;
  std::optional<nlohmann::json> witness;
  std::vector<std::string> skipped;  // per-instance guard errors
  // Arguments that reproduce this report through run_request().
  nlohmann::json request = nlohmann::json::object();

  bool failed() const { return verdict == Verdict::fails; }
  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

inline constexpr int kReportSchema = 1;

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> reports_from_json(const nlohmann::json& j);
std::string summary_table(const std::vector<VerificationReport>& reports);

// Differences between two reports' verdicts and quantities; empty when identical.
std::vector<std::string> diff_reports(const VerificationReport& expected, const VerificationReport& actual);

}  // namespace bunkbed
