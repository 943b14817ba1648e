#pragma once

// Verification rows and their CSV / JSON serialization.
//
// CSV columns (fixed): suite,p,r,instance,lhs,rhs,slack,verdict,note

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sqfield/interval.hpp"

namespace sqfield {

enum class Verdict { pass, fail, skip_hypothesis, report_only };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skip_hypothesis: return "skip-hypothesis";
    case Verdict::report_only: return "report-only";
  }
  return "?";
}

struct Row {
  std::string suite;
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::string instance;
  std::string lhs;
  std::string rhs;
  std::string slack;
  Verdict verdict = Verdict::pass;
  std::string note;
};

struct Summary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t report_only = 0;

  std::size_t total() const { return passed + failed + skipped + report_only; }
};

inline Summary summarize(const std::vector<Row>& rows) {
  Summary s;
  for (const auto& row : rows) {
    switch (row.verdict) {
      case Verdict::pass: ++s.passed; break;
      case Verdict::fail: ++s.failed; break;
      case Verdict::skip_hypothesis: ++s.skipped; break;
      case Verdict::report_only: ++s.report_only; break;
    }
  }
  return s;
}

inline std::string summary_line(const Summary& s) {
  return "passed=" + std::to_string(s.passed) + " failed=" + std::to_string(s.failed) +
         " skipped-hypothesis=" + std::to_string(s.skipped) + " report-only=" + std::to_string(s.report_only);
}

/// lhs / rhs to six significant digits; empty when undefined.
inline std::string slack_string(const Interval& lhs, const Interval& rhs) {
  if (rhs.contains_zero()) return "";
  const long double v = lhs.mid() / rhs.mid();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "suite,p,r,instance,lhs,rhs,slack,verdict,note\n";
  for (const auto& row : rows) {
    using detail::csv_field;
    os << csv_field(row.suite) << ',' << row.p << ',' << row.r << ',' << csv_field(row.instance) << ','
       << csv_field(row.lhs) << ',' << csv_field(row.rhs) << ',' << csv_field(row.slack) << ','
       << to_string(row.verdict) << ',' << csv_field(row.note) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json out;
  out["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    out["rows"].push_back({{"suite", row.suite},
                           {"p", row.p},
                           {"r", row.r},
                           {"instance", row.instance},
                           {"lhs", row.lhs},
                           {"rhs", row.rhs},
                           {"slack", row.slack},
                           {"verdict", to_string(row.verdict)},
                           {"note", row.note}});
  }
  const Summary s = summarize(rows);
  out["summary"] = {{"passed", s.passed},
                    {"failed", s.failed},
                    {"skipped-hypothesis", s.skipped},
                    {"report-only", s.report_only}};
  return out;
}

inline void write_json(std::ostream& os, const std::vector<Row>& rows) { os << to_json(rows).dump(2) << '\n'; }

}  // namespace sqfield
