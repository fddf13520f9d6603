#include "gcred/report.hpp"

#include <iomanip>
#include <sstream>

namespace gcred {

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks.checks())
    if (!c.passed) ++n;
  return n;
}

const std::vector<std::pair<std::string, std::string>>& conventions() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"ce_differential", "d alpha(X, Y) = -alpha([X, Y]); (f1^f2)(e1, e2) = 1"},
      {"pairing", "<X + xi, Y + eta> = 1/2 (xi(Y) + eta(X))"},
      {"bracket", "[[X + xi, Y + eta]] = [X, Y] + L_X eta - i_Y d xi + i_Y i_X H"},
      {"b_transform", "X + xi -> X + xi - i_X B, H -> H + dB"},
      {"kahler_form", "omega(X, Y) = g(IX, Y)"},
      {"dc", "d^c = i(delbar - del) = dT - Td, T = i(p - q) on (p, q)-forms"},
      {"generalized_metric", "V+ = {X + g(X) + i_X b}, V- = {X - g(X) + i_X b}"},
  };
  return table;
}

namespace {

std::string verdict(const Report& r) { return r.passed() ? "pass" : "fail"; }

void text_value(std::ostringstream& out, const std::string& key, const Json& v) {
  if (v.is_array()) {
    out << "  " << key << ":\n";
    for (const auto& item : v) out << "    " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
  } else {
    out << "  " << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "gcred " << report.command << " " << report.file << "\n";
  out << "conventions:\n";
  for (const auto& [k, v] : conventions()) out << "  " << k << ": " << v << "\n";
  out << "checks:\n";
  for (const auto& c : report.checks.checks()) {
    out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  if (!report.derived.empty()) {
    out << "derived:\n";
    for (const auto& [k, v] : report.derived.items()) text_value(out, k, v);
  }
  out << "verdict: " << verdict(report) << " (" << report.checks.checks().size() << " checks, " << report.failures()
      << " failed)\n";
  if (report.elapsed_ms) out << "elapsed: " << std::fixed << std::setprecision(1) << *report.elapsed_ms << " ms\n";
  return out.str();
}

std::string render_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["file"] = report.file;
  Json conv = Json::object();
  for (const auto& [k, v] : conventions()) conv[k] = v;
  j["conventions"] = conv;
  Json checks = Json::array();
  for (const auto& c : report.checks.checks()) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["derived"] = report.derived;
  j["verdict"] = verdict(report);
  j["failed"] = report.failures();
  return j.dump(2) + "\n";
}

}  // namespace gcred
