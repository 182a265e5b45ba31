#include "bipois/report.hpp"

#include <cmath>
#include <cstdio>

namespace bipois {

namespace {

void write_escaped(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      default: os << c;
    }
  }
  os << '"';
}

void write_array(std::ostream& os, const std::vector<double>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format_number(v[i]);
  }
  os << ']';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_reports_json(std::ostream& os,
                        std::span<const VerificationReport> reports) {
  os << "[\n";
  bool first = true;
  for (const auto& r : reports) {
    if (!first) os << ",\n";
    first = false;
    os << "  {\"claim_id\": ";
    write_escaped(os, r.claim_id);
    os << ", \"method\": ";
    write_escaped(os, r.method);
    os << ", \"computed\": ";
    write_array(os, r.computed);
    os << ", \"reference\": ";
    write_array(os, r.reference);
    os << ", \"tolerance\": " << format_number(r.tolerance);
    os << ", \"pass\": " << (r.pass ? "true" : "false");
    os << ", \"seed\": " << r.seed;
    os << ", \"diagnostics\": {";
    for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
      if (i) os << ", ";
      write_escaped(os, r.diagnostics[i].first);
      os << ": " << format_number(r.diagnostics[i].second);
    }
    os << "}}";
  }
  os << "\n]\n";
}

}  // namespace bipois
