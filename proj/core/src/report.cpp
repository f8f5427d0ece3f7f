#include "pdwg/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace pdwg {

namespace {

using nlohmann::json;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fixed3(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_value(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

void write_csv(std::ostream& out, const ConvergenceReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.levels) {
    out << r.level << ',' << r.one_over_h << ',' << r.ndof_lambda << ',' << r.ndof_u << ','
        << sci(r.nl0) << ',' << fixed3(r.order_nl0) << ',' << sci(r.nl1) << ','
        << fixed3(r.order_nl1) << ',' << (r.e0 ? sci(*r.e0) : "") << ',' << fixed3(r.order_e0)
        << ',' << sci(r.residual) << ',' << sci(r.seconds) << '\n';
  }
}

void write_json(std::ostream& out, const ConvergenceReport& report) {
  json levels = json::array();
  for (const auto& r : report.levels) {
    levels.push_back({{"level", r.level},
                      {"one_over_h", r.one_over_h},
                      {"ndof_lambda", r.ndof_lambda},
                      {"ndof_u", r.ndof_u},
                      {"nl0", r.nl0},
                      {"order_nl0", optional_json(r.order_nl0)},
                      {"nl1", r.nl1},
                      {"order_nl1", optional_json(r.order_nl1)},
                      {"e0", optional_json(r.e0)},
                      {"order_e0", optional_json(r.order_e0)},
                      {"residual", r.residual},
                      {"seconds", r.seconds}});
  }
  const json doc = {{"case", report.case_id},
                    {"s", report.s},
                    {"gamma", report.gamma},
                    {"flux", report.flux},
                    {"levels", levels}};
  out << doc.dump(2) << '\n';
}

ConvergenceReport parse_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    ConvergenceReport report;
    report.case_id = doc.at("case").get<std::string>();
    report.s = doc.at("s").get<int>();
    report.gamma = doc.at("gamma").get<double>();
    report.flux = doc.at("flux").get<std::string>();
    for (const json& j : doc.at("levels")) {
      LevelResult r;
      r.level = j.at("level").get<int>();
      r.one_over_h = j.at("one_over_h").get<int>();
      r.ndof_lambda = j.at("ndof_lambda").get<int>();
      r.ndof_u = j.at("ndof_u").get<int>();
      r.nl0 = j.at("nl0").get<double>();
      r.order_nl0 = optional_value(j, "order_nl0");
      r.nl1 = j.at("nl1").get<double>();
      r.order_nl1 = optional_value(j, "order_nl1");
      r.e0 = optional_value(j, "e0");
      r.order_e0 = optional_value(j, "order_e0");
      r.residual = j.at("residual").get<double>();
      r.seconds = j.at("seconds").get<double>();
      report.levels.push_back(r);
    }
    return report;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string to_string(const ConvergenceReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    write_csv(out, report);
  } else {
    write_json(out, report);
  }
  return out.str();
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_string(report, format);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace pdwg
