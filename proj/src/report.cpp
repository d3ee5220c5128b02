#include "gsamp/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gsamp/error.hpp"

namespace gsamp {

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  raise(ErrorCode::ParseError, "unknown report format '" + text + "' (csv|json)");
}

namespace {

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), ErrorCode::ParseError, "bad number '" + s + "'");
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
      else if (c == '"') quoted = false;
      else out.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  require(!quoted, ErrorCode::ParseError, "unterminated quote in CSV line");
  return out;
}

std::vector<std::string> fields(const ReportRow& r) {
  return {r.prior, r.mode, r.strategy, r.sampling_filter, r.generator, number(r.noise),
          r.trial, number(r.mse_db), number(r.mean_mse_db)};
}

ReportRow from_fields(const std::vector<std::string>& f) {
  require(f.size() == report_columns().size(), ErrorCode::ParseError, "wrong column count in report row");
  return {f[0], f[1], f[2], f[3], f[4], parse_number(f[5]), f[6], parse_number(f[7]), parse_number(f[8])};
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, ReportFormat format,
                  const ReportMetadata& metadata) {
  const auto& cols = report_columns();
  if (format == ReportFormat::Csv) {
    for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : rows) {
      const auto f = fields(r);
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
      out << '\n';
    }
  } else {
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) j["metadata"][k] = v;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["prior"] = r.prior;
      o["mode"] = r.mode;
      o["strategy"] = r.strategy;
      o["sampling_filter"] = r.sampling_filter;
      o["generator"] = r.generator;
      o["noise"] = r.noise;
      o["trial"] = r.trial;
      o["mse_db"] = r.mse_db;
      o["mean_mse_db"] = r.mean_mse_db;
      arr.push_back(std::move(o));
    }
    j["rows"] = std::move(arr);
    out << j.dump(1) << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::IoFailure, "report write failed");
}

std::vector<ReportRow> parse_report(std::istream& in, ReportFormat format) {
  std::vector<ReportRow> rows;
  if (format == ReportFormat::Csv) {
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (!header) {
        require(split_csv(line) == report_columns(), ErrorCode::ParseError, "unexpected report header");
        header = true;
        continue;
      }
      rows.push_back(from_fields(split_csv(line)));
    }
    require(header, ErrorCode::ParseError, "report has no header");
    return rows;
  }
  try {
    const auto j = nlohmann::json::parse(in);
    for (const auto& o : j.at("rows")) {
      rows.push_back({o.at("prior"), o.at("mode"), o.at("strategy"), o.at("sampling_filter"), o.at("generator"),
                      o.at("noise"), o.at("trial"), o.at("mse_db"), o.at("mean_mse_db")});
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("report JSON: ") + e.what());
  }
  return rows;
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path,
                 const ReportMetadata& metadata) {
  if (path == "-") {
    write_report(std::cout, rows, format, metadata);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  write_report(out, rows, format, metadata);
  out.close();
  require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot write '" + path + "'");
}

}  // namespace gsamp
