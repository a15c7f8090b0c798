// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/cli_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hullwalk::io {

using nlohmann::json;

TraceFormat parse_format(const std::string& s) {
  if (s == "jsonl") return TraceFormat::kJsonl;
  if (s == "csv") return TraceFormat::kCsv;
  throw ValidationError("unknown format '" + s + "' (expected jsonl or csv)");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_header(int d) {
  std::string h = "n";
  for (int i = 0; i < d; ++i) h += ",x" + std::to_string(i);
  h += ",theta,proposals";
  return h;
}

namespace {

json record_to_json(const TraceRecord& r) {
  json j;
  j["n"] = r.n;
  json x = json::array();
  for (int i = 0; i < r.x.size(); ++i) x.push_back(r.x[i]);
  j["x"] = std::move(x);
  if (r.theta) j["theta"] = *r.theta;
  j["proposals"] = r.proposals;
  return j;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError("malformed number '" + std::string(s) + "' in trace");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string trace_to_string(const std::vector<TraceRecord>& trace, int d, TraceFormat format) {
  std::string out;
  if (format == TraceFormat::kJsonl) {
    for (const auto& r : trace) {
      out += record_to_json(r).dump();
      out += '\n';
    }
    return out;
  }
  out = csv_header(d) + "\n";
  for (const auto& r : trace) {
    out += std::to_string(r.n);
    for (int i = 0; i < r.x.size(); ++i) out += "," + format_double(r.x[i]);
    out += ",";
    if (r.theta) out += format_double(*r.theta);
    out += "," + std::to_string(r.proposals) + "\n";
  }
  return out;
}

std::vector<TraceRecord> trace_from_string(std::string_view text, TraceFormat format) {
  std::vector<TraceRecord> out;
  std::size_t start = 0;
  bool header = format == TraceFormat::kCsv;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    TraceRecord r;
    if (format == TraceFormat::kJsonl) {
      const json j = json::parse(line);
      r.n = j.at("n").get<std::int64_t>();
      const auto& x = j.at("x");
      r.x = Point(static_cast<Eigen::Index>(x.size()));
      for (std::size_t i = 0; i < x.size(); ++i) r.x[static_cast<Eigen::Index>(i)] = x[i].get<double>();
      if (j.contains("theta")) r.theta = j["theta"].get<double>();
      r.proposals = j.at("proposals").get<int>();
    } else {
      const auto fields = split(line, ',');
      if (fields.size() < 4) throw IoError("CSV trace row has too few fields");
      const auto d = static_cast<Eigen::Index>(fields.size() - 3);
      r.n = static_cast<std::int64_t>(parse_double(fields[0]));
      r.x = Point(d);
      for (Eigen::Index i = 0; i < d; ++i) r.x[i] = parse_double(fields[static_cast<std::size_t>(i) + 1]);
      const auto theta = fields[fields.size() - 2];
      if (!theta.empty()) r.theta = parse_double(theta);
      r.proposals = static_cast<int>(parse_double(fields.back()));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw IoError("failed writing '" + path + "'");
  }
}

void write_trace(const Trajectory& traj, const std::string& path, TraceFormat format) {
  write_text_file(path, trace_to_string(traj.trace, traj.config.d, format));
}

std::vector<TraceRecord> read_trace(const std::string& path, TraceFormat format) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return trace_from_string(ss.str(), format);
}

std::string summary_to_string(const json& doc) { return doc.dump(2) + "\n"; }

void write_summary(const json& doc, const std::string& path) {
  write_text_file(path, summary_to_string(doc));
}

json strip_volatile(json doc) {
  for (const auto& f : kVolatileFields) doc.erase(f);
  return doc;
}

}  // namespace hullwalk::io
