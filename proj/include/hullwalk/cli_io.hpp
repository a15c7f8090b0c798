// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "hullwalk/walk.hpp"

namespace hullwalk::io {

inline constexpr int kSchemaVersion = 1;

/// Summary fields that legitimately differ between identical runs.
inline const std::vector<std::string> kVolatileFields = {"wall_clock_seconds"};

enum class TraceFormat { kJsonl, kCsv };

TraceFormat parse_format(const std::string& s);

class IoError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// CSV header: n,x0,...,x{d-1},theta,proposals
std::string csv_header(int d);

std::string trace_to_string(const std::vector<TraceRecord>& trace, int d, TraceFormat format);
std::vector<TraceRecord> trace_from_string(std::string_view text, TraceFormat format);

/// Write the trace; on failure the partial file is removed and IoError thrown.
void write_trace(const Trajectory& traj, const std::string& path, TraceFormat format);
std::vector<TraceRecord> read_trace(const std::string& path, TraceFormat format);

/// Single structured document (pretty-printed JSON, trailing newline).
void write_summary(const nlohmann::json& doc, const std::string& path);
std::string summary_to_string(const nlohmann::json& doc);

/// Copy of `doc` with the volatile fields removed.
nlohmann::json strip_volatile(nlohmann::json doc);

/// Write `content` to `path`, removing the file if anything fails.
void write_text_file(const std::string& path, const std::string& content);

/// Entry point of the hullwalk command-line tool. Returns the exit code:
/// 0 success, 2 validation/usage error, 3 runtime error.
int dispatch(int argc, const char* const* argv);
int dispatch(const std::vector<std::string>& args);

}  // namespace hullwalk::io
