#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "firecover/engine.hpp"

namespace firecover {

// Decimal fields carry 9 significant digits; rows end with LF. Non-finite
// values are rejected (std::invalid_argument) before anything is written.
std::string format_double(double v);

void write_traces(std::span<const TraceRecord> records, std::ostream& out);
void write_traces(std::span<const TraceRecord> records, const std::string& path);
std::vector<TraceRecord> read_traces(std::istream& in);
std::vector<TraceRecord> read_traces_file(const std::string& path);

void write_metrics(std::span<const StepMetrics> metrics, std::ostream& out);
void write_metrics(std::span<const StepMetrics> metrics, const std::string& path);

}  // namespace firecover
