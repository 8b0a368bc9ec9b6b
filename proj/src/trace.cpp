#include "firecover/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace firecover {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("trace output: non-finite value");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

constexpr char kTraceHeader[] = "step,uav_id,x,y,z,fire_seen,u_x,u_y,u_z,physical_neighbors";
constexpr char kMetricsHeader[] =
    "step,min_pairwise_distance,fire_seen_count,boundary_coverage,mean_altitude,max_altitude,"
    "objective";

template <class Fn>
void to_file(const std::string& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    fn(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_traces(std::span<const TraceRecord> records, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const TraceRecord& r : records) {
        out << r.step << ',' << r.uav_id << ',' << format_double(r.x) << ',' << format_double(r.y)
            << ',' << format_double(r.z) << ',' << r.fire_seen << ',' << format_double(r.u_x)
            << ',' << format_double(r.u_y) << ',' << format_double(r.u_z) << ','
            << r.physical_neighbors << '\n';
    }
}

void write_traces(std::span<const TraceRecord> records, const std::string& path) {
    to_file(path, [&](std::ostream& out) { write_traces(records, out); });
}

std::vector<TraceRecord> read_traces(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line != kTraceHeader) throw std::runtime_error("trace file: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TraceRecord r;
        char* end = nullptr;
        const char* p = line.c_str();
        auto next_field = [&](bool last = false) {
            double v = std::strtod(p, &end);
            if (end == p || (*end != ',' && !(last && *end == '\0'))) {
                throw std::runtime_error("trace file: malformed row: " + line);
            }
            p = *end == ',' ? end + 1 : end;
            return v;
        };
        r.step = static_cast<int>(next_field());
        r.uav_id = static_cast<int>(next_field());
        r.x = next_field();
        r.y = next_field();
        r.z = next_field();
        r.fire_seen = static_cast<int>(next_field());
        r.u_x = next_field();
        r.u_y = next_field();
        r.u_z = next_field();
        r.physical_neighbors = static_cast<int>(next_field(true));
        out.push_back(r);
    }
    return out;
}

std::vector<TraceRecord> read_traces_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_traces(in);
}

void write_metrics(std::span<const StepMetrics> metrics, std::ostream& out) {
    out << kMetricsHeader << '\n';
    for (const StepMetrics& m : metrics) {
        out << m.step << ',' << format_double(m.min_pairwise_distance) << ',' << m.fire_seen_count
            << ',' << format_double(m.boundary_coverage) << ',' << format_double(m.mean_altitude)
            << ',' << format_double(m.max_altitude) << ',' << format_double(m.objective) << '\n';
    }
}

void write_metrics(std::span<const StepMetrics> metrics, const std::string& path) {
    to_file(path, [&](std::ostream& out) { write_metrics(metrics, out); });
}

}  // namespace firecover
