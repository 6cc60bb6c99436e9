#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ptolemy/geodesic_graph.hpp"
#include "ptolemy/metric_space.hpp"

namespace ptolemy {

// Shortest decimal form that parses back to the same double, capped at 17
// significant digits. All file formats use this, so write/read round trips
// are bit-exact.
std::string format_double(double v);

// JSON metric format: {"labels":[...], "matrix":[[...], ...]}
std::string metric_to_json(const FiniteMetricSpace& space);
FiniteMetricSpace metric_from_json(const std::string& text);

// headerless CSV distance matrix; labels default to p0, p1, ...
std::string metric_to_csv(const FiniteMetricSpace& space);
FiniteMetricSpace metric_from_csv(const std::string& text);

// Reads .json or .csv by extension (content sniffing as a fallback).
FiniteMetricSpace read_metric_file(const std::filesystem::path& path);
void write_metric_file(const std::filesystem::path& path, const FiniteMetricSpace& space);

// Graph format: {"vertices":[{"id":0,"x":...,"y":...}], "edges":[{"u":..,"v":..,"len":..}]}
std::string graph_to_json(const GraphSpace& g);
GraphSpace graph_from_json(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// FNV-1a 64-bit content digest used to tag reports with their inputs.
std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

} // namespace ptolemy
