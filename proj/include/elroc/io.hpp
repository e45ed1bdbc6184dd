#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "elroc/empirical.hpp"
#include "elroc/regions.hpp"
#include "json.hpp"

namespace elroc {

// Shortest decimal text that parses back to exactly `v` ("inf"/"-inf"/"nan"
// for non-finite values).
std::string format_number(double v);
// Inverse of format_number. Throws Error(input) on malformed text.
double parse_number(std::string_view text);

struct DatasetSummary {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  bool means_ordered = false;
};

// Reads a long-format CSV of `class,value` rows (optional header line
// "class,value", '#' comment lines and blank lines ignored). Throws
// Error(input) naming the line for unparseable rows or labels outside
// {1,2,3}, and naming the class when one is absent.
ThreeClassSample load_dataset(const std::filesystem::path& path);
ThreeClassSample parse_dataset(std::string_view text, const std::string& source = "<input>");
DatasetSummary summarize(const ThreeClassSample& x);

std::string dataset_to_csv(const ThreeClassSample& x);

// JSON mirrors of the result types, field for field.
nlohmann::json to_json(const ScaleEstimate& s);
nlohmann::json to_json(const ConfidenceInterval& ci);
nlohmann::json to_json(const Region3D& r);
nlohmann::json to_json(const Region2D& r);

ScaleEstimate scale_estimate_from_json(const nlohmann::json& j);
ConfidenceInterval confidence_interval_from_json(const nlohmann::json& j);
Region3D region3d_from_json(const nlohmann::json& j);
Region2D region2d_from_json(const nlohmann::json& j);

std::string to_string(IntervalStatus s);
IntervalStatus interval_status_from_string(const std::string& s);

// Long-format CSV masks. Lines starting with '#' carry metadata as
// "# key=value" and are written before the header.
std::string region3d_to_csv(const Region3D& r, const std::string& preamble = {});
std::string region2d_to_csv(const Region2D& r, const std::string& preamble = {});
Region3D region3d_from_csv(std::string_view text);
Region2D region2d_from_csv(std::string_view text);

}  // namespace elroc
