#include "elroc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "elroc/error.hpp"

namespace elroc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCategory::input, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    f(trim(line), ++line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

ThreeClassSample parse_dataset(std::string_view text, const std::string& source) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<double> classes[3];
  bool first_data_line = true;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    const std::string where = source + ":" + std::to_string(line_no);
    if (first_data_line) {
      first_data_line = false;
      if (line == "class,value") return;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCategory::input, "expected two comma-separated fields", where);
    }
    const auto label = trim(line.substr(0, comma));
    int cls = 0;
    if (label == "1") cls = 1;
    else if (label == "2") cls = 2;
    else if (label == "3") cls = 3;
    else {
      throw Error(ErrorCategory::input,
                  "class label must be 1, 2 or 3, got '" + std::string(label) + "'", where);
    }
    double value = 0.0;
    try {
      value = parse_number(line.substr(comma + 1));
    } catch (const Error& e) {
      throw Error(ErrorCategory::input, e.what(), where);
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCategory::input, "value must be finite", where);
    }
    classes[cls - 1].push_back(value);
  });
  for (int c = 0; c < 3; ++c) {
    if (classes[c].empty()) {
      throw Error(ErrorCategory::input, "class " + std::to_string(c + 1) + " has no rows",
                  source);
    }
  }
  return {ClassSample(std::move(classes[0])), ClassSample(std::move(classes[1])),
          ClassSample(std::move(classes[2]))};
}

ThreeClassSample load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::input, "cannot open dataset", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path.string());
}

DatasetSummary summarize(const ThreeClassSample& x) {
  return {x.class1.size(), x.class2.size(), x.class3.size(), x.means_ordered()};
}

std::string dataset_to_csv(const ThreeClassSample& x) {
  std::string out = "class,value\n";
  const ClassSample* classes[] = {&x.class1, &x.class2, &x.class3};
  for (int c = 0; c < 3; ++c) {
    for (double v : classes[c]->values()) {
      out += std::to_string(c + 1) + "," + format_number(v) + "\n";
    }
  }
  return out;
}

std::string to_string(IntervalStatus s) {
  switch (s) {
    case IntervalStatus::ok: return "ok";
    case IntervalStatus::empty: return "empty";
    case IntervalStatus::point: return "point";
  }
  return "unknown";
}

IntervalStatus interval_status_from_string(const std::string& s) {
  if (s == "ok") return IntervalStatus::ok;
  if (s == "empty") return IntervalStatus::empty;
  if (s == "point") return IntervalStatus::point;
  throw Error(ErrorCategory::input, "unknown interval status '" + s + "'");
}

namespace {

// nlohmann writes non-finite doubles as null; keep them as strings instead.
nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double num_from(const nlohmann::json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

std::vector<std::uint8_t> mask_from_json(const nlohmann::json& j) {
  // Stored as a string of '0'/'1' characters.
  const auto s = j.get<std::string>();
  std::vector<std::uint8_t> m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw Error(ErrorCategory::input, "bad membership mask");
    m[i] = s[i] == '1';
  }
  return m;
}

std::string mask_to_string(const std::vector<std::uint8_t>& m) {
  std::string s(m.size(), '0');
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) s[i] = '1';
  }
  return s;
}

}  // namespace

nlohmann::json to_json(const ScaleEstimate& s) {
  return {{"w_hat", num(s.w_hat)},
          {"B_requested", s.B_requested},
          {"B_accepted", s.B_accepted},
          {"rejected_ordering", s.rejected_ordering},
          {"median_value", num(s.median_value)}};
}

ScaleEstimate scale_estimate_from_json(const nlohmann::json& j) {
  return {num_from(j.at("w_hat")), j.at("B_requested").get<std::size_t>(),
          j.at("B_accepted").get<std::size_t>(), j.at("rejected_ordering").get<std::size_t>(),
          num_from(j.at("median_value"))};
}

nlohmann::json to_json(const ConfidenceInterval& ci) {
  return {{"lower", num(ci.lower)},
          {"upper", num(ci.upper)},
          {"level", num(ci.level)},
          {"method_tag", ci.method_tag},
          {"w_hat", num(ci.w_hat)},
          {"point_estimate", num(ci.point_estimate)},
          {"cutoff", num(ci.cutoff)},
          {"status", to_string(ci.status)},
          {"diagnostic", ci.diagnostic},
          {"scale", to_json(ci.scale)}};
}

ConfidenceInterval confidence_interval_from_json(const nlohmann::json& j) {
  ConfidenceInterval ci;
  ci.lower = num_from(j.at("lower"));
  ci.upper = num_from(j.at("upper"));
  ci.level = num_from(j.at("level"));
  ci.method_tag = j.at("method_tag").get<std::string>();
  ci.w_hat = num_from(j.at("w_hat"));
  ci.point_estimate = num_from(j.at("point_estimate"));
  ci.cutoff = num_from(j.at("cutoff"));
  ci.status = interval_status_from_string(j.at("status").get<std::string>());
  ci.diagnostic = j.at("diagnostic").get<std::string>();
  ci.scale = scale_estimate_from_json(j.at("scale"));
  return ci;
}

nlohmann::json to_json(const Region3D& r) {
  return {{"grid_n", r.grid_n()},
          {"grid", r.grid},
          {"membership", mask_to_string(r.membership)},
          {"member_count", r.member_count()},
          {"threshold_used", num(r.threshold_used)},
          {"level", num(r.level)},
          {"thresholds", {{"t1", num(r.thresholds.t1)}, {"t2", num(r.thresholds.t2)}}},
          {"point_estimate",
           {{"theta1", num(r.point_estimate.theta1)},
            {"theta2", num(r.point_estimate.theta2)},
            {"theta3", num(r.point_estimate.theta3)}}}};
}

Region3D region3d_from_json(const nlohmann::json& j) {
  Region3D r;
  r.grid = j.at("grid").get<std::vector<double>>();
  r.membership = mask_from_json(j.at("membership"));
  r.threshold_used = num_from(j.at("threshold_used"));
  r.level = num_from(j.at("level"));
  r.thresholds = {num_from(j.at("thresholds").at("t1")), num_from(j.at("thresholds").at("t2"))};
  const auto& pe = j.at("point_estimate");
  r.point_estimate = {num_from(pe.at("theta1")), num_from(pe.at("theta2")),
                      num_from(pe.at("theta3"))};
  return r;
}

nlohmann::json to_json(const Region2D& r) {
  return {{"grid_n", r.grid_n()},
          {"grid", r.grid},
          {"membership", mask_to_string(r.membership)},
          {"member_count", r.member_count()},
          {"c_alpha_hat", num(r.c_alpha_hat)},
          {"w_hat", num(r.w_hat)},
          {"level", num(r.level)},
          {"theta1_fixed", num(r.theta1_fixed)},
          {"t2_fixed", num(r.t2_fixed)},
          {"t1_hat", num(r.t1_hat)},
          {"point_estimate", {{"theta2", num(r.theta2_hat)}, {"theta3", num(r.theta3_hat)}}},
          {"scale", to_json(r.scale)}};
}

Region2D region2d_from_json(const nlohmann::json& j) {
  Region2D r;
  r.grid = j.at("grid").get<std::vector<double>>();
  r.membership = mask_from_json(j.at("membership"));
  r.c_alpha_hat = num_from(j.at("c_alpha_hat"));
  r.w_hat = num_from(j.at("w_hat"));
  r.level = num_from(j.at("level"));
  r.theta1_fixed = num_from(j.at("theta1_fixed"));
  r.t2_fixed = num_from(j.at("t2_fixed"));
  r.t1_hat = num_from(j.at("t1_hat"));
  r.theta2_hat = num_from(j.at("point_estimate").at("theta2"));
  r.theta3_hat = num_from(j.at("point_estimate").at("theta3"));
  r.scale = scale_estimate_from_json(j.at("scale"));
  return r;
}

namespace {

void append_meta(std::string& out, const std::string& key, double v) {
  out += "# " + key + "=" + format_number(v) + "\n";
}

std::map<std::string, std::string, std::less<>> read_meta(std::string_view text) {
  std::map<std::string, std::string, std::less<>> meta;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    if (line.size() < 2 || line.front() != '#') return;
    line.remove_prefix(1);
    line = trim(line);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) return;
    meta[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  });
  return meta;
}

double meta_number(const std::map<std::string, std::string, std::less<>>& meta,
                   const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) throw Error(ErrorCategory::input, "CSV metadata lacks '" + key + "'");
  return parse_number(it->second);
}

// Reads the last column of every data row after the header.
std::vector<std::uint8_t> read_member_column(std::string_view text, std::string_view header,
                                             std::size_t expected) {
  std::vector<std::uint8_t> mask;
  mask.reserve(expected);
  bool seen_header = false;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    if (!seen_header) {
      if (line != header) {
        throw Error(ErrorCategory::input, "expected CSV header '" + std::string(header) + "'");
      }
      seen_header = true;
      return;
    }
    const auto comma = line.rfind(',');
    const auto flag = line.substr(comma + 1);
    if (flag != "0" && flag != "1") {
      throw Error(ErrorCategory::input, "bad member flag", "line " + std::to_string(line_no));
    }
    mask.push_back(flag == "1");
  });
  if (mask.size() != expected) {
    throw Error(ErrorCategory::input, "CSV mask has " + std::to_string(mask.size()) +
                                          " rows, expected " + std::to_string(expected));
  }
  return mask;
}

}  // namespace

std::string region3d_to_csv(const Region3D& r, const std::string& preamble) {
  std::string out = preamble;
  out += "# grid_n=" + std::to_string(r.grid_n()) + "\n";
  append_meta(out, "level", r.level);
  append_meta(out, "threshold_used", r.threshold_used);
  append_meta(out, "t1", r.thresholds.t1);
  append_meta(out, "t2", r.thresholds.t2);
  append_meta(out, "theta1_hat", r.point_estimate.theta1);
  append_meta(out, "theta2_hat", r.point_estimate.theta2);
  append_meta(out, "theta3_hat", r.point_estimate.theta3);
  out += "theta1,theta2,theta3,member\n";
  const std::size_t g = r.grid_n();
  std::vector<std::string> labels(g);
  for (std::size_t i = 0; i < g; ++i) labels[i] = format_number(r.grid[i]);
  out.reserve(out.size() + g * g * g * 24);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      for (std::size_t k = 0; k < g; ++k) {
        out += labels[i];
        out += ',';
        out += labels[j];
        out += ',';
        out += labels[k];
        out += r.member(i, j, k) ? ",1\n" : ",0\n";
      }
    }
  }
  return out;
}

Region3D region3d_from_csv(std::string_view text) {
  const auto meta = read_meta(text);
  Region3D r;
  const auto g = static_cast<std::size_t>(meta_number(meta, "grid_n"));
  r.grid = interior_grid(g);
  r.level = meta_number(meta, "level");
  r.threshold_used = meta_number(meta, "threshold_used");
  r.thresholds = {meta_number(meta, "t1"), meta_number(meta, "t2")};
  r.point_estimate = {meta_number(meta, "theta1_hat"), meta_number(meta, "theta2_hat"),
                      meta_number(meta, "theta3_hat")};
  r.membership = read_member_column(text, "theta1,theta2,theta3,member", g * g * g);
  return r;
}

std::string region2d_to_csv(const Region2D& r, const std::string& preamble) {
  std::string out = preamble;
  out += "# grid_n=" + std::to_string(r.grid_n()) + "\n";
  append_meta(out, "level", r.level);
  append_meta(out, "c_alpha_hat", r.c_alpha_hat);
  append_meta(out, "w_hat", r.w_hat);
  append_meta(out, "theta1_fixed", r.theta1_fixed);
  append_meta(out, "t2_fixed", r.t2_fixed);
  append_meta(out, "t1_hat", r.t1_hat);
  append_meta(out, "theta2_hat", r.theta2_hat);
  append_meta(out, "theta3_hat", r.theta3_hat);
  out += "theta2,theta3,member\n";
  const std::size_t g = r.grid_n();
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t k = 0; k < g; ++k) {
      out += format_number(r.grid[i]) + "," + format_number(r.grid[k]) +
             (r.member(i, k) ? ",1\n" : ",0\n");
    }
  }
  return out;
}

Region2D region2d_from_csv(std::string_view text) {
  const auto meta = read_meta(text);
  Region2D r;
  const auto g = static_cast<std::size_t>(meta_number(meta, "grid_n"));
  r.grid = interior_grid(g);
  r.level = meta_number(meta, "level");
  r.c_alpha_hat = meta_number(meta, "c_alpha_hat");
  r.w_hat = meta_number(meta, "w_hat");
  r.theta1_fixed = meta_number(meta, "theta1_fixed");
  r.t2_fixed = meta_number(meta, "t2_fixed");
  r.t1_hat = meta_number(meta, "t1_hat");
  r.theta2_hat = meta_number(meta, "theta2_hat");
  r.theta3_hat = meta_number(meta, "theta3_hat");
  r.membership = read_member_column(text, "theta2,theta3,member", g * g);
  return r;
}

}  // namespace elroc
