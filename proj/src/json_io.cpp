#include "lspec/json_io.hpp"

#include <cmath>

namespace lspec {

namespace {

double finite_number(const nlohmann::json& j, const char* where) {
  if (!j.is_number())
    throw JsonFormatError(std::string(where) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw JsonFormatError(std::string(where) + ": entry is not finite");
  return v;
}

}  // namespace

Mat3 parse_matrix_file(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("matrix"))
    throw JsonFormatError("expected an object with a \"matrix\" key");
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != 3)
    throw JsonFormatError("\"matrix\" must be an array of 3 rows");
  Mat3 A;
  for (int i = 0; i < 3; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != 3)
      throw JsonFormatError("each matrix row must have 3 entries");
    for (int k = 0; k < 3; ++k) A.m[i][k] = finite_number(row.at(k), "matrix");
  }
  return A;
}

LinearMap3 parse_operator_file(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("operator"))
    throw JsonFormatError("expected an object with an \"operator\" key");
  if (!j.contains("basis") || !j.at("basis").is_string() ||
      j.at("basis").get<std::string>() != kOperatorBasis)
    throw JsonFormatError(std::string("\"basis\" must be \"") + kOperatorBasis + "\"");
  const auto& rows = j.at("operator");
  if (!rows.is_array() || rows.size() != 9)
    throw JsonFormatError("\"operator\" must be an array of 9 rows");
  LinearMap3 map;
  for (int i = 0; i < 9; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != 9)
      throw JsonFormatError("each operator row must have 9 entries");
    for (int k = 0; k < 9; ++k) map.m[i][k] = finite_number(row.at(k), "operator");
  }
  return map;
}

nlohmann::json matrix_to_json(const Mat3& A) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back({A.m[i][0], A.m[i][1], A.m[i][2]});
  return {{"matrix", rows}};
}

nlohmann::json operator_to_json(const LinearMap3& map) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 9; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 9; ++k) row.push_back(map.m[i][k]);
    rows.push_back(std::move(row));
  }
  return {{"operator", rows}, {"basis", kOperatorBasis}};
}

nlohmann::json spectrum_report(const Spectrum& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : s.points)
    points.push_back({{"value", p.value},
                      {"interior", p.interior},
                      {"boundary", p.boundary}});
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : s.intervals)
    intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
  return {{"points", points},
          {"intervals", intervals},
          {"infinite", !s.intervals.empty()}};
}

nlohmann::json diff_report(const SpectrumDiff& d) {
  return {{"hausdorff", d.hausdorff_distance},
          {"missing", d.missing},
          {"extra", d.extra}};
}

}  // namespace lspec
