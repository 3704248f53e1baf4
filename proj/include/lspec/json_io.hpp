#pragma once

#include <string>

#include "lspec/oracle.hpp"
#include "lspec/preserver.hpp"
#include "lspec/spectrum.hpp"

#include <json.hpp>

namespace lspec {

inline constexpr const char* kOperatorBasis = "colmajor-eij";

struct JsonFormatError : std::runtime_error {
  explicit JsonFormatError(const std::string& what) : std::runtime_error(what) {}
};

// {"matrix": [[..3..],[..3..],[..3..]]}, finite entries only
Mat3 parse_matrix_file(const nlohmann::json& j);

// {"operator": [[..9..] x 9], "basis": "colmajor-eij"}
LinearMap3 parse_operator_file(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Mat3& A);
nlohmann::json operator_to_json(const LinearMap3& map);

// {"points": [{"value", "interior", "boundary"}...],
//  "intervals": [{"lo", "hi"}...], "infinite": bool}
nlohmann::json spectrum_report(const Spectrum& s);
nlohmann::json diff_report(const SpectrumDiff& d);

}  // namespace lspec
