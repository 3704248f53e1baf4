#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lspec/json_io.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lspec::JsonFormatError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw lspec::JsonFormatError(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void emit(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz spectrum solver and preserver checker for 3x3 matrices"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand

  double tol = 1e-8;
  std::size_t theta_steps = 100000;
  std::uint64_t seed = 0;
  std::size_t count = 60;
  std::string input_path, operator_path;

  app.add_option("--tol", tol, "numerical tolerance")->capture_default_str();
  app.add_option("--theta-steps", theta_steps, "oracle sweep resolution")
      ->capture_default_str();
  app.add_option("--seed", seed, "battery seed")->capture_default_str();
  app.add_option("--count", count, "battery size")->capture_default_str();
  app.add_option("--input", input_path, "matrix JSON file");
  app.add_option("--operator", operator_path, "operator JSON file");

  auto* cmd_spectrum = app.add_subcommand("spectrum", "exact Lorentz spectrum");
  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force Lorentz spectrum");
  auto* cmd_compare = app.add_subcommand("compare", "solver vs oracle");
  auto* cmd_check = app.add_subcommand("preserver-check", "battery verdict");
  auto* cmd_recover = app.add_subcommand("recover-q", "extract Q from an operator");
  auto* cmd_battery = app.add_subcommand("battery", "list battery matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    auto need_matrix = [&]() {
      if (input_path.empty()) throw lspec::JsonFormatError("--input is required");
      return lspec::parse_matrix_file(load_json(input_path));
    };
    auto need_operator = [&]() {
      if (operator_path.empty())
        throw lspec::JsonFormatError("--operator is required");
      return lspec::parse_operator_file(load_json(operator_path));
    };

    if (cmd_spectrum->parsed()) {
      emit(lspec::spectrum_report(lspec::full_spectrum(need_matrix(), tol)));
      return 0;
    }
    if (cmd_oracle->parsed()) {
      lspec::OracleConfig cfg;
      cfg.theta_steps = theta_steps;
      emit(lspec::spectrum_report(lspec::oracle_spectrum(need_matrix(), cfg)));
      return 0;
    }
    if (cmd_compare->parsed()) {
      const lspec::Mat3 A = need_matrix();
      lspec::OracleConfig cfg;
      cfg.theta_steps = theta_steps;
      const lspec::Spectrum solver = lspec::full_spectrum(A, tol);
      const lspec::Spectrum oracle = lspec::oracle_spectrum(A, cfg);
      const lspec::SpectrumDiff diff = lspec::spectra_equal(solver, oracle, tol);
      emit({{"solver", lspec::spectrum_report(solver)},
            {"oracle", lspec::spectrum_report(oracle)},
            {"diff", lspec::diff_report(diff)}});
      return diff.hausdorff_distance <= tol ? 0 : 1;
    }
    if (cmd_check->parsed()) {
      const auto verdict =
          lspec::check_preserver(need_operator(), seed, count, tol);
      nlohmann::json out{{"is_preserver", verdict.is_preserver}};
      if (verdict.witness) out["witness"] = lspec::matrix_to_json(*verdict.witness);
      if (verdict.witness_spectrum)
        out["witness_spectrum"] = lspec::spectrum_report(*verdict.witness_spectrum);
      if (verdict.image_spectrum)
        out["image_spectrum"] = lspec::spectrum_report(*verdict.image_spectrum);
      if (verdict.q_recovered) {
        const auto& q = *verdict.q_recovered;
        out["q"] = {{q.m[0][0], q.m[0][1]}, {q.m[1][0], q.m[1][1]}};
      }
      emit(out);
      return verdict.is_preserver ? 0 : 1;
    }
    if (cmd_recover->parsed()) {
      try {
        const lspec::Mat2 q = lspec::recover_q(need_operator(), tol);
        emit({{"q", {{q.m[0][0], q.m[0][1]}, {q.m[1][0], q.m[1][1]}}}});
        return 0;
      } catch (const lspec::NotCanonical& e) {
        emit({{"error", e.what()}});
        return 1;
      }
    }
    if (cmd_battery->parsed()) {
      nlohmann::json mats = nlohmann::json::array();
      for (const auto& A : lspec::battery_gen(seed, count))
        mats.push_back(lspec::matrix_to_json(A)["matrix"]);
      emit({{"matrices", mats}});
      return 0;
    }
  } catch (const lspec::JsonFormatError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
