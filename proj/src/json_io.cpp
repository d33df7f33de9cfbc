#include "cwcu/json_io.hpp"

#include <fstream>

namespace cwcu {

namespace {

void parse_error(const std::string& what) {
  throw EstimationError("ModelParseError", what);
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) {
      parse_error("ragged matrix rows at row " + std::to_string(r));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("vector must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json linear_model_to_json(const LinearModel& model) {
  Json j;
  j["version"] = "cwcu-model-v1";
  j["n"] = model.n();
  j["m"] = model.m();
  j["H"] = matrix_to_json(model.H);
  j["mean_x"] = vector_to_json(model.mean_x);
  j["C_xx"] = matrix_to_json(model.C_xx);
  j["C_nn"] = matrix_to_json(model.C_nn);
  return j;
}

LinearModel linear_model_from_json(const Json& j) {
  if (j.value("version", "") != "cwcu-model-v1") {
    parse_error("expected version cwcu-model-v1");
  }
  for (const char* key : {"n", "m", "H", "mean_x", "C_xx", "C_nn"}) {
    if (!j.contains(key)) parse_error(std::string("missing field ") + key);
  }
  LinearModel model(matrix_from_json(j["H"]), vector_from_json(j["mean_x"]),
                    matrix_from_json(j["C_xx"]), matrix_from_json(j["C_nn"]));
  if (model.n() != j["n"].get<Eigen::Index>() ||
      model.m() != j["m"].get<Eigen::Index>()) {
    parse_error("declared n/m disagree with matrix shapes");
  }
  return model;
}

LinearModel load_linear_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EstimationError("IoError", "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
  return linear_model_from_json(j);
}

void save_linear_model(const std::string& path, const LinearModel& model) {
  std::ofstream out(path);
  if (!out) throw EstimationError("IoError", "cannot open " + path);
  out << linear_model_to_json(model).dump(2) << "\n";
}

Json bias_report_to_json(const ConditionalBiasReport& report) {
  Json j;
  j["slope"] = complex_to_json(report.slope);
  j["intercept"] = complex_to_json(report.intercept);
  j["residual_variance"] = report.residual_variance;
  j["slope_stderr"] = report.slope_stderr;
  j["intercept_stderr"] = report.intercept_stderr;
  j["n_trials"] = report.n_trials;
  return j;
}

Json empirical_performance_to_json(const EmpiricalPerformance& perf) {
  Json j;
  j["n_trials"] = perf.n_trials;
  j["bmse"] = std::vector<double>(perf.bmse.begin(), perf.bmse.end());
  j["bmse_stderr"] =
      std::vector<double>(perf.bmse_stderr.begin(), perf.bmse_stderr.end());
  j["error_mean"] = vector_to_json(perf.error_mean);
  j["error_cov"] = matrix_to_json(perf.error_cov);
  return j;
}

}  // namespace cwcu
