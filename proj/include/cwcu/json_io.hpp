#pragma once

#include <string>

#include <json.hpp>

#include "cwcu/models.hpp"
#include "cwcu/montecarlo.hpp"

namespace cwcu {

using Json = nlohmann::ordered_json;

// "cwcu-model-v1" interchange schema: complex entries as [re, im] pairs,
// matrices as row-major nested arrays.

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json linear_model_to_json(const LinearModel& model);
LinearModel linear_model_from_json(const Json& j);

LinearModel load_linear_model(const std::string& path);
void save_linear_model(const std::string& path, const LinearModel& model);

Json bias_report_to_json(const ConditionalBiasReport& report);
Json empirical_performance_to_json(const EmpiricalPerformance& perf);

}  // namespace cwcu
