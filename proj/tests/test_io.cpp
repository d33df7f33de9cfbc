#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cwcu/json_io.hpp"
#include "cwcu/validation.hpp"

using namespace cwcu;

TEST_CASE("linear model JSON round trip preserves every entry") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    LinearModel model = random_linear_model(seed, 3, 5, seed % 2 == 0);
    Json j = linear_model_to_json(model);
    CHECK(j["version"] == "cwcu-model-v1");
    LinearModel back = linear_model_from_json(j);
    CHECK(max_abs(back.H - model.H) == 0.0);
    CHECK(max_abs(back.C_xx - model.C_xx) == 0.0);
    CHECK(max_abs(back.C_nn - model.C_nn) == 0.0);
    CHECK((back.mean_x - model.mean_x).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("model parsing rejects malformed input") {
  LinearModel model = random_linear_model(7, 2, 3, false);
  Json good = linear_model_to_json(model);

  Json wrong_version = good;
  wrong_version["version"] = "v0";
  CHECK_THROWS_AS((void)linear_model_from_json(wrong_version), EstimationError);

  Json missing = good;
  missing.erase("C_nn");
  CHECK_THROWS_AS((void)linear_model_from_json(missing), EstimationError);

  Json bad_shape = good;
  bad_shape["n"] = 5;
  CHECK_THROWS_AS((void)linear_model_from_json(bad_shape), EstimationError);

  Json bad_complex = good;
  bad_complex["mean_x"][0] = 1.0;  // not a [re, im] pair
  CHECK_THROWS_AS((void)linear_model_from_json(bad_complex), EstimationError);
}

TEST_CASE("model file save/load") {
  const std::string path = "test_model.json";
  LinearModel model = random_linear_model(11, 2, 4, true);
  save_linear_model(path, model);
  LinearModel back = load_linear_model(path);
  CHECK(max_abs(back.H - model.H) == 0.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS((void)load_linear_model("does_not_exist.json"), EstimationError);

  std::ofstream bad("test_bad.json");
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_AS((void)load_linear_model("test_bad.json"), EstimationError);
  std::remove("test_bad.json");
}
