#include "doctest.h"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "coex/propagation.hpp"
#include "coex/units.hpp"

using namespace coex;

TEST_CASE("coastal path loss at reference distances") {
  CoastalPathModel m;
  CHECK(linear_to_db(coastal_path_gain(m, 1000.0)) ==
        doctest::Approx(-94.97).epsilon(0.001));
  CHECK(coastal_path_gain(m, 1000.0) == doctest::Approx(3.19e-10).epsilon(0.01));
  // each decade of distance costs 39.7 dB
  double drop = linear_to_db(coastal_path_gain(m, 1000.0)) -
                linear_to_db(coastal_path_gain(m, 10000.0));
  CHECK(drop == doctest::Approx(39.7).epsilon(1e-9));
}

TEST_CASE("coastal gain stays below unity past 10 m") {
  CoastalPathModel m;
  for (double d : {10.0, 50.0, 1000.0, 300000.0})
    CHECK(coastal_path_gain(m, d) < 1.0);
  CHECK_THROWS_AS(coastal_path_gain(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(coastal_path_gain(m, -5.0), std::invalid_argument);
}

TEST_CASE("coastal gain is passive at point-blank range") {
  CoastalPathModel m;
  // raw power law crosses unity near 4 m; everything closer pins to 0 dB
  double knee = std::pow(m.coefficient, 1.0 / m.exponent);
  CHECK(coastal_path_gain(m, 0.001) == 1.0);
  CHECK(coastal_path_gain(m, knee * 0.999) == 1.0);
  CHECK(coastal_path_gain(m, knee * 1.001) < 1.0);
  CHECK(coastal_path_gain(m, knee * 1.001) == doctest::Approx(1.0).epsilon(0.01));
  // monotone non-increasing across the knee
  double prev = coastal_path_gain(m, 0.5);
  for (double d = 1.0; d < 64.0; d *= 2.0) {
    double g = coastal_path_gain(m, d);
    CHECK(g <= prev);
    prev = g;
  }
}

TEST_CASE("street model at reference distances") {
  UmiPathModel m;
  CHECK(umi_path_loss_db(m, 100.0) == doctest::Approx(110.25).epsilon(0.0001));
  CHECK(umi_path_loss_db(m, 10.0) == doctest::Approx(73.55).epsilon(0.0001));
  // closed form recomputed independently
  double expected = 22.7 + 36.7 * 2.0 + 26.0 * std::log10(3.5);
  CHECK(umi_path_loss_db(m, 100.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("line-of-sight variant is selectable and lighter") {
  UmiPathModel nlos;
  UmiPathModel los;
  los.line_of_sight = true;
  double expected_los = 28.0 + 22.0 * 2.0 + 20.0 * std::log10(3.5);
  CHECK(umi_path_loss_db(los, 100.0) == doctest::Approx(expected_los).epsilon(1e-12));
  for (double d : {5.0, 50.0, 500.0})
    CHECK(umi_path_loss_db(los, d) < umi_path_loss_db(nlos, d));
}

TEST_CASE("street model validity floor") {
  UmiPathModel m;
  CHECK_THROWS_AS(umi_path_loss_db(m, 0.5), std::invalid_argument);
  CHECK(umi_path_gain(m, 1.0) < 1.0);
  // monotone decreasing gain
  double prev = umi_path_gain(m, 1.0);
  for (double d = 2.0; d < 400.0; d *= 2.0) {
    double g = umi_path_gain(m, d);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("noise floors match kTB plus bandwidth") {
  NoiseBudget b;
  double wifi_expected = -174.0 + 10.0 * std::log10(b.bandwidth_wifi_hz);
  double radar_expected = -174.0 + 10.0 * std::log10(b.bandwidth_radar_hz);
  CHECK(std::fabs(noise_power_dbm(b, System::Wifi) - wifi_expected) < 0.05);
  CHECK(std::fabs(noise_power_dbm(b, System::Radar) - radar_expected) < 0.05);
  CHECK(noise_power_dbm(b, System::Wifi) == doctest::Approx(-100.99));
  CHECK(noise_power_dbm(b, System::Radar) == doctest::Approx(-104.0));
}
