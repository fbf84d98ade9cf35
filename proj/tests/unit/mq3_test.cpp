#include "drunkguard/sensors/mq3.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

using namespace drunkguard::sensors;

namespace {

// Reference values computed at 40 significant digits for the default config.
const std::vector<std::pair<std::int64_t, std::int64_t>> kVoltsOracle = {
    {40'000, 1'329'978},    {50'000, 1'464'699},    {100'000, 1'928'693},
    {200'000, 2'438'298},   {250'000, 2'605'580},   {300'000, 2'741'627},
    {500'000, 3'112'769},   {1'000'000, 3'571'429}, {2'000'000, 3'956'004},
    {4'000'000, 4'258'544},
};

const std::vector<std::pair<std::int64_t, std::int64_t>> kRatioOracle = {
    {40'000, 2'759'459}, {100'000, 1'592'429}, {250'000, 918'959},
    {1'000'000, 400'000}, {4'000'000, 174'110},
};

// Independent divider model used to invert the curve numerically.
double oracle_volts(double mg_l, const Mq3Config& c) {
  mg_l = std::fmin(std::fmax(mg_l, 0.04), 4.0);
  const double rs = c.curve_a * std::pow(mg_l, c.curve_b) * c.r0_ohms;
  return c.supply_volts * c.load_ohms / (c.load_ohms + rs);
}

double invert_by_bisection(double volts, const Mq3Config& c) {
  double lo = 0.04;
  double hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle_volts(mid, c) < volts ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("divider voltage matches the high-precision reference") {
  const Mq3Config cfg;
  for (const auto& [conc, uv] : kVoltsOracle) {
    CAPTURE(conc);
    CHECK(mq3_analog_volts(BreathConc{conc}, cfg).value == uv);
  }
}

TEST_CASE("sensor ratio matches the high-precision reference") {
  const Mq3Config cfg;
  for (const auto& [conc, ratio] : kRatioOracle) {
    CAPTURE(conc);
    CHECK(mq3_ratio(BreathConc{conc}, cfg).value == ratio);
  }
}

TEST_CASE("concentrations outside the detection range are clamped") {
  const Mq3Config cfg;
  CHECK(mq3_ratio(BreathConc{10'000}, cfg) == mq3_ratio(BreathConc{40'000}, cfg));
  CHECK(mq3_ratio(BreathConc{0}, cfg) == mq3_ratio(BreathConc{40'000}, cfg));
  CHECK(mq3_ratio(BreathConc{5'000'000}, cfg) == mq3_ratio(BreathConc{4'000'000}, cfg));
  CHECK(mq3_analog_volts(BreathConc{10'000'000}, cfg).value == 4'258'544);
}

TEST_CASE("equal sensor and load resistance gives half the supply") {
  Mq3Config cfg;
  cfg.curve_a = 1.0;
  CHECK(mq3_ratio(BreathConc{1'000'000}, cfg).value == 1'000'000);
  CHECK(mq3_analog_volts(BreathConc{1'000'000}, cfg).value == 2'500'000);
}

TEST_CASE("default comparator trips at 0.25 mg/L") {
  const Mq3Config cfg;
  CHECK(cfg.threshold_volts == doctest::Approx(threshold_for_trip(kDefaultTripConc, cfg)).epsilon(1e-12));
  const double trip = invert_by_bisection(cfg.threshold_volts, cfg);
  CHECK(trip == doctest::Approx(0.25).epsilon(1e-9));

  CHECK(mq3_digital(mq3_analog_volts(BreathConc{300'000}, cfg), cfg));
  CHECK_FALSE(mq3_digital(mq3_analog_volts(BreathConc{200'000}, cfg), cfg));
  CHECK(mq3_digital(mq3_analog_volts(BreathConc{250'000}, cfg), cfg));
  CHECK_FALSE(mq3_digital(mq3_analog_volts(BreathConc{249'000}, cfg), cfg));
}

TEST_CASE("comparator ties trip high") {
  Mq3Config cfg;
  cfg.threshold_volts = 2.5;
  CHECK(mq3_digital(MicroVolts{2'500'000}, cfg));
  CHECK_FALSE(mq3_digital(MicroVolts{2'499'999}, cfg));
}

TEST_CASE("threshold_for_trip inverts for other trip points") {
  Mq3Config cfg;
  for (std::int64_t trip : {80'000, 400'000, 800'000, 2'000'000}) {
    cfg.threshold_volts = threshold_for_trip(BreathConc{trip}, cfg);
    CHECK(invert_by_bisection(cfg.threshold_volts, cfg) ==
          doctest::Approx(static_cast<double>(trip) / 1e6).epsilon(1e-9));
  }
}

TEST_CASE("validate rejects out-of-domain configs") {
  auto bad = [](auto mutate) {
    Mq3Config c;
    mutate(c);
    return c;
  };
  CHECK_NOTHROW(Mq3Config{}.validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.curve_b = 0.0; }).validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.curve_a = -1.0; }).validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.r0_ohms = 0.0; }).validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.load_ohms = -5.0; }).validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.threshold_volts = 5.0; }).validate());
  CHECK_THROWS(bad([](Mq3Config& c) { c.supply_volts = NAN; }).validate());
}

TEST_CASE("property: ratio falls and voltage rises with concentration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a(0.1, 2.0), b(-1.2, -0.2), r(2'000.0, 50'000.0),
      s(3.3, 5.0);
  for (int k = 0; k < 200; ++k) {
    Mq3Config cfg;
    cfg.curve_a = a(rng);
    cfg.curve_b = b(rng);
    cfg.r0_ohms = r(rng);
    cfg.load_ohms = r(rng);
    cfg.supply_volts = s(rng);
    cfg.threshold_volts = cfg.supply_volts / 2;
    REQUIRE_NOTHROW(cfg.validate());
    MicroRatio prev_ratio{INT64_MAX};
    MicroVolts prev_volts{-1};
    for (int i = 0; i < 100; ++i) {
      const BreathConc c{40'000 * (i + 1)};
      const auto ratio = mq3_ratio(c, cfg);
      const auto volts = mq3_analog_volts(c, cfg);
      CHECK(ratio < prev_ratio);
      CHECK(volts > prev_volts);
      CHECK(volts.value >= 0);
      CHECK(volts.value <= std::llround(cfg.supply_volts * 1e6));
      prev_ratio = ratio;
      prev_volts = volts;
    }
  }
}
