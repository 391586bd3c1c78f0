#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "dadapt/core/errors.hpp"
#include "dadapt/core/rng.hpp"
#include "dadapt/core/schedule.hpp"
#include "dadapt/core/trajectory.hpp"
#include "dadapt/core/vector.hpp"

using namespace dadapt;

TEST_CASE("vector helpers") {
  const Vector a{3.0, -4.0};
  const Vector b{1.0, 2.0};
  CHECK(dot(a, b) == -5.0);
  CHECK(norm_sq(a) == 25.0);
  CHECK(norm(a) == 5.0);
  CHECK(norm1(a) == 7.0);
  CHECK(norm_inf(a) == 4.0);
  CHECK(distance(a, b) == doctest::Approx(std::sqrt(4.0 + 36.0)));
  CHECK(distance_inf(a, b) == 6.0);

  Vector y{1.0, 1.0};
  axpy(2.0, a, y);
  CHECK(y == Vector{7.0, -7.0});

  CHECK(all_finite(a));
  CHECK_FALSE(all_finite(Vector{1.0, std::nan("")}));
  CHECK(is_zero(Vector{0.0, -0.0}));
  CHECK_FALSE(is_zero(b));
}

TEST_CASE("rng streams are reproducible and separated") {
  Rng a = seeded_rng(42, 0);
  Rng b = seeded_rng(42, 0);
  Rng c = seeded_rng(42, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("rng ranges") {
  Rng r = seeded_rng(42, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
    const double v = r.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("normal draws have roughly unit moments") {
  Rng r = seeded_rng(7, 3);
  const int n = 20000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("shuffle is a permutation") {
  Rng r = seeded_rng(1, 1);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(50);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
  CHECK(v != expected);
}

TEST_CASE("fnv1a64 known values") {
  // Reference values of the 64-bit FNV-1a function.
  CHECK(fnv1a64(std::span<const char>()) == 0xcbf29ce484222325ULL);
  const char a[] = {'a'};
  CHECK(fnv1a64(a) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("flat schedule") {
  CHECK(schedule_eval(Schedule::flat(), 17, 100) == 1.0);
}

TEST_CASE("stagewise schedule tenths at 60/80/95 percent") {
  const Schedule s = Schedule::stagewise({0.6, 0.8, 0.95}, 0.1);
  CHECK(schedule_eval(s, 0, 100) == 1.0);
  CHECK(schedule_eval(s, 59, 100) == 1.0);
  CHECK(schedule_eval(s, 60, 100) == doctest::Approx(0.1));
  CHECK(schedule_eval(s, 70, 100) == doctest::Approx(0.1));
  CHECK(schedule_eval(s, 85, 100) == doctest::Approx(0.01));
  CHECK(schedule_eval(s, 99, 100) == doctest::Approx(0.001));
}

TEST_CASE("cosine schedule") {
  const Schedule s = Schedule::cosine();
  CHECK(schedule_eval(s, 0, 100) == 1.0);
  CHECK(schedule_eval(s, 50, 100) == doctest::Approx(0.5));
  CHECK(schedule_eval(s, 100, 100) > 0.0);
}

TEST_CASE("warmup schedule ramps then decays") {
  const Schedule s = Schedule::inverse_sqrt_warmup(10);
  CHECK(schedule_eval(s, 0, 1000) == doctest::Approx(0.1));
  CHECK(schedule_eval(s, 9, 1000) == doctest::Approx(1.0));
  CHECK(schedule_eval(s, 40, 1000) == doctest::Approx(std::sqrt(10.0 / 40.0)));
}

TEST_CASE("schedule multipliers stay in (0, 1]") {
  const std::vector<Schedule> all{Schedule::flat(), Schedule::stagewise({0.3, 0.9}, 0.5),
                                  Schedule::inverse_sqrt_warmup(7), Schedule::cosine()};
  for (const auto& s : all) {
    for (std::size_t k = 0; k < 300; ++k) {
      const double m = schedule_eval(s, k, 250);
      CHECK(m > 0.0);
      CHECK(m <= 1.0);
    }
  }
}

TEST_CASE("schedule configuration errors") {
  CHECK_THROWS_AS(Schedule::stagewise({0.8, 0.6}, 0.1), ConfigError);
  CHECK_THROWS_AS(Schedule::stagewise({0.5}, 0.0), ConfigError);
  CHECK_THROWS_AS(Schedule::inverse_sqrt_warmup(0), ConfigError);
  CHECK_THROWS_AS(schedule_eval(Schedule::flat(), 0, 0), ConfigError);
}

TEST_CASE("weighted average") {
  SUBCASE("single point") {
    Trajectory t(2);
    t.weighted_average_update(Vector{1.0, 1.0}, 2.0);
    CHECK(t.average() == Vector{1.0, 1.0});
  }
  SUBCASE("midpoint") {
    Trajectory t(2);
    t.weighted_average_update(Vector{0.0, 0.0}, 1.0);
    t.weighted_average_update(Vector{2.0, 0.0}, 1.0);
    CHECK(t.average() == Vector{1.0, 0.0});
  }
  SUBCASE("unequal weights") {
    Trajectory t(1);
    t.weighted_average_update(Vector{1.0}, 1.0);
    t.weighted_average_update(Vector{4.0}, 3.0);
    CHECK(t.average()[0] == doctest::Approx((1.0 * 1.0 + 3.0 * 4.0) / 4.0));
  }
  SUBCASE("zero weight is a no-op") {
    Trajectory t(1);
    CHECK(t.average().empty());
    t.weighted_average_update(Vector{5.0}, 0.0);
    CHECK(t.average().empty());
    CHECK(t.average_weight() == 0.0);
  }
}

TEST_CASE("trajectory d monotonicity flag") {
  Trajectory t(1);
  t.record({0, 0.1, 0.0, 1.0, 1.0, 1.0, 1.0});
  t.record({1, 0.2, 0.2, 1.0, 1.0, 1.0, 2.0});
  CHECK(t.d_non_decreasing());
  t.record({2, 0.15, 0.0, 1.0, 1.0, 1.0, 3.0});
  CHECK_FALSE(t.d_non_decreasing());
}
