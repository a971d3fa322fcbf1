#include "doctest.h"

#include "rmtsym/core.hpp"
#include "rmtsym/rng.hpp"

using namespace rmtsym;

TEST_SUITE("core") {

TEST_CASE("pos maps signed sites to storage indices") {
  CHECK(pos(-3, 3) == 0);
  CHECK(pos(-1, 3) == 2);
  CHECK(pos(1, 3) == 3);
  CHECK(pos(3, 3) == 5);
  CHECK_THROWS_AS(pos(0, 3), std::out_of_range);
  CHECK_THROWS_AS(pos(4, 3), std::out_of_range);
  CHECK_THROWS_AS(pos(-4, 3), std::out_of_range);
}

TEST_CASE("site inverts pos") {
  CHECK(site(0, 3) == -3);
  CHECK(site(5, 3) == 3);
  CHECK_THROWS_AS(site(-1, 3), std::out_of_range);
  CHECK_THROWS_AS(site(6, 3), std::out_of_range);
  for (int n = 1; n <= 64; ++n) {
    for (int p = 0; p < 2 * n; ++p) CHECK(pos(site(p, n), n) == p);
    for (int x = -n; x <= n; ++x) {
      if (x == 0) continue;
      CHECK(site(pos(x, n), n) == x);
    }
  }
}

TEST_CASE("mirror is an involution avoiding zero") {
  for (int n : {1, 4, 64}) {
    for (int x = -n; x <= n; ++x) {
      if (x == 0) continue;
      CHECK(mirror(mirror(x)) == x);
      CHECK(mirror(x) != 0);
      CHECK_NOTHROW(pos(mirror(x), n));
    }
  }
}

TEST_CASE("validate_spec") {
  CHECK_NOTHROW(validate_spec({SymmetryClass::Plain, 8, 0}));
  CHECK_NOTHROW(validate_spec({SymmetryClass::Quarter4, 1, 0}));
  CHECK_THROWS_AS(validate_spec({SymmetryClass::RowMirror3, 0, 0}),
                  std::invalid_argument);
  EnsembleSpec bad;
  bad.n = 4;
  bad.cls = static_cast<SymmetryClass>(99);
  CHECK_THROWS_AS(validate_spec(bad), std::invalid_argument);
}

TEST_CASE("entry variance derives from n") {
  EnsembleSpec spec{SymmetryClass::Plain, 4, 0};
  CHECK(spec.entry_variance() == doctest::Approx(0.125));
  CHECK(spec.side() == 8);
}

TEST_CASE("class names round-trip") {
  for (SymmetryClass c : kAllClasses)
    CHECK(class_from_name(class_name(c)) == c);
  CHECK(class_from_name("3") == SymmetryClass::RowMirror3);
  CHECK_THROWS_AS(class_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("hermitian matrix set maintains conjugate pairs") {
  HermitianMatrix w(2);
  w.set(1, -2, cplx(0.5, -0.25));
  CHECK(w(-2, 1) == std::conj(w(1, -2)));
  CHECK(w.hermiticity_deviation() == 0.0);
  w.set(1, 1, cplx(2.0, 0.0));
  CHECK(w(1, 1).imag() == 0.0);
  CHECK_THROWS_AS(w.set(2, 2, cplx(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("counter rng is stateless in the schedule") {
  CounterRng a(42, 7, 3), b(42, 7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng c(42, 7, 4);
  CHECK(a.next_u64() != c.next_u64());
}

TEST_CASE("box-muller moments") {
  CounterRng rng(123, 0, 0);
  const int samples = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto [g0, g1] = rng.next_gauss_pair();
    sum += g0 + g1;
    sum2 += g0 * g0 + g1 * g1;
  }
  const int total = 2 * samples;
  const double mean = sum / total;
  const double var = sum2 / total - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(total)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

}  // TEST_SUITE
