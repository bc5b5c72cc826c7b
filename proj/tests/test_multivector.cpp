#include <doctest.h>

#include <cmath>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/error.hpp"
#include "spx/multi_vector.hpp"

using namespace spx;

TEST_CASE("global value modification") {
  SerialComm comm;
  const Map m(10, 0, comm);
  MultiVector v(m, 2);
  CHECK(v.replace_global_value(3, 0, 4.5) == ModifyStatus::Ok);
  CHECK(v(3, 0) == 4.5);
  CHECK(v.sum_into_global_value(3, 1, 1.0) == ModifyStatus::Ok);
  CHECK(v(3, 1) == 1.0);
  CHECK(v.replace_global_value(42, 0, 1.0) == ModifyStatus::NotOwned);
  CHECK_THROWS_AS(v.replace_global_value(3, 2, 1.0), Error);
  const std::vector<int> gids{1, 2, 77};
  const std::vector<double> vals{1.0, 2.0, 3.0};
  CHECK(v.modify_global_values(gids, vals, 0, CombineMode::SumInto) == 1);
  CHECK(v(2, 0) == 2.0);

  const std::vector<long long> wide{3000000000LL};
  const Map w(-1LL, wide, 0LL, comm);
  Vector x(w);
  x.sum_into_global_value(3000000000LL, 0, 1.0);
  x.sum_into_global_value(3000000000LL, 0, 1.0);
  CHECK(x[0] == 2.0);
  try {
    x.replace_global_value(0, 0, 1.0);
    FAIL("expected width error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Width);
  }
}

TEST_CASE("global lengths") {
  SerialComm comm;
  CHECK(MultiVector(Map(10, 0, comm), 1).global_length64() == 10);
  const std::vector<long long> g{3000000000LL, 3000000001LL, 3000000005LL, 3000000009LL};
  const Vector w(Map(-1LL, g, 0LL, comm));
  CHECK(w.global_length64() == 4);
  CHECK_THROWS_AS(w.global_length(), Error);
  CHECK(MultiVector(BlockMap(3, 2, 0, comm), 1).global_length64() == 6);
}

TEST_CASE("dense operations") {
  run_ranks(2, [](const Comm& comm) {
    const Map m(10, 0, comm);
    Vector a(m), ones(m);
    ones.put_scalar(1.0);
    CHECK(ones.norm2() == doctest::Approx(std::sqrt(10.0)));
    CHECK(ones.dot(ones) == 10.0);
    a.update(2.0, ones, 0.0);
    for (double x : a.values()) CHECK(x == 2.0);
    a.update(1.0, ones, -1.0, ones, 3.0);
    for (double x : a.values()) CHECK(x == 6.0);
    a.multiply_elementwise(0.5, a, a, 0.0);
    for (double x : a.values()) CHECK(x == 18.0);
    CHECK(a.norm_inf()[0] == 18.0);
  });
}

TEST_CASE("random values and norm consistency") {
  run_ranks(3, [](const Comm& comm) {
    const Map m(101, 0, comm);
    Vector a(m);
    a.set_random(17);
    for (double x : a.values()) CHECK(std::abs(x) <= 1.0);
    const double n = a.norm2();
    CHECK(std::abs(n * n - a.dot(a)) <= 1e-15 * a.dot(a));
  });
}

TEST_CASE("mixing widths is rejected") {
  SerialComm comm;
  const Map narrow(4, 0, comm);
  const Map wide(4LL, 0, comm);
  Vector a(narrow), b(wide);
  for (auto op : {0, 1, 2, 3}) {
    try {
      if (op == 0) a.dot(b);
      if (op == 1) a.update(1.0, b, 1.0);
      if (op == 2) a.multiply_elementwise(1.0, a, b, 0.0);
      if (op == 3) a.update(1.0, a, 1.0, b, 0.0);
      FAIL("expected width-mix error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::WidthMix);
    }
  }
  Vector shorter(Map(3, 0, comm));
  CHECK_THROWS_AS(a.update(1.0, shorter, 1.0), Error);
}

TEST_CASE("narrow and wide maps give identical dense results") {
  run_ranks(2, [](const Comm& comm) {
    const auto mn = BlockMap::uniform(37, 0, comm, IndexWidth::I32);
    const auto mw = BlockMap::uniform(37, 0, comm, IndexWidth::I64);
    Vector a(mn), b(mw);
    a.set_random(3);
    b.set_random(3);
    CHECK(a.norm2() == b.norm2());
    CHECK(a.dot(a) == b.dot(b));
  });
}
