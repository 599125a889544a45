#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "unfsum/benchgen.hpp"
#include "unfsum/oracle.hpp"
#include "unfsum/textio.hpp"

using namespace unfsum;

namespace {

std::size_t markings(benchgen::Family f, int n) {
  return oracle::explore(parse_system(benchgen::generate(f, n)), oracle::kDefaultStateBound, false).size();
}

std::size_t lucas(int n) {
  std::size_t a = 2, b = 1;
  for (int k = 0; k < n; ++k) {
    std::size_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

}  // namespace

TEST_CASE("family names") {
  for (auto f : benchgen::all_families()) CHECK(benchgen::parse_family(benchgen::to_string(f)) == f);
  CHECK(benchgen::parse_family("dpsyn") == benchgen::Family::Dpsyn);
  CHECK(benchgen::parse_family("CYCLICC") == benchgen::Family::CyclicC);
  CHECK_THROWS_AS(benchgen::parse_family("Philosophers"), std::invalid_argument);
  CHECK(benchgen::all_families().size() == 7);
}

TEST_CASE("parameters outside the range are rejected") {
  for (auto f : benchgen::all_families()) {
    auto [lo, hi] = benchgen::parameter_range(f);
    CHECK_THROWS_AS(benchgen::generate(f, lo - 1), std::out_of_range);
    CHECK_THROWS_AS(benchgen::generate(f, hi + 1), std::out_of_range);
    CHECK_NOTHROW(parse_system(benchgen::generate(f, lo)));
  }
}

TEST_CASE("generated systems have the expected shape") {
  for (auto f : benchgen::all_families()) {
    for (int n : {3, 4, 7}) {
      Product p = parse_system(benchgen::generate(f, n));
      CAPTURE(benchgen::to_string(f));
      CAPTURE(n);
      CHECK(p.size() >= static_cast<std::size_t>(n));
      CHECK_FALSE(p.interface_alphabet().empty());
      CHECK(benchgen::generate(f, n) == benchgen::generate(f, n));
    }
  }
}

TEST_CASE("marking counts follow the closed forms of each encoding") {
  for (int n = 2; n <= 9; ++n) {
    CAPTURE(n);
    CHECK(markings(benchgen::Family::Dp, n) == static_cast<std::size_t>(std::pow(3, n)));
    CHECK(markings(benchgen::Family::Dpsyn, n) == lucas(n));
    CHECK(markings(benchgen::Family::Dac, n) == 7 * (std::size_t{1} << (n - 1)) - 2);
    CHECK(markings(benchgen::Family::CyclicC, n) == (3 * n + 2) * (std::size_t{1} << (n - 1)) - 1);
    CHECK(markings(benchgen::Family::CyclicS, n) == markings(benchgen::Family::CyclicC, n));
  }
}

TEST_CASE("random systems respect their bounds") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    benchgen::RandomBounds bounds;
    bounds.weighted = seed % 3 == 0;
    Product p = benchgen::random_system(seed, bounds);
    CAPTURE(seed);
    CHECK(p.size() >= bounds.min_components);
    CHECK(p.size() <= bounds.max_components);
    CHECK(p.actions().size() <= bounds.max_actions);
    CHECK(p.interface() == 0);
    CHECK(p.weighted() == bounds.weighted);
    for (const auto& c : p.components()) {
      CHECK(c.state_count() <= bounds.max_states);
      for (const auto& t : c.transitions()) {
        CHECK(Rational() <= t.weight);
        CHECK(t.weight <= Rational(bounds.max_weight));
        CHECK(t.weight.den() <= 4);
        if (!bounds.weighted) CHECK(t.weight == Rational());
      }
    }
    for (ComponentId i = 0; i < p.size(); ++i) {
      for (ComponentId j = i + 1; j < p.size(); ++j) {
        std::size_t shared = 0;
        for (const auto& a : p.component(i).actions()) shared += p.component(j).actions().count(a);
        CHECK(shared <= bounds.max_shared_per_pair);
      }
    }
    CHECK(benchgen::random_system(seed, bounds) == p);
  }
}

TEST_CASE("tight random bounds") {
  benchgen::RandomBounds bounds;
  bounds.min_components = 5;
  bounds.max_components = 1;
  bounds.max_states = 1;
  bounds.max_actions = 1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Product p = benchgen::random_system(seed, bounds);
    CHECK(p.size() == 1);
    CHECK(p.component(0).state_count() == 1);
    CHECK(p.actions().size() <= 1);
  }
}
