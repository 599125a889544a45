#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unfsum/model.hpp"

/// Parametric benchmark families and random systems, emitted as `.sys` text.
namespace unfsum::benchgen {

enum class Family { CyclicC, CyclicS, Dac, Ring, Dp, Dpd, Dpsyn };

std::string_view to_string(Family f);
/// Case-insensitive. Throws std::invalid_argument.
Family parse_family(std::string_view name);
const std::vector<Family>& all_families();

/// Smallest and largest supported parameter.
std::pair<int, int> parameter_range(Family f);

/// Throws std::out_of_range when n is outside parameter_range(f).
std::string generate(Family f, int n);

struct RandomBounds {
  /// Lowered to max_components when larger.
  std::size_t min_components = 3;
  std::size_t max_components = 4;
  std::size_t max_states = 5;
  std::size_t max_actions = 6;
  std::size_t max_shared_per_pair = 2;
  bool weighted = false;
  /// Weights are drawn from [0, max_weight] with denominators up to 4.
  std::int64_t max_weight = 10;
};

/// A random product within `bounds`; the same seed always gives the same system.
Product random_system(std::uint64_t seed, const RandomBounds& bounds = {});

}  // namespace unfsum::benchgen
