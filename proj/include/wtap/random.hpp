#pragma once

#include "wtap/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace wtap {

using Rng = std::mt19937_64;

/// Child seed for hierarchical streams: master -> trial -> run -> vertex.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Uniform draw in [0, 1) with 53 bits, as an exact rational.
Rational uniform_rational(Rng& rng);

/// Index i with probability weights[i] / sum(weights). Weights are >= 0 and
/// sum to `total` > 0.
int sample_index(Rng& rng, std::span<const Rational> weights, const Rational& total);

bool bernoulli(Rng& rng, const Rational& p);

}  // namespace wtap
