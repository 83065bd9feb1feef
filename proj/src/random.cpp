#include "wtap/random.hpp"

namespace wtap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

Rational uniform_rational(Rng& rng) {
  const std::uint64_t bits = rng() >> 11;
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(bits), 0, 0, &bits);
  Rational r(num, mpz_class(1) << 53);
  r.canonicalize();
  return r;
}

int sample_index(Rng& rng, std::span<const Rational> weights, const Rational& total) {
  const Rational target = uniform_rational(rng) * total;
  Rational cumulative = 0;
  int last = -1;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (sgn(weights[i]) == 0) continue;
    cumulative += weights[i];
    last = static_cast<int>(i);
    if (target < cumulative) return last;
  }
  return last;
}

bool bernoulli(Rng& rng, const Rational& p) { return uniform_rational(rng) < p; }

}  // namespace wtap
