#include "mecoff/core/rng.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mecoff {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t make_stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t p : parts) {
    h = splitmix64(h ^ splitmix64(p));
  }
  return h;
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::array<std::uint32_t, 8> words{};
  std::uint64_t s = splitmix64(seed);
  std::uint64_t t = splitmix64(stream_id ^ 0xD1B54A32D192ED03ULL);
  for (std::size_t i = 0; i < words.size(); i += 2) {
    s = splitmix64(s ^ t);
    words[i] = static_cast<std::uint32_t>(s);
    words[i + 1] = static_cast<std::uint32_t>(s >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id) : engine_(make_engine(seed, stream_id)) {}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index: empty range");
  }
  // Rejection sampling keeps every outcome exactly equiprobable.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return x % n;
}

std::int64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson: rate must be finite and non-negative");
  }
  constexpr double kChunk = 64.0;
  std::int64_t total = 0;
  while (lambda > 0.0) {
    const double rate = lambda > kChunk ? kChunk : lambda;
    lambda -= rate;
    double p = std::exp(-rate);
    double cdf = p;
    const double u = uniform01();
    std::int64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= rate / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) {
        break;  // tail below double resolution
      }
      cdf = next;
    }
    total += k;
  }
  return total;
}

Rng seeded_rng(std::uint64_t seed, std::uint64_t stream_id) {
  return Rng(seed, stream_id);
}

}  // namespace mecoff
