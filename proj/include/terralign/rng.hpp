#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace terralign {

// Deterministic random stream. Every consumer derives its own stream from the
// run seed plus a stream name, so adding a consumer never shifts the numbers
// another one sees. Gaussian sampling is an explicit Box-Muller on top of the
// mt19937_64 bit stream: std::normal_distribution is implementation-defined
// and would break bit-reproducibility of datasets across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name)
      : base_(mix(seed, fnv1a(name))), gen_(base_) {}

  explicit RngStream(std::uint64_t raw_state)
      : base_(raw_state), gen_(raw_state) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return mag * std::cos(kTwoPi * u2);
  }

  double normal(double sigma) { return sigma * normal(); }

  // Derive an independent child stream; used to give each dataset sample or
  // benchmark row its own generator so worker scheduling cannot reorder draws.
  RngStream child(std::uint64_t index) const {
    return RngStream(mix(base_, index * 0x9e3779b97f4a7c15ULL + 0x1234abcdULL));
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char ch : s) {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
    return h;
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined inputs.
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_ = 0;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace terralign
