#ifndef STYLO_RANDOM_H_
#define STYLO_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace stylo {

// Mixes a base seed with a stream label into an independent 64-bit seed.
// Used so that split shuffles, model init and corpus synthesis draw from
// unrelated streams even when they share a run seed.
uint64_t DeriveSeed(uint64_t base, std::string_view label);

// Seeded generator whose outputs are identical on every platform. The
// std:: distributions are implementation-defined, so all transforms of the
// raw engine output are done here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t Below(uint64_t n);

  double Normal();
  int Poisson(double mean);
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stylo

#endif  // STYLO_RANDOM_H_
