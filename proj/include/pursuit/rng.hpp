#ifndef PURSUIT_RNG_HPP
#define PURSUIT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pursuit::rng {

// Philox4x32-10 counter-based generator.  A stream is keyed by
// (master seed, stream index), so replicate k of a run always sees the
// same sequence regardless of how replicates are scheduled on threads.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr2_(static_cast<std::uint32_t>(stream)),
        ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint32_t next_u32() {
    if (idx_ == 4) {
      fill_block();
      idx_ = 0;
    }
    return block_[idx_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // uniform on (0, 1]
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void fill_block() {
    std::uint32_t c0 = ctr0_, c1 = ctr1_, c2 = ctr2_, c3 = ctr3_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    block_[0] = c0; block_[1] = c1; block_[2] = c2; block_[3] = c3;
    if (++ctr0_ == 0) ++ctr1_;
  }

  std::uint32_t key0_, key1_;
  std::uint32_t ctr0_ = 0, ctr1_ = 0, ctr2_, ctr3_;
  std::uint32_t block_[4] = {};
  int idx_ = 4;
};

// Uniform / normal / gamma / Poisson variates on top of a Philox stream.
// All samplers are exact (rejection based), no normal approximations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) : eng_(seed, stream) {}

  double uniform() { return eng_.uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = eng_.uniform();
    const double u2 = eng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Gamma(shape, scale); shape == 0 is the point mass at 0.
  double gamma(double shape, double scale) {
    if (shape == 0.0) return 0.0;
    if (shape < 1.0) {
      // boost: G(a) = G(a+1) * U^{1/a}
      const double u = eng_.uniform();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = eng_.uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
  }

  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(mean);
    return poisson_ptrs(mean);
  }

 private:
  std::uint64_t poisson_inversion(double mean) {
    const double p0 = std::exp(-mean);
    double p = p0, cum = p0;
    const double u = eng_.uniform();
    std::uint64_t k = 0;
    while (u > cum && k < 200) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
    }
    return k;
  }

  // Hormann's PTRS transformed-rejection sampler, exact for mean >= 10.
  std::uint64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = eng_.uniform() - 0.5;
      const double v = eng_.uniform();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      const double k = kf;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * loglam - mean - std::lgamma(k + 1.0))
        return static_cast<std::uint64_t>(kf);
    }
  }

  Philox eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pursuit::rng

#endif
