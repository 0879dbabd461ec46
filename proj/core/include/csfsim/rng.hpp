#pragma once

#include <cstdint>
#include <random>

namespace csfsim {

/// Derives the RNG seed for one simulation iteration from the master seed.
///
/// The mix is a fixed splitmix64 step: add iteration+1 times the golden-ratio
/// increment 0x9E3779B97F4A7C15 to the master seed, then apply the splitmix64
/// finalizer (xor-shift 30, mul 0xBF58476D1CE4E5B9, xor-shift 27,
/// mul 0x94D049BB133111EB, xor-shift 31). This is the wire-frozen seeding
/// scheme; changing it changes every dataset.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t iteration);

/// One deterministic random stream. The engine is std::mt19937_64, whose
/// output sequence is pinned by the C++ standard; all variate transforms
/// below are implemented here rather than via std:: distributions so that
/// draws are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0,1).
    double next_double_open();

    /// Standard normal via Box-Muller (fixed two-uniform cost per call).
    double next_normal();

    /// Gamma(shape, scale) via Marsaglia-Tsang squeeze.
    double next_gamma(double shape, double scale);

    /// Poisson(mean) via Knuth's product-of-uniforms method (mean <~ 30).
    int next_poisson(double mean);

private:
    std::mt19937_64 engine_;
};

/// One negative-binomial run total with mean mu and variance mu + mu^2/r,
/// realized as a Poisson draw whose rate is Gamma(shape r, mean mu).
/// Throws std::domain_error unless mu > 0 and r > 0.
int sample_runs(double mu, double r, Rng& stream);

}  // namespace csfsim
