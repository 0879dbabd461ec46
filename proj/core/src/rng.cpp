#include "csfsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace csfsim {

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t iteration) {
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (iteration + 1);
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

double Rng::next_double_open() {
    double u;
    do {
        u = next_double();
    } while (u == 0.0);
    return u;
}

double Rng::next_normal() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

double Rng::next_gamma(double shape, double scale) {
    if (shape < 1.0) {
        // Boost trick: Gamma(a) = Gamma(a+1) * U^(1/a).
        const double u = next_double_open();
        return next_gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_double_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v * scale;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v * scale;
        }
    }
}

int Rng::next_poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= next_double_open();
    } while (p > limit);
    return k - 1;
}

int sample_runs(double mu, double r, Rng& stream) {
    if (!(mu > 0.0)) {
        throw std::domain_error("sample_runs: mu must be > 0");
    }
    if (!(r > 0.0)) {
        throw std::domain_error("sample_runs: dispersion must be > 0");
    }
    const double rate = stream.next_gamma(r, mu / r);
    if (rate <= 0.0) {
        return 0;
    }
    return stream.next_poisson(rate);
}

}  // namespace csfsim
