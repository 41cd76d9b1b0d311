#include "vanet/rng.hpp"

#include <cmath>

namespace vanet {
namespace {

std::uint64_t poisson_knuth(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = rng.next_double();
    while (product > limit) {
        ++k;
        product *= rng.next_double();
    }
    return k;
}

} // namespace

double Rng::exponential(double rate) {
    // next_double() is in [0, 1), so 1 - u is in (0, 1] and log is finite.
    return -std::log(1.0 - next_double()) / rate;
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t count = 0;
    // Poisson(a + b) = Poisson(a) + Poisson(b) for independent summands;
    // chunks of 500 keep exp(-chunk) well above the double underflow limit.
    while (mean > 500.0) {
        count += poisson_knuth(*this, 500.0);
        mean -= 500.0;
    }
    count += poisson_knuth(*this, mean);
    return count;
}

} // namespace vanet
