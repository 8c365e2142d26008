#include "eprsteer/random.hpp"

#include <cmath>

namespace eprsteer {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) { return mix64(master ^ mix64(index)); }

BlochVector random_unit_vector(Rng& rng) {
    std::normal_distribution<double> g;
    for (;;) {
        const BlochVector v{g(rng), g(rng), g(rng)};
        if (v.norm() > 1e-12) return v.normalized();
    }
}

ComplexMatrix random_unitary(Rng& rng) {
    std::normal_distribution<double> g;
    double q[4];
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& c : q) {
            c = g(rng);
            n2 += c * c;
        }
    } while (n2 < 1e-24);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : q) c *= inv;
    const Complex alpha{q[0], q[1]}, beta{q[2], q[3]};
    return ComplexMatrix(2, {alpha, beta, -std::conj(beta), std::conj(alpha)});
}

}  // namespace eprsteer
