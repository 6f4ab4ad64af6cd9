#include "ppclab/generators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ppclab/rng.hpp"

namespace ppclab {

double golden_alpha() {
    return (std::sqrt(5.0) - 1.0) / 2.0;
}

SequenceRecord kronecker(double alpha, std::uint64_t n) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("kronecker: alpha must be finite");
    std::vector<double> pts;
    pts.reserve(n);
    for (std::uint64_t k = 1; k <= n; ++k) {
        double a = alpha * static_cast<double>(k);
        double x = a - std::floor(a);
        if (x >= 1.0) x = 0.0;  // rounding at the wrap
        if (x < 0.0) x = 0.0;
        pts.push_back(x);
    }
    return SequenceRecord::approx(std::move(pts), {.kind = "kronecker", .seed = {}, .config_digest = {}});
}

SequenceRecord iid_uniform(std::uint64_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> pts;
    pts.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) pts.push_back(rng.next_unit());
    return SequenceRecord::approx(std::move(pts), {.kind = "iid", .seed = seed, .config_digest = {}});
}

SequenceRecord equispaced(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("equispaced: n must be positive");
    if (std::has_single_bit(n) && n <= (std::uint64_t{1} << kMaxDyadicExp)) {
        auto e = static_cast<std::uint32_t>(std::countr_zero(n));
        std::vector<DyadicPoint> pts;
        pts.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) pts.push_back(DyadicPoint::make(k, e));
        return SequenceRecord::exact(std::move(pts), {.kind = "equispaced", .seed = {}, .config_digest = {}});
    }
    std::vector<double> pts;
    pts.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k)
        pts.push_back(static_cast<double>(k) / static_cast<double>(n));
    return SequenceRecord::approx(std::move(pts), {.kind = "equispaced", .seed = {}, .config_digest = {}});
}

}  // namespace ppclab
