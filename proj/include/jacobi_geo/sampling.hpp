#pragma once

#include <cstdint>
#include <random>

#include "core.hpp"

namespace jgeo {

// mt19937_64 with a portable uniform mapping, so seeded runs match across standard libraries
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

inline void sample_disk(Rng& rng, double radius, double& a, double& b) {
    const double r = radius * std::sqrt(rng.uniform(0, 1)), t = rng.uniform(0, 2 * M_PI);
    a = r * std::cos(t);
    b = r * std::sin(t);
}

struct SampleRanges {
    double box = 2;           // free coordinates in [-box, box]
    double y_lo = 0.1, y_hi = 3;
    double disk_radius = 0.9;
};

inline constexpr SampleRanges metric_ranges{};
inline constexpr SampleRanges state_ranges{1, 0.5, 2, 0.5};

inline ChartPoint sample_point(SpaceId s, Rng& rng, const SampleRanges& r = metric_ranges) {
    ChartPoint p{s, Vec(dimension(s))};
    for (Eigen::Index i = 0; i < p.coords.size(); ++i) p.coords[i] = rng.uniform(-r.box, r.box);
    switch (s) {
        case SpaceId::DiskComplex:
        case SpaceId::SiegelDisk2: sample_disk(rng, r.disk_radius, p.coords[0], p.coords[1]); break;
        case SpaceId::DiskReal4: sample_disk(rng, r.disk_radius, p.coords[2], p.coords[3]); break;
        case SpaceId::Heisenberg3: break;
        default: p.coords[1] = rng.uniform(r.y_lo, r.y_hi); break;
    }
    return p;
}

inline GeodesicState sample_state(SpaceId s, Rng& rng, const SampleRanges& r = state_ranges, double speed = 1) {
    ChartPoint p = sample_point(s, rng, r);
    Vec v(p.coords.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-speed, speed);
    return {p, v};
}

// positive parameters matching the space's pattern
inline ModelParams sample_params(SpaceId s, Rng& rng, double lo = 0.5, double hi = 2) {
    ModelParams p;
    if (s == SpaceId::Heisenberg3) {
        p.a1 = rng.uniform(lo, hi);
        p.a2 = rng.uniform(lo, hi);
        p.a3 = rng.uniform(lo, hi);
        return derive_params(p, s);
    }
    p.alpha = rng.uniform(lo, hi);
    if (s != SpaceId::UpperHalf2 && s != SpaceId::SiegelDisk2) p.gamma = rng.uniform(lo, hi);
    if (s == SpaceId::ExtSJHalfPlane5 || s == SpaceId::JacobiFull6) p.delta = rng.uniform(lo, hi);
    if (s == SpaceId::JacobiFull6) p.beta = rng.uniform(lo, hi);
    return derive_params(p, s);
}

}  // namespace jgeo
