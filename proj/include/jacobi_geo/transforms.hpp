#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "core.hpp"

namespace jgeo {

namespace detail {

inline void check_disk(cd w) {
    if (w == cd(1, 0)) throw Pole("w = 1");
    const double P = 1 - std::norm(w);
    if (!(P > 0)) throw DomainViolation("P", P, 0);
}

inline void check_half(cd v) {
    if (v == -I) throw Pole("v = -i");
    if (!(v.imag() > 0)) throw DomainViolation("y", v.imag(), 0);
}

}  // namespace detail

// z = eta - w conj(eta)
inline cd fc_forward(cd w, cd eta) {
    detail::check_disk(w);
    return eta - w * std::conj(eta);
}

// eta = (z + conj(z) w) / P
inline cd fc_inverse(cd w, cd z) {
    detail::check_disk(w);
    return (z + std::conj(z) * w) / (1 - std::norm(w));
}

inline cd cayley(cd v) {
    detail::check_half(v);
    return (v - I) / (v + I);
}

inline cd cayley_inv(cd w) {
    detail::check_disk(w);
    return I * (1.0 + w) / (1.0 - w);
}

// (v, u) -> (w, z)
inline std::pair<cd, cd> partial_cayley(cd v, cd u) {
    detail::check_half(v);
    return {(v - I) / (v + I), 2.0 * I * u / (v + I)};
}

// (w, z) -> (v, u)
inline std::pair<cd, cd> partial_cayley_inv(cd w, cd z) {
    detail::check_disk(w);
    return {I * (1.0 + w) / (1.0 - w), z / (1.0 - w)};
}

inline double r_of(cd v, cd u) { return u.imag() / v.imag(); }

inline cd fc1(cd v, cd u) {
    detail::check_half(v);
    const cd vb = std::conj(v);
    return (u * vb - std::conj(u) * v) / (vb - v) + I * r_of(v, u);
}

inline cd fc1_inv(cd v, cd eta) {
    detail::check_half(v);
    return ((v + I) * eta - (v - I) * std::conj(eta)) / (2.0 * I);
}

// long form of eta in terms of v and z
inline cd eta_long_form(cd v, cd z) {
    detail::check_half(v);
    const cd vb = std::conj(v), zb = std::conj(z);
    return ((1.0 + I * vb) * (z - zb) + v * (vb - I) * (z + zb)) / (2.0 * I * (vb - v));
}

// (x, y, p, q) -> (w, z)
inline std::pair<cd, cd> phi1(double x, double y, double p, double q) {
    const cd v(x, y);
    detail::check_half(v);
    return {(v - I) / (v + I), 2.0 * I * (p * v + q) / (v + I)};
}

// (w, z) -> (x, y, p, q)
inline Vec phi1_inv(cd w, cd z) {
    const cd v = cayley_inv(w);
    const cd eta = fc_inverse(w, z);
    return vec({v.real(), v.imag(), eta.imag(), eta.real()});
}

// ---- real repackings ----

// (x, y, p, q) -> (x, y, xi, rho)
inline Vec uvpq_to_xirho(const Vec& c) {
    if (!(c[1] > 0)) throw DomainViolation("y", c[1], 0);
    return vec({c[0], c[1], c[2] * c[0] + c[3], c[2] * c[1]});
}

// (x, y, xi, rho) -> (x, y, p, q)
inline Vec xirho_to_uvpq(const Vec& c) {
    if (!(c[1] > 0)) throw DomainViolation("y", c[1], 0);
    const double p = c[3] / c[1];
    return vec({c[0], c[1], p, c[2] - c[0] * p});
}

// (alpha, beta, m, n) <-> (m, n, alpha, beta)
inline Vec disk_complex_to_real(const Vec& c) { return vec({c[2], c[3], c[0], c[1]}); }
inline Vec disk_real_to_complex(const Vec& c) { return vec({c[2], c[3], c[0], c[1]}); }

// (m, n, alpha, beta) -> (x, y, p, q) with x = -2 beta / Q, y = P / Q, q = C / P, p = D / P
inline Vec disk_to_halfplane_real(const Vec& c) {
    const double m = c[0], n = c[1], a = c[2], b = c[3];
    detail::check_disk(cd(a, b));
    const double P = 1 - a * a - b * b, Q = (1 - a) * (1 - a) + b * b;
    const double C = (1 + a) * m + n * b, D = (1 - a) * n + m * b;
    return vec({-2 * b / Q, P / Q, D / P, C / P});
}

// ---- Iwasawa decomposition M = N A K ----

struct Iwasawa {
    double x, y, theta;
};

inline Iwasawa iwasawa(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (std::abs(det - 1) > 1e-10) throw NotUnimodular(det);
    const double s = c * c + d * d;
    return {(a * c + b * d) / s, 1 / s, std::atan2(-c, d)};
}

inline std::array<double, 4> iwasawa_inv(double x, double y, double theta) {
    if (!(y > 0)) throw DomainViolation("y", y, 0);
    const double sy = std::sqrt(y), ct = std::cos(theta), st = std::sin(theta);
    return {sy * ct - x / sy * st, sy * st + x / sy * ct, -st / sy, ct / sy};
}

// ---- registry of real chart maps ----

enum class MapName { FC, Cayley, PartialCayley, FC1, Phi1, UVPQ, XiRho, DiskRealize, Identity };

struct ChartMap {
    MapName id;
    std::string name;
    int dim;
    std::vector<std::string> in_names, out_names;
    std::function<Vec(const Vec&)> forward, inverse;
    std::function<std::optional<double>(const Vec&)> det;  // closed-form Jacobian determinant of forward
};

namespace detail {

inline cd c2(const Vec& c, int i) { return {c[i], c[i + 1]}; }

inline Vec pack(std::initializer_list<cd> zs) {
    Vec v(static_cast<Eigen::Index>(2 * zs.size()));
    Eigen::Index i = 0;
    for (cd z : zs) {
        v[i++] = z.real();
        v[i++] = z.imag();
    }
    return v;
}

}  // namespace detail

inline ChartMap chart_map(MapName m) {
    using detail::c2;
    using detail::pack;
    const std::vector<std::string> disk{"alpha", "beta", "m", "n"}, uv{"x", "y", "xi", "rho"}, sj{"x", "y", "p", "q"};
    switch (m) {
        case MapName::FC:
            return {m, "fc", 4, {"alpha", "beta", "eta_re", "eta_im"}, disk,
                    [](const Vec& c) { return pack({c2(c, 0), fc_forward(c2(c, 0), c2(c, 2))}); },
                    [](const Vec& c) { return pack({c2(c, 0), fc_inverse(c2(c, 0), c2(c, 2))}); },
                    [](const Vec& c) { return std::optional<double>(1 - std::norm(c2(c, 0))); }};
        case MapName::Cayley:
            return {m, "cayley", 2, {"x", "y"}, {"alpha", "beta"},
                    [](const Vec& c) { return pack({cayley(c2(c, 0))}); },
                    [](const Vec& c) { return pack({cayley_inv(c2(c, 0))}); },
                    [](const Vec& c) { return std::optional<double>(4 / std::pow(std::norm(c2(c, 0) + I), 2)); }};
        case MapName::PartialCayley:
            return {m, "partial_cayley", 4, uv, disk,
                    [](const Vec& c) {
                        auto [w, z] = partial_cayley(c2(c, 0), c2(c, 2));
                        return pack({w, z});
                    },
                    [](const Vec& c) {
                        auto [v, u] = partial_cayley_inv(c2(c, 0), c2(c, 2));
                        return pack({v, u});
                    },
                    [](const Vec& c) { return std::optional<double>(16 / std::pow(std::norm(c2(c, 0) + I), 3)); }};
        case MapName::FC1:
            return {m, "fc1", 4, uv, {"x", "y", "eta_re", "eta_im"},
                    [](const Vec& c) { return pack({c2(c, 0), fc1(c2(c, 0), c2(c, 2))}); },
                    [](const Vec& c) { return pack({c2(c, 0), fc1_inv(c2(c, 0), c2(c, 2))}); },
                    [](const Vec& c) { return std::optional<double>(1 / c[1]); }};
        case MapName::Phi1:
            return {m, "phi1", 4, sj, disk,
                    [](const Vec& c) {
                        auto [w, z] = phi1(c[0], c[1], c[2], c[3]);
                        return pack({w, z});
                    },
                    [](const Vec& c) { return phi1_inv(c2(c, 0), c2(c, 2)); },
                    [](const Vec& c) { return std::optional<double>(-c[1] * 16 / std::pow(std::norm(c2(c, 0) + I), 3)); }};
        case MapName::UVPQ:
            return {m, "uvpq", 4, sj, uv, uvpq_to_xirho, xirho_to_uvpq,
                    [](const Vec& c) { return std::optional<double>(-c[1]); }};
        case MapName::XiRho:
            return {m, "xirho", 4, uv, sj, xirho_to_uvpq, uvpq_to_xirho,
                    [](const Vec& c) { return std::optional<double>(-1 / c[1]); }};
        case MapName::DiskRealize:
            return {m, "disk_realize", 4, disk, {"m", "n", "alpha", "beta"}, disk_complex_to_real, disk_real_to_complex,
                    [](const Vec&) { return std::optional<double>(1.0); }};
        case MapName::Identity:
            return {m, "identity", 4, sj, sj, [](const Vec& c) { return c; }, [](const Vec& c) { return c; },
                    [](const Vec&) { return std::optional<double>(1.0); }};
    }
    throw Unsupported("unknown chart map");
}

inline const std::vector<MapName>& all_maps() {
    static const std::vector<MapName> v{MapName::FC,  MapName::Cayley, MapName::PartialCayley, MapName::FC1,     MapName::Phi1,
                                        MapName::UVPQ, MapName::XiRho, MapName::DiskRealize,  MapName::Identity};
    return v;
}

inline MapName parse_map(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    for (auto m : all_maps())
        if (chart_map(m).name == s) return m;
    throw BadParams("unknown map '" + std::string(name) + "'");
}

// central differences, relative step 1e-7
template <class F>
Mat numeric_jacobian(F&& f, const Vec& x, double rel = 1e-7) {
    Vec f0 = f(x);
    Mat J(f0.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = rel * std::max(1.0, std::abs(x[i]));
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        J.col(i) = (f(xp) - f(xm)) / (2 * h);
    }
    return J;
}

struct JacobianResult {
    Mat matrix;
    double det = 0;
    std::optional<double> closed_form_det;
};

inline JacobianResult jacobian(const ChartMap& m, const Vec& x) {
    JacobianResult r;
    r.matrix = numeric_jacobian(m.forward, x);
    r.det = r.matrix.determinant();
    if (m.det) r.closed_form_det = m.det(x);
    return r;
}

// determinant of d(x, y, q, p) / d(m, n, alpha, beta) in the (x, y, q, p) ordering: (4 / Q^2)(1 / P)
inline double phi1_chart_det(cd w) {
    detail::check_disk(w);
    const double Q = std::norm(1.0 - w), P = 1 - std::norm(w);
    return 4 / (Q * Q) / P;
}

// real Jacobian of a holomorphic map from its complex derivative matrix D(a, b) = d f_a / d z_b, interleaved ordering
inline Mat holomorphic_jacobian(const Eigen::MatrixXcd& D) {
    const auto n = D.rows();
    Mat J(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            J(2 * a, 2 * b) = D(a, b).real();
            J(2 * a, 2 * b + 1) = -D(a, b).imag();
            J(2 * a + 1, 2 * b) = D(a, b).imag();
            J(2 * a + 1, 2 * b + 1) = D(a, b).real();
        }
    return J;
}

}  // namespace jgeo
