#pragma once

#include <functional>

#include "christoffel.hpp"

namespace jgeo {

// acc^i = -G^i_jk v^j v^k
inline Vec acceleration(const ChristoffelTable& G, const Vec& v) {
    const int n = G.n;
    Vec a = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            for (int k = 0; k < n; ++k) s += G(i, j, k) * v[j] * v[k];
        }
        a[i] = -s;
    }
    return a;
}

using ChristoffelFn = std::function<ChristoffelTable(const Vec&)>;

inline ChristoffelFn make_provider(SpaceId s, const ModelParams& mp, Provider pr = Provider::Auto) {
    return [s, mp, pr](const Vec& c) { return christoffel(s, mp, ChartPoint{s, c}, pr); };
}

inline Vec geodesic_rhs_generic(const ChristoffelFn& G, const GeodesicState& s) {
    if (s.point.coords.size() != s.velocity.size()) throw Error("point and velocity dimensions differ");
    return acceleration(G(s.point.coords), s.velocity);
}

// ---- explicit systems, each returning accelerations in its chart ordering ----

// complex disk system, coordinates (alpha, beta, m, n)
inline Vec rhs_disk_geo(const ModelParams& mp, const Vec& x, const Vec& v) {
    auto d = disk_vars_complex(x);
    const cd wd(v[0], v[1]), zd(v[2], v[3]);
    const cd eb = std::conj(d.eta), wb = std::conj(d.w) / d.P;
    const cd G1 = zd + eb * wd;
    const cd wdd = -2.0 * wb * wd * wd - mp.j * G1 * G1;
    const cd zdd = -2.0 * wb * zd * wd + mp.j * eb * G1 * G1;
    return vec({wdd.real(), wdd.imag(), zdd.real(), zdd.imag()});
}

struct DiskHelpers {
    double P, C, D, W, T, U, V, Z1, Z2, X, Y, L, M;
};

inline DiskHelpers disk_helpers(double j, const Vec& x, const Vec& v) {
    auto d = disk_vars_real(x);
    DiskHelpers h;
    h.P = d.P;
    h.C = d.C;
    h.D = d.D;
    const double a = x[2], b = x[3];
    h.W = h.C * h.C - h.D * h.D;
    h.T = 2 * h.C * h.D;
    h.U = 2 * a + j * h.W / h.P;
    h.V = b + j * h.T / (2 * h.P);
    h.Z1 = a - j * h.W / h.P;
    h.Z2 = b - j * h.T / h.P;
    h.X = (3 * h.C * h.C - h.D * h.D) / (h.P * h.P);
    h.Y = (3 * h.D * h.D - h.C * h.C) / (h.P * h.P);
    h.L = v[0] * v[3] + v[1] * v[2];
    h.M = v[0] * v[2] - v[1] * v[3];
    return h;
}

// real disk system, coordinates (m, n, alpha, beta)
inline Vec rhs_disk_ecmnab(const ModelParams& mp, const Vec& x, const Vec& v, TableVariant var = TableVariant::Corrected) {
    const double j = mp.j;
    auto h = disk_helpers(j, x, v);
    const double md = v[0], nd = v[1], ad = v[2], bd = v[3], P = h.P, C = h.C, D = h.D;
    const double q2 = ad * ad - bd * bd, ab = ad * bd;
    Vec acc(4);
    acc[2] = -(h.U / P * q2 + j * (md * md - nd * nd) + 4 * h.V / P * ab + 2 * j / P * (D * h.L + C * h.M));
    if (var == TableVariant::Corrected) {
        acc[3] = -(-2 * h.V / P * q2 + 2 * h.U / P * ab + 2 * j * (md * nd + (C * h.L - D * h.M) / P));
        acc[0] = -(j * C / P * (h.Y * q2 - md * md + nd * nd) + 2 * j * D / P * (-h.X * ab - md * nd) +
                   2 / P * (h.Z1 * h.M + h.Z2 * h.L));
        acc[1] = -(j * D / P * (h.X * q2 + md * md - nd * nd) + 2 * j * C * h.Y / P * ab +
                   2 / P * (-j * C * md * nd + h.Z1 * h.L - h.Z2 * h.M));
    } else {
        acc[3] = -(-2 * h.V / P * q2 + 2 * h.U / P * ab + 2 * j * (md * nd + h.W / P));
        acc[0] = -(j * C / P * (h.Y / (P * P) * q2 - md * md + nd * nd) + 2 * j * D / P * (-h.X / (P * P) * ab + md * nd) +
                   2 / P * (h.Z1 * h.M + h.Z2 * h.L));
        acc[1] = -(j * D / P * (h.X / (P * P) * q2 + md * md - nd * nd) + 2 * j * C * h.Y / (P * P * P) * ab +
                   2 / P * (-j * C * md * nd + h.Z1 * h.L + h.Z2 * h.M));
    }
    return acc;
}

// real disk system through A_i, B_i, coordinates (m, n, alpha, beta)
inline Vec rhs_disk_a1b1(const ModelParams& mp, const Vec& x, const Vec& v) {
    const double j = mp.j;
    auto h = disk_helpers(j, x, v);
    const double md = v[0], nd = v[1], ad = v[2], bd = v[3], a = x[2], b = x[3], P = h.P;
    const double A1 = md + (h.C * ad + h.D * bd) / P;
    const double B1 = nd + (h.C * bd - h.D * ad) / P;
    const double sq = A1 * A1 - B1 * B1, pr = A1 * B1;
    const double re = h.C / P, im = h.D / P;
    Vec acc(4);
    acc[2] = -2 / P * (a * (ad * ad - bd * bd) + 2 * b * ad * bd) - j * sq;
    acc[3] = -2 / P * (2 * a * ad * bd + b * (-ad * ad + bd * bd)) - 2 * j * pr;
    acc[0] = -2 / P * (a * h.M + b * h.L) + 2 * j * im * pr + j * re * sq;
    acc[1] = -2 / P * (a * h.L - b * h.M) + 2 * j * re * pr - j * im * sq;
    return acc;
}

// complex half-plane system, coordinates (x, y, xi, rho)
inline Vec rhs_halfplane_eciv(const ModelParams& mp, const Vec& x, const Vec& v, TableVariant var = TableVariant::Corrected) {
    const double y = x[1], r = x[3] / y, io = mp.iota;
    const cd vd(v[0], v[1]), ud(v[2], v[3]);
    const cd vdd = -(I / io) * (ud * ud - 2 * r * ud * vd + (io / y + r * r) * vd * vd);
    cd udd;
    if (var == TableVariant::Corrected)
        udd = -(I / io) * (r * ud * ud + (io / y - 2 * r * r) * ud * vd + r * r * r * vd * vd);
    else
        udd = -(I / io) * (-r * ud * ud + io / y * (1 - 2 * r * r) * ud * vd + r * r * r * vd * vd);
    return vec({vdd.real(), vdd.imag(), udd.real(), udd.imag()});
}

// H_1^2 = iota H_2, r H_1^2 = iota H_3 solved for the second derivatives
inline Vec rhs_halfplane_geox(const ModelParams& mp, const Vec& x, const Vec& v) {
    const double y = x[1], r = x[3] / y, io = mp.iota;
    const cd vd(v[0], v[1]), ud(v[2], v[3]);
    const cd H1 = ud - r * vd;
    const cd vdd = -I * (H1 * H1 / io + vd * vd / y);
    const cd udd = -I * (r * H1 * H1 / io + ud * vd / y);
    return vec({vdd.real(), vdd.imag(), udd.real(), udd.imag()});
}

inline Vec rhs_upper_half(const Vec& x, const Vec& v) {
    const double y = x[1], xd = v[0], yd = v[1];
    return vec({2 / y * xd * yd, -(xd * xd - yd * yd) / y});
}

// (x, y, p, q)
inline Vec rhs_sj_420(const ModelParams& mp, const Vec& x, const Vec& v) {
    const double X = x[0], y = x[1], xd = v[0], yd = v[1], pd = v[2], qd = v[3], eps = mp.epsilon;
    const double R = X * pd + qd;
    Vec acc(4);
    acc[0] = 2 / y * xd * yd + eps * (R * y * pd);
    acc[1] = -(xd * xd - yd * yd) / y - eps / 2 * (R * R - y * y * pd * pd);
    acc[2] = -(R * xd / (y * y) + yd * pd / y);
    acc[3] = -(xd / (y * y) * (y * y * pd - X * R) - yd / y * (R + X * pd));
    return acc;
}

// (x, y, p, q, kappa)
inline Vec rhs_ext_euri(const ModelParams& mp, const Vec& x, const Vec& v, TableVariant var = TableVariant::Corrected) {
    const double X = x[0], y = x[1], p = x[2], q = x[3], tau = mp.tau;
    const double xd = v[0], yd = v[1], pd = v[2], qd = v[3], kd = v[4];
    const double R = X * pd + qd, S = X * X + y * y, xi = p * X + q;
    Vec base = rhs_sj_420(mp, x.head(4), v.head(4));
    Vec acc(5);
    acc[0] = base[0];
    acc[1] = base[1];
    acc[2] = base[2] - 2 * tau / y * (X * q * pd * pd + (q - p * X) * pd * qd - p * qd * qd + R * kd);
    acc[3] = base[3] - 2 * tau / y * (-q * S * pd * pd + (p * S - X * q) * pd * qd - S * pd * kd + X * qd * (p * qd - kd));
    const double mixed = var == TableVariant::Corrected ? xd * qd : xd * yd;
    acc[4] = -((p * y * y - xi * X) / (y * y) * xd * pd - xi / (y * y) * mixed - (2 * p * X + q) / y * yd * pd -
               p / y * yd * qd +
               2 * tau / y * (-pd * (p * S + q * X) * (q * pd + kd) + (p * p * S - q * q) * pd * qd + xi * qd * (p * qd - kd)));
    return acc;
}

// (lambda, mu, kappa) with a1, a2, a3
inline Vec rhs_heisenberg_ccxx(const ModelParams& mp, const Vec& x, const Vec& v, TableVariant var = TableVariant::Corrected) {
    const double l = x[0], m = x[1], ld = v[0], md = v[1], kd = v[2];
    const double a1 = mp.a1, a2 = mp.a2, a3 = mp.a3;
    Vec acc(3);
    acc[0] = -2 * a3 / a1 * (-l * md * md + m * ld * md + md * kd);
    if (var == TableVariant::Corrected) {
        acc[1] = -2 * a3 / a2 * (-m * ld * ld + l * ld * md - ld * kd);
        acc[2] = -2 * a3 * (l * m * (-ld * ld / a2 + md * md / a1) + (l * l / a2 - m * m / a1) * ld * md -
                            (l * ld / a2 + m * md / a1) * kd);
    } else {
        acc[1] = -2 * a3 / a1 * (-m * ld * ld + l * ld * md - ld * kd);
        acc[2] = -2 * a3 * (l * m / a2 * (md * md - ld * ld) + (l * l / a2 - m * m / a1) * ld * md - (l * ld + m * md) / a2);
    }
    return acc;
}

// a1 = a2 = gamma, a3 = delta, tau = delta / gamma
inline Vec rhs_heisenberg_eurj(double tau, const Vec& x, const Vec& v) {
    const double p = x[0], q = x[1], pd = v[0], qd = v[1], kd = v[2];
    return vec({-2 * tau * (-p * qd * qd + q * pd * qd + qd * kd),
                -2 * tau * (-q * pd * pd + p * pd * qd - pd * kd),
                -2 * tau * (p * q * (-pd * pd + qd * qd) + (p * p - q * q) * pd * qd - (p * pd + q * qd) * kd)});
}

// ---- integration ----

enum class Method { RK4Fixed, RKF45Adaptive };

struct IntegratorConfig {
    Method method = Method::RK4Fixed;
    double step = 1e-3;
    double atol = 1e-9, rtol = 1e-9;
    double t_end = 1;
    long max_steps = 10'000'000;
    double domain_floor = default_floor;
};

inline void check_config(const IntegratorConfig& c) {
    if (!(c.step > 0)) throw BadParams("step must be positive");
    if (!(c.atol > 0) || !(c.rtol > 0)) throw BadParams("atol and rtol must be positive");
    if (!(c.t_end > 0)) throw BadParams("t_end must be positive");
    if (c.max_steps < 1) throw BadParams("max_steps must be at least 1");
    if (!(c.domain_floor >= 0)) throw BadParams("domain_floor must be non-negative");
}

struct GeodesicSystem {
    SpaceId space;
    std::function<Vec(const Vec&, const Vec&)> accel;
    std::function<double(const Vec&, const Vec&)> energy;
};

inline GeodesicSystem make_system(SpaceId s, const ModelParams& mp, Provider pr = Provider::Auto) {
    auto G = make_provider(s, mp, pr);
    return {s, [G](const Vec& x, const Vec& v) { return acceleration(G(x), v); },
            [s, mp](const Vec& x, const Vec& v) { return energy(metric_raw(s, mp, x), v); }};
}

template <class Accel>
GeodesicSystem make_system(SpaceId s, const ModelParams& mp, Accel&& acc) {
    return {s, std::forward<Accel>(acc), [s, mp](const Vec& x, const Vec& v) { return energy(metric_raw(s, mp, x), v); }};
}

namespace detail {

struct Phase {
    Vec x, v;
};

// returns false when a stage leaves the chart
inline bool derivative(const GeodesicSystem& sys, const Phase& y, double floor, Phase& out) {
    if (!is_valid({sys.space, y.x}, floor)) return false;
    try {
        out.x = y.v;
        out.v = sys.accel(y.x, y.v);
    } catch (const DomainViolation&) {
        return false;
    }
    return out.v.allFinite();
}

inline Phase axpy(const Phase& y, double h, std::initializer_list<std::pair<double, const Phase*>> ks) {
    Phase r = y;
    for (auto& [c, k] : ks) {
        if (c == 0) continue;
        r.x += h * c * k->x;
        r.v += h * c * k->v;
    }
    return r;
}

inline bool rk4_step(const GeodesicSystem& sys, const Phase& y, double h, double floor, Phase& out) {
    Phase k1, k2, k3, k4;
    if (!derivative(sys, y, floor, k1)) return false;
    if (!derivative(sys, axpy(y, h, {{0.5, &k1}}), floor, k2)) return false;
    if (!derivative(sys, axpy(y, h, {{0.5, &k2}}), floor, k3)) return false;
    if (!derivative(sys, axpy(y, h, {{1.0, &k3}}), floor, k4)) return false;
    out = axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
    return is_valid({sys.space, out.x}, floor);
}

// Fehlberg 4(5), advancing with the fifth-order solution
inline bool rkf45_step(const GeodesicSystem& sys, const Phase& y, double h, double floor, Phase& out, Phase& err) {
    Phase k1, k2, k3, k4, k5, k6;
    if (!derivative(sys, y, floor, k1)) return false;
    if (!derivative(sys, axpy(y, h, {{1.0 / 4, &k1}}), floor, k2)) return false;
    if (!derivative(sys, axpy(y, h, {{3.0 / 32, &k1}, {9.0 / 32, &k2}}), floor, k3)) return false;
    if (!derivative(sys, axpy(y, h, {{1932.0 / 2197, &k1}, {-7200.0 / 2197, &k2}, {7296.0 / 2197, &k3}}), floor, k4))
        return false;
    if (!derivative(sys, axpy(y, h, {{439.0 / 216, &k1}, {-8.0, &k2}, {3680.0 / 513, &k3}, {-845.0 / 4104, &k4}}), floor, k5))
        return false;
    if (!derivative(sys,
                    axpy(y, h, {{-8.0 / 27, &k1}, {2.0, &k2}, {-3544.0 / 2565, &k3}, {1859.0 / 4104, &k4}, {-11.0 / 40, &k5}}),
                    floor, k6))
        return false;
    Phase y4 = axpy(y, h, {{25.0 / 216, &k1}, {1408.0 / 2565, &k3}, {2197.0 / 4104, &k4}, {-1.0 / 5, &k5}});
    out = axpy(y, h, {{16.0 / 135, &k1}, {6656.0 / 12825, &k3}, {28561.0 / 56430, &k4}, {-9.0 / 50, &k5}, {2.0 / 55, &k6}});
    err.x = out.x - y4.x;
    err.v = out.v - y4.v;
    return is_valid({sys.space, out.x}, floor);
}

}  // namespace detail

inline CurveSample integrate(const GeodesicSystem& sys, const GeodesicState& s0, const IntegratorConfig& cfg) {
    check_config(cfg);
    validate(s0.point, cfg.domain_floor);
    if (s0.point.coords.size() != s0.velocity.size()) throw Error("point and velocity dimensions differ");

    CurveSample out;
    auto record = [&](double t, const detail::Phase& y) {
        out.times.push_back(t);
        out.states.push_back({{sys.space, y.x}, y.v});
        out.energy.push_back(sys.energy(y.x, y.v));
    };
    detail::Phase y{s0.point.coords, s0.velocity};
    double t = 0;
    record(t, y);
    long steps = 0;

    if (cfg.method == Method::RK4Fixed) {
        const long n = static_cast<long>(std::ceil(cfg.t_end / cfg.step - 1e-9));
        if (n > cfg.max_steps) throw StepLimitExceeded(cfg.max_steps * cfg.step);
        for (long i = 1; i <= n; ++i) {
            const double tn = i == n ? cfg.t_end : i * cfg.step;
            detail::Phase next;
            if (!detail::rk4_step(sys, y, tn - t, cfg.domain_floor, next)) {
                out.domain_exit = true;
                out.exit_time = t;
                return out;
            }
            y = std::move(next);
            t = tn;
            record(t, y);
        }
        return out;
    }

    double h = std::min(cfg.step, cfg.t_end);
    while (t < cfg.t_end) {
        if (++steps > cfg.max_steps) throw StepLimitExceeded(t);
        const bool last = t + h >= cfg.t_end;
        const double hh = last ? cfg.t_end - t : h;
        detail::Phase next, err;
        if (!detail::rkf45_step(sys, y, hh, cfg.domain_floor, next, err)) {
            h = hh / 2;
            if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                out.domain_exit = true;
                out.exit_time = t;
                return out;
            }
            continue;
        }
        double e = 0;
        for (Eigen::Index i = 0; i < y.x.size(); ++i) {
            e = std::max(e, std::abs(err.x[i]) / (cfg.atol + cfg.rtol * std::max(std::abs(y.x[i]), std::abs(next.x[i]))));
            e = std::max(e, std::abs(err.v[i]) / (cfg.atol + cfg.rtol * std::max(std::abs(y.v[i]), std::abs(next.v[i]))));
        }
        const double factor = e == 0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
        if (e <= 1) {
            y = std::move(next);
            t = last ? cfg.t_end : t + hh;
            record(t, y);
        }
        h = hh * factor;
    }
    return out;
}

inline CurveSample integrate(SpaceId s, const ModelParams& mp, const GeodesicState& s0, const IntegratorConfig& cfg,
                             Provider pr = Provider::Auto) {
    return integrate(make_system(s, mp, pr), s0, cfg);
}

inline double relative_energy_drift(const CurveSample& c) {
    const double e0 = c.energy.front();
    double m = 0;
    for (double e : c.energy) m = std::max(m, std::abs(e - e0));
    return e0 == 0 ? m : m / std::abs(e0);
}

// ---- closed forms ----

struct CJet {
    cd f, df, ddf;
    bool stationary = false;
};

struct Jet {
    Vec x, dx, ddx;
};

inline CJet closed_form_disk(cd B, double t) {
    const double b = std::abs(B);
    if (b == 0) return {0.0, 0.0, 0.0, true};
    const double th = std::tanh(b * t), sech2 = 1 - th * th;
    return {B / b * th, B * sech2, -2.0 * B * b * sech2 * th};
}

// v = i (1 + w) / (1 - w)
inline CJet closed_form_halfplane(cd B, double t) {
    CJet w = closed_form_disk(B, t);
    const cd d = 1.0 - w.f;
    return {I * (1.0 + w.f) / d, 2.0 * I * w.df / (d * d), 2.0 * I * (w.ddf / (d * d) + 2.0 * w.df * w.df / (d * d * d)),
            w.stationary};
}

// (v, u) with u = (eta0 - conj(eta0) w) / (1 - w)
inline std::pair<CJet, CJet> closed_form_sj_particular(cd eta0, cd B, double t) {
    CJet w = closed_form_disk(B, t);
    CJet v = closed_form_halfplane(B, t);
    const cd d = 1.0 - w.f, c = eta0 - std::conj(eta0);
    CJet u{(eta0 - std::conj(eta0) * w.f) / d, c * w.df / (d * d), c * (w.ddf / (d * d) + 2.0 * w.df * w.df / (d * d * d)),
           w.stationary};
    return {v, u};
}

// (w, z) with z = eta0 - conj(eta0) w
inline std::pair<CJet, CJet> closed_form_disk_particular(cd eta0, cd B, double t) {
    CJet w = closed_form_disk(B, t);
    const cd e = std::conj(eta0);
    return {w, {eta0 - e * w.f, -e * w.df, -e * w.ddf, w.stationary}};
}

// interleaves complex jets into real coordinates
inline Jet realize(std::initializer_list<CJet> parts) {
    const auto n = static_cast<Eigen::Index>(2 * parts.size());
    Jet j{Vec(n), Vec(n), Vec(n)};
    Eigen::Index i = 0;
    for (const auto& c : parts) {
        j.x[i] = c.f.real();
        j.x[i + 1] = c.f.imag();
        j.dx[i] = c.df.real();
        j.dx[i + 1] = c.df.imag();
        j.ddx[i] = c.ddf.real();
        j.ddx[i + 1] = c.ddf.imag();
        i += 2;
    }
    return j;
}

// geodesics through the origin with initial velocity (r cos phi, r sin phi, sigma); needs a1 = a2
inline Jet closed_form_heisenberg(double r, double phi, double sigma, double t, const ModelParams& mp = heisenberg_params(1, 1, 1)) {
    if (mp.a1 != mp.a2) throw BadParams("closed-form Heisenberg geodesics need a1 = a2");
    Jet j{Vec(3), Vec(3), Vec(3)};
    if (sigma == 0) {
        if (std::abs(r - 1) > 1e-12) throw BadParams("sigma = 0 branch needs r = 1");
        j.x << std::cos(phi) * t, std::sin(phi) * t, 0;
        j.dx << std::cos(phi), std::sin(phi), 0;
        j.ddx.setZero();
        return j;
    }
    const double W = 2 * sigma * mp.a3 / mp.a1, th = W * t + phi;
    j.x << r / W * (std::sin(th) - std::sin(phi)), r / W * (std::cos(phi) - std::cos(th)),
        sigma * t + r * r / W * (t - std::sin(W * t) / W);
    j.dx << r * std::cos(th), r * std::sin(th), sigma + r * r / W * (1 - std::cos(W * t));
    j.ddx << -r * W * std::sin(th), r * W * std::cos(th), r * r * std::sin(W * t);
    return j;
}

// the printed three-line family for a = (1, 1, 1); exact only when r^2 + sigma^2 = 1
inline Jet heisi_printed(double r, double phi, double sigma, double t) {
    Jet j{Vec(3), Vec(3), Vec(3)};
    const double th = 2 * sigma * t + phi, s2 = sigma * sigma;
    j.x << r / (2 * sigma) * (std::sin(th) - std::sin(phi)), r / (2 * sigma) * (std::cos(phi) - std::cos(th)),
        (1 + s2) / (2 * sigma) * t - (1 - s2) / (4 * s2) * std::sin(2 * sigma * t);
    j.dx << r * std::cos(th), r * std::sin(th), (1 + s2) / (2 * sigma) - (1 - s2) / (2 * sigma) * std::cos(2 * sigma * t);
    j.ddx << -2 * sigma * r * std::sin(th), 2 * sigma * r * std::cos(th), (1 - s2) * std::sin(2 * sigma * t);
    return j;
}

// ---- residuals of x'' + G(x', x') ----

inline ResidualReport residual(const ChristoffelFn& G, const std::vector<Jet>& curve, std::string name = "residual") {
    ResidualReport r;
    r.check_name = std::move(name);
    for (const auto& j : curve) r.absorb(j.ddx - acceleration(G(j.x), j.dx));
    return r;
}

inline ResidualReport residual(SpaceId s, const ModelParams& mp, const std::vector<Jet>& curve, std::string name = "residual") {
    return residual(make_provider(s, mp), curve, std::move(name));
}

// fourth-order central differences on uniformly spaced samples; the two end samples on each side are skipped
inline std::vector<Jet> differentiate_samples(const std::vector<double>& times, const std::vector<Vec>& xs) {
    const std::size_t n = times.size();
    if (n < 5) throw Error("need at least 5 samples");
    const double h = (times.back() - times.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * std::max(1.0, h)) throw Error("samples must be uniformly spaced");
    std::vector<Jet> out;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const Vec &a = xs[i - 2], &b = xs[i - 1], &c = xs[i], &d = xs[i + 1], &e = xs[i + 2];
        out.push_back({c, (a - 8 * b + 8 * d - e) / (12 * h), (-a + 16 * b - 30 * c + 16 * d - e) / (12 * h * h)});
    }
    return out;
}

inline ResidualReport residual(const ChristoffelFn& G, const CurveSample& c, std::string name = "residual") {
    std::vector<Vec> xs;
    for (const auto& s : c.states) xs.push_back(s.point.coords);
    return residual(G, differentiate_samples(c.times, xs), std::move(name));
}

}  // namespace jgeo
