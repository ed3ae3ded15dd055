#pragma once

#include <optional>

#include "core.hpp"

namespace jgeo {

using HMat = Eigen::Matrix2cd;

// disk helpers: w = alpha + i beta, z = m + i n
struct DiskVars {
    cd w, z;
    double P, C, D;
    cd eta;
};

inline DiskVars disk_vars(double m, double n, double a, double b) {
    DiskVars d;
    d.w = {a, b};
    d.z = {m, n};
    d.P = 1 - a * a - b * b;
    d.C = (1 + a) * m + n * b;
    d.D = (1 - a) * n + m * b;
    d.eta = cd(d.C, d.D) / d.P;
    return d;
}

// (alpha, beta, m, n) -> DiskVars
inline DiskVars disk_vars_complex(const Vec& c) { return disk_vars(c[2], c[3], c[0], c[1]); }
inline DiskVars disk_vars_real(const Vec& c) { return disk_vars(c[0], c[1], c[2], c[3]); }

// index of DiskComplex coordinate i inside DiskReal4
inline constexpr std::array<int, 4> complex_to_real_index{2, 3, 0, 1};

// Real form of a Hermitian metric h_{a b-bar} in interleaved coordinates (Re z_0, Im z_0, Re z_1, ...)
inline Mat realify(const Eigen::MatrixXcd& h) {
    const auto n = h.rows();
    Mat g(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            g(2 * a, 2 * b) = h(a, b).real();
            g(2 * a + 1, 2 * b + 1) = h(a, b).real();
            g(2 * a, 2 * b + 1) = h(a, b).imag();
            g(2 * b + 1, 2 * a) = h(a, b).imag();
        }
    return g;
}

// rows/cols ordered (z, w)
inline HMat hermitian_disk_raw(const ModelParams& mp, const DiskVars& d) {
    HMat h;
    h(0, 0) = mp.nu / d.P;
    h(0, 1) = mp.nu * d.eta / d.P;
    h(1, 0) = std::conj(h(0, 1));
    h(1, 1) = 2 * mp.k / (d.P * d.P) + mp.nu * std::norm(d.eta) / d.P;
    return h;
}

// rows/cols ordered (u, v); c = (x, y, xi, rho)
inline HMat hermitian_halfplane_raw(const ModelParams& mp, const Vec& c) {
    const double y = c[1], r = c[3] / y;
    HMat h;
    h(0, 0) = mp.nu / y;
    h(0, 1) = -mp.nu * r / y;
    h(1, 0) = h(0, 1);
    h(1, 1) = mp.k / (2 * y * y) + mp.nu * r * r / y;
    return h;
}

inline Mat metric_disk_real(const ModelParams& mp, const Vec& c) {
    auto d = disk_vars_real(c);
    const double P = d.P, nu = mp.nu;
    Mat g = Mat::Zero(4, 4);
    g(0, 0) = g(1, 1) = nu / P;
    g(2, 2) = g(3, 3) = 2 * mp.k / (P * P) + nu * (d.C * d.C + d.D * d.D) / (P * P * P);
    g(0, 2) = g(2, 0) = g(1, 3) = g(3, 1) = nu * d.C / (P * P);
    g(0, 3) = g(3, 0) = nu * d.D / (P * P);
    g(1, 2) = g(2, 1) = -nu * d.D / (P * P);
    return g;
}

// (x, y, theta, p, q, kappa); zero parameters give the degenerate forms
inline Mat metric_jacobi_raw(double alpha, double beta, double gamma, double delta, const Vec& c) {
    const double x = c[0], y = c[1], p = c[3], q = c[4];
    const double S = x * x + y * y;
    Mat g = Mat::Zero(6, 6);
    g(0, 0) = (alpha + beta) / (y * y);
    g(1, 1) = alpha / (y * y);
    g(0, 2) = g(2, 0) = 2 * beta / y;
    g(2, 2) = 4 * beta;
    g(3, 3) = gamma * S / y + delta * q * q;
    g(3, 4) = g(4, 3) = gamma * x / y - delta * p * q;
    g(4, 4) = gamma / y + delta * p * p;
    g(3, 5) = g(5, 3) = delta * q;
    g(4, 5) = g(5, 4) = -delta * p;
    g(5, 5) = delta;
    return g;
}

inline Mat metric_raw(SpaceId s, const ModelParams& mp, const Vec& c) {
    switch (s) {
        case SpaceId::UpperHalf2: {
            const double f = mp.alpha / (c[1] * c[1]);
            return Mat::Identity(2, 2) * f;
        }
        case SpaceId::SiegelDisk2: {
            const double P = 1 - c[0] * c[0] - c[1] * c[1];
            return Mat::Identity(2, 2) * (2 * mp.k / (P * P));
        }
        case SpaceId::SJHalfPlane4: {
            const double x = c[0], y = c[1], S = x * x + y * y;
            Mat g = Mat::Zero(4, 4);
            g(0, 0) = g(1, 1) = mp.alpha / (y * y);
            g(2, 2) = mp.gamma * S / y;
            g(2, 3) = g(3, 2) = mp.gamma * x / y;
            g(3, 3) = mp.gamma / y;
            return g;
        }
        case SpaceId::ExtSJHalfPlane5: {
            const double x = c[0], y = c[1], p = c[2], q = c[3], S = x * x + y * y, de = mp.delta;
            Mat g = Mat::Zero(5, 5);
            g(0, 0) = g(1, 1) = mp.alpha / (y * y);
            g(2, 2) = mp.gamma * S / y + de * q * q;
            g(2, 3) = g(3, 2) = mp.gamma * x / y - de * p * q;
            g(3, 3) = mp.gamma / y + de * p * p;
            g(2, 4) = g(4, 2) = de * q;
            g(3, 4) = g(4, 3) = -de * p;
            g(4, 4) = de;
            return g;
        }
        case SpaceId::JacobiFull6: return metric_jacobi_raw(mp.alpha, mp.beta, mp.gamma, mp.delta, c);
        case SpaceId::Heisenberg3: {
            const double l = c[0], m = c[1];
            Mat g(3, 3);
            g << mp.a1 + mp.a3 * m * m, -mp.a3 * l * m, mp.a3 * m,
                 -mp.a3 * l * m, mp.a2 + mp.a3 * l * l, -mp.a3 * l,
                 mp.a3 * m, -mp.a3 * l, mp.a3;
            return g;
        }
        case SpaceId::DiskReal4: return metric_disk_real(mp, c);
        case SpaceId::DiskComplex: {
            Vec r(4);
            for (int i = 0; i < 4; ++i) r[complex_to_real_index[i]] = c[i];
            Mat gr = metric_disk_real(mp, r);
            Mat g(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) g(i, j) = gr(complex_to_real_index[i], complex_to_real_index[j]);
            return g;
        }
        case SpaceId::SJHalfPlaneUV4: {
            HMat h = hermitian_halfplane_raw(mp, c);
            Eigen::Matrix2cd hv;  // reorder to (v, u)
            hv << h(1, 1), h(1, 0), h(0, 1), h(0, 0);
            return realify(hv);
        }
    }
    throw Unsupported("metric for " + space_name(s));
}

inline Mat metric_at(SpaceId s, const ModelParams& mp, const ChartPoint& p) {
    validate(p);
    return metric_raw(s, mp, p.coords);
}

inline Mat metric_at(const ModelParams& mp, const ChartPoint& p) { return metric_at(p.space, mp, p); }

inline HMat metric_hermitian_disk(const ModelParams& mp, const ChartPoint& p) {
    if (p.space != SpaceId::DiskComplex) throw Unsupported("hermitian disk metric needs a disk_complex point");
    validate(p);
    return hermitian_disk_raw(mp, disk_vars_complex(p.coords));
}

inline HMat metric_hermitian_halfplane(const ModelParams& mp, const ChartPoint& p) {
    if (p.space != SpaceId::SJHalfPlaneUV4) throw Unsupported("hermitian half-plane metric needs an sj_half_plane_uv point");
    validate(p);
    return hermitian_halfplane_raw(mp, p.coords);
}

inline double energy(const Mat& g, const Vec& v) { return v.dot(g * v); }

inline double inverse_residual(const Mat& g, const Mat& gi) {
    return (g * gi - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// printed form of g^{kappa kappa}, kept for reporting
inline double heisenberg_inverse_kk_printed(const ModelParams& mp, double lambda, double mu) {
    return 1 / mp.a3 + (lambda * lambda / mp.a2 - mu * mu / mp.a1);
}

inline std::optional<Mat> inverse_closed_form(SpaceId s, const ModelParams& mp, const Vec& c) {
    switch (s) {
        case SpaceId::UpperHalf2: return Mat(Mat::Identity(2, 2) * (c[1] * c[1] / mp.alpha));
        case SpaceId::SJHalfPlane4:
        case SpaceId::ExtSJHalfPlane5: {
            const double x = c[0], y = c[1], p = c[2], q = c[3], S = x * x + y * y, gy = mp.gamma * y;
            const int n = s == SpaceId::SJHalfPlane4 ? 4 : 5;
            Mat gi = Mat::Zero(n, n);
            gi(0, 0) = gi(1, 1) = y * y / mp.alpha;
            gi(2, 2) = 1 / gy;
            gi(2, 3) = gi(3, 2) = -x / gy;
            gi(3, 3) = S / gy;
            if (n == 5) {
                const double xi = p * x + q;
                gi(2, 4) = gi(4, 2) = -xi / gy;
                gi(3, 4) = gi(4, 3) = (p * S + q * x) / gy;
                gi(4, 4) = 1 / mp.delta + (xi * xi + p * p * y * y) / gy;
            }
            return gi;
        }
        case SpaceId::Heisenberg3: {
            const double l = c[0], m = c[1];
            Mat gi = Mat::Zero(3, 3);
            gi(0, 0) = 1 / mp.a1;
            gi(1, 1) = 1 / mp.a2;
            gi(0, 2) = gi(2, 0) = -m / mp.a1;
            gi(1, 2) = gi(2, 1) = l / mp.a2;
            gi(2, 2) = 1 / mp.a3 + l * l / mp.a2 + m * m / mp.a1;
            return gi;
        }
        default: return std::nullopt;
    }
}

inline Mat numeric_inverse(const Mat& g) { return g.fullPivLu().inverse(); }

inline Mat checked_inverse(const Mat& g, std::optional<Mat> closed = std::nullopt) {
    Mat gi = closed ? *closed : numeric_inverse(g);
    const double r = inverse_residual(g, gi);
    if (!(r <= 1e-8)) throw SingularMetric(r);
    return gi;
}

inline Mat inverse_metric_raw(SpaceId s, const ModelParams& mp, const Vec& c) {
    return checked_inverse(metric_raw(s, mp, c), inverse_closed_form(s, mp, c));
}

inline Mat inverse_metric_at(SpaceId s, const ModelParams& mp, const ChartPoint& p) {
    validate(p);
    return inverse_metric_raw(s, mp, p.coords);
}

struct DetResult {
    double computed = 0;
    std::optional<double> closed_form;
    double rel_error() const { return closed_form ? std::abs(computed - *closed_form) / std::abs(*closed_form) : 0.0; }
};

inline std::optional<double> det_closed_form(SpaceId s, const ModelParams& mp, const Vec& c) {
    auto sq = [](double v) { return v * v; };
    switch (s) {
        case SpaceId::DiskComplex: {
            const double P = 1 - c[0] * c[0] - c[1] * c[1];
            return 2 * mp.k * mp.nu / (P * P * P);
        }
        case SpaceId::DiskReal4: {
            const double P = 1 - c[2] * c[2] - c[3] * c[3];
            return sq(2 * mp.k * mp.nu / (P * P * P));
        }
        case SpaceId::SiegelDisk2: {
            const double P = 1 - c[0] * c[0] - c[1] * c[1];
            return sq(2 * mp.k / (P * P));
        }
        case SpaceId::UpperHalf2: return sq(mp.alpha / (c[1] * c[1]));
        case SpaceId::SJHalfPlane4: return sq(mp.alpha * mp.gamma / (c[1] * c[1]));
        case SpaceId::SJHalfPlaneUV4: return sq(mp.k * mp.nu / (2 * c[1] * c[1] * c[1]));
        case SpaceId::ExtSJHalfPlane5: return mp.delta * sq(mp.alpha * mp.gamma / (c[1] * c[1]));
        case SpaceId::JacobiFull6: return 4 * sq(mp.alpha * mp.gamma) * mp.beta * mp.delta / sq(c[1] * c[1]);
        case SpaceId::Heisenberg3: return mp.a1 * mp.a2 * mp.a3;
    }
    return std::nullopt;
}

// DiskComplex reports the determinant of the Hermitian matrix; the real form squares it
inline DetResult metric_det(SpaceId s, const ModelParams& mp, const ChartPoint& p, double tol = 1e-10) {
    validate(p);
    DetResult r;
    if (s == SpaceId::DiskComplex)
        r.computed = hermitian_disk_raw(mp, disk_vars_complex(p.coords)).determinant().real();
    else
        r.computed = metric_raw(s, mp, p.coords).determinant();
    r.closed_form = det_closed_form(s, mp, p.coords);
    if (r.closed_form && !(r.rel_error() <= tol)) throw DetMismatch(r.computed, *r.closed_form);
    return r;
}

}  // namespace jgeo
