#pragma once

#include <functional>

#include "metrics.hpp"

namespace jgeo {

inline double default_step(const Vec& x) { return 1e-6 * std::max(1.0, x.cwiseAbs().maxCoeff()); }

// dg[i] = d g / d x^i, central differences with one Richardson step
template <class MetricFn>
std::vector<Mat> metric_derivatives(MetricFn&& g, const Vec& x, double step = 0) {
    const double h = step > 0 ? step : default_step(x);
    const auto n = x.size();
    std::vector<Mat> dg;
    dg.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        auto central = [&](double hh) {
            Vec xp = x, xm = x;
            xp[i] += hh;
            xm[i] -= hh;
            return Mat((g(xp) - g(xm)) / (2 * hh));
        };
        Mat d1 = central(h), d2 = central(h / 2);
        dg.push_back((4 * d2 - d1) / 3);
    }
    return dg;
}

inline ChristoffelTable christoffel_from(const Mat& gi, const std::vector<Mat>& dg) {
    const int n = static_cast<int>(gi.rows());
    ChristoffelTable G(n);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) s += gi(m, k) * (dg[j](k, i) + dg[i](k, j) - dg[k](i, j));
                G.set(m, i, j, 0.5 * s);
            }
    return G;
}

template <class MetricFn>
ChristoffelTable christoffel_of(MetricFn&& g, const Vec& x, double step = 0) {
    Mat gi = checked_inverse(g(x));
    return christoffel_from(gi, metric_derivatives(g, x, step));
}

inline ChristoffelTable christoffel_numeric(SpaceId s, const ModelParams& mp, const ChartPoint& p, double step = 0) {
    validate(p);
    auto g = [&](const Vec& c) {
        validate({s, c});
        return metric_raw(s, mp, c);
    };
    ChristoffelTable G = christoffel_from(inverse_metric_raw(s, mp, p.coords), metric_derivatives(g, p.coords, step));
    G.symmetrize();
    return G;
}

enum class TableVariant { Corrected, AsPrinted };

inline ChristoffelTable christoffel_sj_raw(double eps, const Vec& c) {
    const double x = c[0], y = c[1];
    enum { X, Y, P, Q };
    ChristoffelTable G(4);
    G.set(X, X, Y, -1 / y);
    G.set(X, P, P, -eps * x * y);
    G.set(X, P, Q, -eps * y / 2);
    G.set(Y, X, X, 1 / y);
    G.set(Y, Y, Y, -1 / y);
    G.set(Y, P, P, eps / 2 * (x * x - y * y));
    G.set(Y, P, Q, eps / 2 * x);
    G.set(Y, Q, Q, eps / 2);
    G.set(P, X, P, x / (2 * y * y));
    G.set(P, X, Q, 1 / (2 * y * y));
    G.set(P, Y, P, 1 / (2 * y));
    G.set(Q, X, P, (y * y - x * x) / (2 * y * y));
    G.set(Q, X, Q, -x / (2 * y * y));
    G.set(Q, Y, P, -x / y);
    G.set(Q, Y, Q, -1 / (2 * y));
    return G;
}

inline ChristoffelTable christoffel_ext_raw(double eps, double tau, const Vec& c, TableVariant v) {
    const double x = c[0], y = c[1], p = c[2], q = c[3];
    const double S = x * x + y * y, xi = p * x + q;
    enum { X, Y, P, Q, K };
    ChristoffelTable sj = christoffel_sj_raw(eps, c);
    ChristoffelTable G(5);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d) G(a, b, d) = sj(a, b, d);
    G.set(P, P, P, G(P, P, P) + 2 * tau * x * q / y);
    G.set(P, P, Q, G(P, P, Q) + tau * (q - p * x) / y);
    G.set(P, P, K, tau * x / y);
    G.set(P, Q, Q, G(P, Q, Q) - 2 * tau * p / y);
    G.set(P, Q, K, tau / y);
    G.set(Q, P, P, G(Q, P, P) - 2 * tau * q * S / y);
    G.set(Q, P, Q, G(Q, P, Q) + tau * (-x * q + p * S) / y);
    G.set(Q, P, K, -tau * S / y);
    G.set(Q, Q, Q, G(Q, Q, Q) + 2 * tau * x * p / y);
    G.set(Q, Q, K, -tau * x / y);
    G.set(K, X, P, (p * y * y - x * xi) / (2 * y * y));
    G.set(K, X, Q, -xi / (2 * y * y));
    G.set(K, Y, P, -(2 * p * x + q) / (2 * y));
    G.set(K, Y, Q, -p / (2 * y));
    G.set(K, P, P, -2 * tau * q / y * (p * S + q * x));
    G.set(K, P, Q, tau * (p * p * S - q * q) / y);
    G.set(K, P, K, -tau * (p * S + q * x) / y);
    G.set(K, Q, Q, 2 * tau * p * xi / y);
    G.set(K, Q, K, v == TableVariant::Corrected ? -tau * xi / y : -tau * xi * y / y);
    return G;
}

inline ChristoffelTable christoffel_heisenberg_raw(const ModelParams& mp, const Vec& c) {
    const double l = c[0], m = c[1], r1 = mp.a3 / mp.a1, r2 = mp.a3 / mp.a2;
    enum { L, M, K };
    ChristoffelTable G(3);
    G.set(L, L, M, r1 * m);
    G.set(L, M, M, -2 * r1 * l);
    G.set(L, M, K, r1);
    G.set(M, L, L, -2 * r2 * m);
    G.set(M, L, M, r2 * l);
    G.set(M, L, K, -r2);
    G.set(K, L, L, -2 * r2 * l * m);
    G.set(K, L, M, mp.a3 * (l * l / mp.a2 - m * m / mp.a1));
    G.set(K, L, K, -r2 * l);
    G.set(K, M, M, 2 * r1 * l * m);
    G.set(K, M, K, -r1 * m);
    return G;
}

inline ChristoffelTable christoffel_analytic(SpaceId s, const ModelParams& mp, const ChartPoint& p,
                                             TableVariant v = TableVariant::Corrected) {
    validate(p);
    switch (s) {
        case SpaceId::UpperHalf2: return christoffel_sj_raw(0, vec({p.coords[0], p.coords[1], 0, 0})).restrict_to({0, 1});
        case SpaceId::SJHalfPlane4: return christoffel_sj_raw(mp.epsilon, p.coords);
        case SpaceId::ExtSJHalfPlane5: return christoffel_ext_raw(mp.epsilon, mp.tau, p.coords, v);
        case SpaceId::Heisenberg3: return christoffel_heisenberg_raw(mp, p.coords);
        default: throw Unsupported("no analytic Christoffel table for " + space_name(s));
    }
}

struct ComplexChristoffel {
    int n = 0;
    std::vector<cd> symbols;

    ComplexChristoffel() = default;
    explicit ComplexChristoffel(int dim) : n(dim), symbols(static_cast<std::size_t>(dim * dim * dim)) {}

    cd& operator()(int i, int j, int k) { return symbols[static_cast<std::size_t>((i * n + j) * n + k)]; }
    cd operator()(int i, int j, int k) const { return symbols[static_cast<std::size_t>((i * n + j) * n + k)]; }

    void set(int i, int j, int k, cd v) {
        (*this)(i, j, k) = v;
        (*this)(i, k, j) = v;
    }
};

// index 0 = v, 1 = u; point in (x, y, xi, rho)
inline ComplexChristoffel christoffel_complex_halfplane(const ModelParams& mp, const ChartPoint& p,
                                                        TableVariant var = TableVariant::Corrected) {
    if (p.space != SpaceId::SJHalfPlaneUV4) throw Unsupported("complex half-plane table needs an sj_half_plane_uv point");
    validate(p);
    const double y = p.coords[1], r = p.coords[3] / y, io = mp.iota;
    enum { V, U };
    ComplexChristoffel G(2);
    G.set(V, U, U, I / io);
    G.set(V, U, V, -I * r / io);
    G.set(V, V, V, I * (1 / y + r * r / io));
    G.set(U, V, V, I * r * r * r / io);
    if (var == TableVariant::Corrected) {
        G.set(U, U, U, I * r / io);
        G.set(U, U, V, 0.5 * I * (1 / y - 2 * r * r / io));
    } else {
        G.set(U, U, U, -I * r / io);
        G.set(U, U, V, 0.5 * I * (1 / y - 2 * r * r / y));
    }
    return G;
}

// index 0 = w, 1 = z; point in (alpha, beta, m, n)
inline ComplexChristoffel christoffel_complex_disk(const ModelParams& mp, const ChartPoint& p) {
    if (p.space != SpaceId::DiskComplex) throw Unsupported("complex disk table needs a disk_complex point");
    validate(p);
    auto d = disk_vars_complex(p.coords);
    const cd eb = std::conj(d.eta), wb = std::conj(d.w) / d.P;
    const double j = mp.j;
    enum { W, Z };
    ComplexChristoffel G(2);
    G.set(W, W, W, 2.0 * wb + j * eb * eb);
    G.set(W, W, Z, j * eb);
    G.set(W, Z, Z, j);
    G.set(Z, Z, Z, -j * eb);
    G.set(Z, Z, W, wb - j * eb * eb);
    G.set(Z, W, W, -j * eb * eb * eb);
    return G;
}

inline ComplexChristoffel christoffel_complex_siegel_disk(const ModelParams&, const ChartPoint& p) {
    if (p.space != SpaceId::SiegelDisk2) throw Unsupported("siegel disk table needs a siegel_disk point");
    validate(p);
    const cd w(p.coords[0], p.coords[1]);
    ComplexChristoffel G(1);
    G(0, 0, 0) = 2.0 * std::conj(w) / (1 - std::norm(w));
    return G;
}

// real table in interleaved coordinates (Re z_0, Im z_0, Re z_1, Im z_1, ...)
inline ChristoffelTable complex_to_real(const ComplexChristoffel& G) {
    ChristoffelTable R(2 * G.n);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j)
            for (int k = 0; k < G.n; ++k) {
                const double re = G(i, j, k).real(), im = G(i, j, k).imag();
                const int x = 2 * i, y = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
                R(x, xj, xk) = re;
                R(y, yj, xk) = re;
                R(x, yj, yk) = -re;
                R(x, xj, yk) = -im;
                R(y, xj, xk) = im;
                R(y, yj, yk) = -im;
                R(x, yj, xk) = -im;
                R(y, xj, yk) = re;
            }
    R.symmetrize();
    return R;
}

// Analytic: closed-form tables only; Auto falls back to finite differences where none exists
enum class Provider { Auto, Analytic, Numeric };

inline ChristoffelTable christoffel(SpaceId s, const ModelParams& mp, const ChartPoint& p, Provider pr = Provider::Auto) {
    if (pr == Provider::Numeric) return christoffel_numeric(s, mp, p);
    switch (s) {
        case SpaceId::UpperHalf2:
        case SpaceId::SJHalfPlane4:
        case SpaceId::ExtSJHalfPlane5:
        case SpaceId::Heisenberg3: return christoffel_analytic(s, mp, p);
        case SpaceId::SiegelDisk2: return complex_to_real(christoffel_complex_siegel_disk(mp, p));
        case SpaceId::DiskComplex: return complex_to_real(christoffel_complex_disk(mp, p));
        case SpaceId::DiskReal4: {
            ChartPoint pc{SpaceId::DiskComplex, Vec(4)};
            for (int i = 0; i < 4; ++i) pc.coords[i] = p.coords[complex_to_real_index[i]];
            return complex_to_real(christoffel_complex_disk(mp, pc)).restrict_to({2, 3, 0, 1});
        }
        case SpaceId::SJHalfPlaneUV4: return complex_to_real(christoffel_complex_halfplane(mp, p));
        case SpaceId::JacobiFull6:
            if (pr == Provider::Analytic) throw Unsupported("no closed-form Christoffel table for " + space_name(s));
            return christoffel_numeric(s, mp, p);
    }
    throw Unsupported("christoffel for " + space_name(s));
}

// Gamma' in x' = f(x): J = df/dx, H[a](j,k) = d^2 f^a / dx^j dx^k
inline ChristoffelTable transform_christoffel(const ChristoffelTable& G, const Mat& J, const std::vector<Mat>& H) {
    const int n = G.n;
    Mat K = J.inverse();
    ChristoffelTable out(n);
    for (int a = 0; a < n; ++a) {
        Mat A = Mat::Zero(n, n);  // A(j,k) = J^a_i G^i_jk - H^a_jk
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = -H[static_cast<std::size_t>(a)](j, k);
                for (int i = 0; i < n; ++i) s += J(a, i) * G(i, j, k);
                A(j, k) = s;
            }
        Mat B = K.transpose() * A * K;
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) out(a, b, c) = B(b, c);
    }
    out.symmetrize();
    return out;
}

// metric compatibility: max |d_k g_ij - G^l_ki g_lj - G^l_kj g_il|
template <class MetricFn>
double metric_compatibility_defect(MetricFn&& g, const ChristoffelTable& G, const Vec& x, double step = 1e-5) {
    Mat g0 = g(x);
    auto dg = metric_derivatives(g, x, step);
    const int n = G.n;
    double m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = dg[static_cast<std::size_t>(k)](i, j);
                for (int l = 0; l < n; ++l) s -= G(l, k, i) * g0(l, j) + G(l, k, j) * g0(i, l);
                m = std::max(m, std::abs(s));
            }
    return m;
}

}  // namespace jgeo
