#pragma once

#include "geodesics.hpp"
#include "transforms.hpp"

namespace jgeo {

enum class CaseName { CayleyDiskToHalfPlane, PhiPartialCayley, UVPQChart, Phi1SecondPartialCayley, Identity };

inline const std::vector<CaseName>& mapping_cases() {
    static const std::vector<CaseName> v{CaseName::CayleyDiskToHalfPlane, CaseName::PhiPartialCayley, CaseName::UVPQChart,
                                         CaseName::Phi1SecondPartialCayley};
    return v;
}

struct MappingCase {
    CaseName name;
    std::string label;
    SpaceId source, target;
    ModelParams src, tgt;
};

// alpha = k/2, gamma = nu on both sides; alpha_scale != 1 breaks the link on the target
inline MappingCase make_case(CaseName c, double k = 1, double nu = 1, double alpha_scale = 1) {
    auto side = [&](SpaceId s, double scale) {
        ModelParams p = from_k_nu(k * scale, nu);
        if (s == SpaceId::UpperHalf2 || s == SpaceId::SiegelDisk2) p.gamma = 0;
        return derive_params(p, s);
    };
    auto mk = [&](std::string label, SpaceId s, SpaceId t) {
        return MappingCase{c, std::move(label), s, t, side(s, 1), side(t, alpha_scale)};
    };
    switch (c) {
        case CaseName::CayleyDiskToHalfPlane: return mk("cayley_disk_to_half_plane", SpaceId::SiegelDisk2, SpaceId::UpperHalf2);
        case CaseName::PhiPartialCayley: return mk("phi_partial_cayley", SpaceId::DiskComplex, SpaceId::SJHalfPlaneUV4);
        case CaseName::UVPQChart: return mk("uvpq_chart", SpaceId::SJHalfPlaneUV4, SpaceId::SJHalfPlane4);
        case CaseName::Phi1SecondPartialCayley: return mk("phi1_second_partial_cayley", SpaceId::DiskReal4, SpaceId::SJHalfPlane4);
        case CaseName::Identity: return mk("identity", SpaceId::SJHalfPlane4, SpaceId::SJHalfPlane4);
    }
    throw Unsupported("unknown mapping case");
}

namespace detail {

inline Mat xirho_jacobian(const Vec& c) {
    const double x = c[0], y = c[1], rho = c[3];
    Mat J = Mat::Zero(4, 4);
    J(0, 0) = 1;
    J(1, 1) = 1;
    J(2, 1) = -rho / (y * y);
    J(2, 3) = 1 / y;
    J(3, 0) = -rho / y;
    J(3, 1) = x * rho / (y * y);
    J(3, 2) = 1;
    J(3, 3) = -x / y;
    return J;
}

inline Mat phi_jacobian(const Vec& c) {
    const cd w(c[0], c[1]), z(c[2], c[3]), d = 1.0 - w;
    Eigen::Matrix2cd D;
    D << 2.0 * I / (d * d), 0.0, z / (d * d), 1.0 / d;
    return holomorphic_jacobian(D);
}

inline Mat disk_perm() {
    Mat P = Mat::Zero(4, 4);  // d(alpha, beta, m, n) / d(m, n, alpha, beta)
    for (int i = 0; i < 4; ++i) P(i, complex_to_real_index[static_cast<std::size_t>(i)]) = 1;
    return P;
}

}  // namespace detail

inline Vec case_forward(const MappingCase& mc, const Vec& x) {
    switch (mc.name) {
        case CaseName::CayleyDiskToHalfPlane: {
            cd v = cayley_inv({x[0], x[1]});
            return vec({v.real(), v.imag()});
        }
        case CaseName::PhiPartialCayley: {
            auto [v, u] = partial_cayley_inv({x[0], x[1]}, {x[2], x[3]});
            return vec({v.real(), v.imag(), u.real(), u.imag()});
        }
        case CaseName::UVPQChart: return xirho_to_uvpq(x);
        case CaseName::Phi1SecondPartialCayley: {
            Vec c = disk_real_to_complex(x);
            auto [v, u] = partial_cayley_inv({c[0], c[1]}, {c[2], c[3]});
            return xirho_to_uvpq(vec({v.real(), v.imag(), u.real(), u.imag()}));
        }
        case CaseName::Identity: return x;
    }
    throw Unsupported("unknown mapping case");
}

// exact Jacobian d f / d x
inline Mat case_jacobian(const MappingCase& mc, const Vec& x) {
    switch (mc.name) {
        case CaseName::CayleyDiskToHalfPlane: {
            const cd d = 1.0 - cd(x[0], x[1]);
            Eigen::MatrixXcd D(1, 1);
            D(0, 0) = 2.0 * I / (d * d);
            return holomorphic_jacobian(D);
        }
        case CaseName::PhiPartialCayley: return detail::phi_jacobian(x);
        case CaseName::UVPQChart: return detail::xirho_jacobian(x);
        case CaseName::Phi1SecondPartialCayley: {
            Vec c = disk_real_to_complex(x);
            auto [v, u] = partial_cayley_inv({c[0], c[1]}, {c[2], c[3]});
            Vec uv = vec({v.real(), v.imag(), u.real(), u.imag()});
            return detail::xirho_jacobian(uv) * detail::phi_jacobian(c) * detail::disk_perm();
        }
        case CaseName::Identity: return Mat::Identity(x.size(), x.size());
    }
    throw Unsupported("unknown mapping case");
}

inline Mat pullback_raw(const MappingCase& mc, const Vec& x) {
    validate({mc.source, x});
    Vec fx = case_forward(mc, x);
    Mat J = case_jacobian(mc, x);
    return J.transpose() * metric_at(mc.target, mc.tgt, {mc.target, fx}) * J;
}

inline Mat pullback_metric(const MappingCase& mc, const ChartPoint& p) { return pullback_raw(mc, p.coords); }

// same pullback through the numeric Jacobian
inline Mat pullback_metric_numeric(const MappingCase& mc, const ChartPoint& p) {
    validate(p);
    Mat J = numeric_jacobian([&](const Vec& c) { return case_forward(mc, c); }, p.coords);
    return J.transpose() * metric_at(mc.target, mc.tgt, {mc.target, case_forward(mc, p.coords)}) * J;
}

inline double isometry_defect(const MappingCase& mc, const ChartPoint& p) {
    return (pullback_metric(mc, p) - metric_at(mc.source, mc.src, p)).cwiseAbs().maxCoeff();
}

// Psi = [ln det g~(f(x)) + 2 ln|J| - ln det g(x)] / (2(n+1))
inline double psi_potential(const MappingCase& mc, const Vec& x) {
    validate({mc.source, x});
    const double n = static_cast<double>(x.size());
    const Vec fx = case_forward(mc, x);
    const double dt = metric_raw(mc.target, mc.tgt, fx).determinant();
    const double ds = metric_raw(mc.source, mc.src, x).determinant();
    const double J = case_jacobian(mc, x).determinant();
    return (std::log(std::abs(dt)) + 2 * std::log(std::abs(J)) - std::log(std::abs(ds))) / (2 * (n + 1));
}

inline Vec psi_gradient(const MappingCase& mc, const Vec& x) {
    const double h = 1e-5 * std::max(1.0, x.cwiseAbs().maxCoeff());
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (psi_potential(mc, xp) - psi_potential(mc, xm)) / (2 * h);
    }
    return g;
}

struct LeviCivitaReport {
    ResidualReport report;
    Vec psi;
    double psi_max = 0;
};

inline LeviCivitaReport levi_civita_residual(const MappingCase& mc, const ChartPoint& p) {
    validate(p);
    const Vec& x = p.coords;
    const int n = static_cast<int>(x.size());
    const double h = 1e-4 * std::max(1.0, x.cwiseAbs().maxCoeff());
    ChristoffelTable Gt = christoffel_of([&](const Vec& c) { return pullback_raw(mc, c); }, x, h);
    ChristoffelTable G = christoffel(mc.source, mc.src, p);
    LeviCivitaReport r;
    r.psi = psi_gradient(mc, x);
    r.psi_max = r.psi.cwiseAbs().maxCoeff();
    Vec per = Vec::Zero(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = Gt(k, i, j) - G(k, i, j) - (k == j ? r.psi[i] : 0) - (k == i ? r.psi[j] : 0);
                per[k] = std::max(per[k], std::abs(d));
            }
    r.report.check_name = "levi_civita/" + mc.label;
    r.report.absorb(per);
    return r;
}

// both sides of g~_{ij,k} = 2 psi_k g~_ij + psi_i g~_jk + psi_j g~_ik
inline ResidualReport covariant_derivative_check(const MappingCase& mc, const ChartPoint& p) {
    validate(p);
    const Vec& x = p.coords;
    const int n = static_cast<int>(x.size());
    auto gfun = [&](const Vec& c) { return pullback_raw(mc, c); };
    const Mat g = gfun(x);
    auto dg = metric_derivatives(gfun, x, 1e-5 * std::max(1.0, x.cwiseAbs().maxCoeff()));
    ChristoffelTable G = christoffel(mc.source, mc.src, p);
    Vec psi = psi_gradient(mc, x);
    Vec per = Vec::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double lhs = dg[static_cast<std::size_t>(k)](i, j);
                for (int l = 0; l < n; ++l) lhs -= G(l, k, i) * g(l, j) + G(l, k, j) * g(i, l);
                const double rhs = 2 * psi[k] * g(i, j) + psi[i] * g(j, k) + psi[j] * g(i, k);
                per[i] = std::max(per[i], std::abs(lhs - rhs));
            }
    ResidualReport r;
    r.check_name = "covariant_derivative/" + mc.label;
    r.absorb(per);
    return r;
}

// integrates in the source chart, maps the samples, and measures the target geodesic residual
inline ResidualReport pushforward_geodesic_check(const MappingCase& mc, const GeodesicState& s0, IntegratorConfig cfg) {
    cfg.method = Method::RK4Fixed;
    CurveSample c = integrate(mc.source, mc.src, s0, cfg);
    if (c.domain_exit) throw DomainViolation("t", c.exit_time, cfg.t_end);
    std::vector<Vec> image;
    image.reserve(c.states.size());
    for (const auto& s : c.states) image.push_back(case_forward(mc, s.point.coords));
    return residual(make_provider(mc.target, mc.tgt), differentiate_samples(c.times, image), "pushforward/" + mc.label);
}

}  // namespace jgeo
