#include <gtest/gtest.h>

#include <jacobi_geo/jacobi_geo.hpp>

using namespace jgeo;

namespace {

ModelParams upper(double alpha = 1) {
    ModelParams p;
    p.alpha = alpha;
    return derive_params(p, SpaceId::UpperHalf2);
}

const ModelParams unit_heis = derive_params(heisenberg_params(1, 1, 1), SpaceId::Heisenberg3);

std::vector<double> grid(double t1 = 2, int n = 200) {
    std::vector<double> t;
    for (int i = 0; i <= n; ++i) t.push_back(t1 * i / n);
    return t;
}

}  // namespace

TEST(Geodesics, ZeroVelocityZeroAcceleration) {
    Rng rng(1);
    for (SpaceId s : all_spaces) {
        auto p = sample_point(s, rng);
        EXPECT_EQ(acceleration(christoffel(s, sample_params(s, rng), p), Vec::Zero(dimension(s))).cwiseAbs().maxCoeff(), 0);
    }
}

TEST(Geodesics, UpperHalfAccelerations) {
    auto G = christoffel(SpaceId::UpperHalf2, upper(), point(SpaceId::UpperHalf2, {0, 1}));
    Vec a1 = acceleration(G, vec({0, 1})), a2 = acceleration(G, vec({1, 0}));
    EXPECT_NEAR(a1[0], 0, 1e-15);
    EXPECT_NEAR(a1[1], 1, 1e-15);
    EXPECT_NEAR(a2[0], 0, 1e-15);
    EXPECT_NEAR(a2[1], -1, 1e-15);
    EXPECT_EQ(rhs_upper_half(vec({0, 1}), vec({0, 1})), a1);
}

TEST(Geodesics, RK4VerticalGeodesic) {
    IntegratorConfig cfg;
    cfg.step = 1e-3;
    auto c = integrate(SpaceId::UpperHalf2, upper(), {point(SpaceId::UpperHalf2, {0, 1}), vec({0, 1})}, cfg);
    ASSERT_FALSE(c.domain_exit);
    EXPECT_DOUBLE_EQ(c.times.back(), 1);
    EXPECT_NEAR(c.states.back().point.coords[0], 0, 1e-12);
    EXPECT_NEAR(c.states.back().point.coords[1], std::exp(1.0), 1e-6);
}

TEST(Geodesics, RK4FourthOrder) {
    auto err = [](double h) {
        IntegratorConfig cfg;
        cfg.step = h;
        auto c = integrate(SpaceId::UpperHalf2, upper(), {point(SpaceId::UpperHalf2, {0, 1}), vec({0, 1})}, cfg);
        return std::abs(c.states.back().point.coords[1] - std::exp(1.0));
    };
    const double ratio = err(1.0 / 16) / err(1.0 / 32);
    EXPECT_GE(ratio, 14);
    EXPECT_LE(ratio, 18);
}

TEST(Geodesics, RKF45MeetsTolerance) {
    IntegratorConfig cfg;
    cfg.method = Method::RKF45Adaptive;
    cfg.step = 0.1;
    auto c = integrate(SpaceId::UpperHalf2, upper(), {point(SpaceId::UpperHalf2, {0, 1}), vec({0, 1})}, cfg);
    EXPECT_DOUBLE_EQ(c.times.back(), 1);
    EXPECT_NEAR(c.states.back().point.coords[1], std::exp(1.0), 1e-6);
    EXPECT_LT(c.times.size(), 1000u);
}

TEST(Geodesics, ZeroVelocityConstantTrajectory) {
    Rng rng(2);
    for (SpaceId s : all_spaces) {
        const auto p = sample_point(s, rng);
        auto c = integrate(s, sample_params(s, rng), {p, Vec::Zero(dimension(s))}, IntegratorConfig{});
        for (const auto& st : c.states) EXPECT_EQ(st.point.coords, p.coords);
    }
}

TEST(Geodesics, SJVerticalKeepsPQ) {
    for (double gamma : {0.3, 1.0, 4.0}) {
        ModelParams mp;
        mp.alpha = 1;
        mp.gamma = gamma;
        mp = derive_params(mp, SpaceId::SJHalfPlane4);
        auto c = integrate(SpaceId::SJHalfPlane4, mp, {point(SpaceId::SJHalfPlane4, {0, 1, 0.4, -1.2}), vec({0, 1, 0, 0})}, IntegratorConfig{});
        for (std::size_t i = 0; i < c.states.size(); ++i) {
            const Vec& x = c.states[i].point.coords;
            EXPECT_EQ(x[2], 0.4);
            EXPECT_EQ(x[3], -1.2);
            EXPECT_NEAR(x[1], std::exp(c.times[i]), 1e-6);
        }
    }
}

TEST(Geodesics, EnergyConserved) {
    Rng rng(3);
    for (SpaceId s : all_spaces)
        for (int i = 0; i < 20; ++i) {
            auto c = integrate(s, sample_params(s, rng), sample_state(s, rng), IntegratorConfig{});
            EXPECT_FALSE(c.domain_exit);
            EXPECT_LE(relative_energy_drift(c), 1e-6) << space_name(s);
        }
}

TEST(Geodesics, DomainExitIsReported) {
    // y = e^{-t} on the downward vertical geodesic stays positive, so force an exit with a straight-line system
    auto sys = make_system(SpaceId::UpperHalf2, upper(), [](const Vec&, const Vec& v) { return Vec(Vec::Zero(v.size())); });
    IntegratorConfig cfg;
    cfg.step = 1e-2;
    auto c = integrate(sys, {point(SpaceId::UpperHalf2, {0, 0.5}), vec({0, -1})}, cfg);
    EXPECT_TRUE(c.domain_exit);
    EXPECT_NEAR(c.exit_time, 0.5, 0.02);
    EXPECT_LT(c.times.back(), 0.5);
}

TEST(Geodesics, BadConfigRejected) {
    IntegratorConfig cfg;
    cfg.step = 0;
    EXPECT_THROW(check_config(cfg), BadParams);
    cfg.step = 1e-3;
    cfg.t_end = -1;
    EXPECT_THROW(check_config(cfg), BadParams);
}

TEST(Geodesics, ExplicitSystemsMatchChristoffelRoute) {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        auto chk = [&](SpaceId s, auto rhs) {
            const auto mp = sample_params(s, rng);
            const auto st = sample_state(s, rng);
            Vec d = rhs(mp, st.point.coords, st.velocity) - acceleration(christoffel_numeric(s, mp, st.point), st.velocity);
            EXPECT_LE(d.cwiseAbs().maxCoeff(), 1e-5) << space_name(s);
        };
        chk(SpaceId::DiskComplex, [](auto& m, auto& x, auto& v) { return rhs_disk_geo(m, x, v); });
        chk(SpaceId::DiskReal4, [](auto& m, auto& x, auto& v) { return rhs_disk_ecmnab(m, x, v); });
        chk(SpaceId::DiskReal4, [](auto& m, auto& x, auto& v) { return rhs_disk_a1b1(m, x, v); });
        chk(SpaceId::SJHalfPlaneUV4, [](auto& m, auto& x, auto& v) { return rhs_halfplane_eciv(m, x, v); });
        chk(SpaceId::SJHalfPlaneUV4, [](auto& m, auto& x, auto& v) { return rhs_halfplane_geox(m, x, v); });
        chk(SpaceId::SJHalfPlane4, [](auto& m, auto& x, auto& v) { return rhs_sj_420(m, x, v); });
        chk(SpaceId::ExtSJHalfPlane5, [](auto& m, auto& x, auto& v) { return rhs_ext_euri(m, x, v); });
        chk(SpaceId::Heisenberg3, [](auto& m, auto& x, auto& v) { return rhs_heisenberg_ccxx(m, x, v); });
    }
}

TEST(Geodesics, ReductionsAreExact) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto mp = sample_params(SpaceId::ExtSJHalfPlane5, rng);
        auto st = sample_state(SpaceId::ExtSJHalfPlane5, rng);
        mp.tau = 0;
        const Vec x4 = st.point.coords.head(4), v4 = st.velocity.head(4);
        EXPECT_EQ(Vec(rhs_ext_euri(mp, st.point.coords, st.velocity).head(4)), rhs_sj_420(mp, x4, v4));
        mp.epsilon = 0;
        EXPECT_EQ(Vec(rhs_sj_420(mp, x4, v4).head(2)), rhs_upper_half(x4.head(2), v4.head(2)));
    }
}

TEST(Geodesics, DiskClosedFormValues) {
    EXPECT_EQ(closed_form_disk(1.0, 0).f, 0.0);
    EXPECT_NEAR(closed_form_disk(1.0, 1).f.real(), 0.76159415595, 1e-11);
    cd far = closed_form_disk(I, 40).f;
    EXPECT_NEAR(far.real(), 0, 1e-15);
    EXPECT_NEAR(far.imag(), 1, 1e-15);
    EXPECT_TRUE(closed_form_disk(0.0, 1).stationary);
}

TEST(Geodesics, HalfPlaneClosedFormIsExponential) {
    EXPECT_LE(std::abs(closed_form_halfplane(0.5, 0).f - I), 1e-15);
    for (double t : grid(2, 20)) EXPECT_NEAR(std::abs(closed_form_halfplane(0.5, t).f - I * std::exp(t)), 0, 1e-12 * std::exp(t));
    EXPECT_NEAR(closed_form_halfplane(0.5, 1).f.imag(), 2.718281828459045, 1e-12);
}

TEST(Geodesics, SJParticularInitialValues) {
    const cd eta0(1, 1);
    auto [v, u] = closed_form_sj_particular(eta0, 0.5, 0);
    EXPECT_LE(std::abs(u.f - eta0), 1e-15);
    EXPECT_LE(std::abs(v.f - I), 1e-15);
    for (double t : grid()) EXPECT_EQ(closed_form_sj_particular(0.0, 0.7, t).second.f, 0.0);
}

TEST(Geodesics, ClosedFormResiduals) {
    const auto t = grid();
    const ModelParams sd = derive_params(from_k_nu(1.3, 0), SpaceId::SiegelDisk2);
    const ModelParams uh = derive_params(from_k_nu(1.3, 0), SpaceId::UpperHalf2);
    const ModelParams uv = derive_params(from_k_nu(1.3, 0.8), SpaceId::SJHalfPlaneUV4);
    const ModelParams dk = derive_params(from_k_nu(1.3, 0.8), SpaceId::DiskComplex);
    for (cd B : {cd(1, 0), cd(0.5, 0), cd(0.3, -0.6), cd(0, 1)}) {
        std::vector<Jet> w, v, vu, wz;
        for (double s : t) {
            w.push_back(realize({closed_form_disk(B, s)}));
            v.push_back(realize({closed_form_halfplane(B, s)}));
            auto [a, b] = closed_form_sj_particular({1, 1}, B, s);
            vu.push_back(realize({a, b}));
            auto [c, d] = closed_form_disk_particular({0.4, -0.2}, B, s);
            wz.push_back(realize({c, d}));
        }
        EXPECT_LE(residual(SpaceId::SiegelDisk2, sd, w).max_abs, 1e-8);
        EXPECT_LE(residual(SpaceId::UpperHalf2, uh, v).max_abs, 1e-8);
        EXPECT_LE(residual(SpaceId::SJHalfPlaneUV4, uv, vu).max_abs, 1e-8);
        EXPECT_LE(residual(SpaceId::DiskComplex, dk, wz).max_abs, 1e-8);
    }
}

TEST(Geodesics, HeisenbergClosedFormValues) {
    Jet j0 = closed_form_heisenberg(1, 0, 1, 0);
    EXPECT_EQ(j0.x.cwiseAbs().maxCoeff(), 0);
    for (double t : grid(2, 10)) {
        Jet j = closed_form_heisenberg(1, 0, 1, t);
        EXPECT_NEAR(j.x[0], 0.5 * std::sin(2 * t), 1e-15);
        EXPECT_NEAR(j.x[1], 0.5 * (1 - std::cos(2 * t)), 1e-15);
        EXPECT_NEAR(j.x[2], 1.5 * t - 0.25 * std::sin(2 * t), 1e-14);
        Jet line = closed_form_heisenberg(1, M_PI / 2, 0, t);
        EXPECT_NEAR(line.x[0], 0, 1e-15);
        EXPECT_NEAR(line.x[1], t, 1e-15);
        EXPECT_EQ(line.x[2], 0);
    }
}

TEST(Geodesics, HeisenbergPrintedFamilyAtUnitSigma) {
    // the printed family at r = 1, sigma = 1 is (sin 2t / 2, (1 - cos 2t) / 2, t), which is off the unit-speed shell
    std::vector<Jet> c;
    for (double t : grid(2, 10)) {
        Jet j = heisi_printed(1, 0, 1, t);
        EXPECT_NEAR(j.x[0], 0.5 * std::sin(2 * t), 1e-15);
        EXPECT_NEAR(j.x[1], 0.5 * (1 - std::cos(2 * t)), 1e-15);
        EXPECT_NEAR(j.x[2], t, 1e-15);
        c.push_back(j);
    }
    EXPECT_GT(residual(SpaceId::Heisenberg3, unit_heis, c).max_abs, 0.5);
}

TEST(Geodesics, HeisenbergClosedFormResiduals) {
    const auto t = grid();
    for (double sigma : {1.0, -1.0, 0.5, -0.5, 2.0})
        for (double r : {1.0, 0.3, 1.7})
            for (double phi : {0.0, 1.1, -2.5}) {
                std::vector<Jet> c;
                for (double s : t) c.push_back(closed_form_heisenberg(r, phi, sigma, s));
                EXPECT_LE(residual(SpaceId::Heisenberg3, unit_heis, c).max_abs, 1e-10) << sigma << " " << r;
            }
    std::vector<Jet> line;
    for (double s : t) line.push_back(closed_form_heisenberg(1, 0.4, 0, s));
    EXPECT_LE(residual(SpaceId::Heisenberg3, unit_heis, line).max_abs, 1e-15);
}

TEST(Geodesics, HeisenbergClosedFormGeneralParameters) {
    const auto mp = derive_params(heisenberg_params(2, 2, 0.5), SpaceId::Heisenberg3);
    std::vector<Jet> c;
    for (double s : grid()) c.push_back(closed_form_heisenberg(0.8, 0.3, -0.7, s, mp));
    EXPECT_LE(residual(SpaceId::Heisenberg3, mp, c).max_abs, 1e-10);
    EXPECT_THROW(closed_form_heisenberg(1, 0, 1, 0, derive_params(heisenberg_params(1, 2, 1), SpaceId::Heisenberg3)), BadParams);
}

TEST(Geodesics, HeisenbergPrintedFamilyOnShell) {
    for (double sigma : {0.5, -0.5, 0.9}) {
        const double r = std::sqrt(1 - sigma * sigma);
        for (double s : grid(2, 20))
            EXPECT_LE((heisi_printed(r, 0.7, sigma, s).x - closed_form_heisenberg(r, 0.7, sigma, s).x).cwiseAbs().maxCoeff(), 1e-12);
    }
    std::vector<Jet> off;
    for (double s : grid()) off.push_back(heisi_printed(1, 0.7, 0.5, s));
    EXPECT_GT(residual(SpaceId::Heisenberg3, unit_heis, off).max_abs, 1e-3);
}

TEST(Geodesics, ConstantCurveHasZeroResidual) {
    Jet j{vec({0.2, 1.5}), Vec::Zero(2), Vec::Zero(2)};
    EXPECT_EQ(residual(SpaceId::UpperHalf2, upper(), std::vector<Jet>(5, j)).max_abs, 0);
}

TEST(Geodesics, SampledResidualOfIntegratedCurve) {
    Rng rng(6);
    for (SpaceId s : {SpaceId::UpperHalf2, SpaceId::SJHalfPlane4, SpaceId::Heisenberg3}) {
        const auto mp = sample_params(s, rng);
        auto c = integrate(s, mp, sample_state(s, rng), IntegratorConfig{});
        EXPECT_LE(residual(make_provider(s, mp), c).max_abs, 1e-6) << space_name(s);
    }
}

TEST(Geodesics, ComplexAndRealDiskAgree) {
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        const auto mp = sample_params(SpaceId::DiskComplex, rng);
        const auto sc = sample_state(SpaceId::DiskComplex, rng);
        GeodesicState sr{{SpaceId::DiskReal4, disk_complex_to_real(sc.point.coords)}, disk_complex_to_real(sc.velocity)};
        auto cc = integrate(make_system(SpaceId::DiskComplex, mp, [mp](const Vec& x, const Vec& v) { return rhs_disk_geo(mp, x, v); }), sc,
                            IntegratorConfig{});
        auto cr = integrate(make_system(SpaceId::DiskReal4, mp, [mp](const Vec& x, const Vec& v) { return rhs_disk_ecmnab(mp, x, v); }), sr,
                            IntegratorConfig{});
        ASSERT_EQ(cc.states.size(), cr.states.size());
        for (std::size_t k = 0; k < cc.states.size(); ++k)
            EXPECT_LE((disk_complex_to_real(cc.states[k].point.coords) - cr.states[k].point.coords).cwiseAbs().maxCoeff(), 1e-6);
    }
}

TEST(Geodesics, NumericProviderAgreesWithClosedForm) {
    IntegratorConfig cfg;
    auto c = integrate(SpaceId::UpperHalf2, upper(), {point(SpaceId::UpperHalf2, {0, 1}), vec({0, 1})}, cfg, Provider::Numeric);
    EXPECT_NEAR(c.states.back().point.coords[1], std::exp(1.0), 1e-5);
}
