#include <gtest/gtest.h>

#include <jacobi_geo/jacobi_geo.hpp>

using namespace jgeo;

namespace {

cd random_disk(Rng& rng, double r = 0.9) {
    double a, b;
    sample_disk(rng, r, a, b);
    return {a, b};
}

cd random_half(Rng& rng) { return {rng.uniform(-2, 2), rng.uniform(0.1, 3)}; }

}  // namespace

TEST(Transforms, FCAtOriginIsIdentity) {
    const cd eta(0.3, -1.2);
    EXPECT_EQ(fc_forward(0.0, eta), eta);
    EXPECT_EQ(fc_inverse(0.0, eta), eta);
}

TEST(Transforms, FCValue) { EXPECT_LE(std::abs(fc_forward(0.5, 1.0) - 0.5), 1e-15); }

TEST(Transforms, FCRoundTrip) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const cd w = random_disk(rng), eta(rng.uniform(-2, 2), rng.uniform(-2, 2));
        EXPECT_LE(std::abs(fc_inverse(w, fc_forward(w, eta)) - eta), 1e-14);
    }
}

TEST(Transforms, CayleyValues) {
    EXPECT_LE(std::abs(cayley(I)), 1e-15);
    auto [v, u] = partial_cayley_inv(0.0, cd(0.4, 0.7));
    EXPECT_LE(std::abs(v - I), 1e-15);
    EXPECT_LE(std::abs(u - cd(0.4, 0.7)), 1e-15);
    const cd w = cayley(cd(1, 1));
    EXPECT_LE(std::abs(w - 1.0 / (1.0 + 2.0 * I)), 1e-15);
    EXPECT_LT(std::abs(w), 1);
    EXPECT_LE(std::abs(cayley_inv(w) - cd(1, 1)), 1e-14);
}

TEST(Transforms, PolesAndDomain) {
    EXPECT_THROW(cayley_inv(1.0), Pole);
    EXPECT_THROW(cayley(-I), Pole);
    EXPECT_THROW(cayley(cd(1, -1)), DomainViolation);
    EXPECT_THROW(fc_forward(cd(1.2, 0), 1.0), DomainViolation);
}

TEST(Transforms, EtaIdentification) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const cd v = random_half(rng);
        const double p = rng.uniform(-2, 2), q = rng.uniform(-2, 2);
        EXPECT_LE(std::abs(fc1(v, p * v + q) - cd(q, p)), 1e-14);
        EXPECT_LE(std::abs(fc1(v, q) - q), 1e-14);
    }
}

TEST(Transforms, Phi1Values) {
    auto [w, z] = phi1(0, 1, 0.6, -0.3);
    EXPECT_LE(std::abs(w), 1e-15);
    EXPECT_LE(std::abs(z - cd(-0.3, 0.6)), 1e-15);
    Vec b = phi1_inv(0.0, 0.0);
    EXPECT_LE((b - vec({0, 1, 0, 0})).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Transforms, XiRhoValue) { EXPECT_LE((uvpq_to_xirho(vec({0, 1, 1, 0})) - vec({0, 1, 0, 1})).cwiseAbs().maxCoeff(), 0); }

TEST(Transforms, DiskToHalfPlaneAtOrigin) {
    Vec r = disk_to_halfplane_real(vec({0.5, -0.25, 0, 0}));
    EXPECT_EQ(r, vec({0, 1, -0.25, 0.5}));
}

TEST(Transforms, DiskToHalfPlaneMatchesPhi1Inverse) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const cd w = random_disk(rng), z(rng.uniform(-2, 2), rng.uniform(-2, 2));
        EXPECT_LE((disk_to_halfplane_real(vec({z.real(), z.imag(), w.real(), w.imag()})) - phi1_inv(w, z)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Transforms, RegistryRoundTrips) {
    Rng rng(4);
    for (MapName mn : all_maps()) {
        const ChartMap m = chart_map(mn);
        EXPECT_EQ(parse_map(m.name), mn);
        for (int i = 0; i < 200; ++i) {
            Vec x(m.dim);
            for (int k = 0; k < m.dim; ++k) x[k] = rng.uniform(-2, 2);
            if (m.in_names[0] == "alpha") {
                const cd w = random_disk(rng);
                x[0] = w.real();
                x[1] = w.imag();
            }
            if (m.in_names[1] == "y") x[1] = rng.uniform(0.1, 3);
            EXPECT_LE((m.inverse(m.forward(x)) - x).cwiseAbs().maxCoeff(), 1e-12) << m.name;
            auto j = jacobian(m, x);
            ASSERT_TRUE(j.closed_form_det.has_value());
            EXPECT_NEAR(j.det / *j.closed_form_det, 1, 1e-6) << m.name;
        }
    }
    EXPECT_THROW(parse_map("mobius"), BadParams);
    EXPECT_EQ(parse_map("partial-cayley"), MapName::PartialCayley);
}

TEST(Transforms, IdentityJacobian) {
    auto j = jacobian(chart_map(MapName::Identity), vec({0.1, 1, 2, 3}));
    EXPECT_EQ(*j.closed_form_det, 1);
    EXPECT_NEAR(j.det, 1, 1e-9);
}

TEST(Transforms, Phi1ChartDeterminantAtOrigin) { EXPECT_DOUBLE_EQ(phi1_chart_det(0.0), 4); }

TEST(Transforms, CauchyRiemann) {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const cd v = random_half(rng);
        Mat J = numeric_jacobian([](const Vec& c) {
            const cd w = cayley({c[0], c[1]});
            return vec({w.real(), w.imag()});
        }, vec({v.real(), v.imag()}));
        EXPECT_NEAR(J(0, 0), J(1, 1), 1e-7);
        EXPECT_NEAR(J(0, 1), -J(1, 0), 1e-7);
        const cd d = 2.0 * I / ((v + I) * (v + I));
        EXPECT_LE((J - holomorphic_jacobian(Eigen::MatrixXcd::Constant(1, 1, d))).cwiseAbs().maxCoeff(), 1e-7);
    }
}

TEST(Transforms, IwasawaValues) {
    Iwasawa id = iwasawa(1, 0, 0, 1);
    EXPECT_EQ(id.x, 0);
    EXPECT_EQ(id.y, 1);
    EXPECT_EQ(id.theta, 0);
    auto m = iwasawa_inv(0, 4, 0);
    EXPECT_NEAR(m[0], 2, 1e-15);
    EXPECT_NEAR(m[1], 0, 1e-15);
    EXPECT_NEAR(m[2], 0, 1e-15);
    EXPECT_NEAR(m[3], 0.5, 1e-15);
    auto r = iwasawa_inv(0, 1, M_PI / 2);
    EXPECT_NEAR(r[0], 0, 1e-15);
    EXPECT_NEAR(r[1], 1, 1e-15);
    EXPECT_NEAR(r[2], -1, 1e-15);
    EXPECT_NEAR(r[3], 0, 1e-15);
}

TEST(Transforms, IwasawaRoundTrip) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-2, 2), y = rng.uniform(0.1, 3), th = rng.uniform(-3, 3);
        auto [a, b, c, d] = iwasawa_inv(x, y, th);
        EXPECT_NEAR(a * d - b * c, 1, 1e-13);
        Iwasawa w = iwasawa(a, b, c, d);
        EXPECT_NEAR(w.x, x, 1e-12);
        EXPECT_NEAR(w.y, y, 1e-12);
        EXPECT_NEAR(w.theta, th, 1e-12);
    }
    EXPECT_THROW(iwasawa(1, 1, 1, 1), NotUnimodular);
}

TEST(Transforms, EtaLongFormAgrees) {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const cd w = random_disk(rng), z(rng.uniform(-2, 2), rng.uniform(-2, 2));
        EXPECT_LE(std::abs(eta_long_form(cayley_inv(w), z) - fc_inverse(w, z)), 1e-12);
    }
}
