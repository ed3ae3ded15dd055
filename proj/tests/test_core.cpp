#include <gtest/gtest.h>

#include <jacobi_geo/jacobi_geo.hpp>

using namespace jgeo;

TEST(Core, DimensionsMatchCoordinateNames) {
    for (SpaceId s : all_spaces) EXPECT_EQ(static_cast<std::size_t>(dimension(s)), coord_names(s).size()) << space_name(s);
    EXPECT_EQ(dimension(SpaceId::UpperHalf2), 2);
    EXPECT_EQ(dimension(SpaceId::SJHalfPlane4), 4);
    EXPECT_EQ(dimension(SpaceId::ExtSJHalfPlane5), 5);
    EXPECT_EQ(dimension(SpaceId::JacobiFull6), 6);
    EXPECT_EQ(dimension(SpaceId::Heisenberg3), 3);
}

TEST(Core, SpaceNamesRoundTripInBothCases) {
    for (SpaceId s : all_spaces) {
        std::string snake = space_name(s), kebab = snake;
        std::replace(kebab.begin(), kebab.end(), '_', '-');
        EXPECT_EQ(parse_space(snake), s);
        EXPECT_EQ(parse_space(kebab), s);
    }
    EXPECT_THROW(parse_space("poincare"), Error);
}

TEST(Core, InteriorPointAccepted) { EXPECT_NO_THROW(validate(point(SpaceId::UpperHalf2, {0, 1}))); }

TEST(Core, DiskPointAtFloorAccepted) {
    // P = 1 - w^2 is about 2e-12, above the 1e-12 floor
    EXPECT_NO_THROW(validate(point(SpaceId::DiskComplex, {0.999999999999, 0, 0, 0}), 1e-12));
}

TEST(Core, BoundaryPointNamesY) {
    try {
        validate(point(SpaceId::SJHalfPlane4, {1, 0, 0, 0}));
        FAIL() << "expected DomainViolation";
    } catch (const DomainViolation& e) {
        EXPECT_EQ(e.coordinate, "y");
        EXPECT_EQ(e.value, 0);
    }
}

TEST(Core, OutsideDiskNamesP) {
    try {
        validate(point(SpaceId::DiskReal4, {0, 0, 0.8, 0.8}));
        FAIL() << "expected DomainViolation";
    } catch (const DomainViolation& e) {
        EXPECT_EQ(e.coordinate, "P");
    }
}

TEST(Core, NonFiniteCoordinateRejected) {
    EXPECT_THROW(validate(point(SpaceId::Heisenberg3, {0, NAN, 0})), DomainViolation);
    EXPECT_FALSE(is_valid(point(SpaceId::UpperHalf2, {INFINITY, 1})));
}

TEST(Core, DerivedParametersFromAlphaGamma) {
    ModelParams p;
    p.alpha = 1;
    p.gamma = 2;
    p = derive_params(p, SpaceId::SJHalfPlane4);
    EXPECT_DOUBLE_EQ(p.k, 2);
    EXPECT_DOUBLE_EQ(p.nu, 2);
    EXPECT_DOUBLE_EQ(p.epsilon, 2);
    EXPECT_DOUBLE_EQ(p.iota, 1);
    EXPECT_DOUBLE_EQ(p.j, 0.5);
}

TEST(Core, DerivedParametersHalfAlpha) {
    ModelParams p;
    p.alpha = 0.5;
    p.gamma = 1;
    p = derive_params(p, SpaceId::SJHalfPlane4);
    EXPECT_DOUBLE_EQ(p.k, 1);
    EXPECT_DOUBLE_EQ(p.nu, 1);
    EXPECT_DOUBLE_EQ(p.epsilon, 2);
    EXPECT_DOUBLE_EQ(p.iota, 1);
}

TEST(Core, KNuLink) {
    ModelParams p = derive_params(from_k_nu(3, 0.7), SpaceId::DiskComplex);
    EXPECT_DOUBLE_EQ(p.alpha, 1.5);
    EXPECT_DOUBLE_EQ(p.gamma, 0.7);
    EXPECT_DOUBLE_EQ(p.k, 3);
    EXPECT_DOUBLE_EQ(p.nu, 0.7);
}

TEST(Core, ZeroAlphaRejected) {
    ModelParams p;
    p.gamma = 1;
    EXPECT_THROW(derive_params(p, SpaceId::SJHalfPlane4), BadParams);
}

TEST(Core, ParameterPatternPerSpace) {
    ModelParams p;
    p.alpha = 1;
    p.gamma = 1;
    EXPECT_THROW(derive_params(p, SpaceId::UpperHalf2), BadParams);
    EXPECT_THROW(derive_params(p, SpaceId::ExtSJHalfPlane5), BadParams);
    p.delta = 1;
    EXPECT_NO_THROW(derive_params(p, SpaceId::ExtSJHalfPlane5));
    EXPECT_THROW(derive_params(p, SpaceId::JacobiFull6), BadParams);
    EXPECT_THROW(derive_params(heisenberg_params(1, 0, 1), SpaceId::Heisenberg3), BadParams);
    EXPECT_THROW(derive_params(heisenberg_params(1, 1, 1), SpaceId::SJHalfPlane4), BadParams);
}

TEST(Core, HeisenbergParamsFromGammaDelta) {
    ModelParams p;
    p.gamma = 2;
    p.delta = 3;
    p = derive_params(p, SpaceId::Heisenberg3);
    EXPECT_EQ(p.a1, 2);
    EXPECT_EQ(p.a2, 2);
    EXPECT_EQ(p.a3, 3);
    EXPECT_DOUBLE_EQ(p.tau, 1.5);
}

TEST(Core, ChristoffelTableSetIsSymmetric) {
    ChristoffelTable g(3);
    g.set(0, 1, 2, 5);
    EXPECT_EQ(g(0, 2, 1), 5);
    EXPECT_EQ(lower_symmetry_defect(g), 0);
    auto r = g.restrict_to({0, 2});
    EXPECT_EQ(r.n, 2);
    EXPECT_EQ(r(0, 0, 1), 0);
}

TEST(Core, RngIsDeterministic) {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        const double x = a.uniform(0, 1);
        EXPECT_EQ(x, b.uniform(0, 1));
        EXPECT_GE(x, 0);
        EXPECT_LT(x, 1);
    }
    EXPECT_NE(Rng(42).next(), c.next());
}

TEST(Core, SampledPointsAreValid) {
    Rng rng(5);
    for (SpaceId s : all_spaces)
        for (int i = 0; i < 200; ++i) {
            EXPECT_TRUE(is_valid(sample_point(s, rng)));
            EXPECT_TRUE(is_valid(sample_state(s, rng).point));
        }
}
