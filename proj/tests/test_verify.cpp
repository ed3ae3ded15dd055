#include <gtest/gtest.h>

#include <jacobi_geo/jacobi_geo.hpp>

using namespace jgeo;

namespace {

void expect_all_pass(const verify::Report& r) {
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " residual " << c.max_residual << " tolerance " << c.tolerance;
}

}  // namespace

TEST(Verify, EverySuitePasses) {
    for (const auto& s : verify::suite_names()) {
        if (s == "all") continue;
        SCOPED_TRACE(s);
        expect_all_pass(verify::run_suite(s, {}));
    }
}

TEST(Verify, OtherSeedPasses) { expect_all_pass(verify::run_suite("mappings", {7, 0})); }

TEST(Verify, ChecksAreSortedAndPrefixed) {
    auto r = verify::run_suite("reductions", {});
    EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(), [](auto& a, auto& b) { return a.name < b.name; }));
    for (const auto& c : r.checks) EXPECT_EQ(c.name.rfind("reductions/", 0), 0u);
}

TEST(Verify, Deterministic) {
    auto a = verify::run_suite("christoffels", {3, 20}), b = verify::run_suite("christoffels", {3, 20});
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].max_residual, b.checks[i].max_residual);
    EXPECT_EQ(a.notes, b.notes);
}

TEST(Verify, PrintedTypoNotesAreReported) {
    auto r = verify::run_suite("christoffels", {0, 20});
    bool kappa = false;
    for (const auto& n : r.notes) kappa |= n.find("Gamma^kappa_qkappa") != std::string::npos;
    EXPECT_TRUE(kappa);
    EXPECT_TRUE(r.find("christoffels/analytic_vs_numeric/ext_sj_half_plane")->pass);
}

TEST(Verify, ExpectedChecksPresent) {
    auto r = verify::run_suite("all", {0, 0});
    for (const char* name : {"dets/det/heisenberg", "closed-forms/heisenberg_a111", "integration/rk4_exp_h1e-3", "mappings/phi1_second_partial_cayley/negative_control",
                             "transforms/round_trip/iwasawa", "transforms/rm10_gamm_vs_gsc", "integration/complex_vs_real_disk"})
        EXPECT_NE(r.find(name), nullptr) << name;
    EXPECT_TRUE(r.all_pass());
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(verify::run_suite("everything", {}), BadParams); }
