#pragma once

#include <cstdio>
#include <map>

#include "mapping.hpp"
#include "sampling.hpp"

namespace jgeo::verify {

struct Check {
    std::string name;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct Options {
    std::uint64_t seed = 0;
    int samples = 0;  // 0 keeps each suite's default counts
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"dets",     "christoffels", "systems",    "closed-forms", "integration",
                                            "mappings", "reductions",   "transforms", "all"};
    return v;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

class Builder {
public:
    Builder(std::string suite, const Options& o, std::uint64_t salt) : rng(o.seed ^ salt), opt_(o) {
        report_.suite = std::move(suite);
        report_.seed = o.seed;
    }

    int n(int def) const { return opt_.samples > 0 ? opt_.samples : def; }

    // residual must stay at or below tol
    void at_most(const std::string& name, double residual, double tol) {
        if (std::isnan(residual)) residual = INFINITY;
        report_.checks.push_back({report_.suite + "/" + name, residual, tol, residual <= tol});
    }

    // residual must exceed tol (negative controls)
    void above(const std::string& name, double residual, double tol) {
        report_.checks.push_back({report_.suite + "/" + name, residual, tol, residual > tol});
    }

    void note(std::string s) { report_.notes.push_back(std::move(s)); }

    // runs f, recording any exception as a failed check
    template <class F>
    void guarded(const std::string& name, double tol, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            note(name + ": " + e.what());
            at_most(name, INFINITY, tol);
        }
    }

    Report finish() {
        std::sort(report_.checks.begin(), report_.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
        return std::move(report_);
    }

    Rng rng;

private:
    Options opt_;
    Report report_;
};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline std::string symbol_name(SpaceId s, int i, int j, int k) {
    const auto& nm = coord_names(s);
    return "Gamma^" + nm[static_cast<std::size_t>(i)] + "_" + nm[static_cast<std::size_t>(j)] + nm[static_cast<std::size_t>(k)];
}

}  // namespace detail

// ---- determinants, inverses and metric structure ----
inline Report suite_dets(const Options& o) {
    detail::Builder b("dets", o, 0x1001);
    for (SpaceId s : all_spaces) {
        const std::string sn = space_name(s);
        double det = 0, sym = 0, inv = 0, nonpd = 0;
        b.guarded("det/" + sn, 1e-10, [&] {
            for (int t = 0; t < b.n(1000); ++t) {
                ModelParams mp = sample_params(s, b.rng);
                ChartPoint p = sample_point(s, b.rng);
                det = std::max(det, metric_det(s, mp, p, INFINITY).rel_error());
                Mat g = metric_at(s, mp, p);
                sym = std::max(sym, detail::max_abs(Mat(g - g.transpose())));
                inv = std::max(inv, inverse_residual(g, inverse_metric_at(s, mp, p)));
                Eigen::LDLT<Mat> ldlt(g);
                if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 0) nonpd += 1;
            }
            b.at_most("det/" + sn, det, 1e-10);
            b.at_most("symmetry/" + sn, sym, 0);
            b.at_most("inverse/" + sn, inv, 1e-10);
            b.at_most("positive_definite/" + sn, nonpd, 0);
        });
    }
    {
        double worst = 0;
        for (int t = 0; t < b.n(100); ++t) {
            ModelParams mp = sample_params(SpaceId::DiskComplex, b.rng);
            ChartPoint p = sample_point(SpaceId::DiskComplex, b.rng);
            HMat h = metric_hermitian_disk(mp, p);
            Eigen::Matrix2cd hw;  // (w, z) ordering
            hw << h(1, 1), h(1, 0), h(0, 1), h(0, 0);
            worst = std::max(worst, detail::max_abs(Mat(realify(hw) - metric_at(SpaceId::DiskComplex, mp, p))));
        }
        b.at_most("hermitian_to_real/disk", worst, 1e-10);
    }
    {
        double worst_printed = 0, worst_true = 0;
        for (int t = 0; t < b.n(100); ++t) {
            ModelParams mp = sample_params(SpaceId::Heisenberg3, b.rng);
            ChartPoint p = sample_point(SpaceId::Heisenberg3, b.rng);
            Mat g = metric_at(SpaceId::Heisenberg3, mp, p);
            Mat gi = numeric_inverse(g);
            worst_true = std::max(worst_true, std::abs(gi(2, 2) - inverse_closed_form(SpaceId::Heisenberg3, mp, p.coords)->coeff(2, 2)));
            worst_printed = std::max(worst_printed, std::abs(gi(2, 2) - heisenberg_inverse_kk_printed(mp, p.coords[0], p.coords[1])));
        }
        b.at_most("heisenberg_inverse_kk_plus_sign", worst_true, 1e-10);
        b.note("heisenberg g^kappakappa: '-mu^2/a1' differs from the numeric inverse by up to " + detail::fmt(worst_printed) +
               "; '+mu^2/a1' agrees to " + detail::fmt(worst_true));
    }
    return b.finish();
}

// ---- Christoffel tables against the finite-difference oracle ----
inline Report suite_christoffels(const Options& o) {
    detail::Builder b("christoffels", o, 0x2002);
    for (SpaceId s : {SpaceId::UpperHalf2, SpaceId::SJHalfPlane4, SpaceId::ExtSJHalfPlane5, SpaceId::Heisenberg3}) {
        const std::string sn = space_name(s);
        b.guarded("analytic_vs_numeric/" + sn, 1e-5, [&] {
            double worst = 0, sym = 0;
            std::map<std::string, double> printed_dev;
            for (int t = 0; t < b.n(200); ++t) {
                ModelParams mp = sample_params(s, b.rng);
                ChartPoint p = sample_point(s, b.rng);
                ChristoffelTable a = christoffel_analytic(s, mp, p), n = christoffel_numeric(s, mp, p);
                worst = std::max(worst, max_abs_diff(a, n));
                sym = std::max(sym, lower_symmetry_defect(a));
                if (s == SpaceId::ExtSJHalfPlane5) {
                    ChristoffelTable pr = christoffel_analytic(s, mp, p, TableVariant::AsPrinted);
                    for (int i = 0; i < 5; ++i)
                        for (int j = 0; j < 5; ++j)
                            for (int k = j; k < 5; ++k) {
                                const double d = std::abs(pr(i, j, k) - n(i, j, k));
                                if (d > 1e-5) {
                                    auto& m = printed_dev[detail::symbol_name(s, i, j, k)];
                                    m = std::max(m, d);
                                }
                            }
                }
            }
            b.at_most("analytic_vs_numeric/" + sn, worst, 1e-5);
            b.at_most("lower_symmetry/" + sn, sym, 0);
            for (const auto& [sym_name, dev] : printed_dev)
                b.note(sn + ": printed " + sym_name + " deviates from the numeric oracle by up to " + detail::fmt(dev) +
                       "; -tau*xi/y agrees");
        });
    }
    for (SpaceId s : {SpaceId::SiegelDisk2, SpaceId::DiskComplex, SpaceId::DiskReal4, SpaceId::SJHalfPlaneUV4}) {
        const std::string sn = space_name(s);
        b.guarded("holomorphic_vs_numeric/" + sn, 1e-5, [&] {
            double worst = 0;
            for (int t = 0; t < b.n(200); ++t) {
                ModelParams mp = sample_params(s, b.rng);
                ChartPoint p = sample_point(s, b.rng);
                worst = std::max(worst, max_abs_diff(christoffel(s, mp, p), christoffel_numeric(s, mp, p)));
            }
            b.at_most("holomorphic_vs_numeric/" + sn, worst, 1e-5);
        });
    }
    {
        double worst = 0;
        for (int t = 0; t < b.n(200); ++t) {
            ModelParams mp = sample_params(SpaceId::SJHalfPlaneUV4, b.rng);
            ChartPoint p = sample_point(SpaceId::SJHalfPlaneUV4, b.rng);
            ChristoffelTable pr = complex_to_real(christoffel_complex_halfplane(mp, p, TableVariant::AsPrinted));
            worst = std::max(worst, max_abs_diff(pr, christoffel_numeric(SpaceId::SJHalfPlaneUV4, mp, p)));
        }
        b.note("sj_half_plane_uv: printed Gamma^u_uu and Gamma^u_uv deviate from the numeric oracle by up to " +
               detail::fmt(worst) + "; +(i/iota) r and (i/2)(1/y - 2 r^2/iota) agree");
    }
    for (SpaceId s : all_spaces) {
        const std::string sn = space_name(s);
        b.guarded("metric_compatibility/" + sn, 1e-6, [&] {
            double worst = 0;
            for (int t = 0; t < b.n(200) / 4 + 1; ++t) {
                ModelParams mp = sample_params(s, b.rng);
                ChartPoint p = sample_point(s, b.rng, state_ranges);
                ChristoffelTable G = christoffel(s, mp, p);
                worst = std::max(worst, metric_compatibility_defect([&](const Vec& c) { return metric_raw(s, mp, c); }, G, p.coords));
            }
            b.at_most("metric_compatibility/" + sn, worst, 1e-6);
        });
    }
    return b.finish();
}

// ---- explicit geodesic systems against the Christoffel route ----
inline Report suite_systems(const Options& o) {
    detail::Builder b("systems", o, 0x3003);
    struct Sys {
        std::string name;
        SpaceId space;
        std::function<Vec(const ModelParams&, const Vec&, const Vec&)> rhs;
        bool analytic;
    };
    const std::vector<Sys> systems{
        {"geo_complex", SpaceId::DiskComplex, [](auto& m, auto& x, auto& v) { return rhs_disk_geo(m, x, v); }, true},
        {"ecmnab", SpaceId::DiskReal4, [](auto& m, auto& x, auto& v) { return rhs_disk_ecmnab(m, x, v); }, true},
        {"a1b1", SpaceId::DiskReal4, [](auto& m, auto& x, auto& v) { return rhs_disk_a1b1(m, x, v); }, true},
        {"eciv", SpaceId::SJHalfPlaneUV4, [](auto& m, auto& x, auto& v) { return rhs_halfplane_eciv(m, x, v); }, true},
        {"geox", SpaceId::SJHalfPlaneUV4, [](auto& m, auto& x, auto& v) { return rhs_halfplane_geox(m, x, v); }, true},
        {"gm22", SpaceId::UpperHalf2, [](auto&, auto& x, auto& v) { return rhs_upper_half(x, v); }, true},
        {"e420", SpaceId::SJHalfPlane4, [](auto& m, auto& x, auto& v) { return rhs_sj_420(m, x, v); }, true},
        {"euri", SpaceId::ExtSJHalfPlane5, [](auto& m, auto& x, auto& v) { return rhs_ext_euri(m, x, v); }, true},
        {"ccxx", SpaceId::Heisenberg3, [](auto& m, auto& x, auto& v) { return rhs_heisenberg_ccxx(m, x, v); }, true},
    };
    for (const auto& sy : systems) {
        b.guarded(sy.name, 1e-9, [&] {
            double wa = 0, wn = 0;
            for (int t = 0; t < b.n(200); ++t) {
                ModelParams mp = sample_params(sy.space, b.rng);
                GeodesicState s = sample_state(sy.space, b.rng);
                Vec r = sy.rhs(mp, s.point.coords, s.velocity);
                wa = std::max(wa, detail::max_abs(Vec(r - acceleration(christoffel(sy.space, mp, s.point), s.velocity))));
                wn = std::max(wn, detail::max_abs(Vec(r - acceleration(christoffel_numeric(sy.space, mp, s.point), s.velocity))));
            }
            b.at_most(sy.name + "/vs_table", wa, 1e-9);
            b.at_most(sy.name + "/vs_numeric", wn, 1e-5);
        });
    }
    {
        double wj = 0;
        for (int t = 0; t < b.n(200); ++t) {
            ModelParams raw;
            raw.gamma = b.rng.uniform(0.5, 2);
            raw.delta = b.rng.uniform(0.5, 2);
            ModelParams mp = derive_params(raw, SpaceId::Heisenberg3);
            GeodesicState s = sample_state(SpaceId::Heisenberg3, b.rng);
            Vec r = rhs_heisenberg_eurj(mp.delta / mp.gamma, s.point.coords, s.velocity);
            wj = std::max(wj, detail::max_abs(Vec(r - acceleration(christoffel_numeric(SpaceId::Heisenberg3, mp, s.point), s.velocity))));
        }
        b.at_most("eurj/vs_numeric", wj, 1e-5);
    }
    // printed variants, reported only
    struct Printed {
        std::string name;
        SpaceId space;
        std::function<Vec(const ModelParams&, const Vec&, const Vec&)> rhs;
    };
    const std::vector<Printed> printed{
        {"ecmnab (beta, m, n rows)", SpaceId::DiskReal4,
         [](auto& m, auto& x, auto& v) { return rhs_disk_ecmnab(m, x, v, TableVariant::AsPrinted); }},
        {"eciv (u row)", SpaceId::SJHalfPlaneUV4,
         [](auto& m, auto& x, auto& v) { return rhs_halfplane_eciv(m, x, v, TableVariant::AsPrinted); }},
        {"euri (E'5 term x'y')", SpaceId::ExtSJHalfPlane5,
         [](auto& m, auto& x, auto& v) { return rhs_ext_euri(m, x, v, TableVariant::AsPrinted); }},
        {"ccxx (mu and kappa rows)", SpaceId::Heisenberg3,
         [](auto& m, auto& x, auto& v) { return rhs_heisenberg_ccxx(m, x, v, TableVariant::AsPrinted); }},
    };
    for (const auto& pr : printed) {
        double w = 0;
        for (int t = 0; t < 50; ++t) {
            ModelParams mp = sample_params(pr.space, b.rng);
            GeodesicState s = sample_state(pr.space, b.rng);
            w = std::max(w, detail::max_abs(Vec(pr.rhs(mp, s.point.coords, s.velocity) -
                                                acceleration(christoffel_numeric(pr.space, mp, s.point), s.velocity))));
        }
        b.note("printed " + pr.name + " differs from the Christoffel route by up to " + detail::fmt(w));
    }
    return b.finish();
}

// ---- closed-form geodesics with exact derivatives ----
inline Report suite_closed_forms(const Options& o) {
    detail::Builder b("closed-forms", o, 0x4004);
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(0.01 * i);
    auto random_B = [&] {
        double a, c;
        sample_disk(b.rng, 1.0, a, c);
        return cd(a, c);
    };
    double wt = 0, wt_disk = 0, wt1 = 0, spart = 0;
    for (int t = 0; t < b.n(20); ++t) {
        const cd B = random_B(), eta0(b.rng.uniform(-1, 1), b.rng.uniform(-1, 1));
        const double k = b.rng.uniform(0.5, 2), nu = b.rng.uniform(0.5, 2);
        std::vector<Jet> w, wz, v, vu;
        for (double s : ts) {
            w.push_back(realize({closed_form_disk(B, s)}));
            auto [ww, zz] = closed_form_disk_particular(eta0, B, s);
            wz.push_back(realize({ww, zz}));
            v.push_back(realize({closed_form_halfplane(B, s)}));
            auto [vv, uu] = closed_form_sj_particular(eta0, B, s);
            vu.push_back(realize({vv, uu}));
        }
        wt = std::max(wt, residual(SpaceId::SiegelDisk2, derive_params(from_k_nu(k, 0), SpaceId::SiegelDisk2), w).max_abs);
        wt_disk = std::max(wt_disk, residual(SpaceId::DiskComplex, derive_params(from_k_nu(k, nu), SpaceId::DiskComplex), wz).max_abs);
        wt1 = std::max(wt1, residual(SpaceId::UpperHalf2, derive_params(from_k_nu(k, 0), SpaceId::UpperHalf2), v).max_abs);
        spart = std::max(spart, residual(SpaceId::SJHalfPlaneUV4, derive_params(from_k_nu(k, nu), SpaceId::SJHalfPlaneUV4), vu).max_abs);
    }
    b.at_most("disk_wt", wt, 1e-8);
    b.at_most("disk_wt_particular", wt_disk, 1e-8);
    b.at_most("halfplane_wt1", wt1, 1e-8);
    b.at_most("sj_spart1", spart, 1e-8);

    const ModelParams unit = derive_params(heisenberg_params(1, 1, 1), SpaceId::Heisenberg3);
    double heis = 0, heis_general = 0, line = 0, shell = 0, printed_off = 0;
    for (double sigma : {1.0, -1.0, 0.5, -0.5, 2.0}) {
        for (int t = 0; t < 4; ++t) {
            const double phi = b.rng.uniform(-M_PI, M_PI), r = t == 0 ? 1.0 : b.rng.uniform(0.2, 2);
            std::vector<Jet> c, cg, pr;
            const ModelParams gen = derive_params(heisenberg_params(1.5, 1.5, 0.7), SpaceId::Heisenberg3);
            for (double s : ts) {
                c.push_back(closed_form_heisenberg(r, phi, sigma, s, unit));
                cg.push_back(closed_form_heisenberg(r, phi, sigma, s, gen));
                pr.push_back(heisi_printed(r, phi, sigma, s));
            }
            heis = std::max(heis, residual(SpaceId::Heisenberg3, unit, c).max_abs);
            heis_general = std::max(heis_general, residual(SpaceId::Heisenberg3, gen, cg).max_abs);
            printed_off = std::max(printed_off, residual(SpaceId::Heisenberg3, unit, pr).max_abs);
            // on the unit-speed shell the printed family coincides with the implemented one
            if (std::abs(sigma) < 1) {
                const double rs = std::sqrt(1 - sigma * sigma);
                for (double s : ts)
                    shell = std::max(shell, detail::max_abs(Vec(heisi_printed(rs, phi, sigma, s).x -
                                                                 closed_form_heisenberg(rs, phi, sigma, s, unit).x)));
            }
        }
    }
    {
        std::vector<Jet> c;
        const double phi = b.rng.uniform(-M_PI, M_PI);
        for (double s : ts) c.push_back(closed_form_heisenberg(1, phi, 0, s, unit));
        line = residual(SpaceId::Heisenberg3, unit, c).max_abs;
    }
    b.at_most("heisenberg_a111", heis, 1e-10);
    b.at_most("heisenberg_a1_eq_a2", heis_general, 1e-10);
    b.at_most("heisenberg_line", line, 1e-10);
    b.at_most("heisenberg_printed_on_shell", shell, 1e-12);
    b.note("printed Heisenberg family off the shell r^2 + sigma^2 = 1 leaves residual up to " + detail::fmt(printed_off));
    return b.finish();
}

// ---- integrator accuracy, energy, complex/real agreement ----
inline Report suite_integration(const Options& o) {
    detail::Builder b("integration", o, 0x5005);
    const ModelParams uh = derive_params(from_k_nu(2, 0), SpaceId::UpperHalf2);
    const GeodesicState vert{point(SpaceId::UpperHalf2, {0, 1}), vec({0, 1})};
    auto final_err = [&](Method m, double h) {
        IntegratorConfig cfg;
        cfg.method = m;
        cfg.step = h;
        CurveSample c = integrate(SpaceId::UpperHalf2, uh, vert, cfg);
        const Vec& x = c.states.back().point.coords;
        return std::hypot(x[0], x[1] - std::exp(1.0));
    };
    b.at_most("rk4_exp_h1e-3", final_err(Method::RK4Fixed, 1e-3), 1e-6);
    b.at_most("rkf45_exp", final_err(Method::RKF45Adaptive, 1e-2), 1e-6);
    const double ratio = final_err(Method::RK4Fixed, 1.0 / 16) / final_err(Method::RK4Fixed, 1.0 / 32);
    b.note("rk4 error ratio h=1/16 over h=1/32: " + detail::fmt(ratio));
    b.at_most("rk4_order_ratio_minus_16", std::abs(ratio - 16), 2);

    for (SpaceId s : all_spaces) {
        const std::string sn = space_name(s);
        b.guarded("energy/" + sn, 1e-6, [&] {
            double drift = 0, exits = 0;
            for (int t = 0; t < b.n(20); ++t) {
                ModelParams mp = sample_params(s, b.rng);
                GeodesicState s0 = sample_state(s, b.rng);
                CurveSample c = integrate(s, mp, s0, IntegratorConfig{});
                if (c.domain_exit) exits += 1;
                drift = std::max(drift, relative_energy_drift(c));
            }
            b.at_most("energy/" + sn, drift, 1e-6);
            b.at_most("domain_exits/" + sn, exits, 0);
        });
    }
    {
        // (geo) in complex form against the real system from matched data
        double worst = 0;
        for (int t = 0; t < b.n(10); ++t) {
            ModelParams mp = sample_params(SpaceId::DiskComplex, b.rng);
            GeodesicState sc = sample_state(SpaceId::DiskComplex, b.rng);
            GeodesicState sr{{SpaceId::DiskReal4, disk_complex_to_real(sc.point.coords)}, disk_complex_to_real(sc.velocity)};
            auto cc = integrate(make_system(SpaceId::DiskComplex, mp, [mp](const Vec& x, const Vec& v) { return rhs_disk_geo(mp, x, v); }),
                                sc, IntegratorConfig{});
            auto cr = integrate(make_system(SpaceId::DiskReal4, mp, [mp](const Vec& x, const Vec& v) { return rhs_disk_ecmnab(mp, x, v); }),
                                sr, IntegratorConfig{});
            for (std::size_t i = 0; i < std::min(cc.states.size(), cr.states.size()); ++i)
                worst = std::max(worst, detail::max_abs(Vec(disk_complex_to_real(cc.states[i].point.coords) - cr.states[i].point.coords)));
            if (cc.states.size() != cr.states.size()) worst = INFINITY;
        }
        b.at_most("complex_vs_real_disk", worst, 1e-6);
    }
    {
        const ModelParams mp = derive_params(from_k_nu(1.4, 0.8), SpaceId::SJHalfPlane4);
        CurveSample c = integrate(SpaceId::SJHalfPlane4, mp, {point(SpaceId::SJHalfPlane4, {0, 1, 0.3, -0.7}), vec({0, 1, 0, 0})},
                                  IntegratorConfig{});
        double dev = 0;
        for (std::size_t i = 0; i < c.states.size(); ++i) {
            const Vec& x = c.states[i].point.coords;
            dev = std::max({dev, std::abs(x[0]), std::abs(x[1] - std::exp(c.times[i])), std::abs(x[2] - 0.3), std::abs(x[3] + 0.7)});
        }
        b.at_most("sj_vertical_geodesic", dev, 1e-6);
    }
    return b.finish();
}

// ---- geodesic mappings ----
inline Report suite_mappings(const Options& o) {
    detail::Builder b("mappings", o, 0x6006);
    for (CaseName cn : mapping_cases()) {
        const double k = b.rng.uniform(0.5, 2), nu = b.rng.uniform(0.5, 2);
        const MappingCase mc = make_case(cn, k, nu);
        const MappingCase bad = make_case(cn, k, nu, 1.1);
        const std::string L = mc.label;
        b.guarded(L + "/isometry", 1e-8, [&] {
            double iso = 0, lc = 0, psi = 0, cvd = 0, numj = 0, neg = 0;
            for (int t = 0; t < b.n(100); ++t) {
                ChartPoint p = sample_point(mc.source, b.rng);
                Mat g = metric_at(mc.source, mc.src, p);
                iso = std::max(iso, isometry_defect(mc, p));
                numj = std::max(numj, detail::max_abs(Mat(pullback_metric_numeric(mc, p) - g)) / detail::max_abs(g));
                neg = std::max(neg, isometry_defect(bad, p));
                auto r = levi_civita_residual(mc, p);
                lc = std::max(lc, r.report.max_abs);
                psi = std::max(psi, r.psi_max);
                cvd = std::max(cvd, covariant_derivative_check(mc, p).max_abs);
            }
            b.at_most(L + "/isometry", iso, 1e-8);
            b.at_most(L + "/numeric_jacobian_pullback", numj, 1e-6);
            b.at_most(L + "/levi_civita", lc, 1e-5);
            b.at_most(L + "/psi", psi, 1e-6);
            b.at_most(L + "/covariant_derivative", cvd, 1e-5);
            b.above(L + "/negative_control", neg, 1e-2);
        });
        b.guarded(L + "/pushforward", 1e-6, [&] {
            double push = 0;
            for (int t = 0; t < b.n(20); ++t) {
                GeodesicState s0 = sample_state(mc.source, b.rng);
                push = std::max(push, pushforward_geodesic_check(mc, s0, IntegratorConfig{}).max_abs);
            }
            b.at_most(L + "/pushforward", push, 1e-6);
        });
    }
    {
        const MappingCase id = make_case(CaseName::Identity, 1.3, 0.9);
        ChartPoint p = sample_point(id.source, b.rng);
        b.at_most("identity/isometry", isometry_defect(id, p), 0);
        b.at_most("identity/levi_civita", levi_civita_residual(id, p).report.max_abs, 1e-6);
    }
    return b.finish();
}

// ---- parameter reductions, exact ----
inline Report suite_reductions(const Options& o) {
    detail::Builder b("reductions", o, 0x7007);
    double euri = 0, e420 = 0, ext = 0, sj = 0, chain_sj = 0, chain_uh = 0, embed = 0, eurj = 0;
    for (int t = 0; t < b.n(200); ++t) {
        ModelParams mp = sample_params(SpaceId::ExtSJHalfPlane5, b.rng);
        GeodesicState s = sample_state(SpaceId::ExtSJHalfPlane5, b.rng);
        ModelParams tau0 = mp;
        tau0.tau = 0;
        const Vec x4 = s.point.coords.head(4), v4 = s.velocity.head(4);
        euri = std::max(euri, detail::max_abs(Vec(rhs_ext_euri(tau0, s.point.coords, s.velocity).head(4) - rhs_sj_420(tau0, x4, v4))));
        ModelParams eps0 = mp;
        eps0.epsilon = 0;
        e420 = std::max(e420, detail::max_abs(Vec(rhs_sj_420(eps0, x4, v4).head(2) - rhs_upper_half(x4.head(2), v4.head(2)))));
        ext = std::max(ext, max_abs_diff(christoffel_ext_raw(mp.epsilon, 0, s.point.coords, TableVariant::Corrected).restrict_to({0, 1, 2, 3}),
                                         christoffel_sj_raw(mp.epsilon, x4)));
        sj = std::max(sj, max_abs_diff(christoffel_sj_raw(0, x4).restrict_to({0, 1}),
                                       christoffel_analytic(SpaceId::UpperHalf2, mp, {SpaceId::UpperHalf2, x4.head(2)})));
        Vec c6(6);
        c6 << x4[0], x4[1], b.rng.uniform(-2, 2), x4[2], x4[3], s.point.coords[4];
        Mat full = metric_jacobi_raw(mp.alpha, 0, mp.gamma, 0, c6);
        const std::vector<int> idx{0, 1, 3, 4};
        Mat blk(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) blk(i, j) = full(idx[i], idx[j]);
        chain_sj = std::max(chain_sj, detail::max_abs(Mat(blk - metric_raw(SpaceId::SJHalfPlane4, mp, x4))));
        Mat fuh = metric_jacobi_raw(mp.alpha, 0, 0, 0, c6);
        chain_uh = std::max(chain_uh, detail::max_abs(Mat(fuh.topLeftCorner(2, 2) - metric_raw(SpaceId::UpperHalf2, mp, x4.head(2)))));
        // Heisenberg as the (p, q, kappa) block at (x, y) = (0, 1)
        Vec e5 = s.point.coords;
        e5[0] = 0;
        e5[1] = 1;
        ModelParams hp;
        hp.gamma = mp.gamma;
        hp.delta = mp.delta;
        hp = derive_params(hp, SpaceId::Heisenberg3);
        embed = std::max(embed, detail::max_abs(Mat(metric_raw(SpaceId::ExtSJHalfPlane5, mp, e5).bottomRightCorner(3, 3) -
                                                    metric_raw(SpaceId::Heisenberg3, hp, e5.tail(3)))));
        Vec hx = s.point.coords.tail(3), hv = s.velocity.tail(3);
        eurj = std::max(eurj, detail::max_abs(Vec(rhs_heisenberg_eurj(hp.tau, hx, hv) - rhs_heisenberg_ccxx(hp, hx, hv))));
    }
    b.at_most("euri_tau0_is_420", euri, 0);
    b.at_most("e420_eps0_is_gm22", e420, 0);
    b.at_most("ext_tau0_restricts_to_gsc", ext, 0);
    b.at_most("gsc_eps0_restricts_to_gm22", sj, 0);
    b.at_most("jacobi_beta_delta0_is_sj", chain_sj, 0);
    b.at_most("jacobi_beta_gamma_delta0_is_upper_half", chain_uh, 0);
    b.at_most("ext_pqkappa_block_is_heisenberg", embed, 0);
    b.at_most("eurj_is_ccxx_with_a1_eq_a2", eurj, 1e-12);
    return b.finish();
}

// ---- chart maps ----
inline Report suite_transforms(const Options& o) {
    detail::Builder b("transforms", o, 0x8008);
    auto domain_point = [&](const ChartMap& m) {
        Vec x(m.dim);
        const auto& in = m.in_names;
        for (int i = 0; i < m.dim; ++i) x[i] = b.rng.uniform(-2, 2);
        if (in[0] == "alpha") sample_disk(b.rng, 0.9, x[0], x[1]);
        if (in[1] == "y") x[1] = b.rng.uniform(0.1, 3);
        return x;
    };
    for (MapName mn : all_maps()) {
        const ChartMap m = chart_map(mn);
        double rt = 0, det = 0;
        for (int t = 0; t < b.n(200); ++t) {
            Vec x = domain_point(m);
            rt = std::max(rt, detail::max_abs(Vec(m.inverse(m.forward(x)) - x)));
            JacobianResult j = jacobian(m, x);
            if (j.closed_form_det) det = std::max(det, std::abs(j.det - *j.closed_form_det) / std::abs(*j.closed_form_det));
        }
        b.at_most("round_trip/" + m.name, rt, 1e-12);
        b.at_most("jacobian_det/" + m.name, det, 1e-6);
    }
    {
        double rt = 0;
        for (int t = 0; t < b.n(200); ++t) {
            const double x = b.rng.uniform(-2, 2), y = b.rng.uniform(0.1, 3), th = b.rng.uniform(-3, 3);
            auto [a, bb, c, d] = iwasawa_inv(x, y, th);
            Iwasawa w = iwasawa(a, bb, c, d);
            rt = std::max({rt, std::abs(w.x - x), std::abs(w.y - y), std::abs(w.theta - th)});
        }
        b.at_most("round_trip/iwasawa", rt, 1e-12);
    }
    double eta = 0, longf = 0, cr = 0, schd = 0;
    for (int t = 0; t < b.n(200); ++t) {
        const cd v(b.rng.uniform(-2, 2), b.rng.uniform(0.1, 3));
        const double p = b.rng.uniform(-2, 2), q = b.rng.uniform(-2, 2);
        eta = std::max(eta, std::abs(fc1(v, p * v + q) - cd(q, p)));
        auto [w, z] = phi1(v.real(), v.imag(), p, q);
        longf = std::max(longf, std::abs(eta_long_form(cayley_inv(w), z) - fc_inverse(w, z)));
        Vec xy = vec({v.real(), v.imag()});
        Mat J = numeric_jacobian([](const Vec& c) {
            cd ww = cayley({c[0], c[1]});
            return vec({ww.real(), ww.imag()});
        }, xy);
        cr = std::max({cr, std::abs(J(0, 0) - J(1, 1)), std::abs(J(0, 1) + J(1, 0))});
    }
    const MappingCase phi1c = make_case(CaseName::Phi1SecondPartialCayley, 1.2, 0.8);
    for (int t = 0; t < b.n(100); ++t) {
        ChartPoint p = sample_point(SpaceId::DiskReal4, b.rng);
        const double ds = metric_det(SpaceId::DiskReal4, phi1c.src, p).computed;
        const double dt = metric_det(SpaceId::SJHalfPlane4, phi1c.tgt, {SpaceId::SJHalfPlane4, case_forward(phi1c, p.coords)}).computed;
        const double J = case_jacobian(phi1c, p.coords).determinant();
        schd = std::max(schd, std::abs(ds - dt * J * J) / std::abs(ds));
        const double cf = phi1_chart_det(cd(p.coords[2], p.coords[3]));
        schd = std::max(schd, std::abs(std::abs(J) - cf) / cf);
    }
    b.at_most("eta_identification", eta, 1e-14);
    b.at_most("eta_long_form", longf, 1e-12);
    b.at_most("cauchy_riemann/cayley", cr, 1e-7);
    b.at_most("det_relation/phi1", schd, 1e-8);
    {
        // holomorphic half-plane table, realified and carried to (x, y, p, q), against the real table
        double worst = 0;
        for (int t = 0; t < b.n(200); ++t) {
            ModelParams mp = sample_params(SpaceId::SJHalfPlane4, b.rng);
            ChartPoint sp = sample_point(SpaceId::SJHalfPlane4, b.rng);
            Vec uv = uvpq_to_xirho(sp.coords);
            ChristoffelTable Gr = complex_to_real(christoffel_complex_halfplane(mp, {SpaceId::SJHalfPlaneUV4, uv}));
            const double x = uv[0], y = uv[1], rho = uv[3];
            Mat J = jgeo::detail::xirho_jacobian(uv);
            std::vector<Mat> H(4, Mat::Zero(4, 4));  // second derivatives of p = rho/y, q = xi - x rho/y
            H[2](1, 1) = 2 * rho / (y * y * y);
            H[2](1, 3) = H[2](3, 1) = -1 / (y * y);
            H[3](0, 1) = H[3](1, 0) = rho / (y * y);
            H[3](0, 3) = H[3](3, 0) = -1 / y;
            H[3](1, 1) = -2 * x * rho / (y * y * y);
            H[3](1, 3) = H[3](3, 1) = x / (y * y);
            worst = std::max(worst, max_abs_diff(transform_christoffel(Gr, J, H), christoffel_analytic(SpaceId::SJHalfPlane4, mp, sp)));
        }
        b.at_most("rm10_gamm_vs_gsc", worst, 1e-6);
    }
    return b.finish();
}

inline Report run_suite(const std::string& name, const Options& o) {
    if (name == "dets") return suite_dets(o);
    if (name == "christoffels") return suite_christoffels(o);
    if (name == "systems") return suite_systems(o);
    if (name == "closed-forms") return suite_closed_forms(o);
    if (name == "integration") return suite_integration(o);
    if (name == "mappings") return suite_mappings(o);
    if (name == "reductions") return suite_reductions(o);
    if (name == "transforms") return suite_transforms(o);
    if (name == "all") {
        Report all;
        all.suite = "all";
        all.seed = o.seed;
        for (const auto& s : suite_names()) {
            if (s == "all") continue;
            Report r = run_suite(s, o);
            all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
            all.notes.insert(all.notes.end(), r.notes.begin(), r.notes.end());
        }
        std::sort(all.checks.begin(), all.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
        return all;
    }
    throw BadParams("unknown suite '" + name + "'");
}

}  // namespace jgeo::verify
