#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace jgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cd = std::complex<double>;

inline constexpr cd I{0.0, 1.0};

// SiegelDisk2 and SJHalfPlaneUV4 are auxiliary charts (w alone; (v,u) as x,y,xi,rho)
enum class SpaceId {
    DiskComplex,
    DiskReal4,
    UpperHalf2,
    SJHalfPlane4,
    ExtSJHalfPlane5,
    JacobiFull6,
    Heisenberg3,
    SiegelDisk2,
    SJHalfPlaneUV4,
};

inline constexpr std::array<SpaceId, 9> all_spaces{
    SpaceId::DiskComplex,     SpaceId::DiskReal4,   SpaceId::UpperHalf2,
    SpaceId::SJHalfPlane4,    SpaceId::ExtSJHalfPlane5, SpaceId::JacobiFull6,
    SpaceId::Heisenberg3,     SpaceId::SiegelDisk2, SpaceId::SJHalfPlaneUV4,
};

inline int dimension(SpaceId s) {
    switch (s) {
        case SpaceId::UpperHalf2:
        case SpaceId::SiegelDisk2: return 2;
        case SpaceId::Heisenberg3: return 3;
        case SpaceId::DiskComplex:
        case SpaceId::DiskReal4:
        case SpaceId::SJHalfPlane4:
        case SpaceId::SJHalfPlaneUV4: return 4;
        case SpaceId::ExtSJHalfPlane5: return 5;
        case SpaceId::JacobiFull6: return 6;
    }
    return 0;
}

inline const std::vector<std::string>& coord_names(SpaceId s) {
    static const std::vector<std::string> disk_c{"alpha", "beta", "m", "n"};
    static const std::vector<std::string> disk_r{"m", "n", "alpha", "beta"};
    static const std::vector<std::string> uh{"x", "y"};
    static const std::vector<std::string> sj{"x", "y", "p", "q"};
    static const std::vector<std::string> ext{"x", "y", "p", "q", "kappa"};
    static const std::vector<std::string> full{"x", "y", "theta", "p", "q", "kappa"};
    static const std::vector<std::string> heis{"lambda", "mu", "kappa"};
    static const std::vector<std::string> sd{"alpha", "beta"};
    static const std::vector<std::string> uv{"x", "y", "xi", "rho"};
    switch (s) {
        case SpaceId::DiskComplex: return disk_c;
        case SpaceId::DiskReal4: return disk_r;
        case SpaceId::UpperHalf2: return uh;
        case SpaceId::SJHalfPlane4: return sj;
        case SpaceId::ExtSJHalfPlane5: return ext;
        case SpaceId::JacobiFull6: return full;
        case SpaceId::Heisenberg3: return heis;
        case SpaceId::SiegelDisk2: return sd;
        case SpaceId::SJHalfPlaneUV4: return uv;
    }
    return uh;
}

inline std::string space_name(SpaceId s) {
    switch (s) {
        case SpaceId::DiskComplex: return "disk_complex";
        case SpaceId::DiskReal4: return "disk_real";
        case SpaceId::UpperHalf2: return "upper_half";
        case SpaceId::SJHalfPlane4: return "sj_half_plane";
        case SpaceId::ExtSJHalfPlane5: return "ext_sj_half_plane";
        case SpaceId::JacobiFull6: return "jacobi_full";
        case SpaceId::Heisenberg3: return "heisenberg";
        case SpaceId::SiegelDisk2: return "siegel_disk";
        case SpaceId::SJHalfPlaneUV4: return "sj_half_plane_uv";
    }
    return "";
}

// accepts snake_case or kebab-case
inline SpaceId parse_space(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    for (auto id : all_spaces)
        if (space_name(id) == s) return id;
    throw BadParams("unknown space '" + std::string(name) + "'");
}

inline bool is_disk(SpaceId s) {
    return s == SpaceId::DiskComplex || s == SpaceId::DiskReal4 || s == SpaceId::SiegelDisk2;
}

inline bool is_half_plane(SpaceId s) {
    return s == SpaceId::UpperHalf2 || s == SpaceId::SJHalfPlane4 || s == SpaceId::ExtSJHalfPlane5 ||
           s == SpaceId::JacobiFull6 || s == SpaceId::SJHalfPlaneUV4;
}

struct ModelParams {
    double alpha = 0, beta = 0, gamma = 0, delta = 0;
    double a1 = 0, a2 = 0, a3 = 0;
    double k = 0, nu = 0, epsilon = 0, tau = 0, iota = 0, j = 0;

    bool operator==(const ModelParams&) const = default;
};

inline ModelParams from_k_nu(double k, double nu) {
    ModelParams p;
    p.alpha = k / 2;
    p.gamma = nu;
    return p;
}

inline ModelParams heisenberg_params(double a1, double a2, double a3) {
    ModelParams p;
    p.a1 = a1;
    p.a2 = a2;
    p.a3 = a3;
    return p;
}

namespace detail {

inline void require_positive(double v, const char* name, SpaceId s) {
    if (!(v > 0)) throw BadParams(std::string(name) + " must be positive for " + space_name(s));
}

inline void require_zero(double v, const char* name, SpaceId s) {
    if (v != 0) throw BadParams(std::string(name) + " must be zero for " + space_name(s));
}

}  // namespace detail

inline ModelParams derive_params(ModelParams p, SpaceId s) {
    using detail::require_positive;
    using detail::require_zero;
    const bool has_a = p.a1 != 0 || p.a2 != 0 || p.a3 != 0;
    if (s == SpaceId::Heisenberg3) {
        require_zero(p.alpha, "alpha", s);
        require_zero(p.beta, "beta", s);
        if (!has_a) {
            require_positive(p.gamma, "gamma", s);
            require_positive(p.delta, "delta", s);
            p.a1 = p.a2 = p.gamma;
            p.a3 = p.delta;
        }
        require_positive(p.a1, "a1", s);
        require_positive(p.a2, "a2", s);
        require_positive(p.a3, "a3", s);
    } else {
        if (has_a) throw BadParams("a1, a2, a3 only apply to heisenberg");
        require_positive(p.alpha, "alpha", s);
        switch (s) {
            case SpaceId::UpperHalf2:
            case SpaceId::SiegelDisk2:
                require_zero(p.beta, "beta", s);
                require_zero(p.gamma, "gamma", s);
                require_zero(p.delta, "delta", s);
                break;
            case SpaceId::DiskComplex:
            case SpaceId::DiskReal4:
            case SpaceId::SJHalfPlane4:
            case SpaceId::SJHalfPlaneUV4:
                require_zero(p.beta, "beta", s);
                require_positive(p.gamma, "gamma", s);
                require_zero(p.delta, "delta", s);
                break;
            case SpaceId::ExtSJHalfPlane5:
                require_zero(p.beta, "beta", s);
                require_positive(p.gamma, "gamma", s);
                require_positive(p.delta, "delta", s);
                break;
            case SpaceId::JacobiFull6:
                require_positive(p.beta, "beta", s);
                require_positive(p.gamma, "gamma", s);
                require_positive(p.delta, "delta", s);
                break;
            default: break;
        }
    }
    p.k = 2 * p.alpha;
    p.nu = p.gamma;
    p.epsilon = p.alpha > 0 ? p.gamma / p.alpha : 0;
    p.tau = p.gamma > 0 ? p.delta / p.gamma : 0;
    p.iota = p.nu > 0 ? p.k / p.nu : 0;
    p.j = p.k > 0 ? p.nu / (2 * p.k) : 0;
    return p;
}

struct ChartPoint {
    SpaceId space;
    Vec coords;
};

struct GeodesicState {
    ChartPoint point;
    Vec velocity;
};

struct ChristoffelTable {
    int n = 0;
    std::vector<double> symbols;

    ChristoffelTable() = default;
    explicit ChristoffelTable(int dim) : n(dim), symbols(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

    double& operator()(int i, int j, int k) { return symbols[static_cast<std::size_t>((i * n + j) * n + k)]; }
    double operator()(int i, int j, int k) const { return symbols[static_cast<std::size_t>((i * n + j) * n + k)]; }

    // sets G^i_jk and G^i_kj
    void set(int i, int j, int k, double v) {
        (*this)(i, j, k) = v;
        (*this)(i, k, j) = v;
    }

    void symmetrize() {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    double m = 0.5 * ((*this)(i, j, k) + (*this)(i, k, j));
                    (*this)(i, j, k) = m;
                    (*this)(i, k, j) = m;
                }
    }

    double max_abs() const {
        double m = 0;
        for (double v : symbols) m = std::max(m, std::abs(v));
        return m;
    }

    // restriction to the index subset idx (in order)
    ChristoffelTable restrict_to(const std::vector<int>& idx) const {
        ChristoffelTable r(static_cast<int>(idx.size()));
        for (int a = 0; a < r.n; ++a)
            for (int b = 0; b < r.n; ++b)
                for (int c = 0; c < r.n; ++c) r(a, b, c) = (*this)(idx[a], idx[b], idx[c]);
        return r;
    }
};

inline double max_abs_diff(const ChristoffelTable& a, const ChristoffelTable& b) {
    if (a.n != b.n) throw Error("christoffel tables differ in dimension");
    double m = 0;
    for (std::size_t i = 0; i < a.symbols.size(); ++i) m = std::max(m, std::abs(a.symbols[i] - b.symbols[i]));
    return m;
}

inline double lower_symmetry_defect(const ChristoffelTable& g) {
    double m = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) m = std::max(m, std::abs(g(i, j, k) - g(i, k, j)));
    return m;
}

struct CurveSample {
    std::vector<double> times;
    std::vector<GeodesicState> states;
    std::vector<double> energy;
    bool domain_exit = false;
    double exit_time = 0;
};

struct ResidualReport {
    std::string check_name;
    double max_abs = 0;
    std::vector<double> per_component;
    int sample_count = 0;

    void absorb(const Vec& r) {
        if (per_component.empty()) per_component.assign(static_cast<std::size_t>(r.size()), 0.0);
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            double a = std::abs(r[i]);
            if (std::isnan(a)) a = INFINITY;
            per_component[static_cast<std::size_t>(i)] = std::max(per_component[static_cast<std::size_t>(i)], a);
            max_abs = std::max(max_abs, a);
        }
        ++sample_count;
    }
};

inline constexpr double default_floor = 1e-12;

// P = 1 - |w|^2 for disk charts, y for half-plane charts
inline double constrained_quantity(const ChartPoint& p) {
    const Vec& c = p.coords;
    switch (p.space) {
        case SpaceId::DiskComplex:
        case SpaceId::SiegelDisk2: return 1 - c[0] * c[0] - c[1] * c[1];
        case SpaceId::DiskReal4: return 1 - c[2] * c[2] - c[3] * c[3];
        case SpaceId::Heisenberg3: return INFINITY;
        default: return c[1];
    }
}

inline void validate(const ChartPoint& p, double floor = default_floor) {
    const auto& names = coord_names(p.space);
    if (p.coords.size() != dimension(p.space))
        throw DomainViolation("dimension", static_cast<double>(p.coords.size()), dimension(p.space));
    for (Eigen::Index i = 0; i < p.coords.size(); ++i)
        if (!std::isfinite(p.coords[i])) throw DomainViolation(names[static_cast<std::size_t>(i)], p.coords[i], 0);
    if (p.space == SpaceId::Heisenberg3) return;
    double q = constrained_quantity(p);
    if (!(q >= floor)) throw DomainViolation(is_disk(p.space) ? "P" : "y", q, floor);
}

inline bool is_valid(const ChartPoint& p, double floor = default_floor) {
    try {
        validate(p, floor);
        return true;
    } catch (const DomainViolation&) {
        return false;
    }
}

inline ChartPoint point(SpaceId s, std::initializer_list<double> xs) {
    ChartPoint p{s, Vec(static_cast<Eigen::Index>(xs.size()))};
    Eigen::Index i = 0;
    for (double x : xs) p.coords[i++] = x;
    return p;
}

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace jgeo
