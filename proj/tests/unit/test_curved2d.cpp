#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "symdom/curved2d.hpp"

using namespace symdom;

namespace {

const DomainParams2 kDomains[] = {{0, 1, 0}, {0, 1, 1}, {0, 1, 0.5}, {0.25, 1, 2}};
const DomainParams2 kSpectralDomains[] = {{0, 1, 1}, {0, 1, 0.5}, {0.25, 1, 2}};
const CurvedWeightParams kSpectralWeights[] = {{0, 0, 0}, {0, 0.5, 0}, {0, 1, 1}};

/// Uniform points of Lambda, rejection-sampled from its bounding box.
std::vector<Point2> lambda_points(const DomainParams2& dp, int count, std::uint64_t seed, double v_min = 0.0) {
    auto g = oracle::rng(seed);
    const double vmax = std::sqrt(std::max(dp.b, dp.c));
    std::vector<Point2> pts;
    while (int(pts.size()) < count) {
        Point2 p{oracle::uniform(g, -1, 1), oracle::uniform(g, 0, vmax)};
        if (p[1] >= v_min && domain_contains(dp, p, true, 0.0) && frakt_sq(dp, p[0], p[1]) > 1e-6
            && p[0] * p[0] + frakt_sq(dp, p[0], p[1]) < 1 - 1e-6)
            pts.push_back(p);
    }
    return pts;
}

/// Integral over Lambda of g(u, v^2) times the weight, written in w = v^2 - lo(u)^2 so the
/// inner integrand only has power singularities at its endpoints. Split at u = 0.
double lambda_oracle(const DomainParams2& dp, const CurvedWeightParams& p,
                     const std::function<double(double, double)>& g) {
    const double ba = dp.b - dp.a;
    auto inner = [&](double u) {
        double lo2 = dp.a + (dp.c - dp.a) * u * u;
        return oracle::tanh_sinh_ends(
            [&](double w, double, double to_end) {
                double t2 = w / ba, rest = to_end / ba;
                return g(u, lo2 + w) * 0.5 * std::pow(u * u, p.kappa1) * std::pow(t2, p.kappa2 - 0.5)
                     * std::pow(rest, p.kappa3);
            },
            0.0, ba * (1 - u * u));
    };
    return oracle::tanh_sinh(inner, -1.0, 0.0) + oracle::tanh_sinh(inner, 0.0, 1.0);
}

/// (b - a) times the integral of g(psi^{-1}) against the disk weight over the upper half disk.
double half_disk_oracle(const DomainParams2& dp, const DiskWeightParams& k,
                        const std::function<double(double, double)>& g) {
    auto inner = [&](double s) {
        const double T = std::sqrt(1 - s * s);
        return oracle::tanh_sinh_ends(
            [&](double t, double, double to_end) {
                double v2 = (dp.b - dp.a) * t * t + dp.a * (1 - s * s) + dp.c * s * s;
                double w = std::pow(s * s, k.kappa1) * std::pow(t * t, k.kappa2) * std::pow(to_end * (T + t), k.kappa3);
                return g(s, v2) * w;
            },
            0.0, T);
    };
    return (dp.b - dp.a) * (oracle::tanh_sinh(inner, -1.0, 0.0) + oracle::tanh_sinh(inner, 0.0, 1.0));
}

struct QOrthonormal {
    DomainParams2 dp;
    CurvedWeightParams p;
    std::vector<double> inv_norm;

    QOrthonormal(const DomainParams2& d, const CurvedWeightParams& w, int N) : dp(d), p(w) {
        Rule2D r = lambda_quadrature(d, w, 2 * N + 2);
        for (int n = 0; n <= N; ++n)
            for (int j = 0; 2 * j <= n; ++j) {
                double s = r.integrate([&](const Point2& x) { return std::pow(q_basis_eval(d, w, j, n, x), 2); });
                inv_norm.push_back(1.0 / std::sqrt(s / r.mass()));
            }
    }
    static int index(int j, int n) { return (n / 2) * (n / 2 + 1) + (n % 2) * (n / 2 + 1) + j; }
    double operator()(int j, int n, const Point2& x) const { return q_basis_eval(dp, p, j, n, x) * inv_norm[index(j, n)]; }
    double kernel(int n, const Point2& x, const Point2& y) const {
        double s = 0.0;
        for (int j = 0; 2 * j <= n; ++j) s += (*this)(j, n, x) * (*this)(j, n, y);
        return s;
    }
};

}  // namespace

TEST_CASE("domain membership") {
    CHECK(domain_contains({0, 1, 1}, {0.3, 0.5}, true));
    CHECK_FALSE(domain_contains({0, 1, 0}, {0.8, 0.7}, false));
    DomainParams2 dp{0.25, 1, 2};
    double u = 0.6, v = std::sqrt(dp.b + (dp.c - dp.b) * u * u);
    CHECK(domain_contains(dp, {u, v}, true));
    CHECK(domain_contains(dp, {u, -v}, false));
    CHECK_FALSE(domain_contains(dp, {u, -v}, true));
    CHECK_FALSE(domain_contains(dp, {0.0, 0.4}, false));
    CHECK_THROWS_AS(validate(DomainParams2{1, 1, 0}), Error);
    CHECK_THROWS_AS(validate(DomainParams2{0, 1, -0.5}), Error);
}

TEST_CASE("affine map to the triangle") {
    for (const auto& dp : kDomains) {
        auto p0 = z_affine(dp, {0, dp.a}), p1 = z_affine(dp, {0, dp.b}), p2 = z_affine(dp, {1, dp.c});
        CHECK(std::abs(p0[0]) + std::abs(p0[1]) < 1e-15);
        CHECK(std::abs(p1[0]) + std::abs(p1[1] - 1) < 1e-15);
        CHECK(std::abs(p2[0] - 1) + std::abs(p2[1]) < 1e-15);
        auto g = oracle::rng(4);
        for (int i = 0; i < 20; ++i) {
            Point2 x{oracle::uniform(g, 0, 1), oracle::uniform(g, 0, 2)};
            Point2 y = z_affine_inv(dp, z_affine(dp, x));
            CHECK(std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]) <= 1e-15 * 4);
        }
    }
    Point2 id = z_affine({0, 1, 0}, {0.3, 0.4});
    CHECK(id[0] == 0.3);
    CHECK(id[1] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("quadratic map and psi") {
    CHECK(frakt({0, 1, 1}, {0.3, 0.5}) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(frakt({0, 1, 0}, {0.3, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
    DomainParams2 dp{0.25, 1, 2};
    double u = 0.4, lo = std::sqrt(dp.a + (dp.c - dp.a) * u * u);
    CHECK(frakt(dp, {u, lo}) < 1e-7);
    CHECK_THROWS_AS(frakt(dp, {0.0, 0.3}), Error);
    auto q = psi({0, 1, 1}, {0.3, 0.5});
    CHECK(q[0] == 0.3);
    CHECK(q[1] == doctest::Approx(0.4).epsilon(1e-14));
    auto id = psi({0, 1, 0}, {-0.2, 0.7});
    CHECK(id[0] == -0.2);
    CHECK(id[1] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK_THROWS_AS(psi_inv({0, 1, 1}, {0.8, 0.8}), Error);
    CHECK_THROWS_AS(psi({0, 1, 1}, {0.3, -0.5}), Error);
}

TEST_CASE("psi is a bijection onto the half disk") {
    for (const auto& dp : kDomains) {
        for (const auto& x : lambda_points(dp, 100, 6)) {
            auto y = psi_inv(dp, psi(dp, x));
            CHECK(std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]) <= 1e-13);
        }
        auto g = oracle::rng(77);
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            Point2 x{oracle::uniform(g, -1, 1), oracle::uniform(g, 0, std::sqrt(std::max(dp.b, dp.c)))};
            if (domain_contains(dp, x, true, 0.0)) {
                auto s = psi(dp, x);
                if (s[0] * s[0] + s[1] * s[1] > 1 + 1e-12 || s[1] < 0) ++bad;
            }
            Point2 s{oracle::uniform(g, -1, 1), oracle::uniform(g, 0, 1)};
            if (s[0] * s[0] + s[1] * s[1] <= 1 && !domain_contains(dp, psi_inv(dp, s), true, 1e-12)) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("curved weight") {
    DiskWeightParams k{0.5, 0.25, 1};
    CurvedWeightParams p{k.kappa1, k.kappa2, k.kappa3};
    for (const auto& x : lambda_points({0, 1, 0}, 10, 3))
        CHECK(curved_weight({0, 1, 0}, p, x) == doctest::Approx(disk_weight(k, x)).epsilon(1e-13));
    for (double c : {0.0, 0.5, 1.0, 3.0})
        for (const auto& x : lambda_points({0, 1, c}, 10, 8))
            CHECK(curved_weight({0, 1, c}, CurvedWeightParams::from_beta_gamma(0.5, 0), x) == doctest::Approx(x[1]));
    CHECK_THROWS_AS(curved_weight({0, 1, 1}, p, {0.5, 0.2}), Error);
    double lo = std::sqrt(0.25 + 1.75 * 0.16);
    CHECK_THROWS_AS(curved_weight({0.25, 1, 2}, CurvedWeightParams::from_beta_gamma(0.25, 0), {0.4, lo}), Error);
}

TEST_CASE("integral identity of the quadratic map") {
    // Twenty integrands smooth in (u, v^2) over the four domains and five weights.
    auto g = oracle::rng(2024);
    const CurvedWeightParams weights[] = {{0, 0, 0}, {0, 0.5, 0}, {0, 1, 1}, {0.5, 0.25, 0.5}, {0, 0.25, -0.5}};
    for (const auto& dp : kDomains)
        for (const auto& p : weights) {
            double c1 = oracle::uniform(g, -1, 1), c2 = oracle::uniform(g, -1, 1), c3 = oracle::uniform(g, 0, 2);
            auto f = [=](double u, double v2) { return std::exp(c1 * u + c2 * v2) * std::cos(c3 * u * v2) + 1.5; };
            double lhs = lambda_oracle(dp, p, f);
            double rhs = half_disk_oracle(dp, p.disk(), f);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
            double quad = lambda_quadrature(dp, p, 40).integrate([&](const Point2& x) { return f(x[0], x[1] * x[1]); });
            CHECK(std::abs(quad - rhs) <= 1e-9 * std::abs(rhs));
        }
}

TEST_CASE("Q basis") {
    CurvedWeightParams p{0.5, 0.25, 1};
    for (const auto& dp : kDomains) CHECK(q_basis_eval(dp, p, 0, 0, lambda_points(dp, 1, 2)[0]) == 1.0);
    // On the disk Q_{j,n} is a constant multiple of G_{2j,n} with the roles of u and v exchanged.
    DiskWeightParams swapped{p.kappa2, p.kappa1, p.kappa3};
    auto pts = lambda_points({0, 1, 0}, 10, 9);
    for (int n = 0; n <= 7; ++n)
        for (int j = 0; 2 * j <= n; ++j) {
            Point2 y0{pts[0][1], pts[0][0]};
            double ratio = q_basis_eval({0, 1, 0}, p, j, n, pts[0]) / disk_basis_eval(swapped, 2 * j, n, y0);
            for (const auto& x : pts) {
                double g = ratio * disk_basis_eval(swapped, 2 * j, n, {x[1], x[0]});
                CHECK(std::abs(q_basis_eval({0, 1, 0}, p, j, n, x) - g) <= 1e-12 * std::max(1.0, std::abs(g)));
            }
        }
    for (const auto& w : kSpectralWeights)
        for (const auto& x : lambda_points({0, 1, 1}, 10, 10))
            for (int n = 0; n <= 8; ++n)
                for (int j = 0; 2 * j <= n; ++j) {
                    const double u = x[0], v = x[1], beta = w.kappa2, gamma = w.kappa3;
                    double ref = oracle::gegenbauer_series(n - 2 * j, 2 * j + beta + gamma + 1, u) * std::pow(1 - u * u, j)
                               * oracle::jacobi_series(j, gamma, beta - 0.5, 2 * (v * v - u * u) / (1 - u * u) - 1);
                    double got = q_basis_eval({0, 1, 1}, w, j, n, x);
                    CHECK(std::abs(got - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
                }
    CHECK_THROWS_AS(q_basis_eval({0, 1, 1}, p, 2, 3, {0.1, 0.5}), Error);
    CHECK_THROWS_AS(q_basis_eval({0, 1, 1}, p, 0, 3, {0.5, 0.1}), Error);
}

TEST_CASE("Lambda quadrature") {
    for (const auto& dp : kDomains)
        for (const auto& p : {CurvedWeightParams{0, 0, 0}, CurvedWeightParams{0.5, 0.25, 1}}) {
            double disk_half = disk_rule(p.disk(), 0, true).mass();
            double m0 = lambda_quadrature(dp, p, 0).mass(), m1 = lambda_quadrature(dp, p, 17).mass();
            CHECK(m0 == doctest::Approx((dp.b - dp.a) * disk_half).epsilon(1e-13));
            CHECK(std::abs(m0 - m1) <= 1e-12 * m0);
            CHECK(lambda_quadrature(dp, p, 4, true).mass() == doctest::Approx(2 * m0).epsilon(1e-13));
            for (const auto& x : lambda_quadrature(dp, p, 6).nodes) CHECK(domain_contains(dp, x, true));
        }
    CHECK_THROWS_AS(lambda_quadrature({0, 1, 1}, {}, -1), Error);
}

TEST_CASE("Q Gram identity") {
    for (const auto& dp : kDomains)
        for (const auto& p : kSpectralWeights) {
            const int N = 12;
            QOrthonormal on(dp, p, N);
            Rule2D r = lambda_quadrature(dp, p, 2 * N + 4);
            double dev = 0.0;
            for (int n1 = 0; n1 <= N; ++n1)
                for (int j1 = 0; 2 * j1 <= n1; ++j1)
                    for (int n2 = 0; n2 <= n1; ++n2)
                        for (int j2 = 0; 2 * j2 <= n2; ++j2) {
                            double g = r.integrate([&](const Point2& x) { return on(j1, n1, x) * on(j2, n2, x); }) / r.mass();
                            dev = std::max(dev, std::abs(g - (n1 == n2 && j1 == j2 ? 1.0 : 0.0)));
                        }
            CHECK(dev <= 1e-9);
        }
}

TEST_CASE("curved operator: constants and eigenfunctions") {
    Field2 one = [](const Jet2&, const Jet2&) { return Jet2(1.0); };
    for (const auto& dp : kSpectralDomains)
        for (const auto& p : kSpectralWeights) {
            auto pts = lambda_points(dp, 8, 21, 0.05);
            for (const auto& x : pts) CHECK(curved_diffop_apply(dp, p, one, x) == 0.0);
            for (int n = 0; n <= 8; ++n)
                for (int j = 0; 2 * j <= n; ++j) {
                    CurvedPoly poly{{{j, n, 1.0}}};
                    const double lambda = curved_eigenvalue(p, n);
                    for (const auto& x : pts) {
                        double val = q_basis_eval(dp, p, j, n, x);
                        double r = curved_diffop_apply(dp, p, poly, x) - lambda * val;
                        CHECK(std::abs(r) <= 1e-8 * std::max(1.0, -lambda) * std::max(1.0, std::abs(val)));
                    }
                }
        }
    CHECK_THROWS_AS(curved_diffop_apply({0, 1, 1}, {0.5, 0, 0}, one, {0.1, 0.5}), Error);
    CHECK_THROWS_AS(curved_diffop_apply({0, 1, 1}, {0, 0, 0}, one, {0.01, 0.02}), Error);
}

TEST_CASE("curved operator on the disk is the disk operator") {
    CurvedWeightParams p{0, 0.75, 0.5};
    Field2 f = [](const Jet2& s, const Jet2& t) { return exp(s) * cos(t * t) + s * s * t * t; };
    DiskOpOptions even;
    even.even_v = true;
    for (const auto& x : lambda_points({0, 1, 0}, 10, 5, 0.05))
        CHECK(curved_diffop_apply({0, 1, 0}, p, f, x) == doctest::Approx(disk_diffop_apply(p.disk(), f, x, even)).epsilon(1e-13));
}

TEST_CASE("displayed operator against the pullback") {
    double literal_gap = 0.0;
    for (const auto& dp : kSpectralDomains)
        for (const auto& p : kSpectralWeights) {
            Field2 f = [](const Jet2& s, const Jet2& t) { return exp(s) * cos(t * t) + s * t * t; };
            Field2 F = [&](const Jet2& u, const Jet2& v) {
                Jet2 t2 = frakt_sq(dp, u, v);
                return exp(u) * cos(t2) + u * t2;
            };
            for (const auto& x : lambda_points(dp, 10, 33, 0.1)) {
                double pull = curved_diffop_apply(dp, p, f, x);
                double direct = curved_diffop_direct(dp, p, F, x);
                CHECK(std::abs(direct - pull) <= 1e-7 * std::max(1.0, std::abs(pull)));
                double lit = curved_diffop_direct(dp, p, F, x, DisplayReading::Literal);
                literal_gap = std::max(literal_gap, std::abs(lit - pull) / std::max(1.0, std::abs(pull)));
            }
            for (int n = 1; n <= 5; ++n) {
                Field2 Q = [&, n](const Jet2& u, const Jet2& v) { return q_basis(dp, p, n / 2, n, u, v); };
                for (const auto& x : lambda_points(dp, 5, 34, 0.1)) {
                    double val = q_basis_eval(dp, p, n / 2, n, x);
                    double r = curved_diffop_direct(dp, p, Q, x) - curved_eigenvalue(p, n) * val;
                    CHECK(std::abs(r) <= 1e-7 * std::max(1.0, -curved_eigenvalue(p, n)) * std::max(1.0, std::abs(val)));
                }
            }
        }
    CHECK(literal_gap > 1e-2);
}

TEST_CASE("curved kernel") {
    for (const auto& dp : kSpectralDomains)
        for (const auto& p : kSpectralWeights) {
            QOrthonormal on(dp, p, 6);
            auto pts = lambda_points(dp, 10, 44);
            CHECK(curved_kernel_eval(dp, p, 0, pts[0], pts[1]) == doctest::Approx(1.0).epsilon(1e-13));
            for (int n = 0; n <= 6; ++n)
                for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
                    double sum = on.kernel(n, pts[i], pts[i + 1]);
                    double scale = std::sqrt(on.kernel(n, pts[i], pts[i]) * on.kernel(n, pts[i + 1], pts[i + 1]));
                    CHECK(std::abs(curved_kernel_eval(dp, p, n, pts[i], pts[i + 1]) - sum) <= 1e-8 * scale);
                }
        }
    CHECK_THROWS_AS(curved_kernel_eval({0, 1, 1}, {}, 2, {0.9, 0.1}, {0.1, 0.5}), Error);
}

TEST_CASE("curved kernel reproduces the even space") {
    DomainParams2 dp{0.25, 1, 2};
    CurvedWeightParams p{0, 0.5, 1};
    const int n = 5;
    Rule2D r = lambda_quadrature(dp, p, 2 * n + 2);
    for (const auto& x : lambda_points(dp, 4, 55))
        for (int j = 0; 2 * j <= n; ++j) {
            double s = r.integrate([&](const Point2& y) { return curved_kernel_eval(dp, p, n, x, y) * q_basis_eval(dp, p, j, n, y); })
                     / r.mass();
            double q = q_basis_eval(dp, p, j, n, x);
            CHECK(std::abs(s - q) <= 1e-8 * std::max(1.0, std::abs(q)));
        }
}

TEST_CASE("curved parity bases") {
    for (const auto& dp : kDomains) {
        CurvedWeightParams p{0.5, 0.75, 0.5};
        const int N = 8;
        auto base = curved_sqrt_basis(dp, p, N / 2);
        Rule2D r = lambda_quadrature(dp, p, 2 * N + 2, true);
        std::vector<std::pair<ParityFamily, std::array<int, 2>>> ms;
        for (int n = 0; n <= N; ++n)
            for (int j = 0; j <= n / 2; ++j) ms.push_back({n % 2 ? ParityFamily::OE : ParityFamily::EE, {j, n / 2}});
        double dev = 0.0;
        for (std::size_t a = 0; a < ms.size(); ++a)
            for (std::size_t b = 0; b <= a; ++b) {
                double g = r.integrate([&](const Point2& x) {
                    return parity_basis_eval(base, ms[a].first, ms[a].second[0], ms[a].second[1], x)
                         * parity_basis_eval(base, ms[b].first, ms[b].second[0], ms[b].second[1], x);
                });
                dev = std::max(dev, std::abs(g * base.b_W - (a == b ? 1.0 : 0.0)));
            }
        CHECK(dev <= 1e-9);
        CHECK_THROWS_AS(parity_basis_eval(base, ParityFamily::OO, 0, 1, {0.1, 0.8}), Error);
    }
}
