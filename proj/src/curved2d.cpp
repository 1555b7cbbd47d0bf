#include "symdom/curved2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symdom {

void validate(const DomainParams2& dp) {
    if (!(dp.a >= 0.0) || !(dp.a < dp.b)) {
        std::ostringstream os;
        os << "domain requires 0 ≤ 𝔞 < 𝔟 (got a=" << dp.a << ", b=" << dp.b << ")";
        fail(ErrorKind::InvalidParameter, os.str());
    }
    if (!(dp.c >= 0.0)) {
        std::ostringstream os;
        os << "domain requires 𝔠 ≥ 0 (got c=" << dp.c << ")";
        fail(ErrorKind::InvalidParameter, os.str());
    }
}

void validate(const CurvedWeightParams& p) { validate(p.disk()); }

bool domain_contains(const DomainParams2& dp, const Point2& pt, bool half, double tol) {
    const double u = pt[0], v = pt[1], u2 = u * u, v2 = v * v;
    if (std::abs(u) > 1.0 + tol) return false;
    if (dp.a + (dp.c - dp.a) * u2 > v2 + tol) return false;
    if (v2 > dp.b + (dp.c - dp.b) * u2 + tol) return false;
    if (half && v < -tol) return false;
    return true;
}

Point2 z_affine(const DomainParams2& dp, const Point2& pt) {
    return {pt[0], (-dp.a + (dp.a - dp.c) * pt[0] + pt[1]) / (dp.b - dp.a)};
}

Point2 z_affine_inv(const DomainParams2& dp, const Point2& st) {
    return {st[0], (dp.b - dp.a) * st[1] + dp.a + (dp.c - dp.a) * st[0]};
}

namespace {

void check_lambda(const DomainParams2& dp, const Point2& pt, bool half) {
    validate(dp);
    if (!domain_contains(dp, pt, half)) {
        std::ostringstream os;
        os << "point (" << pt[0] << ", " << pt[1] << ") lies outside " << (half ? "Lambda" : "Omega");
        fail(ErrorKind::DomainViolation, os.str());
    }
}

double checked_frakt_sq(const DomainParams2& dp, const Point2& pt) {
    double r = frakt_sq(dp, pt[0], pt[1]);
    if (r < -1e-14) fail(ErrorKind::DomainViolation, "negative radicand in the quadratic map");
    return std::max(r, 0.0);
}

double factor(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base <= 0.0) {
        if (expo < 0.0) fail(ErrorKind::SingularEvaluation, "weight has a negative exponent at this point");
        return 0.0;
    }
    return std::pow(base, expo);
}

} // namespace

double frakt(const DomainParams2& dp, const Point2& pt) {
    check_lambda(dp, pt, false);
    return std::sqrt(checked_frakt_sq(dp, pt));
}

Point2 psi(const DomainParams2& dp, const Point2& pt) {
    check_lambda(dp, pt, true);
    return {pt[0], std::sqrt(checked_frakt_sq(dp, pt))};
}

Point2 psi_inv(const DomainParams2& dp, const Point2& st) {
    validate(dp);
    const double s = st[0], t = st[1];
    if (s * s + t * t > 1.0 + 1e-12 || t < -1e-12)
        fail(ErrorKind::DomainViolation, "point lies outside the upper half disk");
    double r = (dp.b - dp.a) * t * t + dp.a * (1.0 - s * s) + dp.c * s * s;
    return {s, std::sqrt(std::max(r, 0.0))};
}

double curved_weight(const DomainParams2& dp, const CurvedWeightParams& p, const Point2& pt) {
    validate(p);
    check_lambda(dp, pt, false);
    const double u = pt[0], v = pt[1];
    const double t2 = checked_frakt_sq(dp, pt);
    const double rest = std::max(0.0, 1.0 - u * u - t2);
    return std::abs(v) * factor(u * u, p.kappa1) * factor(t2, p.kappa2 - 0.5) * factor(rest, p.kappa3);
}

double q_basis_eval(const DomainParams2& dp, const CurvedWeightParams& p, int j, int n, const Point2& pt) {
    validate(p);
    if (n < 0 || j < 0 || 2 * j > n) fail(ErrorKind::IndexOutOfRange, "Q basis needs 0 <= j <= floor(n/2)");
    check_lambda(dp, pt, false);
    return q_basis(dp, p, j, n, pt[0], pt[1]);
}

Rule2D lambda_quadrature(const DomainParams2& dp, const CurvedWeightParams& p, int degree, bool full_domain) {
    validate(dp);
    validate(p);
    if (degree < 0) fail(ErrorKind::InvalidParameter, "quadrature degree must be nonnegative");
    Rule2D disk = disk_rule(p.disk(), degree, !full_domain);
    Rule2D rule;
    rule.exactness = disk.exactness;
    rule.nodes.reserve(disk.size());
    rule.weights.reserve(disk.size());
    const double jac = dp.b - dp.a;
    for (std::size_t i = 0; i < disk.size(); ++i) {
        double s = disk.nodes[i][0], t = disk.nodes[i][1];
        double r = jac * t * t + dp.a * (1.0 - s * s) + dp.c * s * s;
        double v = std::sqrt(std::max(r, 0.0));
        rule.nodes.push_back({s, t < 0.0 ? -v : v});
        rule.weights.push_back(jac * disk.weights[i]);
    }
    return rule;
}

namespace {

void check_operator_point(const DomainParams2& dp, const CurvedWeightParams& p, const Point2& pt,
                          const CurvedOpOptions& opt) {
    validate(p);
    if (p.kappa1 != 0.0) fail(ErrorKind::InvalidParameter, "the curved operator requires kappa1 = 0");
    check_lambda(dp, pt, true);
    if (pt[1] < opt.v_min) fail(ErrorKind::SingularEvaluation, "operator evaluation needs v >= v_min");
}

} // namespace

double curved_diffop_apply(const DomainParams2& dp, const CurvedWeightParams& p, const Field2& f_disk,
                           const Point2& pt, CurvedOpOptions opt) {
    check_operator_point(dp, p, pt, opt);
    Point2 st = psi(dp, pt);
    if (p.kappa2 != 0.0 && st[1] < 1e-8)
        fail(ErrorKind::SingularEvaluation, "operator evaluation on the lower boundary curve");
    DiskOpOptions dopt;
    dopt.even_v = true;
    return disk_diffop_apply(p.disk(), f_disk, st, dopt);
}

double curved_diffop_apply(const DomainParams2& dp, const CurvedWeightParams& p, const CurvedPoly& poly,
                           const Point2& pt, CurvedOpOptions opt) {
    DiskWeightParams k = p.disk();
    Field2 f = [&poly, k](const Jet2& s, const Jet2& t) {
        Jet2 t2 = t * t, r(0.0);
        for (const auto& term : poly.terms) r += term.coef * disk_even_basis_sq(k, term.j, term.n, s, t2);
        return r;
    };
    return curved_diffop_apply(dp, p, f, pt, opt);
}

double curved_diffop_direct(const DomainParams2& dp, const CurvedWeightParams& p, const Field2& F,
                            const Point2& pt, DisplayReading reading, CurvedOpOptions opt) {
    check_operator_point(dp, p, pt, opt);
    const double a = dp.a, b = dp.b, c = dp.c;
    const double u = pt[0], v = pt[1];
    const double k = p.kappa1 + p.kappa2 + p.kappa3;
    const double D = -a * b + (a - c) * (b - c) * u * u;
    const double sign = reading == DisplayReading::Corrected ? -1.0 : 1.0;
    Jet2 J = eval_jet(F, pt);
    double r = (1.0 - u * u) * J.dd(0, 0) - 2.0 * (v * v - c) * u / v * J.dd(0, 1)
             + (a + b - v * v + D / (v * v)) * J.dd(1, 1);
    r += (-2.0 * a + c - D / (v * v)) / v * J.d(1);
    r += sign * (2.0 * k + 3.0) * (u * J.d(0) + (v * v - a) / v * J.d(1));
    r += 2.0 * p.kappa2 * (b - a) / v * J.d(1);
    return r;
}

double curved_kernel_eval(const DomainParams2& dp, const CurvedWeightParams& p, int n, const Point2& x,
                          const Point2& y) {
    validate(p);
    return disk_parity_kernel_eval(p.disk(), n, psi(dp, x), psi(dp, y));
}

SqrtDomainBasis curved_sqrt_basis(const DomainParams2& dp, const CurvedWeightParams& p, int mmax) {
    validate(dp);
    validate(p);
    SqrtDomainBasis base;
    auto chart = [dp](double s, double t) { return z_affine(dp, {s, t}); };
    for (int ps = 0; ps < 2; ++ps) {
        TriangleWeightParams a{p.kappa1 + (ps ? 0.5 : -0.5), p.kappa2 - 0.5, p.kappa3};
        int slot = sqrt_weight_slot(ps, false);
        base.orthonormal[slot] = orthonormal_triangle_evaluator(a, mmax, chart);
        base.mass_b[slot] = 1.0 / ((dp.b - dp.a) * triangle_rule(a, 0).mass());
    }
    base.b_W = 1.0 / lambda_quadrature(dp, p, 0, true).mass();
    return base;
}

} // namespace symdom
