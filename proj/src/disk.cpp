#include "symdom/disk.hpp"

#include <algorithm>
#include <cmath>

namespace symdom {

void validate(const DiskWeightParams& p) {
    if (!(p.kappa1 > -0.5) || !(p.kappa2 > -0.5) || !(p.kappa3 > -1.0))
        fail(ErrorKind::InvalidParameter, "disk weight requires kappa1, kappa2 > -1/2 and kappa3 > -1");
}

bool disk_contains(const Point2& pt, double tol) { return pt[0] * pt[0] + pt[1] * pt[1] <= 1.0 + tol; }

namespace {

void check_point(const Point2& pt) {
    if (!disk_contains(pt)) fail(ErrorKind::DomainViolation, "point lies outside the unit disk");
}

double factor(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base <= 0.0) {
        if (expo < 0.0) fail(ErrorKind::SingularEvaluation, "weight has a negative exponent at this point");
        return 0.0;
    }
    return std::pow(base, expo);
}

void check_kernel_params(const DiskWeightParams& p) {
    if (p.kappa1 < 0.0 || p.kappa2 < 0.0 || p.kappa3 < -0.5)
        fail(ErrorKind::InvalidParameter, "disk kernel formula requires kappa1, kappa2 >= 0 and kappa3 >= -1/2");
}

int kernel_points(int n) { return n / 2 + 2; }

} // namespace

double disk_weight(const DiskWeightParams& p, const Point2& pt) {
    validate(p);
    check_point(pt);
    double u = pt[0], v = pt[1];
    return factor(u * u, p.kappa1) * factor(v * v, p.kappa2) * factor(1.0 - u * u - v * v, p.kappa3);
}

double disk_basis_eval(const DiskWeightParams& p, int j, int n, const Point2& pt) {
    validate(p);
    if (n < 0 || j < 0 || j > n) fail(ErrorKind::IndexOutOfRange, "disk basis needs 0 <= j <= n");
    return disk_basis(p, j, n, pt[0], pt[1]);
}

double disk_even_basis_eval(const DiskWeightParams& p, int j, int n, const Point2& pt) {
    validate(p);
    if (n < 0 || j < 0 || 2 * j > n) fail(ErrorKind::IndexOutOfRange, "even disk basis needs 0 <= 2j <= n");
    return disk_even_basis_sq(p, j, n, pt[0], pt[1] * pt[1]);
}

Rule2D disk_rule(const DiskWeightParams& p, int degree, bool half) {
    validate(p);
    int pairs = std::max(1, (degree + 4) / 4);
    QuadRule rt = gen_gegenbauer_rule(pairs, {p.kappa1 + p.kappa3 + 1.0, p.kappa2});
    QuadRule rs = gen_gegenbauer_rule(pairs, {p.kappa3 + 0.5, p.kappa1});
    Rule2D rule;
    rule.exactness = 4 * pairs - 1;
    for (std::size_t i = 0; i < rt.size(); ++i) {
        double t = rt.nodes[i];
        if (half && t <= 0.0) continue;
        double r = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (std::size_t k = 0; k < rs.size(); ++k) {
            rule.nodes.push_back({r * rs.nodes[k], t});
            rule.weights.push_back(rt.weights[i] * rs.weights[k]);
        }
    }
    return rule;
}

double disk_kernel_eval(const DiskWeightParams& p, int n, const Point2& x, const Point2& y) {
    validate(p);
    check_kernel_params(p);
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    check_point(x);
    check_point(y);
    int m = kernel_points(n);
    QuadRule r1 = shifted_measure_rule(p.kappa1, m);
    QuadRule r2 = shifted_measure_rule(p.kappa2, m);
    QuadRule r3 = symmetric_measure_rule(p.kappa3, m);
    const double lambda = p.sum() + 1.0;
    const double c1 = x[0] * y[0], c2 = x[1] * y[1];
    const double c3 = std::sqrt(std::max(0.0, 1.0 - x[0] * x[0] - x[1] * x[1]))
                    * std::sqrt(std::max(0.0, 1.0 - y[0] * y[0] - y[1] * y[1]));
    double sum = 0.0;
    for (std::size_t a = 0; a < r1.size(); ++a)
        for (std::size_t b = 0; b < r2.size(); ++b) {
            double part = 0.0;
            for (std::size_t c = 0; c < r3.size(); ++c)
                part += r3.weights[c] * gegenbauer(n, lambda, c1 * r1.nodes[a] + c2 * r2.nodes[b] + c3 * r3.nodes[c]);
            sum += r1.weights[a] * r2.weights[b] * part;
        }
    return (n + lambda) / lambda * sum;
}

double disk_parity_kernel_eval(const DiskWeightParams& p, int n, const Point2& x, const Point2& y) {
    validate(p);
    check_kernel_params(p);
    if (p.kappa1 != 0.0)
        return 0.5 * (disk_kernel_eval(p, n, x, y) + disk_kernel_eval(p, n, x, {y[0], -y[1]}));
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    check_point(x);
    check_point(y);
    int m = kernel_points(n);
    QuadRule r2 = symmetric_measure_rule(p.kappa2 - 0.5, m);
    QuadRule r3 = symmetric_measure_rule(p.kappa3, m);
    const double lambda = p.sum() + 1.0;
    const double c1 = x[0] * y[0], c2 = x[1] * y[1];
    const double c3 = std::sqrt(std::max(0.0, 1.0 - x[0] * x[0] - x[1] * x[1]))
                    * std::sqrt(std::max(0.0, 1.0 - y[0] * y[0] - y[1] * y[1]));
    double sum = 0.0;
    for (std::size_t b = 0; b < r2.size(); ++b) {
        double part = 0.0;
        for (std::size_t c = 0; c < r3.size(); ++c)
            part += r3.weights[c] * gegenbauer(n, lambda, c1 + c2 * r2.nodes[b] + c3 * r3.nodes[c]);
        sum += r2.weights[b] * part;
    }
    return (n + lambda) / lambda * sum;
}

double disk_diffop_apply(const DiskWeightParams& p, const Field2& f, const Point2& pt, DiskOpOptions opt) {
    validate(p);
    check_point(pt);
    const double u = pt[0], v = pt[1];
    Jet2 F = eval_jet(f, pt);
    double r = (1.0 - u * u) * F.dd(0, 0) - 2.0 * u * v * F.dd(0, 1) + (1.0 - v * v) * F.dd(1, 1)
             - (2.0 * p.sum() + 3.0) * (u * F.d(0) + v * F.d(1));

    auto reflection_part = [&](double kappa, double x, int axis, bool even) {
        if (kappa == 0.0) return 0.0;
        if (even) {
            if (x == 0.0) return 2.0 * kappa * F.dd(axis, axis);
            return 2.0 * kappa * F.d(axis) / x;
        }
        if (std::abs(x) < 1e-3)
            fail(ErrorKind::SingularEvaluation, "difference term needs |coordinate| >= 1e-3");
        Point2 q = pt;
        q[axis] = -q[axis];
        double diff = F.v - eval_value(f, q);
        return kappa * (2.0 * F.d(axis) / x - diff / (x * x));
    };
    r += reflection_part(p.kappa1, u, 0, opt.even_u);
    r += reflection_part(p.kappa2, v, 1, opt.even_v);
    return r;
}

RelationReport disk_triangle_relation_check(const DiskWeightParams& p, int j, int n,
                                            const std::vector<Point2>& pts) {
    validate(p);
    const int m = n / 2, odd = n % 2;
    if (n < 0 || j < 0 || j > m) fail(ErrorKind::IndexOutOfRange, "relation check needs 0 <= j <= floor(n/2)");
    TriangleWeightParams a{p.kappa1 + (odd ? 0.5 : -0.5), p.kappa2 - 0.5, p.kappa3};
    std::vector<double> g, t;
    for (const auto& q : pts) {
        double u = q[0], v = q[1];
        g.push_back(disk_basis(p, 2 * j + odd, n, u, v));
        double tv = triangle_basis(a, j, m, u * u, v * v);
        t.push_back(odd ? u * tv : tv);
    }
    double gt = 0.0, tt = 0.0, gmax = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        gt += g[i] * t[i];
        tt += t[i] * t[i];
        gmax = std::max(gmax, std::abs(g[i]));
    }
    if (tt == 0.0 || gmax == 0.0) fail(ErrorKind::DegenerateSample, "all sampled values vanish");
    RelationReport rep;
    rep.constant = gt / tt;
    for (std::size_t i = 0; i < g.size(); ++i)
        rep.max_deviation = std::max(rep.max_deviation, std::abs(g[i] - rep.constant * t[i]) / gmax);
    return rep;
}

} // namespace symdom
