#include "symdom/triangle.hpp"

#include <algorithm>
#include <cmath>

namespace symdom {

void validate(const TriangleWeightParams& p) {
    if (!(p.alpha1 > -1.0) || !(p.alpha2 > -1.0) || !(p.alpha3 > -1.0))
        fail(ErrorKind::InvalidParameter, "triangle weight requires each alpha_i > -1");
}

bool triangle_contains(const Point2& pt, double tol) {
    return pt[0] >= -tol && pt[1] >= -tol && pt[0] + pt[1] <= 1.0 + tol;
}

namespace {

double factor(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base <= 0.0) {
        if (expo < 0.0) fail(ErrorKind::SingularEvaluation, "weight has a negative exponent at a boundary point");
        return 0.0;
    }
    return std::pow(base, expo);
}

void check_point(const Point2& pt) {
    if (!triangle_contains(pt)) fail(ErrorKind::DomainViolation, "point lies outside the triangle");
}

} // namespace

double triangle_weight(const TriangleWeightParams& p, const Point2& pt) {
    validate(p);
    check_point(pt);
    double u = pt[0], v = pt[1];
    return factor(u, p.alpha1) * factor(v, p.alpha2) * factor(1.0 - u - v, p.alpha3);
}

double triangle_norm_const(const TriangleWeightParams& p) {
    validate(p);
    return std::exp(std::lgamma(p.sum() + 3.0) - std::lgamma(p.alpha1 + 1.0) - std::lgamma(p.alpha2 + 1.0)
                    - std::lgamma(p.alpha3 + 1.0));
}

double triangle_basis_eval(const TriangleWeightParams& p, int j, int m, const Point2& pt) {
    validate(p);
    if (m < 0 || j < 0 || j > m) fail(ErrorKind::IndexOutOfRange, "triangle basis needs 0 <= j <= m");
    return triangle_basis(p, j, m, pt[0], pt[1]);
}

Rule2D triangle_rule(const TriangleWeightParams& p, int degree) {
    validate(p);
    int m = std::max(1, (degree + 2) / 2);
    QuadRule ry = gauss_jacobi_rule(m, {p.alpha1 + p.alpha3 + 1.0, p.alpha2});
    QuadRule rz = gauss_jacobi_rule(m, {p.alpha3, p.alpha1});
    double cy = std::pow(2.0, -(p.sum() + 2.0));
    double cz = std::pow(2.0, -(p.alpha1 + p.alpha3 + 1.0));
    Rule2D rule;
    rule.exactness = 2 * m - 1;
    for (std::size_t i = 0; i < ry.size(); ++i) {
        double v = 0.5 * (1.0 + ry.nodes[i]);
        for (std::size_t k = 0; k < rz.size(); ++k) {
            double w = 0.5 * (1.0 + rz.nodes[k]);
            rule.nodes.push_back({(1.0 - v) * w, v});
            rule.weights.push_back(cy * ry.weights[i] * cz * rz.weights[k]);
        }
    }
    return rule;
}

double triangle_kernel_eval(const TriangleWeightParams& p, int n, const Point2& x, const Point2& y,
                            int rule_res) {
    validate(p);
    if (p.alpha1 < -0.5 || p.alpha2 < -0.5 || p.alpha3 < -0.5)
        fail(ErrorKind::InvalidParameter, "triangle kernel formula requires alpha_i >= -1/2");
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    check_point(x);
    check_point(y);
    if (rule_res < 0) rule_res = n + 2;
    if (rule_res < n + 1) fail(ErrorKind::InvalidParameter, "kernel rule resolution must be at least n + 1");

    QuadRule r1 = symmetric_measure_rule(p.alpha1, rule_res);
    QuadRule r2 = symmetric_measure_rule(p.alpha2, rule_res);
    QuadRule r3 = symmetric_measure_rule(p.alpha3, rule_res);
    const double lambda = p.sum() + 2.0;
    const double c1 = std::sqrt(std::max(0.0, x[0]) * std::max(0.0, y[0]));
    const double c2 = std::sqrt(std::max(0.0, x[1]) * std::max(0.0, y[1]));
    const double c3 = std::sqrt(std::max(0.0, 1.0 - x[0] - x[1]) * std::max(0.0, 1.0 - y[0] - y[1]));
    const double zscale = (2.0 * n + lambda) / lambda;

    double sum = 0.0;
    for (std::size_t a = 0; a < r1.size(); ++a)
        for (std::size_t b = 0; b < r2.size(); ++b) {
            double part = 0.0;
            for (std::size_t c = 0; c < r3.size(); ++c) {
                double t = c1 * r1.nodes[a] + c2 * r2.nodes[b] + c3 * r3.nodes[c];
                part += r3.weights[c] * gegenbauer(2 * n, lambda, t);
            }
            sum += r1.weights[a] * r2.weights[b] * part;
        }
    return zscale * sum;
}

TriangleExpansion triangle_expand(const TriangleWeightParams& p, const std::function<double(double, double)>& f,
                                  int mmax) {
    validate(p);
    Rule2D rule = triangle_rule(p, 2 * mmax + 4);
    TriangleExpansion e{p, {}};
    for (int m = 0; m <= mmax; ++m)
        for (int j = 0; j <= m; ++j) {
            double fq = 0.0, qq = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                double q = triangle_basis(p, j, m, rule.nodes[i][0], rule.nodes[i][1]);
                fq += rule.weights[i] * f(rule.nodes[i][0], rule.nodes[i][1]) * q;
                qq += rule.weights[i] * q * q;
            }
            e.terms.push_back({j, m, fq / qq});
        }
    return e;
}

double triangle_diffop_apply(const TriangleWeightParams& p, const Field2& f, const Point2& pt) {
    validate(p);
    check_point(pt);
    const double u = pt[0], v = pt[1], a = p.sum();
    Jet2 F = eval_jet(f, pt);
    return u * (1.0 - u) * F.dd(0, 0) - 2.0 * u * v * F.dd(0, 1) + v * (1.0 - v) * F.dd(1, 1)
         + (p.alpha1 + 1.0 - (a + 3.0) * u) * F.d(0) + (p.alpha2 + 1.0 - (a + 3.0) * v) * F.d(1);
}

double triangle_diffop_apply(const TriangleWeightParams& p, const TriangleExpansion& poly, const Point2& pt) {
    Field2 f = [&poly](const Jet2& u, const Jet2& v) { return poly(u, v); };
    return triangle_diffop_apply(p, f, pt);
}

} // namespace symdom
