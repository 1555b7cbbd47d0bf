#include "symdom/fullsym.hpp"

#include <cmath>
#include <vector>

#include "symdom/disk.hpp"

namespace symdom {

const char* to_string(ParityFamily f) {
    switch (f) {
    case ParityFamily::EE: return "EE";
    case ParityFamily::OO: return "OO";
    case ParityFamily::EO: return "EO";
    case ParityFamily::OE: return "OE";
    }
    return "?";
}

int sqrt_weight_slot(bool plus_s, bool plus_t) { return 2 * int(plus_s) + int(plus_t); }

double parity_basis_eval(const SqrtDomainBasis& base, ParityFamily family, int j, int m, const Point2& pt) {
    const double u = pt[0], v = pt[1];
    int slot = 0, mm = m;
    double pre = 1.0;
    switch (family) {
    case ParityFamily::EE: slot = sqrt_weight_slot(false, false); break;
    case ParityFamily::OO:
        if (m < 1) fail(ErrorKind::IndexOutOfRange, "OO family starts at m = 1");
        slot = sqrt_weight_slot(true, true);
        mm = m - 1;
        pre = u * v;
        break;
    case ParityFamily::EO: slot = sqrt_weight_slot(false, true); pre = v; break;
    case ParityFamily::OE: slot = sqrt_weight_slot(true, false); pre = u; break;
    }
    if (j < 0 || mm < 0 || j > mm) fail(ErrorKind::IndexOutOfRange, "parity basis index out of range");
    const auto& eval = base.orthonormal[slot];
    if (!eval) fail(ErrorKind::Unsupported, "no square-root-domain basis for this parity family");
    double ratio = std::sqrt(base.mass_b[slot] / base.b_W);
    return ratio * pre * eval(j, mm, u * u, v * v);
}

SqrtEvaluator orthonormal_triangle_evaluator(const TriangleWeightParams& alpha, int mmax,
                                             std::function<Point2(double, double)> chart) {
    Rule2D rule = triangle_rule(alpha, 2 * mmax + 2);
    const double b = 1.0 / rule.mass();
    auto norms = std::make_shared<std::vector<double>>();
    for (int m = 0; m <= mmax; ++m)
        for (int j = 0; j <= m; ++j) {
            double h = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                double q = triangle_basis(alpha, j, m, rule.nodes[i][0], rule.nodes[i][1]);
                h += rule.weights[i] * q * q;
            }
            norms->push_back(std::sqrt(b * h));
        }
    return [alpha, mmax, norms, chart](int j, int m, double s, double t) {
        if (m > mmax) fail(ErrorKind::IndexOutOfRange, "degree exceeds the tabulated norms");
        Point2 p = chart ? chart(s, t) : Point2{s, t};
        return triangle_basis(alpha, j, m, p[0], p[1]) / (*norms)[m * (m + 1) / 2 + j];
    };
}

SqrtDomainBasis triangle_sqrt_basis(const DiskWeightParams& kappa, int mmax) {
    validate(kappa);
    SqrtDomainBasis base;
    for (int ps = 0; ps < 2; ++ps)
        for (int pt = 0; pt < 2; ++pt) {
            TriangleWeightParams a{kappa.kappa1 + (ps ? 0.5 : -0.5), kappa.kappa2 + (pt ? 0.5 : -0.5), kappa.kappa3};
            int slot = sqrt_weight_slot(ps, pt);
            base.orthonormal[slot] = orthonormal_triangle_evaluator(a, mmax);
            base.mass_b[slot] = 1.0 / triangle_rule(a, 0).mass();
        }
    base.b_W = 1.0 / disk_rule(kappa, 0).mass();
    return base;
}

double parity_kernel_eval(const KernelFn& full, int n, const Point2& x, const Point2& y) {
    return 0.5 * (full(n, x, y) + full(n, x, {y[0], -y[1]}));
}

ScalarFn2 even_extend(ScalarFn2 f) {
    return [f = std::move(f)](const Point2& p) { return f({p[0], std::abs(p[1])}); };
}

ProjValue proj_even(const KernelFn& even_kernel, const ScalarFn2& f, int n, const Rule2D& rule, const Point2& pt) {
    ProjValue r;
    r.underresolved = rule.exactness < 2 * n;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]) * even_kernel(n, pt, rule.nodes[i]);
    r.value = s / rule.mass();
    return r;
}

} // namespace symdom
