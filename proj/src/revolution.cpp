#include "symdom/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace symdom {

void validate(const RevDomainParams& dp) {
    if (dp.d != 2) fail(ErrorKind::Unsupported, "only base dimension d = 2 is implemented");
    validate(dp.planar());
}

void validate(const BallWeightParams& p) {
    if (!(p.beta >= 0.0) || !(p.gamma > -1.0))
        fail(ErrorKind::InvalidParameter, "ball weight requires beta >= 0 and gamma > -1");
}

namespace {

long long binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double factor(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base <= 0.0) {
        if (expo < 0.0) fail(ErrorKind::SingularEvaluation, "weight has a negative exponent at this point");
        return 0.0;
    }
    return std::pow(base, expo);
}

double norm2(double x1, double x2) { return x1 * x1 + x2 * x2; }

void check_ball(const Point3& y) {
    if (!ball3_contains(y)) fail(ErrorKind::DomainViolation, "point lies outside the unit ball");
}

void check_rev(const RevDomainParams& dp, const Point3& p) {
    validate(dp);
    if (!rev_contains(dp, p)) {
        std::ostringstream os;
        os << "point (" << p[0] << ", " << p[1] << ", " << p[2] << ") lies outside the solid of revolution";
        fail(ErrorKind::DomainViolation, os.str());
    }
}

double rev_tau(const RevDomainParams& dp, const Point3& p) {
    double r = rev_frakt_sq(dp, p[0], p[1], p[2]);
    if (r < -1e-14) fail(ErrorKind::DomainViolation, "negative radicand in the quadratic map");
    return std::sqrt(std::max(r, 0.0));
}

} // namespace

int dim_harmonics(int d, int n) { return int(binom(n + d - 1, n) - binom(n + d - 3, n - 2)); }

void validate(const RevBasisIndex& i) {
    if (i.n < 0 || i.k < 0 || i.k > i.n || i.j < 0 || 2 * i.j > i.k)
        fail(ErrorKind::IndexOutOfRange, "basis index needs 0 <= k <= n and 0 <= 2j <= k");
    if (i.l < 1 || i.l > dim_harmonics(2, i.k - 2 * i.j))
        fail(ErrorKind::IndexOutOfRange, "harmonic index out of range");
}

std::vector<RevBasisIndex> rev_indices(int n, bool even_only) {
    std::vector<RevBasisIndex> out;
    for (int k = 0; k <= n; ++k) {
        if (even_only && (n - k) % 2 != 0) continue;
        for (int j = 0; 2 * j <= k; ++j)
            for (int l = 1; l <= dim_harmonics(2, k - 2 * j); ++l) out.push_back({n, k, j, l});
    }
    return out;
}

double circle_harmonic_eval(int k, int l, const Point2& x) {
    if (k < 0 || l < 1 || l > dim_harmonics(2, k)) fail(ErrorKind::IndexOutOfRange, "circle harmonic index out of range");
    return circle_harmonic(k, l, x[0], x[1]);
}

double ball_classical_eval(double gamma, int n, int m, int l, const Point2& x) {
    if (!(gamma > -1.0)) fail(ErrorKind::InvalidParameter, "ball weight requires gamma > -1");
    if (n < 0 || m < 0 || 2 * m > n || l < 1 || l > dim_harmonics(2, n - 2 * m))
        fail(ErrorKind::IndexOutOfRange, "ball basis index out of range");
    return ball_classical(gamma, n, m, l, x[0], x[1]);
}

double ball3_weighted_eval(const BallWeightParams& p, const RevBasisIndex& idx, const Point3& y) {
    validate(p);
    validate(idx);
    return ball3_weighted(p, idx, y[0], y[1], y[2]);
}

bool ball3_contains(const Point3& y, double tol) { return y[0] * y[0] + y[1] * y[1] + y[2] * y[2] <= 1.0 + tol; }

double ball3_weight(const BallWeightParams& p, const Point3& y) {
    validate(p);
    check_ball(y);
    return factor(y[2] * y[2], p.beta) * factor(1.0 - y[0] * y[0] - y[1] * y[1] - y[2] * y[2], p.gamma);
}

Rule3D ball3_rule(const BallWeightParams& p, int degree, bool half) {
    validate(p);
    const int pairs = std::max(1, (degree + 4) / 4);
    const int mr = std::max(1, (degree / 2 + 2) / 2);
    const int mt = degree + 1;
    QuadRule rt = gen_gegenbauer_rule(pairs, {p.gamma + 1.5, p.beta});
    QuadRule rz = gauss_jacobi_rule(mr, {p.gamma, 0.0});
    const double cz = std::pow(2.0, -p.gamma) * 0.25;
    const double wtheta = 2.0 * std::numbers::pi / mt;
    Rule3D rule;
    rule.exactness = std::min(4 * pairs - 1, std::min(2 * (2 * mr - 1) + 1, mt - 1));
    for (std::size_t a = 0; a < rt.size(); ++a) {
        double tau = rt.nodes[a];
        if (half && tau <= 0.0) continue;
        double scale = std::sqrt(std::max(0.0, 1.0 - tau * tau));
        for (std::size_t b = 0; b < rz.size(); ++b) {
            double rho = std::sqrt(0.5 * (1.0 + rz.nodes[b])) * scale;
            for (int c = 0; c < mt; ++c) {
                double th = wtheta * (c + 0.5);
                rule.nodes.push_back({rho * std::cos(th), rho * std::sin(th), tau});
                rule.weights.push_back(rt.weights[a] * cz * rz.weights[b] * wtheta);
            }
        }
    }
    return rule;
}

double ball3_diffop_apply(const BallWeightParams& p, const Field3& f, const Point3& y, BallOpOptions opt) {
    validate(p);
    check_ball(y);
    Jet3 F = eval_jet(f, y);
    double lap = F.dd(0, 0) + F.dd(1, 1) + F.dd(2, 2);
    double quad = 0.0, radial = 0.0;
    for (int i = 0; i < 3; ++i) {
        radial += y[i] * F.d(i);
        for (int k = 0; k < 3; ++k) quad += y[i] * y[k] * F.dd(i, k);
    }
    double r = lap - quad - (p.eigen_shift() + 1.0) * radial;
    if (p.beta != 0.0) {
        const double y3 = y[2];
        if (opt.even_y3) {
            r += y3 == 0.0 ? 2.0 * p.beta * F.dd(2, 2) : 2.0 * p.beta * F.d(2) / y3;
        } else {
            if (std::abs(y3) < 1e-3) fail(ErrorKind::SingularEvaluation, "difference term needs |y3| >= 1e-3");
            double diff = F.v - eval_value(f, {y[0], y[1], -y3});
            r += p.beta * (2.0 * F.d(2) / y3 - diff / (y3 * y3));
        }
    }
    return r;
}

double ball3_kernel_eval(const BallWeightParams& p, int n, const Point3& y1, const Point3& y2) {
    validate(p);
    if (p.gamma < -0.5) fail(ErrorKind::InvalidParameter, "ball kernel formula requires gamma >= -1/2");
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    check_ball(y1);
    check_ball(y2);
    const int m = n / 2 + 2;
    QuadRule ru = shifted_measure_rule(p.beta, m);
    QuadRule rv = symmetric_measure_rule(p.gamma, m);
    const double lambda = p.beta + p.gamma + 1.5;
    const double base = y1[0] * y2[0] + y1[1] * y2[1];
    const double ts = y1[2] * y2[2];
    const double rr = std::sqrt(std::max(0.0, 1.0 - y1[0] * y1[0] - y1[1] * y1[1] - y1[2] * y1[2]))
                    * std::sqrt(std::max(0.0, 1.0 - y2[0] * y2[0] - y2[1] * y2[1] - y2[2] * y2[2]));
    double sum = 0.0;
    for (std::size_t a = 0; a < ru.size(); ++a) {
        double part = 0.0;
        for (std::size_t b = 0; b < rv.size(); ++b)
            part += rv.weights[b] * gegenbauer(n, lambda, base + ru.nodes[a] * ts + rv.nodes[b] * rr);
        sum += ru.weights[a] * part;
    }
    return (n + lambda) / lambda * sum;
}

bool rev_contains(const RevDomainParams& dp, const Point3& p, double tol) {
    return domain_contains(dp.planar(), {std::sqrt(norm2(p[0], p[1])), p[2]}, true, tol);
}

Point3 rev_psi(const RevDomainParams& dp, const Point3& p) {
    check_rev(dp, p);
    return {p[0], p[1], rev_tau(dp, p)};
}

Point3 rev_psi_inv(const RevDomainParams& dp, const Point3& y) {
    validate(dp);
    if (!ball3_contains(y) || y[2] < -1e-12) fail(ErrorKind::DomainViolation, "point lies outside the upper half ball");
    double r2 = norm2(y[0], y[1]);
    double t2 = (dp.b - dp.a) * y[2] * y[2] + dp.a + (dp.c - dp.a) * r2;
    return {y[0], y[1], std::sqrt(std::max(t2, 0.0))};
}

double rev_weight(const RevDomainParams& dp, const BallWeightParams& p, const Point3& pt) {
    validate(p);
    check_rev(dp, pt);
    double tau2 = std::max(0.0, rev_frakt_sq(dp, pt[0], pt[1], pt[2]));
    double rest = std::max(0.0, 1.0 - norm2(pt[0], pt[1]) - tau2);
    return std::abs(pt[2]) * factor(tau2, p.beta - 0.5) * factor(rest, p.gamma);
}

double rev_basis_eval(const RevDomainParams& dp, const BallWeightParams& p, const RevBasisIndex& idx,
                      const Point3& pt) {
    validate(p);
    validate(idx);
    if ((idx.n - idx.k) % 2 != 0) fail(ErrorKind::IndexOutOfRange, "basis on the solid of revolution needs n - k even");
    check_rev(dp, pt);
    return rev_basis(dp, p, idx, pt[0], pt[1], pt[2]);
}

Rule3D rev_quadrature(const RevDomainParams& dp, const BallWeightParams& p, int degree) {
    validate(dp);
    if (degree < 0) fail(ErrorKind::InvalidParameter, "quadrature degree must be nonnegative");
    Rule3D ball = ball3_rule(p, degree, true);
    Rule3D rule;
    rule.exactness = ball.exactness;
    const double jac = dp.b - dp.a;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const auto& y = ball.nodes[i];
        double t2 = jac * y[2] * y[2] + dp.a + (dp.c - dp.a) * norm2(y[0], y[1]);
        rule.nodes.push_back({y[0], y[1], std::sqrt(std::max(t2, 0.0))});
        rule.weights.push_back(jac * ball.weights[i]);
    }
    return rule;
}

namespace {

void check_rev_operator(const RevDomainParams& dp, const BallWeightParams& p, const Point3& pt, const RevOpOptions& opt) {
    validate(p);
    check_rev(dp, pt);
    if (pt[2] < opt.t_min) fail(ErrorKind::SingularEvaluation, "operator evaluation needs t >= t_min");
}

} // namespace

double rev_diffop_apply(const RevDomainParams& dp, const BallWeightParams& p, const Field3& f_ball,
                        const Point3& pt, RevOpOptions opt) {
    check_rev_operator(dp, p, pt, opt);
    Point3 y = rev_psi(dp, pt);
    if (p.beta != 0.0 && y[2] < 1e-8) fail(ErrorKind::SingularEvaluation, "operator evaluation on the lower boundary");
    BallOpOptions bopt;
    bopt.even_y3 = true;
    return ball3_diffop_apply(p, f_ball, y, bopt);
}

double rev_diffop_apply(const RevDomainParams& dp, const BallWeightParams& p, const RevPoly& poly,
                        const Point3& pt, RevOpOptions opt) {
    Field3 f = [&poly, p](const Jet3& y1, const Jet3& y2, const Jet3& y3) {
        Jet3 s = y3 * y3, r(0.0);
        for (const auto& term : poly.terms) r += term.coef * ball3_even_sq(p, term.idx, y1, y2, s);
        return r;
    };
    return rev_diffop_apply(dp, p, f, pt, opt);
}

double rev_diffop_direct(const RevDomainParams& dp, const BallWeightParams& p, const Field3& F, const Point3& pt,
                         RevOpOptions opt) {
    check_rev_operator(dp, p, pt, opt);
    const double a = dp.a, b = dp.b, c = dp.c;
    const double x[2] = {pt[0], pt[1]}, t = pt[2];
    const double r2 = norm2(x[0], x[1]);
    const double D = -a * b + (a - c) * (b - c) * r2;
    const double shift = p.eigen_shift() + 1.0;
    Jet3 J = eval_jet(F, pt);
    double r = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) r += ((i == k ? 1.0 : 0.0) - x[i] * x[k]) * J.dd(i, k);
        r += 2.0 * (c - t * t) / t * x[i] * J.dd(i, 2);
        r -= shift * x[i] * J.d(i);
    }
    r += ((a - c) * (b - c) * r2 + (a - t * t) * (t * t - b)) / (t * t) * J.dd(2, 2);
    r += (-shift * t + (2.0 * a * p.gamma + a + 2.0 * b * p.beta + 2.0 * c) / t - D / (t * t * t)) * J.d(2);
    return r;
}

double rev_kernel_eval(const RevDomainParams& dp, double gamma, int n, const Point3& x, const Point3& y) {
    BallWeightParams p{0.0, gamma};
    validate(p);
    if (gamma < -0.5) fail(ErrorKind::InvalidParameter, "kernel formula requires gamma >= -1/2");
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    Point3 X = rev_psi(dp, x), Y = rev_psi(dp, y);
    QuadRule rv = symmetric_measure_rule(gamma, n / 2 + 2);
    const double lambda = gamma + 1.5;
    const double base = X[0] * Y[0] + X[1] * Y[1];
    const double ts = X[2] * Y[2];
    const double rr = std::sqrt(std::max(0.0, 1.0 - X[0] * X[0] - X[1] * X[1] - X[2] * X[2]))
                    * std::sqrt(std::max(0.0, 1.0 - Y[0] * Y[0] - Y[1] * Y[1] - Y[2] * Y[2]));
    double sum = 0.0;
    for (std::size_t b = 0; b < rv.size(); ++b) {
        double z = base + rv.nodes[b] * rr;
        sum += rv.weights[b] * 0.5 * (gegenbauer(n, lambda, z + ts) + gegenbauer(n, lambda, z - ts));
    }
    return (n + lambda) / lambda * sum;
}

double rev_distance(const RevDomainParams& dp, const Point3& x, const Point3& y) {
    Point3 X = rev_psi(dp, x), Y = rev_psi(dp, y);
    double nx = X[0] * X[0] + X[1] * X[1] + X[2] * X[2];
    double ny = Y[0] * Y[0] + Y[1] * Y[1] + Y[2] * Y[2];
    double arg = X[0] * Y[0] + X[1] * Y[1] + X[2] * Y[2]
               + std::sqrt(std::max(0.0, 1.0 - nx)) * std::sqrt(std::max(0.0, 1.0 - ny));
    if (arg > 1.0 + 1e-12 || arg < -1.0 - 1e-12) fail(ErrorKind::DomainViolation, "distance argument out of range");
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

double default_cutoff(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    auto h = [](double x) { return std::exp(-1.0 / x); };
    double up = h(2.0 - t), down = h(t - 1.0);
    return up / (up + down);
}

void validate_cutoff(const Cutoff& a) {
    if (!a) fail(ErrorKind::InvalidCutoff, "cutoff function is empty");
    for (int i = 0; i <= 400; ++i) {
        double t = 3.0 * i / 400.0;
        double v = a(t);
        if (!std::isfinite(v) || v < -1e-14 || v > 1.0 + 1e-14)
            fail(ErrorKind::InvalidCutoff, "cutoff must take values in [0, 1]");
        if (t <= 1.0 && std::abs(v - 1.0) > 1e-14) fail(ErrorKind::InvalidCutoff, "cutoff must equal 1 on [0, 1]");
        if (t >= 2.0 && std::abs(v) > 1e-14) fail(ErrorKind::InvalidCutoff, "cutoff must vanish on [2, inf)");
    }
}

LocalizedKernel::LocalizedKernel(const RevDomainParams& dp, double gamma, int n, const Cutoff& cutoff)
    : dp_(dp), n_(n), lambda_(gamma + 1.5) {
    validate(dp);
    validate_cutoff(cutoff);
    if (gamma < -0.5) fail(ErrorKind::InvalidParameter, "kernel formula requires gamma >= -1/2");
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    if (n == 0) return;
    window_.resize(2 * n + 1);
    for (int k = 0; k <= 2 * n; ++k) window_[k] = cutoff(double(k) / n);
    rule_ = symmetric_measure_rule(gamma, n + 2);
}

double LocalizedKernel::operator()(const Point3& x, const Point3& y) const {
    Point3 X = rev_psi(dp_, x), Y = rev_psi(dp_, y);
    if (n_ == 0) return 1.0;
    const int kmax = 2 * n_;
    const double base = X[0] * Y[0] + X[1] * Y[1];
    const double ts = X[2] * Y[2];
    const double rr = std::sqrt(std::max(0.0, 1.0 - X[0] * X[0] - X[1] * X[1] - X[2] * X[2]))
                    * std::sqrt(std::max(0.0, 1.0 - Y[0] * Y[0] - Y[1] * Y[1] - Y[2] * Y[2]));
    std::vector<double> zp(kmax + 1), zm(kmax + 1);
    double sum = 0.0;
    for (std::size_t b = 0; b < rule_.size(); ++b) {
        double z = base + rule_.nodes[b] * rr;
        zn_all(kmax, lambda_, z + ts, zp.data());
        zn_all(kmax, lambda_, z - ts, zm.data());
        double part = 0.0;
        for (int k = 0; k <= kmax; ++k) part += window_[k] * 0.5 * (zp[k] + zm[k]);
        sum += rule_.weights[b] * part;
    }
    return sum;
}

double localized_kernel_eval(const RevDomainParams& dp, double gamma, int n, const Point3& x, const Point3& y,
                             const Cutoff& cutoff) {
    return LocalizedKernel(dp, gamma, n, cutoff)(x, y);
}

double angular_ops_apply(const RevDomainParams& dp, AngularOp op, const Field3& f, const Point3& p,
                         RevOpOptions opt) {
    validate(dp);
    if (dp.a != 0.0 || dp.b != 1.0) fail(ErrorKind::InvalidParameter, "angular operators need a = 0 and b = 1");
    check_rev(dp, p);
    const double c = dp.c, t = p[2];
    const double x[2] = {p[0], p[1]};
    const double r2 = norm2(x[0], x[1]);
    if (op.kind == AngularKind::PhiC) return std::sqrt(std::max(0.0, 1.0 - (1.0 - c) * t * t - r2)) * eval_value(f, p);
    auto axis = [](int i) {
        if (i != 1 && i != 2) fail(ErrorKind::IndexOutOfRange, "angular operator index must be 1 or 2");
        return i - 1;
    };
    Jet3 F = eval_jet(f, p);
    if (op.kind == AngularKind::D) {
        int i = axis(op.i), j = axis(op.j);
        return x[i] * F.d(j) - x[j] * F.d(i);
    }
    if (t < opt.t_min) fail(ErrorKind::SingularEvaluation, "angular operator needs t >= t_min");
    const double tau = std::sqrt(std::max(0.0, t * t - c * r2));
    auto frakD = [&](int i) { return F.d(i) + c * x[i] / t * F.d(2); };
    const double last = tau / t * F.d(2);
    switch (op.kind) {
    case AngularKind::FrakD: return frakD(axis(op.i));
    case AngularKind::FrakDLast: return last;
    case AngularKind::FrakDMixed: {
        int i = axis(op.i);
        return x[i] * last - tau * frakD(i);
    }
    case AngularKind::FrakDMixedDisplay: {
        int i = axis(op.i);
        return -(tau / t) * (t * F.d(i) - (1.0 - c) * x[i] * F.d(2));
    }
    case AngularKind::FrakDPair: {
        int i = axis(op.i), j = axis(op.j);
        return x[i] * frakD(j) - x[j] * frakD(i);
    }
    default: break;
    }
    fail(ErrorKind::InvalidParameter, "unknown angular operator");
}

} // namespace symdom
