#include "symdom/orthopoly1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

namespace symdom {

double QuadRule::mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void validate(const JacobiParams& p) {
    if (!(p.a > -1.0) || !(p.b > -1.0))
        fail(ErrorKind::InvalidParameter, "Jacobi parameters require a > -1 and b > -1");
}

void validate(const GenGegenbauerParams& p) {
    if (!(p.lambda > -0.5) || !(p.mu > -0.5))
        fail(ErrorKind::InvalidParameter, "generalized Gegenbauer parameters require lambda, mu > -1/2");
}

double gen_gegenbauer_ratio(int m, double lambda, double mu) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= (lambda + mu + i) / (mu + 0.5 + i);
    return r;
}

double jacobi_eval(int n, const JacobiParams& p, double t) {
    validate(p);
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    return jacobi(n, p.a, p.b, t);
}

double jacobi_deriv(int n, const JacobiParams& p, double t, int order) {
    validate(p);
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    if (order != 1 && order != 2) fail(ErrorKind::InvalidParameter, "derivative order must be 1 or 2");
    if (n < order) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= order; ++i) c *= 0.5 * (n + p.a + p.b + i);
    return c * jacobi(n - order, p.a + order, p.b + order, t);
}

double gegenbauer_eval(int n, double lambda, double t) {
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    return gegenbauer(n, lambda, t);
}

double zn_eval(int n, double lambda, double t) {
    if (!(lambda > 0.0)) fail(ErrorKind::InvalidParameter, "Z_n^lambda requires lambda > 0");
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    return (n + lambda) / lambda * gegenbauer(n, lambda, t);
}

void zn_all(int n, double lambda, double t, double* out) {
    double c0 = 1.0, c1 = 2.0 * lambda * t;
    out[0] = 1.0;
    if (n >= 1) out[1] = (1.0 + lambda) / lambda * c1;
    for (int k = 2; k <= n; ++k) {
        double c2 = (2.0 * (k + lambda - 1.0) * t * c1 - (k + 2.0 * lambda - 2.0) * c0) / k;
        c0 = c1;
        c1 = c2;
        out[k] = (k + lambda) / lambda * c1;
    }
}

double gen_gegenbauer_eval(int n, const GenGegenbauerParams& p, double t) {
    validate(p);
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "degree must be nonnegative");
    return gen_gegenbauer(n, p.lambda, p.mu, t);
}

double jacobi_log_mass(double a, double b) {
    return (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0)
         - std::lgamma(a + b + 2.0);
}

namespace {

// Monic Jacobi recurrence: alpha_k and beta_k (beta_0 unused).
void monic_coefficients(int m, double a, double b, std::vector<double>& alpha, std::vector<double>& beta) {
    alpha.assign(m, 0.0);
    beta.assign(m, 0.0);
    for (int k = 0; k < m; ++k) {
        double s = 2.0 * k + a + b;
        alpha[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k == 1) {
            beta[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
        } else if (k >= 2) {
            beta[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        }
    }
}

} // namespace

QuadRule gauss_jacobi_rule(int m, const JacobiParams& p) {
    validate(p);
    if (m < 1) fail(ErrorKind::InvalidParameter, "rule needs at least one point");
    std::vector<double> alpha, beta;
    monic_coefficients(m + 1, p.a, p.b, alpha, beta);

    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag[k] = alpha[k];
    for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(beta[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        fail(ErrorKind::ConvergenceFailure, "tridiagonal eigensolver did not converge");

    const double mu0 = std::exp(jacobi_log_mass(p.a, p.b));
    QuadRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    rule.exactness = 2 * m - 1;
    for (int i = 0; i < m; ++i) {
        double x = es.eigenvalues()[i];
        // Newton polish on the orthonormal recurrence, then Christoffel weights.
        double sumsq = 0.0;
        for (int it = 0; it < 3; ++it) {
            double q0 = 0.0, q1 = 1.0, d0 = 0.0, d1 = 0.0;
            sumsq = 1.0;
            for (int k = 0; k < m; ++k) {
                double sb = std::sqrt(beta[k + 1]);
                double q2 = ((x - alpha[k]) * q1 - (k > 0 ? std::sqrt(beta[k]) * q0 : 0.0)) / sb;
                double d2 = (q1 + (x - alpha[k]) * d1 - (k > 0 ? std::sqrt(beta[k]) * d0 : 0.0)) / sb;
                q0 = q1; q1 = q2; d0 = d1; d1 = d2;
                if (k + 1 < m) sumsq += q1 * q1;
            }
            if (it < 2 && d1 != 0.0) {
                double step = q1 / d1;
                if (std::abs(step) < 1e-6) x -= step;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = mu0 / sumsq;
    }
    return rule;
}

QuadRule gen_gegenbauer_rule(int pairs, const GenGegenbauerParams& p) {
    validate(p);
    if (pairs < 1) fail(ErrorKind::InvalidParameter, "rule needs at least one node pair");
    QuadRule y = gauss_jacobi_rule(pairs, {p.lambda - 0.5, p.mu - 0.5});
    const double scale = std::pow(2.0, -(p.lambda + p.mu)) * 0.5;
    QuadRule rule;
    rule.exactness = 4 * pairs - 1;
    rule.nodes.resize(2 * pairs);
    rule.weights.resize(2 * pairs);
    for (int i = 0; i < pairs; ++i) {
        double s = std::sqrt(0.5 * (1.0 + y.nodes[i]));
        rule.nodes[pairs - 1 - i] = -s;
        rule.weights[pairs - 1 - i] = scale * y.weights[i];
        rule.nodes[pairs + i] = s;
        rule.weights[pairs + i] = scale * y.weights[i];
    }
    return rule;
}

QuadRule limit_rule(LimitKind kind) {
    QuadRule rule;
    rule.kind = RuleKind::PointMassLimit;
    if (kind == LimitKind::HalfEndpointAverage) {
        rule.nodes = {-1.0, 1.0};
        rule.weights = {0.5, 0.5};
    } else {
        rule.nodes = {1.0};
        rule.weights = {1.0};
    }
    rule.exactness = 1 << 30;
    return rule;
}

QuadRule symmetric_measure_rule(double alpha, int m) {
    if (alpha < -0.5) fail(ErrorKind::InvalidParameter, "symmetric kernel measure requires alpha >= -1/2");
    if (alpha == -0.5) return limit_rule(LimitKind::HalfEndpointAverage);
    QuadRule r = gauss_jacobi_rule(m, {alpha - 0.5, alpha - 0.5});
    double mass = r.mass();
    for (double& w : r.weights) w /= mass;
    return r;
}

QuadRule shifted_measure_rule(double kappa, int m) {
    if (kappa < 0.0) fail(ErrorKind::InvalidParameter, "shifted kernel measure requires kappa >= 0");
    if (kappa == 0.0) return limit_rule(LimitKind::RightEndpoint);
    QuadRule r = gauss_jacobi_rule(m, {kappa - 1.0, kappa});
    double mass = r.mass();
    for (double& w : r.weights) w /= mass;
    return r;
}

} // namespace symdom
