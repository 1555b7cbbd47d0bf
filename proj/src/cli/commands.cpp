#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "functions.hpp"

namespace symdom::cli {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

std::vector<double> parse_numbers(const std::string& s, std::size_t count, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) fail(ErrorKind::InvalidParameter, std::string("cannot parse ") + what + " '" + s + "'");
        out.push_back(x);
    }
    if (out.size() != count)
        fail(ErrorKind::InvalidParameter,
             std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers, got '" + s + "'");
    return out;
}

void check_dim(const RunConfig& c) {
    if (c.dim != 2 && c.dim != 3) fail(ErrorKind::InvalidParameter, "--dim must be 2 or 3");
    if (c.nmax < 0) fail(ErrorKind::InvalidParameter, "--nmax must be nonnegative");
    if (c.samples < 0) fail(ErrorKind::InvalidParameter, "--samples must be nonnegative");
}

ParsedWeight weight_for(const RunConfig& c) {
    ParsedWeight w = parse_weight(c.weight);
    if (c.dim == 3 && !w.beta_gamma) fail(ErrorKind::InvalidParameter, "3-D weights are given as beta=..,gamma=..");
    if (c.dim == 3) validate(w.ball());
    else validate(w.curved());
    return w;
}

RevDomainParams rev_domain(const RunConfig& c) {
    DomainParams2 d = parse_domain(c.domain);
    return {d.a, d.b, d.c, 2};
}

SystemPtr make_system(const RunConfig& c, int N) {
    ParsedWeight w = weight_for(c);
    if (c.dim == 3) return make_rev_system(rev_domain(c), w.ball(), N);
    return make_curved_system(parse_domain(c.domain), w.curved(), N);
}

int samples_or(const RunConfig& c, int fallback) { return c.samples > 0 ? c.samples : fallback; }

Report start(const RunConfig& c, const char* name) {
    Report r;
    r.command = name;
    r.config = {{"domain", c.domain},   {"dim", c.dim},     {"weight", c.weight},
                {"nmax", c.nmax},       {"quad_degree", c.quad_degree},
                {"seed", c.seed},       {"samples", c.samples},
                {"f", c.f},             {"center", c.center}, {"bins", c.bins}};
    return r;
}

std::vector<Pt> interior_points(const RunConfig& c, int count, double min_last) {
    std::vector<Pt> pts;
    std::uint64_t seed = c.seed;
    while (int(pts.size()) < count) {
        if (c.dim == 3) {
            for (const auto& p : rev_samples(rev_domain(c), 4 * count, seed))
                if (p[2] >= min_last && int(pts.size()) < count) pts.push_back(p);
        } else {
            for (const auto& p : lambda_samples(parse_domain(c.domain), 4 * count, seed))
                if (p[1] >= min_last && int(pts.size()) < count) pts.push_back({p[0], p[1], 0.0});
        }
        ++seed;
    }
    return pts;
}

double rel_residual(double r, double lambda, double value) {
    return lambda == 0.0 ? std::abs(r) : std::abs(r) / (std::abs(lambda) * std::max(1.0, std::abs(value)));
}

RevBasisIndex rev_index(const BasisLabel& l) { return {l.n, l.k, l.j, l.l}; }

SampleRule grid_for(const RunConfig& c, const OrthoSystem& sys) {
    SampleRule g = sys.rule(c.quad_degree < 0 ? default_quad_degree(sys) : c.quad_degree);
    if (!c.emit_grid.empty()) write_grid(c.emit_grid, g, c.dim);
    return g;
}

Expansion expansion_for(const RunConfig& c, const SystemPtr& sys, const SampleRule& grid, std::vector<double>& values) {
    FunctionSpec fs = resolve_function(c.f, c.dim, grid);
    if (fs.table) {
        values = *fs.table;
    } else {
        values.resize(grid.size());
        for (std::size_t q = 0; q < grid.size(); ++q) values[q] = fs.f(grid.nodes[q]);
    }
    return project_values(sys, grid, values);
}

} // namespace

ParsedWeight parse_weight(const std::string& s) {
    ParsedWeight w;
    bool has_k = false, has_bg = false;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail(ErrorKind::InvalidParameter, "weight entries look like key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq);
        double v = parse_numbers(tok.substr(eq + 1), 1, "weight value")[0];
        if (key == "k1") w.k1 = v, has_k = true;
        else if (key == "k2") w.k2 = v, has_k = true;
        else if (key == "k3") w.k3 = v, has_k = true;
        else if (key == "beta") w.k2 = v, has_bg = true;
        else if (key == "gamma") w.k3 = v, has_bg = true;
        else fail(ErrorKind::InvalidParameter, "unknown weight key '" + key + "' (k1,k2,k3 or beta,gamma)");
    }
    if (has_k && has_bg) fail(ErrorKind::InvalidParameter, "weight mixes k1..k3 with beta/gamma");
    w.beta_gamma = !has_k;
    return w;
}

DomainParams2 parse_domain(const std::string& s) {
    auto v = parse_numbers(s, 3, "--domain");
    DomainParams2 d{v[0], v[1], v[2]};
    validate(d);
    return d;
}

Point3 parse_point3(const std::string& s) {
    auto v = parse_numbers(s, 3, "--center");
    return {v[0], v[1], v[2]};
}

Report cmd_gram(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "gram");
    SystemPtr sys = make_system(c, c.nmax);
    SampleRule rule = sys->rule(c.quad_degree < 0 ? 2 * c.nmax + 6 : c.quad_degree);
    if (rule.exactness < 2 * c.nmax) fail(ErrorKind::InvalidParameter, "--quad-degree must be at least 2*nmax");
    const std::size_t M = sys->size();
    const double mass = rule.mass();
    std::vector<double> G(M * M, 0.0), row(M);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        sys->eval(rule.nodes[q], row.data());
        const double w = rule.weights[q] / mass;
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j <= i; ++j) G[i * M + j] += w * row[i] * row[j];
    }
    const double tolerance = c.dim == 3 ? tol::gram3 : tol::gram2;
    double worst = 0.0;
    r.columns = {"n", "count", "max_offdiag", "max_diag_dev"};
    for (int n = 0; n <= c.nmax; ++n) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = sys->count_upto(n - 1); i < sys->count_upto(n); ++i)
            for (std::size_t j = 0; j < M; ++j) {
                double g = j <= i ? G[i * M + j] : G[j * M + i];
                if (i == j) diag = std::max(diag, std::abs(g - 1.0));
                else off = std::max(off, std::abs(g));
            }
        worst = std::max({worst, off, diag});
        r.rows.push_back({double(n), double(sys->count_upto(n) - sys->count_upto(n - 1)), off, diag});
    }
    r.pass = worst <= tolerance;
    r.summary = {{"max_deviation", worst}, {"tolerance", tolerance}, {"basis_size", M}, {"nodes", rule.size()}};
    return r;
}

Report cmd_eigen(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "eigen");
    SystemPtr sys = make_system(c, c.nmax);
    ParsedWeight w = weight_for(c);
    auto pts = interior_points(c, samples_or(c, 25), 0.05);
    const double tolerance = c.dim == 3 ? tol::eigen3 : tol::eigen2;
    double worst = 0.0;
    r.columns = {"n", "eigenvalue", "max_rel_residual_pullback", "max_rel_residual_direct"};
    const auto& labels = sys->labels();
    for (int n = 0; n <= c.nmax; ++n) {
        const double lambda = sys->eigenvalue(n);
        double rp = 0.0, rd = 0.0;
        for (std::size_t i = sys->count_upto(n - 1); i < sys->count_upto(n); ++i) {
            const double s = sys->scale(i);
            const BasisLabel lab = labels[i];
            for (const auto& p : pts) {
                double value, pull, direct;
                if (c.dim == 3) {
                    RevDomainParams dp = rev_domain(c);
                    BallWeightParams bw = w.ball();
                    RevBasisIndex idx = rev_index(lab);
                    Field3 F = [&](const Jet3& x1, const Jet3& x2, const Jet3& t) {
                        return s * rev_basis(dp, bw, idx, x1, x2, t);
                    };
                    value = eval_value(F, p);
                    pull = rev_diffop_apply(dp, bw, RevPoly{{{idx, s}}}, p);
                    direct = rev_diffop_direct(dp, bw, F, p);
                } else {
                    DomainParams2 dp = parse_domain(c.domain);
                    CurvedWeightParams cw = w.curved();
                    Field2 F = [&](const Jet2& u, const Jet2& v) { return s * q_basis(dp, cw, lab.j, lab.n, u, v); };
                    Point2 q{p[0], p[1]};
                    value = eval_value(F, q);
                    pull = curved_diffop_apply(dp, cw, CurvedPoly{{{lab.j, lab.n, s}}}, q);
                    direct = curved_diffop_direct(dp, cw, F, q);
                }
                rp = std::max(rp, rel_residual(pull - lambda * value, lambda, value));
                rd = std::max(rd, rel_residual(direct - lambda * value, lambda, value));
            }
        }
        worst = std::max({worst, rp, rd});
        r.rows.push_back({double(n), lambda, rp, rd});
    }
    r.pass = worst <= tolerance;
    r.summary = {{"max_rel_residual", worst}, {"tolerance", tolerance}, {"points", pts.size()},
                 {"eigen_shift", sys->eigen_shift()}};
    return r;
}

Report cmd_kernel(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "kernel");
    SystemPtr sys = make_system(c, c.nmax);
    ParsedWeight w = weight_for(c);
    const int pairs = samples_or(c, 20);
    auto pts = interior_points(c, 2 * pairs, 0.0);
    const std::size_t M = sys->size();
    double worst = 0.0;
    r.columns = {"n", "closed_vs_sum", "averaged_vs_sum", "closed_vs_averaged"};
    std::vector<double> bx(M), by(M), bxx(M), byy(M);
    std::vector<std::array<double, 3>> dev(c.nmax + 1, {0.0, 0.0, 0.0});
    for (int i = 0; i < pairs; ++i) {
        const Pt& x = pts[2 * i];
        const Pt& y = pts[2 * i + 1];
        sys->eval(x, bx.data());
        sys->eval(y, by.data());
        for (int n = 0; n <= c.nmax; ++n) {
            double sum = 0.0, kxx = 0.0, kyy = 0.0;
            for (std::size_t k = sys->count_upto(n - 1); k < sys->count_upto(n); ++k) {
                sum += bx[k] * by[k];
                kxx += bx[k] * bx[k];
                kyy += by[k] * by[k];
            }
            double closed, averaged;
            if (c.dim == 3) {
                RevDomainParams dp = rev_domain(c);
                BallWeightParams bw = w.ball();
                Point3 X = rev_psi(dp, x), Y = rev_psi(dp, y);
                averaged = 0.5 * (ball3_kernel_eval(bw, n, X, Y) + ball3_kernel_eval(bw, n, X, {Y[0], Y[1], -Y[2]}));
                closed = bw.beta == 0.0 ? rev_kernel_eval(dp, bw.gamma, n, x, y) : nan_v;
            } else {
                DomainParams2 dp = parse_domain(c.domain);
                CurvedWeightParams cw = w.curved();
                DiskWeightParams k = cw.disk();
                Point2 X = psi(dp, {x[0], x[1]}), Y = psi(dp, {y[0], y[1]});
                KernelFn full = [k](int m, const Point2& a, const Point2& b) { return disk_kernel_eval(k, m, a, b); };
                averaged = parity_kernel_eval(full, n, X, Y);
                closed = curved_kernel_eval(dp, cw, n, {x[0], x[1]}, {y[0], y[1]});
            }
            const double scale = std::sqrt(kxx * kyy);
            auto rel = [scale](double a, double b) { return std::isnan(a) ? 0.0 : std::abs(a - b) / scale; };
            dev[n][0] = std::max(dev[n][0], rel(closed, sum));
            dev[n][1] = std::max(dev[n][1], rel(averaged, sum));
            dev[n][2] = std::max(dev[n][2], rel(closed, averaged));
        }
    }
    for (int n = 0; n <= c.nmax; ++n) {
        worst = std::max({worst, dev[n][0], dev[n][1], dev[n][2]});
        r.rows.push_back({double(n), dev[n][0], dev[n][1], dev[n][2]});
    }
    r.pass = worst <= tol::kernel;
    r.summary = {{"max_rel_deviation", worst}, {"tolerance", tol::kernel}, {"pairs", pairs},
                 {"closed_form", c.dim == 2 || w.ball().beta == 0.0}};
    return r;
}

Report cmd_project(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "project");
    SystemPtr sys = make_system(c, c.nmax);
    SampleRule grid = grid_for(c, *sys);
    std::vector<double> values;
    Expansion e = expansion_for(c, sys, grid, values);
    double quad_norm = 0.0;
    for (std::size_t q = 0; q < grid.size(); ++q) {
        double s = partial_sum_eval(e, e.degree, grid.nodes[q]);
        quad_norm += grid.weights[q] * s * s;
    }
    quad_norm /= grid.mass();
    const double parseval = std::abs(e.norm2() - quad_norm) / std::max(quad_norm, 1e-300);
    r.columns = {"n", "j", "k", "l", "coef"};
    const auto& labels = sys->labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        r.rows.push_back({double(labels[i].n), double(labels[i].j), double(labels[i].k), double(labels[i].l), e.coef[i]});
    r.pass = parseval <= 1e-10;
    r.summary = {{"parseval_rel_deviation", parseval}, {"underresolved", e.underresolved},
                 {"quad_exactness", e.quad_degree}, {"nodes", grid.size()}};
    return r;
}

Report cmd_converge(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "converge");
    SystemPtr sys = make_system(c, c.nmax);
    SampleRule grid = grid_for(c, *sys);
    std::vector<double> values;
    Expansion e = expansion_for(c, sys, grid, values);
    ConvergenceReport rep = convergence_report(e, grid, values);
    r.columns = {"n", "l2_error", "sup_error_sampled", "kfunctional_proxy_r2"};
    double direct_constant = 0.0;
    for (std::size_t i = 0; i < rep.degrees.size(); ++i) {
        const int n = rep.degrees[i];
        const double proxy = kfunctional_proxy(e, rep, 2, 1.0 / std::max(n, 1));
        if (proxy > 0.0) direct_constant = std::max(direct_constant, rep.l2[i] / proxy);
        r.rows.push_back({double(n), rep.l2[i], rep.sup_sampled[i], proxy});
    }
    r.pass = rep.strictly_decreasing;
    r.summary = {{"strictly_decreasing", rep.strictly_decreasing},
                 {"decay_order", rep.decay_order},
                 {"direct_theorem_constant", direct_constant},
                 {"final_l2_error", rep.l2.back()},
                 {"quad_exactness", rep.quad_degree},
                 {"nodes", rep.nodes},
                 {"underresolved", e.underresolved}};
    return r;
}

Report cmd_localize(const RunConfig& c) {
    RunConfig cc = c;
    cc.dim = 3;
    check_dim(cc);
    Report r = start(cc, "localize");
    ParsedWeight w = weight_for(cc);
    if (w.ball().beta != 0.0) fail(ErrorKind::InvalidParameter, "localized kernels need beta=0");
    if (c.bins < 1) fail(ErrorKind::InvalidParameter, "--bins must be positive");
    LocalizationReport rep = localization_profile(rev_domain(cc), w.ball().gamma, cc.nmax, parse_point3(cc.center),
                                                  cc.bins, std::size_t(samples_or(cc, 20000)), cc.seed);
    r.columns = {"bin_lo", "bin_hi", "count", "normalized_max"};
    for (std::size_t b = 0; b < rep.value.size(); ++b)
        r.rows.push_back({rep.bin_lo[b], rep.bin_hi[b], double(rep.count[b]), rep.value[b]});
    const double ratio = rep.decay_ratio();
    r.pass = ratio >= tol::localization_ratio && rep.monotone_envelope();
    r.summary = {{"decay_ratio", ratio},
                 {"monotone_envelope", rep.monotone_envelope()},
                 {"center_value", rep.center_value},
                 {"max_distance", rep.max_distance},
                 {"required_ratio", tol::localization_ratio}};
    return r;
}

Report cmd_mapcheck(const RunConfig& c) {
    check_dim(c);
    Report r = start(c, "mapcheck");
    const std::size_t m = std::size_t(samples_or(c, 10000));
    double forward = 0.0, backward = 0.0;
    if (c.dim == 3) {
        RevDomainParams dp = rev_domain(c);
        for (const auto& p : rev_samples(dp, m, c.seed)) {
            Point3 back = rev_psi_inv(dp, rev_psi(dp, p));
            for (int k = 0; k < 3; ++k) forward = std::max(forward, std::abs(back[k] - p[k]));
            Point3 y = rev_psi(dp, p);
            Point3 again = rev_psi(dp, rev_psi_inv(dp, y));
            for (int k = 0; k < 3; ++k) backward = std::max(backward, std::abs(again[k] - y[k]));
        }
    } else {
        DomainParams2 dp = parse_domain(c.domain);
        for (const auto& p : lambda_samples(dp, m, c.seed)) {
            Point2 back = psi_inv(dp, psi(dp, p));
            for (int k = 0; k < 2; ++k) forward = std::max(forward, std::abs(back[k] - p[k]));
            Point2 y = psi(dp, p);
            Point2 again = psi(dp, psi_inv(dp, y));
            for (int k = 0; k < 2; ++k) backward = std::max(backward, std::abs(again[k] - y[k]));
        }
    }
    r.columns = {"direction", "samples", "max_abs_error"};
    r.rows.push_back({0.0, double(m), forward});
    r.rows.push_back({1.0, double(m), backward});
    r.pass = std::max(forward, backward) <= tol::map;
    r.summary = {{"max_round_trip_error", std::max(forward, backward)}, {"tolerance", tol::map},
                 {"direction_0", "domain -> ball -> domain"}, {"direction_1", "ball -> domain -> ball"}};
    return r;
}

Report run_command(const RunConfig& c) {
    if (c.command == "gram") return cmd_gram(c);
    if (c.command == "eigen") return cmd_eigen(c);
    if (c.command == "kernel") return cmd_kernel(c);
    if (c.command == "project") return cmd_project(c);
    if (c.command == "converge") return cmd_converge(c);
    if (c.command == "localize") return cmd_localize(c);
    if (c.command == "mapcheck") return cmd_mapcheck(c);
    fail(ErrorKind::InvalidParameter, "unknown command '" + c.command + "'");
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::DomainViolation:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::InvalidCutoff:
    case ErrorKind::Unsupported: return ConfigError;
    default: return InternalFailure;
    }
}

} // namespace symdom::cli
