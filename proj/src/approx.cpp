#include "symdom/approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace symdom {

double SampleRule::mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

int thread_count() {
    int hw = int(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("SYMDOM_THREADS")) {
        int req = std::atoi(env);
        if (req >= 1) return std::min(req, hw);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::size_t OrthoSystem::count_upto(int n) const {
    if (n < 0) return 0;
    if (n > N_) fail(ErrorKind::IndexOutOfRange, "degree exceeds the system degree");
    return offsets_[n + 1];
}

void OrthoSystem::eval(const Pt& p, int n, double* out) const {
    eval_raw(p, n, out);
    const std::size_t m = count_upto(n);
    for (std::size_t i = 0; i < m; ++i) out[i] *= inv_norm_[i];
}

void OrthoSystem::finalize() {
    offsets_.assign(N_ + 2, 0);
    for (const auto& l : labels_) ++offsets_[l.n + 1];
    for (int n = 0; n <= N_; ++n) offsets_[n + 1] += offsets_[n];
    SampleRule r = rule(2 * N_ + 2);
    const double mass = r.mass();
    std::vector<double> acc(size(), 0.0), row(size());
    for (std::size_t q = 0; q < r.size(); ++q) {
        eval_raw(r.nodes[q], N_, row.data());
        for (std::size_t i = 0; i < size(); ++i) acc[i] += r.weights[q] * row[i] * row[i];
    }
    inv_norm_.resize(size());
    for (std::size_t i = 0; i < size(); ++i) inv_norm_[i] = 1.0 / std::sqrt(acc[i] / mass);
}

namespace {

void check_degree(int N) {
    if (N < 0) fail(ErrorKind::InvalidParameter, "maximum degree must be nonnegative");
}

class CurvedSystem final : public OrthoSystem {
public:
    CurvedSystem(const DomainParams2& dp, const CurvedWeightParams& p, int N, bool full)
        : dp_(dp), p_(p), full_(full) {
        validate(dp);
        validate(p);
        check_degree(N);
        N_ = N;
        shift_ = p.eigen_shift();
        for (int n = 0; n <= N; ++n)
            for (int j = 0; 2 * j <= n; ++j) labels_.push_back({n, j, 0, 0});
        finalize();
    }

    SpaceKind kind() const override { return SpaceKind::Curved2D; }
    int dim() const override { return 2; }

    SampleRule rule(int degree) const override {
        Rule2D r = lambda_quadrature(dp_, p_, degree, full_);
        SampleRule out;
        out.exactness = r.exactness;
        out.weights = r.weights;
        out.nodes.reserve(r.size());
        for (const auto& x : r.nodes) out.nodes.push_back({x[0], x[1], 0.0});
        return out;
    }

    bool contains(const Pt& p) const override { return domain_contains(dp_, {p[0], p[1]}, !full_); }

    std::string describe() const override {
        std::ostringstream os;
        os << "curved2d a=" << dp_.a << " b=" << dp_.b << " c=" << dp_.c << " k1=" << p_.kappa1
           << " k2=" << p_.kappa2 << " k3=" << p_.kappa3 << (full_ ? " full" : "");
        return os.str();
    }

protected:
    void eval_raw(const Pt& p, int n, double* out) const override {
        const double u = p[0], v = p[1];
        const double t2 = frakt_sq(dp_, u, v);
        const DiskWeightParams k = p_.disk();
        std::size_t i = 0;
        for (int m = 0; m <= n; ++m)
            for (int j = 0; 2 * j <= m; ++j) out[i++] = disk_even_basis_sq(k, j, m, u, t2);
    }

private:
    DomainParams2 dp_;
    CurvedWeightParams p_;
    bool full_;
};

class RevSystem final : public OrthoSystem {
public:
    RevSystem(const RevDomainParams& dp, const BallWeightParams& p, int N) : dp_(dp), p_(p) {
        validate(dp);
        validate(p);
        check_degree(N);
        N_ = N;
        shift_ = p.eigen_shift();
        for (int n = 0; n <= N; ++n)
            for (const auto& idx : rev_indices(n, true)) {
                labels_.push_back({idx.n, idx.j, idx.k, idx.l});
                index_.push_back(idx);
            }
        finalize();
    }

    SpaceKind kind() const override { return SpaceKind::Revolution; }
    int dim() const override { return 3; }

    SampleRule rule(int degree) const override {
        Rule3D r = rev_quadrature(dp_, p_, degree);
        SampleRule out;
        out.exactness = r.exactness;
        out.weights = r.weights;
        out.nodes.assign(r.nodes.begin(), r.nodes.end());
        return out;
    }

    bool contains(const Pt& p) const override { return rev_contains(dp_, p); }

    std::string describe() const override {
        std::ostringstream os;
        os << "revolution a=" << dp_.a << " b=" << dp_.b << " c=" << dp_.c << " beta=" << p_.beta
           << " gamma=" << p_.gamma;
        return os.str();
    }

protected:
    void eval_raw(const Pt& p, int n, double* out) const override {
        const double s = rev_frakt_sq(dp_, p[0], p[1], p[2]);
        const std::size_t m = count_upto(n);
        for (std::size_t i = 0; i < m; ++i) out[i] = ball3_even_sq(p_, index_[i], p[0], p[1], s);
    }

private:
    RevDomainParams dp_;
    BallWeightParams p_;
    std::vector<RevBasisIndex> index_;
};

} // namespace

SystemPtr make_curved_system(const DomainParams2& dp, const CurvedWeightParams& p, int N, bool full_domain) {
    return std::make_shared<CurvedSystem>(dp, p, N, full_domain);
}

SystemPtr make_rev_system(const RevDomainParams& dp, const BallWeightParams& p, int N) {
    return std::make_shared<RevSystem>(dp, p, N);
}

double Expansion::coef_at(const BasisLabel& label) const {
    const auto& ls = system->labels();
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) fail(ErrorKind::IndexOutOfRange, "label is not part of the expansion");
    return coef[std::size_t(it - ls.begin())];
}

double Expansion::norm2(int n) const {
    std::size_t m = system->count_upto(n < 0 ? degree : std::min(n, degree));
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += coef[i] * coef[i];
    return s;
}

int default_quad_degree(const OrthoSystem& sys) { return 2 * sys.max_degree() + 8; }

namespace {

/// Basis values at every node, row-major by node.
std::vector<double> basis_table(const OrthoSystem& sys, const SampleRule& rule) {
    const std::size_t M = sys.size();
    std::vector<double> table(rule.size() * M);
    parallel_for(rule.size(), [&](std::size_t q) { sys.eval(rule.nodes[q], table.data() + q * M); });
    return table;
}

std::vector<double> sample_values(const SampleRule& rule, const Func& f) {
    std::vector<double> vals(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        vals[q] = f(rule.nodes[q]);
        if (!std::isfinite(vals[q])) fail(ErrorKind::InvalidParameter, "function is not finite at a quadrature node");
    }
    return vals;
}

Expansion project_table(const SystemPtr& sys, const SampleRule& rule, const std::vector<double>& table,
                        const std::vector<double>& values) {
    if (values.size() != rule.size()) fail(ErrorKind::InvalidParameter, "value count does not match the rule size");
    const std::size_t M = sys->size();
    const double mass = rule.mass();
    Expansion e;
    e.system = sys;
    e.degree = sys->max_degree();
    e.quad_degree = rule.exactness;
    e.underresolved = rule.exactness < 2 * e.degree;
    e.coef.assign(M, 0.0);
    parallel_for(M, [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) s += rule.weights[q] * values[q] * table[q * M + i];
        e.coef[i] = s / mass;
    });
    return e;
}

ConvergenceReport residual_report(const Expansion& e, const SampleRule& rule, const std::vector<double>& table,
                                  const std::vector<double>& values) {
    const OrthoSystem& sys = *e.system;
    const int N = e.degree;
    const std::size_t M = sys.size();
    const double mass = rule.mass();
    ConvergenceReport rep;
    rep.quad_degree = rule.exactness;
    rep.nodes = rule.size();
    std::vector<double> sq(N + 1, 0.0), sup(N + 1, 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        double r = values[q];
        for (int n = 0; n <= N; ++n) {
            for (std::size_t i = sys.count_upto(n - 1); i < sys.count_upto(n); ++i) r -= e.coef[i] * table[q * M + i];
            sq[n] += rule.weights[q] * r * r;
            sup[n] = std::max(sup[n], std::abs(r));
        }
    }
    for (int n = 0; n <= N; ++n) {
        rep.degrees.push_back(n);
        rep.l2.push_back(std::sqrt(std::max(0.0, sq[n] / mass)));
        rep.sup_sampled.push_back(sup[n]);
    }
    rep.strictly_decreasing = true;
    for (int n = 1; n <= N; ++n)
        if (!(rep.l2[n] < rep.l2[n - 1])) rep.strictly_decreasing = false;
    rep.decay_order = fit_decay_order(rep.degrees, rep.l2, std::min(4, N), N);
    return rep;
}

} // namespace

Expansion project(const SystemPtr& sys, const Func& f, int quad_degree) {
    SampleRule rule = sys->rule(quad_degree < 0 ? default_quad_degree(*sys) : quad_degree);
    return project_table(sys, rule, basis_table(*sys, rule), sample_values(rule, f));
}

Expansion project_values(const SystemPtr& sys, const SampleRule& rule, const std::vector<double>& values) {
    return project_table(sys, rule, basis_table(*sys, rule), values);
}

double partial_sum_eval(const Expansion& e, int N, const Pt& p) {
    if (N < 0 || N > e.degree) fail(ErrorKind::IndexOutOfRange, "partial sum degree exceeds the expansion degree");
    std::vector<double> row(e.system->count_upto(N));
    e.system->eval(p, N, row.data());
    double s = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) s += e.coef[i] * row[i];
    return s;
}

double best_error_l2(const SystemPtr& sys, const Func& f, int N, int quad_degree) {
    if (N < 0 || N > sys->max_degree()) fail(ErrorKind::IndexOutOfRange, "degree exceeds the system degree");
    return convergence_report(sys, f, quad_degree).l2[N];
}

ConvergenceReport convergence_report(const SystemPtr& sys, const Func& f, int quad_degree) {
    auto t0 = std::chrono::steady_clock::now();
    SampleRule rule = sys->rule(quad_degree < 0 ? default_quad_degree(*sys) : quad_degree);
    std::vector<double> table = basis_table(*sys, rule);
    std::vector<double> values = sample_values(rule, f);
    Expansion e = project_table(sys, rule, table, values);
    ConvergenceReport rep = residual_report(e, rule, table, values);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ConvergenceReport convergence_report(const Expansion& e, const SampleRule& rule, const std::vector<double>& values) {
    auto t0 = std::chrono::steady_clock::now();
    ConvergenceReport rep = residual_report(e, rule, basis_table(*e.system, rule), values);
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

double fit_decay_order(const std::vector<int>& degrees, const std::vector<double>& errors, int nlo, int nhi,
                       double floor) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < std::max(nlo, 1) || degrees[i] > nhi || !(errors[i] > floor)) continue;
        xs.push_back(std::log(double(degrees[i])));
        ys.push_back(-std::log(errors[i]));
    }
    if (xs.size() < 2) return 0.0;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

double kfunctional_proxy(const Expansion& e, const ConvergenceReport& rep, int r, double rho, int M) {
    if (r != 1 && r != 2) fail(ErrorKind::InvalidParameter, "K-functional order r must be 1 or 2");
    if (!(rho >= 0.0)) fail(ErrorKind::InvalidParameter, "rho must be nonnegative");
    if (M < 0) M = e.degree;
    if (M > e.degree || M >= int(rep.l2.size())) fail(ErrorKind::IndexOutOfRange, "candidate degree too large");
    const OrthoSystem& sys = *e.system;
    const double rr = std::pow(rho, r);
    double best = INFINITY, semi = 0.0;
    for (int m = 0; m <= M; ++m) {
        const double lam = std::pow(-sys.eigenvalue(m), r);
        for (std::size_t i = sys.count_upto(m - 1); i < sys.count_upto(m); ++i) semi += lam * e.coef[i] * e.coef[i];
        best = std::min(best, rep.l2[m] + rr * std::sqrt(semi));
    }
    return best;
}

double LocalizationReport::decay_ratio() const {
    int first = -1, last = -1;
    for (std::size_t i = 0; i < value.size(); ++i)
        if (count[i] > 0) {
            if (first < 0) first = int(i);
            last = int(i);
        }
    if (first < 0 || last == first || value[last] == 0.0) return INFINITY;
    return value[first] / value[last];
}

bool LocalizationReport::monotone_envelope() const {
    double closer = -1.0;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (count[i] == 0) continue;
        if (closer >= 0.0 && value[i] > closer) return false;
        closer = std::max(closer, value[i]);
    }
    return true;
}

namespace {

double unit_uniform(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

} // namespace

std::vector<Point3> rev_samples(const RevDomainParams& dp, std::size_t count, std::uint64_t seed) {
    validate(dp);
    std::mt19937_64 g(seed);
    std::vector<Point3> out;
    out.reserve(count);
    while (out.size() < count) {
        Point3 y{2.0 * unit_uniform(g) - 1.0, 2.0 * unit_uniform(g) - 1.0, unit_uniform(g)};
        if (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] > 1.0) continue;
        out.push_back(rev_psi_inv(dp, y));
    }
    return out;
}

std::vector<Point2> lambda_samples(const DomainParams2& dp, std::size_t count, std::uint64_t seed) {
    validate(dp);
    std::mt19937_64 g(seed);
    std::vector<Point2> out;
    out.reserve(count);
    while (out.size() < count) {
        Point2 y{2.0 * unit_uniform(g) - 1.0, unit_uniform(g)};
        if (y[0] * y[0] + y[1] * y[1] > 1.0) continue;
        out.push_back(psi_inv(dp, y));
    }
    return out;
}

LocalizationReport localization_profile(const RevDomainParams& dp, double gamma, int n, const Point3& center,
                                        int bins, std::size_t samples, std::uint64_t seed, const Cutoff& cutoff) {
    auto t0 = std::chrono::steady_clock::now();
    if (bins < 1) fail(ErrorKind::InvalidParameter, "bin count must be positive");
    if (samples < 1) fail(ErrorKind::DegenerateSample, "sample count must be positive");
    LocalizedKernel L(dp, gamma, n, cutoff);
    LocalizationReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.center_value = L(center, center);
    if (!(std::abs(rep.center_value) > 0.0)) fail(ErrorKind::DegenerateSample, "kernel vanishes at the center");
    std::vector<Point3> pts = rev_samples(dp, samples, seed);
    std::vector<double> dist(pts.size()), val(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        dist[i] = rev_distance(dp, center, pts[i]);
        val[i] = std::abs(L(center, pts[i]));
    });
    rep.max_distance = *std::max_element(dist.begin(), dist.end());
    if (!(rep.max_distance > 0.0)) fail(ErrorKind::DegenerateSample, "all samples coincide with the center");
    rep.value.assign(bins, 0.0);
    rep.count.assign(bins, 0);
    for (int b = 0; b < bins; ++b) {
        rep.bin_lo.push_back(double(b) / bins);
        rep.bin_hi.push_back(double(b + 1) / bins);
    }
    rep.value[0] = 1.0;
    rep.count[0] = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int b = std::min(bins - 1, int(dist[i] / rep.max_distance * bins));
        rep.value[b] = std::max(rep.value[b], val[i] / std::abs(rep.center_value));
        ++rep.count[b];
    }
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace symdom
