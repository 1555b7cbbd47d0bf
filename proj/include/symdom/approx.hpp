#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "symdom/curved2d.hpp"
#include "symdom/revolution.hpp"

namespace symdom {

/// Points are stored with three slots; planar systems ignore the last one.
using Pt = std::array<double, 3>;
using Func = std::function<double(const Pt&)>;

enum class SpaceKind { Curved2D, Revolution };

struct BasisLabel {
    int n = 0, j = 0, k = 0, l = 0;
    bool operator==(const BasisLabel&) const = default;
};

struct SampleRule {
    std::vector<Pt> nodes;
    std::vector<double> weights;
    int exactness = 0;
    std::size_t size() const { return nodes.size(); }
    double mass() const;
};

/// Orthonormal basis of the even space up to a fixed degree with respect to
/// the normalized weight (total mass one).
class OrthoSystem {
public:
    virtual ~OrthoSystem() = default;

    virtual SpaceKind kind() const = 0;
    virtual int dim() const = 0;
    virtual SampleRule rule(int degree) const = 0;
    virtual bool contains(const Pt& p) const = 0;
    virtual std::string describe() const = 0;

    int max_degree() const { return N_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<BasisLabel>& labels() const { return labels_; }
    /// Number of basis functions of degree <= n.
    std::size_t count_upto(int n) const;
    double eigen_shift() const { return shift_; }
    double eigenvalue(int n) const { return -n * (n + shift_); }
    /// Factor turning the i-th raw basis function into the orthonormal one.
    double scale(std::size_t i) const { return inv_norm_.at(i); }

    void eval(const Pt& p, double* out) const { eval(p, N_, out); }
    void eval(const Pt& p, int n, double* out) const;

protected:
    virtual void eval_raw(const Pt& p, int n, double* out) const = 0;
    void finalize();

    int N_ = 0;
    double shift_ = 0.0;
    std::vector<BasisLabel> labels_;
    std::vector<std::size_t> offsets_;
    std::vector<double> inv_norm_;
};

using SystemPtr = std::shared_ptr<const OrthoSystem>;

/// Q_{j,n} system on Lambda; with full_domain the same functions on Omega.
SystemPtr make_curved_system(const DomainParams2& dp, const CurvedWeightParams& p, int N, bool full_domain = false);

/// Even-class Q^n_{l,j,k} system on the solid of revolution.
SystemPtr make_rev_system(const RevDomainParams& dp, const BallWeightParams& p, int N);

struct Expansion {
    SystemPtr system;
    std::vector<double> coef;
    int degree = 0;
    bool orthonormalized = true;
    bool underresolved = false;
    int quad_degree = 0;

    double coef_at(const BasisLabel& label) const;
    /// Sum of squared coefficients of degree <= n (n < 0: all).
    double norm2(int n = -1) const;
};

/// Rule exactness used when the caller does not ask for one.
int default_quad_degree(const OrthoSystem& sys);

Expansion project(const SystemPtr& sys, const Func& f, int quad_degree = -1);
Expansion project_values(const SystemPtr& sys, const SampleRule& rule, const std::vector<double>& values);

double partial_sum_eval(const Expansion& e, int N, const Pt& p);

/// ||f - S_N f|| in L^2 of the normalized weight, by quadrature.
double best_error_l2(const SystemPtr& sys, const Func& f, int N, int quad_degree = -1);

struct ConvergenceReport {
    std::vector<int> degrees;
    std::vector<double> l2;
    std::vector<double> sup_sampled;  // max over quadrature nodes, approximate
    double decay_order = 0.0;
    bool strictly_decreasing = false;
    int quad_degree = 0;
    std::size_t nodes = 0;
    double runtime_seconds = 0.0;
};

ConvergenceReport convergence_report(const SystemPtr& sys, const Func& f, int quad_degree = -1);
ConvergenceReport convergence_report(const Expansion& e, const SampleRule& rule, const std::vector<double>& values);

/// Least-squares slope of -log E against log N over the degrees in [nlo, nhi] with E > floor.
double fit_decay_order(const std::vector<int>& degrees, const std::vector<double>& errors, int nlo, int nhi,
                       double floor = 1e-14);

/// Upper-bound proxy for K_r(f; rho): min over partial sums S_m f, m <= M, of
/// ||f - S_m f|| + rho^r ||(-D)^{r/2} S_m f||.
double kfunctional_proxy(const Expansion& e, const ConvergenceReport& rep, int r, double rho, int M = -1);

struct LocalizationReport {
    int n = 0;
    std::vector<double> bin_lo, bin_hi, value;
    std::vector<std::size_t> count;
    double center_value = 0.0;
    double max_distance = 0.0;
    std::size_t samples = 0;
    double runtime_seconds = 0.0;

    /// value[first] / value[last] over nonempty bins.
    double decay_ratio() const;
    /// Every bin stays below the largest value seen in any closer bin.
    bool monotone_envelope() const;
};

/// max |L_n(center, y)| / L_n(center, center) per distance bin; distances are
/// rev_distance scaled by the largest sampled distance.
LocalizationReport localization_profile(const RevDomainParams& dp, double gamma, int n, const Point3& center,
                                        int bins, std::size_t samples, std::uint64_t seed,
                                        const Cutoff& cutoff = default_cutoff);

/// Uniform samples in the upper half ball mapped onto the solid.
std::vector<Point3> rev_samples(const RevDomainParams& dp, std::size_t count, std::uint64_t seed);
/// Uniform samples in the upper half disk mapped onto Lambda.
std::vector<Point2> lambda_samples(const DomainParams2& dp, std::size_t count, std::uint64_t seed);

int thread_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace symdom
