#include "pstcube/robustness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pstcube/parallel.hpp"
#include "pstcube/walker.hpp"

namespace pstcube {

namespace {

double spectral_norm_symmetric(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// splitmix64: decorrelates the per-trial seeds derived from (root, counter).
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in [-1, 1) from the top 53 bits; avoids the unspecified behaviour of
// std::uniform_real_distribution so draws are reproducible everywhere.
double symmetric_unit(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

PerturbationModel build_perturbation(
    const WeightedGraph& base,
    const std::map<std::pair<Vertex, Vertex>, double>& deviations) {
    const auto n = static_cast<Eigen::Index>(base.num_vertices());
    PerturbationModel model;
    model.base = base;
    model.deviations = deviations;
    model.error_matrix = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [e, d] : deviations) {
        if (e.first >= base.num_vertices() || e.second >= base.num_vertices())
            throw std::invalid_argument("deviation key out of range");
        if (e.first == e.second)
            throw std::invalid_argument("deviations live on vertex pairs, not loops");
        if (e.first > e.second)
            throw std::invalid_argument("deviation keys must be canonical (i < j); "
                                        "asymmetric input rejected");
        model.error_matrix(e.first, e.second) = d;
        model.error_matrix(e.second, e.first) = d;
    }
    model.spectral_norm = spectral_norm_symmetric(model.error_matrix);
    model.frobenius_norm = model.error_matrix.norm();
    return model;
}

std::map<std::pair<Vertex, Vertex>, double> sample_deviations(const WeightedGraph& switched,
                                                              double delta_rel, double j_on,
                                                              std::uint64_t seed,
                                                              double off_leakage) {
    if (delta_rel < 0.0) throw std::invalid_argument("delta_rel must be nonnegative");
    if (off_leakage < 0.0) throw std::invalid_argument("off_leakage must be nonnegative");
    std::mt19937_64 rng(mix64(seed));
    std::map<std::pair<Vertex, Vertex>, double> deviations;
    for (const auto& [e, w] : switched.edges()) {
        (void)w;
        deviations[e] = delta_rel * j_on * symmetric_unit(rng);
    }
    if (off_leakage > 0.0) {
        if (!is_power_of_two(switched.num_vertices()))
            throw std::invalid_argument("off-edge leakage needs a hypercube vertex set");
        const auto count = static_cast<std::uint32_t>(switched.num_vertices());
        for (std::uint32_t i = 0; i < count; ++i)
            for (std::uint32_t j = i + 1; j < count; ++j)
                if (std::popcount(i ^ j) == 1 && switched.weight(i, j) == 0.0)
                    deviations[{i, j}] = off_leakage * j_on * symmetric_unit(rng);
    }
    return deviations;
}

CertifiedBounds certified_bound(const PerturbationModel& model, double t0) {
    if (t0 < 0.0) throw std::invalid_argument("t0 must be nonnegative");
    CertifiedBounds b;
    b.spectral = std::clamp(1.0 - t0 * model.spectral_norm, 0.0, 1.0);
    b.frobenius = std::clamp(1.0 - t0 * model.frobenius_norm, 0.0, 1.0);
    return b;
}

RobustnessReport monte_carlo_fidelity(const WeightedGraph& base, const SubcubeSpec& spec,
                                      double delta_rel, double j_on, double t0,
                                      std::uint64_t trials, std::uint64_t seed,
                                      double off_leakage) {
    if (trials < 1) throw std::invalid_argument("at least one trial required");
    const Eigen::MatrixXd ideal = base.adjacency_matrix();
    const Vertex x = spec.x.index;
    const Vertex y = spec.y.index;

    RobustnessReport report;
    report.t0 = t0;
    report.trials = trials;
    report.seed = seed;
    report.delta_rel = delta_rel;
    report.j_on = j_on;
    report.records.resize(trials);

    parallel_for(trials, [&](std::size_t trial) {
        const std::uint64_t trial_seed = mix64(seed ^ mix64(trial + 1));
        const auto deviations =
            sample_deviations(base, delta_rel, j_on, trial_seed, off_leakage);
        const PerturbationModel model = build_perturbation(base, deviations);
        const SpectralPropagator prop(ideal + model.error_matrix);
        TrialRecord& rec = report.records[trial];
        rec.trial = trial;
        rec.spectral_norm = model.spectral_norm;
        rec.frobenius_norm = model.frobenius_norm;
        rec.fidelity = std::abs(prop.entry(t0, y, x));
        rec.bound = certified_bound(model, t0).spectral;
    });

    double worst_spectral = 0.0, worst_frobenius = 0.0, sum = 0.0;
    double min_f = 1.0, max_f = 0.0;
    for (const TrialRecord& rec : report.records) {
        worst_spectral = std::max(worst_spectral, rec.spectral_norm);
        worst_frobenius = std::max(worst_frobenius, rec.frobenius_norm);
        sum += rec.fidelity;
        min_f = std::min(min_f, rec.fidelity);
        max_f = std::max(max_f, rec.fidelity);
    }
    report.bound_spectral = std::clamp(1.0 - t0 * worst_spectral, 0.0, 1.0);
    report.bound_frobenius = std::clamp(1.0 - t0 * worst_frobenius, 0.0, 1.0);
    report.min_fidelity = min_f;
    report.mean_fidelity = sum / static_cast<double>(trials);
    report.max_fidelity = max_f;
    return report;
}

}  // namespace pstcube
