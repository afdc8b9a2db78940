#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pstcube/graph.hpp"

namespace pstcube {

// Non-ideal switching: the realized adjacency is A' = A(switched) + E with a
// symmetric error matrix E collecting miscalibrated On edges and leftover Off
// couplings. Norms are the certificates' inputs.
struct PerturbationModel {
    WeightedGraph base;  // the ideal switched graph
    std::map<std::pair<Vertex, Vertex>, double> deviations;
    Eigen::MatrixXd error_matrix;
    double spectral_norm = 0.0;
    double frobenius_norm = 0.0;
};

PerturbationModel build_perturbation(
    const WeightedGraph& base,
    const std::map<std::pair<Vertex, Vertex>, double>& deviations);

// Independent uniform draws in [-delta_rel * j_on, +delta_rel * j_on] on every
// edge of `switched`; hypercube pairs at Hamming distance 1 that carry no edge
// (the Off edges) receive uniform draws scaled by off_leakage instead.
// Deterministic for a fixed seed.
std::map<std::pair<Vertex, Vertex>, double> sample_deviations(const WeightedGraph& switched,
                                                              double delta_rel, double j_on,
                                                              std::uint64_t seed,
                                                              double off_leakage = 0.0);

// Certified fidelity floors at time t0, clamped to [0, 1]:
//   spectral:  1 - t0 ||E||_2   (exact first-order bound for unitary groups,
//                                ||exp(-it(U+E)) - exp(-itU)|| <= t ||E||)
//   frobenius: 1 - t0 ||E||_F   (weaker, Frobenius-dominated variant)
struct CertifiedBounds {
    double spectral = 0.0;
    double frobenius = 0.0;
};

CertifiedBounds certified_bound(const PerturbationModel& model, double t0);

struct TrialRecord {
    std::uint64_t trial = 0;
    double spectral_norm = 0.0;
    double frobenius_norm = 0.0;
    double fidelity = 0.0;
    double bound = 0.0;  // per-trial spectral bound
};

struct RobustnessReport {
    double t0 = 0.0;
    double bound_spectral = 0.0;   // from the worst per-trial ||E||_2
    double bound_frobenius = 0.0;  // from the worst per-trial ||E||_F
    double min_fidelity = 0.0;
    double mean_fidelity = 0.0;
    double max_fidelity = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double delta_rel = 0.0;
    double j_on = 0.0;
    std::vector<TrialRecord> records;
};

// Exact per-trial fidelities |<y'| exp(-i t0 (U+E)) |x'>| for independently
// sampled deviation draws; per-trial seeds derive from the root seed by
// counter, so the report is deterministic under any execution order.
RobustnessReport monte_carlo_fidelity(const WeightedGraph& base, const SubcubeSpec& spec,
                                      double delta_rel, double j_on, double t0,
                                      std::uint64_t trials, std::uint64_t seed,
                                      double off_leakage = 0.0);

}  // namespace pstcube
