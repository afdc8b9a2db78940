#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pstcube/graph.hpp"
#include "pstcube/robustness.hpp"
#include "pstcube/walker.hpp"

using namespace pstcube;

namespace {

constexpr double kPi = std::numbers::pi;

struct SwitchedQ2 {
    SubcubeSpec spec;
    WeightedGraph switched;
    SwitchedQ2()
        : spec(induced_subcube(VertexLabel::from_index(4, 0), VertexLabel::from_index(4, 5))),
          switched(apply_switching(make_hypercube(4), spec)) {}
};

}  // namespace

TEST_CASE("perturbation assembly") {
    const SwitchedQ2 fixture;

    SUBCASE("zero deviations give zero norms") {
        const PerturbationModel m = build_perturbation(fixture.switched, {});
        CHECK(m.spectral_norm == 0.0);
        CHECK(m.frobenius_norm == 0.0);
        CHECK(m.error_matrix.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("uniform On-edge deviation has Frobenius norm delta sqrt(8)") {
        std::map<std::pair<Vertex, Vertex>, double> dev;
        for (const auto& [e, w] : fixture.switched.edges()) {
            (void)w;
            dev[e] = 0.005;
        }
        REQUIRE(dev.size() == 4);
        const PerturbationModel m = build_perturbation(fixture.switched, dev);
        CHECK(m.frobenius_norm ==
              doctest::Approx(0.005 * std::sqrt(8.0)).epsilon(1e-12));
        CHECK(m.spectral_norm <= m.frobenius_norm + 1e-15);
    }

    SUBCASE("a single leftover edge has spectral norm equal to its strength") {
        const PerturbationModel m =
            build_perturbation(fixture.switched, {{{2, 3}, 0.007}});
        CHECK(m.spectral_norm == doctest::Approx(0.007).epsilon(1e-12));
    }

    SUBCASE("bad keys rejected") {
        CHECK_THROWS_AS(build_perturbation(fixture.switched, {{{3, 2}, 0.1}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_perturbation(fixture.switched, {{{0, 16}, 0.1}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_perturbation(fixture.switched, {{{3, 3}, 0.1}}),
                        std::invalid_argument);
    }
}

TEST_CASE("deviation sampling") {
    const SwitchedQ2 fixture;

    SUBCASE("zero amplitude draws zeros") {
        for (const auto& [e, d] : sample_deviations(fixture.switched, 0.0, 1.0, 7)) {
            (void)e;
            CHECK(d == 0.0);
        }
    }

    SUBCASE("draws stay inside the stated range") {
        const auto dev = sample_deviations(fixture.switched, 0.005, 1.0, 123);
        CHECK(dev.size() == 4);
        for (const auto& [e, d] : dev) {
            (void)e;
            CHECK(std::abs(d) <= 0.005);
        }
    }

    SUBCASE("reproducible from the seed") {
        const auto a = sample_deviations(fixture.switched, 0.005, 1.0, 99);
        const auto b = sample_deviations(fixture.switched, 0.005, 1.0, 99);
        CHECK(a == b);
        const auto c = sample_deviations(fixture.switched, 0.005, 1.0, 100);
        CHECK(a != c);
    }

    SUBCASE("off-edge leakage populates the complement") {
        const auto dev = sample_deviations(fixture.switched, 0.005, 1.0, 5, 0.001);
        CHECK(dev.size() == 32);  // 4 On + 28 Off hypercube pairs
    }
}

TEST_CASE("certified bounds") {
    const SwitchedQ2 fixture;

    SUBCASE("unperturbed evolution is certified at 1") {
        const CertifiedBounds b = certified_bound(build_perturbation(fixture.switched, {}), kPi / 2);
        CHECK(b.spectral == 1.0);
        CHECK(b.frobenius == 1.0);
    }

    SUBCASE("uniform +0.005 On-edge case") {
        std::map<std::pair<Vertex, Vertex>, double> dev;
        for (const auto& [e, w] : fixture.switched.edges()) {
            (void)w;
            dev[e] = 0.005;
        }
        const CertifiedBounds b =
            certified_bound(build_perturbation(fixture.switched, dev), kPi / 2);
        CHECK(b.frobenius == doctest::Approx(0.97778559).epsilon(1e-8));
        CHECK(b.spectral >= b.frobenius);
    }

    SUBCASE("worst-case uniform deviation on the full ambient cube") {
        const WeightedGraph q4 = make_hypercube(4);
        std::map<std::pair<Vertex, Vertex>, double> dev;
        for (const auto& [e, w] : q4.edges()) {
            (void)w;
            dev[e] = 0.005;
        }
        const CertifiedBounds b = certified_bound(build_perturbation(q4, dev), kPi / 2);
        // ||E||_2 = 0.005 * ||A(Q4)||_2 = 0.02
        CHECK(b.spectral == doctest::Approx(0.96858407).epsilon(1e-8));
    }

    SUBCASE("bounds clamp to [0, 1]") {
        std::map<std::pair<Vertex, Vertex>, double> dev{{{0, 1}, 5.0}};
        const CertifiedBounds b =
            certified_bound(build_perturbation(fixture.switched, dev), kPi / 2);
        CHECK(b.spectral == 0.0);
        CHECK_THROWS_AS(certified_bound(build_perturbation(fixture.switched, dev), -1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("Monte-Carlo fidelity") {
    const SwitchedQ2 fixture;
    const double t0 = kPi / 2;

    SUBCASE("no deviation keeps unit fidelity") {
        const RobustnessReport r =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.0, 1.0, t0, 10, 1);
        CHECK(r.min_fidelity >= 1.0 - 1e-9);
    }

    SUBCASE("every trial respects its certified bound and the 0.97 floor") {
        const RobustnessReport r =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.005, 1.0, t0, 300, 42);
        for (const TrialRecord& rec : r.records) {
            CHECK(rec.fidelity >= rec.bound - 1e-12);
            CHECK(rec.bound == doctest::Approx(1.0 - t0 * rec.spectral_norm).epsilon(1e-12));
        }
        CHECK(r.min_fidelity >= 0.97);
        CHECK(r.bound_spectral >= r.bound_frobenius);
        CHECK(r.min_fidelity >= r.bound_spectral - 1e-12);
    }

    SUBCASE("reports are deterministic") {
        const RobustnessReport a =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.005, 1.0, t0, 64, 7);
        const RobustnessReport b =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.005, 1.0, t0, 64, 7);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            CHECK(a.records[i].fidelity == b.records[i].fidelity);
            CHECK(a.records[i].spectral_norm == b.records[i].spectral_norm);
        }
    }

    SUBCASE("larger deviations never improve the certified bounds") {
        const RobustnessReport small =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.005, 1.0, t0, 64, 11);
        const RobustnessReport large =
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.01, 1.0, t0, 64, 11);
        CHECK(large.bound_spectral <= small.bound_spectral);
        CHECK(large.bound_frobenius <= small.bound_frobenius);
    }

    SUBCASE("trial count validated") {
        CHECK_THROWS_AS(
            monte_carlo_fidelity(fixture.switched, fixture.spec, 0.005, 1.0, t0, 0, 1),
            std::invalid_argument);
    }
}

TEST_CASE("perturbations confined to the isolated block are invisible") {
    const SwitchedQ2 fixture;
    // vertices 2 and 3 lie outside V_d = {0, 1, 4, 5}
    std::map<std::pair<Vertex, Vertex>, double> dev{{{2, 3}, 0.4}, {{2, 10}, 0.2}};
    const PerturbationModel m = build_perturbation(fixture.switched, dev);
    const SpectralPropagator prop(fixture.switched.adjacency_matrix() + m.error_matrix);
    const double fid = std::abs(prop.entry(kPi / 2, 5, 0));
    CHECK(fid == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("commuting perturbation: exact fidelity and bound tightness") {
    const SwitchedQ2 fixture;
    const double t0 = kPi / 2;
    std::vector<double> eps = {1e-4, 1e-3, 1e-2};
    std::vector<double> loss;
    for (double e : eps) {
        std::map<std::pair<Vertex, Vertex>, double> dev;
        for (const auto& [edge, w] : fixture.switched.edges()) {
            (void)w;
            dev[edge] = e;  // E = eps * A(Q_d): commutes with the ideal generator
        }
        const PerturbationModel m = build_perturbation(fixture.switched, dev);
        const SpectralPropagator prop(fixture.switched.adjacency_matrix() + m.error_matrix);
        const double fid = std::abs(prop.entry(t0, 5, 0));
        const double expected = std::pow(std::abs(std::cos(e * t0)), fixture.spec.d);
        CHECK(fid == doctest::Approx(expected).epsilon(1e-10));
        CHECK(certified_bound(m, t0).spectral <= fid);
        loss.push_back(1.0 - fid);
    }
    // quadratic fidelity loss in the commuting direction
    const double slope = std::log(loss[2] / loss[0]) / std::log(eps[2] / eps[0]);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}
