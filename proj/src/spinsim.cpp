#include "pstcube/spinsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "pstcube/walker.hpp"

namespace pstcube {

namespace {

using Cx = std::complex<double>;
using Triplet = Eigen::Triplet<double>;

constexpr Eigen::Index kDenseCap = 1024;
constexpr int kSwSamples = 2048;

std::uint32_t excitation_index(int qubit) { return std::uint32_t{1} << qubit; }

double sz_value(std::uint32_t state, int qubit) {
    return (state >> qubit) & 1u ? 1.0 : -1.0;
}

FullHamiltonian assemble(int num_qubits, const std::vector<Triplet>& triplets,
                         std::vector<std::string> names) {
    FullHamiltonian h;
    h.num_qubits = num_qubits;
    h.qubit_names = std::move(names);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    h.matrix.resize(dim, dim);
    h.matrix.setFromTriplets(triplets.begin(), triplets.end());
    h.matrix.prune(0.0);
    return h;
}

std::vector<std::string> vertex_names(std::size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) names.push_back("q" + std::to_string(i));
    return names;
}

}  // namespace

void SpinNetworkSpec::validate() const {
    if (graph.num_vertices() > kMaxNetworkQubits)
        throw std::invalid_argument("network of " + std::to_string(graph.num_vertices()) +
                                    " qubits exceeds the full-space cap of " +
                                    std::to_string(kMaxNetworkQubits));
    if (local_fields_B.size() != graph.num_vertices())
        throw std::invalid_argument("local_fields_B must hold one value per vertex");
    if (coupling_J.size() != graph.num_edges())
        throw std::invalid_argument("coupling_J must be keyed exactly on the graph edges");
    for (const auto& [e, j] : coupling_J) {
        (void)j;
        if (graph.weight(e.first, e.second) == 0.0)
            throw std::invalid_argument("coupling_J entry (" + std::to_string(e.first) +
                                        ", " + std::to_string(e.second) +
                                        ") is not a graph edge");
    }
}

SpinNetworkSpec SpinNetworkSpec::normalized(const WeightedGraph& g, SpinModel model) {
    SpinNetworkSpec spec;
    spec.graph = g;
    spec.model = model;
    spec.local_fields_B.assign(g.num_vertices(), 0.0);
    for (const auto& [e, w] : g.edges()) spec.coupling_J[e] = 0.5 * w;
    return spec;
}

Eigen::MatrixXd FullHamiltonian::dense() const {
    if (dimension() > kDenseCap)
        throw std::invalid_argument("Hamiltonian of dimension " +
                                    std::to_string(dimension()) +
                                    " exceeds the dense cap of " + std::to_string(kDenseCap));
    return Eigen::MatrixXd(matrix);
}

FullHamiltonian build_xy_hamiltonian(const SpinNetworkSpec& spec) {
    if (spec.model != SpinModel::XY)
        throw std::invalid_argument("build_xy_hamiltonian requires the XY model");
    spec.validate();
    const int nq = static_cast<int>(spec.graph.num_vertices());
    const std::uint32_t dim = std::uint32_t{1} << nq;
    std::vector<Triplet> triplets;
    for (const auto& [e, j] : spec.coupling_J) {
        const std::uint32_t mask = excitation_index(static_cast<int>(e.first)) |
                                   excitation_index(static_cast<int>(e.second));
        for (std::uint32_t s = 0; s < dim; ++s) {
            const std::uint32_t overlap = s & mask;
            if (overlap != 0 && overlap != mask)  // exactly one of the pair excited
                triplets.emplace_back(static_cast<int>(s ^ mask), static_cast<int>(s),
                                      2.0 * j);
        }
    }
    return assemble(nq, triplets, vertex_names(spec.graph.num_vertices()));
}

FullHamiltonian build_heisenberg_hamiltonian(const SpinNetworkSpec& spec) {
    if (spec.model != SpinModel::Heisenberg)
        throw std::invalid_argument("build_heisenberg_hamiltonian requires the Heisenberg model");
    spec.validate();
    const int nq = static_cast<int>(spec.graph.num_vertices());
    const std::uint32_t dim = std::uint32_t{1} << nq;
    std::vector<Triplet> triplets;
    std::vector<double> diag(dim, 0.0);
    for (const auto& [e, j] : spec.coupling_J) {
        const std::uint32_t mask = excitation_index(static_cast<int>(e.first)) |
                                   excitation_index(static_cast<int>(e.second));
        for (std::uint32_t s = 0; s < dim; ++s) {
            const std::uint32_t overlap = s & mask;
            if (overlap != 0 && overlap != mask)
                triplets.emplace_back(static_cast<int>(s ^ mask), static_cast<int>(s),
                                      -2.0 * j);
            diag[s] += -j * sz_value(s, static_cast<int>(e.first)) *
                       sz_value(s, static_cast<int>(e.second));
        }
    }
    for (std::uint32_t s = 0; s < dim; ++s) {
        for (int q = 0; q < nq; ++q)
            diag[s] += spec.local_fields_B[static_cast<std::size_t>(q)] * sz_value(s, q);
        if (diag[s] != 0.0)
            triplets.emplace_back(static_cast<int>(s), static_cast<int>(s), diag[s]);
    }
    return assemble(nq, triplets, vertex_names(spec.graph.num_vertices()));
}

Eigen::MatrixXd single_excitation_block(const FullHamiltonian& h) {
    const int nq = h.num_qubits;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(nq, nq);
    for (int col = 0; col < nq; ++col) {
        const auto col_index = static_cast<Eigen::Index>(excitation_index(col));
        for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col_index); it; ++it) {
            const auto row = static_cast<std::uint32_t>(it.row());
            if (std::popcount(row) == 1) {
                block(std::countr_zero(row), col) = it.value();
            } else if (std::abs(it.value()) > kSectorLeakTol) {
                throw std::runtime_error(
                    "Hamiltonian couples the single-excitation subspace to other "
                    "sectors: |<" + std::to_string(row) + "|H|e_" + std::to_string(col) +
                    ">| = " + std::to_string(std::abs(it.value())));
            }
        }
    }
    return block;
}

FieldCalibration calibrate_local_fields(const WeightedGraph& g,
                                        const std::map<std::pair<Vertex, Vertex>, double>& J) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    double j_total = 0.0;
    Eigen::VectorXd j_degree = Eigen::VectorXd::Zero(n);
    for (const auto& [e, j] : J) {
        if (e.first >= g.num_vertices() || e.second >= g.num_vertices() ||
            g.weight(e.first, e.second) == 0.0)
            throw std::invalid_argument("coupling key (" + std::to_string(e.first) + ", " +
                                        std::to_string(e.second) + ") is not a graph edge");
        j_total += j;
        j_degree(e.first) += j;
        j_degree(e.second) += j;
    }

    // Single-excitation diagonal at B = 0 is -sum(J) + 2 * sum_{m~k} J_km; the
    // target diagonal is c + deg_w(k) with w = 2J. The field enters as
    // 2 B_k - sum(B), so the rows differ only through B_k: solve the affine
    // system for (B, c) by minimal-norm least squares.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n + 1);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index m = 0; m < n; ++m) a(k, m) = (k == m ? 2.0 : 0.0) - 1.0;
        a(k, n) = -1.0;
        const double base = -j_total + 2.0 * j_degree(k);
        const double target_diag = 2.0 * j_degree(k);  // deg of the 2J-weighted graph
        rhs(k) = target_diag - base;                    // = j_total for every k
    }
    const Eigen::VectorXd u =
        a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    FieldCalibration cal;
    cal.B.assign(u.data(), u.data() + n);
    cal.offset_c = u(n);
    cal.residual = (a * u - rhs).cwiseAbs().maxCoeff();
    if (cal.residual > 1e-9)
        throw std::runtime_error("field calibration did not converge: residual " +
                                 std::to_string(cal.residual));
    return cal;
}

TransferResult full_state_transfer(const SpinNetworkSpec& spec, double theta, double phi,
                                   Vertex u, Vertex v, double t) {
    if (spec.graph.num_vertices() > 10)
        throw std::invalid_argument("full-space transfer capped at 10 vertices");
    if (u >= spec.graph.num_vertices() || v >= spec.graph.num_vertices())
        throw std::out_of_range("vertex index out of range");
    const FullHamiltonian h = spec.model == SpinModel::XY
                                  ? build_xy_hamiltonian(spec)
                                  : build_heisenberg_hamiltonian(spec);
    const SpectralPropagator prop(h.dense());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(h.dimension());
    psi(0) = std::cos(theta / 2.0);
    psi(excitation_index(static_cast<int>(u))) =
        std::exp(Cx(0.0, phi)) * std::sin(theta / 2.0);
    const Eigen::VectorXcd evolved = prop.evolve(t, psi);
    TransferResult result;
    result.vacuum_amplitude = evolved(0);
    result.excited_amplitude = evolved(excitation_index(static_cast<int>(v)));
    const double overlap =
        std::cos(theta / 2.0) * std::abs(result.vacuum_amplitude) +
        std::sin(theta / 2.0) * std::abs(result.excited_amplitude);
    result.fidelity = std::clamp(overlap, 0.0, 1.0);
    return result;
}

double full_state_transfer_fidelity(const SpinNetworkSpec& spec, double theta, double phi,
                                    Vertex u, Vertex v, double t) {
    return full_state_transfer(spec, theta, phi, u, v, t).fidelity;
}

void DeviceSpec::validate() const {
    if (qubit_omega.size() != graph.num_vertices())
        throw std::invalid_argument("qubit_omega must hold one frequency per vertex");
    if (coupler_params.size() != graph.num_edges())
        throw std::invalid_argument("coupler_params must hold one entry per edge");
    const std::size_t total = graph.num_vertices() + graph.num_edges();
    if (total > kMaxDeviceQubits)
        throw std::invalid_argument("device of " + std::to_string(total) +
                                    " qubits exceeds the cap of " +
                                    std::to_string(kMaxDeviceQubits));
    for (const auto& [e, p] : coupler_params) {
        if (graph.weight(e.first, e.second) == 0.0)
            throw std::invalid_argument("coupler_params entry is not a graph edge");
        p.validate();
        if (std::abs(p.omega_i - qubit_omega[e.first]) > 1e-9 ||
            std::abs(p.omega_j - qubit_omega[e.second]) > 1e-9)
            throw std::invalid_argument(
                "edge parameter frequencies disagree with qubit_omega for edge (" +
                std::to_string(e.first) + ", " + std::to_string(e.second) + ")");
    }
}

FullHamiltonian build_device_hamiltonian(const DeviceSpec& dev) {
    dev.validate();
    const int nv = static_cast<int>(dev.graph.num_vertices());
    const int nq = nv + static_cast<int>(dev.graph.num_edges());
    const std::uint32_t dim = std::uint32_t{1} << nq;

    std::vector<std::string> names = vertex_names(dev.graph.num_vertices());
    std::vector<double> zeeman(static_cast<std::size_t>(nq));
    for (int q = 0; q < nv; ++q) zeeman[static_cast<std::size_t>(q)] = dev.qubit_omega[q];

    struct XxTerm {
        std::uint32_t mask;
        double g;
    };
    std::vector<XxTerm> terms;
    int coupler = nv;
    for (const auto& [e, p] : dev.coupler_params) {
        names.push_back("c" + std::to_string(e.first) + "-" + std::to_string(e.second));
        zeeman[static_cast<std::size_t>(coupler)] = p.omega_c;
        const std::uint32_t bi = excitation_index(static_cast<int>(e.first));
        const std::uint32_t bj = excitation_index(static_cast<int>(e.second));
        const std::uint32_t bc = excitation_index(coupler);
        terms.push_back({bi | bc, qubit_coupler_g_i(p)});
        terms.push_back({bj | bc, qubit_coupler_g_j(p)});
        terms.push_back({bi | bj, direct_coupling_g(p)});
        ++coupler;
    }

    std::vector<Triplet> triplets;
    for (std::uint32_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int q = 0; q < nq; ++q)
            diag += 0.5 * zeeman[static_cast<std::size_t>(q)] * sz_value(s, q);
        if (diag != 0.0) triplets.emplace_back(static_cast<int>(s), static_cast<int>(s), diag);
        for (const XxTerm& term : terms)
            triplets.emplace_back(static_cast<int>(s ^ term.mask), static_cast<int>(s),
                                  term.g);
    }
    return assemble(nq, triplets, std::move(names));
}

double lamb_shift(double omega, double omega_c, double g) {
    const double delta = omega - omega_c;
    if (delta == 0.0)
        throw std::domain_error("Lamb shift undefined at zero detuning");
    return omega + g * g * (1.0 / delta + 1.0 / (omega + omega_c));
}

std::pair<double, double> lamb_shifted_frequencies(const CouplerParams& p) {
    return {lamb_shift(p.omega_i, p.omega_c, qubit_coupler_g_i(p)),
            lamb_shift(p.omega_j, p.omega_c, qubit_coupler_g_j(p))};
}

namespace {

// First-order block-off-diagonalizing generator for one edge: for each qubit
// q in {i, j} coupled to the coupler c,
//   eta += g_q/Delta_q (s+_q s-_c - s-_q s+_c) + g_q/Sigma_q (s+_q s+_c - s-_q s-_c).
// Qubit order matches build_device_hamiltonian: i = bit 0, j = bit 1, c = bit 2.
Eigen::MatrixXd sw_generator(const CouplerParams& p) {
    Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(8, 8);
    const double g[2] = {qubit_coupler_g_i(p), qubit_coupler_g_j(p)};
    const double delta[2] = {p.delta_i(), p.delta_j()};
    const double sigma[2] = {p.sigma_i(), p.sigma_j()};
    constexpr int kCoupler = 2;
    for (int q = 0; q < 2; ++q) {
        const std::uint32_t bq = std::uint32_t{1} << q;
        const std::uint32_t bc = std::uint32_t{1} << kCoupler;
        for (std::uint32_t s = 0; s < 8; ++s) {
            const bool q_up = s & bq;
            const bool c_up = s & bc;
            const std::uint32_t flipped = s ^ bq ^ bc;
            if (!q_up && c_up)  // s+_q s-_c
                eta(flipped, s) += g[q] / delta[q];
            if (q_up && !c_up)  // -s-_q s+_c
                eta(flipped, s) -= g[q] / delta[q];
            if (!q_up && !c_up)  // s+_q s+_c
                eta(flipped, s) += g[q] / sigma[q];
            if (q_up && c_up)  // -s-_q s-_c
                eta(flipped, s) -= g[q] / sigma[q];
        }
    }
    return eta;
}

}  // namespace

SwCheckResult sw_effective_coupling_check(const CouplerParams& p, double evolution_time) {
    p.validate();
    const double gi = qubit_coupler_g_i(p);
    const double gj = qubit_coupler_g_j(p);
    const double ratio =
        std::max(gi / std::abs(p.delta_i()), gj / std::abs(p.delta_j()));
    if (ratio > kDispersiveReject)
        throw std::invalid_argument("outside the dispersive regime: g/|Delta| = " +
                                    std::to_string(ratio));

    SwCheckResult result;
    result.j_eff = effective_coupling_full(p);
    std::tie(result.omega_i_shifted, result.omega_j_shifted) = lamb_shifted_frequencies(p);
    if (evolution_time <= 0.0 && result.j_eff == 0.0)
        throw std::domain_error("swap period undefined at the coupling cutoff; "
                                "pass an explicit evolution time");
    result.swap_period = result.j_eff == 0.0
                             ? 0.0
                             : std::numbers::pi / (2.0 * std::abs(result.j_eff));
    const double horizon = evolution_time > 0.0 ? evolution_time : result.swap_period;

    // Exact three-body model: two network qubits plus the edge coupler.
    WeightedGraph pair_graph(2);
    pair_graph.set_weight(0, 1, 1.0);
    DeviceSpec dev;
    dev.graph = pair_graph;
    dev.coupler_params[{0, 1}] = p;
    dev.qubit_omega = {p.omega_i, p.omega_j};
    const Eigen::MatrixXd h = build_device_hamiltonian(dev).dense();

    const Eigen::MatrixXd dress = (-sw_generator(p)).exp();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXd wu = solver.eigenvectors().transpose() * dress.col(1);  // e_i
    const Eigen::VectorXd wv = solver.eigenvectors().transpose() * dress.col(2);  // e_j
    const Eigen::VectorXd weights = wu.cwiseProduct(wv);

    // Two-level prediction: detuned Rabi oscillation between the dressed pair.
    const double half_det = 0.5 * (result.omega_i_shifted - result.omega_j_shifted);
    const double rabi = std::hypot(half_det, result.j_eff);

    double max_dev = 0.0;
    for (int m = 0; m < kSwSamples; ++m) {
        const double t = horizon * m / (kSwSamples - 1);
        Cx amp{0.0, 0.0};
        for (Eigen::Index k = 0; k < 8; ++k)
            amp += weights(k) * std::exp(Cx(0.0, -t * solver.eigenvalues()(k)));
        const double eff = rabi == 0.0 ? 0.0
                                       : std::abs(result.j_eff) / rabi *
                                             std::abs(std::sin(rabi * t));
        max_dev = std::max(max_dev, std::abs(std::abs(amp) - eff));
    }
    result.max_deviation = max_dev;
    return result;
}

}  // namespace pstcube
