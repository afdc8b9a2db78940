#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pstcube/coupler.hpp"
#include "pstcube/graph.hpp"

namespace pstcube {

enum class SpinModel { XY, Heisenberg };

// Many-qubit network: one qubit per vertex, pairwise couplings on edges,
// optional longitudinal fields. Couplings follow
//   XY:          H = sum_(i,j) 2 J_ij (s+_i s-_j + s-_i s+_j)
//   Heisenberg:  H = -sum_(i,j) J_ij vec(s)_i . vec(s)_j + sum_j B_j sz_j
// with sz = +1 on the excited state. With 2 J_ij equal to the edge weight the
// XY single-excitation block is exactly A(G); this also reproduces the
// pi/2 hypercube transfer time.
struct SpinNetworkSpec {
    WeightedGraph graph;
    std::map<std::pair<Vertex, Vertex>, double> coupling_J;  // keyed on graph edges
    std::vector<double> local_fields_B;                      // one per vertex
    SpinModel model = SpinModel::XY;

    void validate() const;

    // 2 J = edge weight, B = 0: adjacency (XY) / Laplacian (Heisenberg) units.
    static SpinNetworkSpec normalized(const WeightedGraph& g, SpinModel model);
};

// Real-symmetric Hamiltonian over the full 2^num_qubits space. Basis index bit
// q is the excitation of qubit q. All supported couplings are real in the
// computational basis.
struct FullHamiltonian {
    int num_qubits = 0;
    Eigen::SparseMatrix<double> matrix;
    std::vector<std::string> qubit_names;  // network qubits first, then couplers

    Eigen::Index dimension() const { return matrix.rows(); }
    Eigen::MatrixXd dense() const;  // dimension <= 1024
};

inline constexpr int kMaxNetworkQubits = 16;
inline constexpr int kMaxDeviceQubits = 12;
inline constexpr double kSectorLeakTol = 1e-12;

FullHamiltonian build_xy_hamiltonian(const SpinNetworkSpec& spec);
FullHamiltonian build_heisenberg_hamiltonian(const SpinNetworkSpec& spec);

// Restriction to span{ |one excitation at vertex q> }. Throws if any
// single-excitation column couples out of the sector beyond kSectorLeakTol.
Eigen::MatrixXd single_excitation_block(const FullHamiltonian& h);

// Local fields making the Heisenberg single-excitation block equal
// c I + L(G_w) with w = 2J. The constraint forces a uniform field; the
// minimal-norm least-squares solution is returned together with c.
struct FieldCalibration {
    std::vector<double> B;
    double offset_c = 0.0;
    double residual = 0.0;
};

FieldCalibration calibrate_local_fields(const WeightedGraph& g,
                                        const std::map<std::pair<Vertex, Vertex>, double>& J);

// Transfer of the qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
// encoded at vertex u, full-space evolution for time t, read out at vertex v.
// vacuum_amplitude = <vac|psi(t)>, excited_amplitude = <e_v|psi(t)>; their raw
// phases are kept (a d-cube transfer carries (-i)^d on the excited sector).
// fidelity is the overlap with the target maximized over the global and the
// inter-sector relative phase, since the transfer criterion is magnitude-only:
// cos(theta/2)|<vac|psi>| + sin(theta/2)|<e_v|psi>|.
struct TransferResult {
    std::complex<double> vacuum_amplitude;
    std::complex<double> excited_amplitude;
    double fidelity = 0.0;
};

TransferResult full_state_transfer(const SpinNetworkSpec& spec, double theta, double phi,
                                   Vertex u, Vertex v, double t);

double full_state_transfer_fidelity(const SpinNetworkSpec& spec, double theta, double phi,
                                    Vertex u, Vertex v, double t);

// Physical device: network qubits plus one ancilla coupler per edge,
//   H = 1/2 sum w_i sz_i + 1/2 sum w_C sz_C
//       + sum_(i,j) [g_i sx_i sx_C + g_j sx_j sx_C] + sum_(i,j) g_ij sx_i sx_j
// with no rotating-wave approximation. Qubit order: vertices by index, then
// couplers by sorted edge. g strengths derive from each edge's capacitances.
struct DeviceSpec {
    WeightedGraph graph;
    EdgeParamsMap coupler_params;      // one entry per edge
    std::vector<double> qubit_omega;   // GHz, one per vertex

    void validate() const;
};

FullHamiltonian build_device_hamiltonian(const DeviceSpec& dev);

// Second-order corrected qubit frequency: omega + g^2 (1/Delta + 1/Sigma).
double lamb_shift(double omega, double omega_c, double g);
// Both qubits of one edge, with g_i, g_j from the capacitance formulas.
std::pair<double, double> lamb_shifted_frequencies(const CouplerParams& p);

// Validation of the effective two-level model against the exact three-body
// (qubit, qubit, coupler) evolution started from one excitation on qubit i
// with the coupler in its ground state. The exact amplitude is taken between
// the dressed states e^{-eta}|e_i>, e^{-eta}|e_j> (eta = the first-order
// block-off-diagonalizing generator), i.e. in the frame where the effective
// model is formulated; the deviation then measures the model error itself
// rather than the frame change. evolution_time <= 0 selects one swap period.
struct SwCheckResult {
    double max_deviation = 0.0;
    double j_eff = 0.0;        // GHz
    double swap_period = 0.0;  // ns
    double omega_i_shifted = 0.0;
    double omega_j_shifted = 0.0;
};

SwCheckResult sw_effective_coupling_check(const CouplerParams& p, double evolution_time = 0.0);

}  // namespace pstcube
