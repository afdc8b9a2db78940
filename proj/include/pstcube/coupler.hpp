#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pstcube/graph.hpp"

namespace pstcube {

// Circuit parameters of one tunable-coupler edge. Capacitances in fF,
// frequencies in GHz. GHz values are used as angular frequencies throughout,
// so times computed as 1/GHz come out in ns with no 2*pi factor.
struct CouplerParams {
    double C_i = 0.0, C_j = 0.0;     // qubit capacitances
    double C_c = 0.0;                // coupler capacitance
    double C_ic = 0.0, C_jc = 0.0;   // qubit-coupler coupling capacitances
    double C_ij = 0.0;               // direct qubit-qubit capacitance
    double omega_i = 0.0, omega_j = 0.0, omega_c = 0.0;  // GHz

    void validate() const;  // throws on nonpositive entries

    double eta() const { return C_ic * C_jc / (C_ij * C_c); }
    double delta_i() const { return omega_i - omega_c; }
    double delta_j() const { return omega_j - omega_c; }
    double sigma_i() const { return omega_i + omega_c; }
    double sigma_j() const { return omega_j + omega_c; }

    CouplerParams with_omega_c(double omega) const;
};

// g_q = (1/2) C_qc / sqrt(C_q C_c) * sqrt(omega_q omega_c)
double qubit_coupler_g_i(const CouplerParams& p);
double qubit_coupler_g_j(const CouplerParams& p);

// g_ij = (1/2)(1 + eta) C_ij / sqrt(C_i C_j) * sqrt(omega_i omega_j)
double direct_coupling_g(const CouplerParams& p);

// J = (g_i g_j / 2)(1/D_i + 1/D_j - 1/S_i - 1/S_j) + g_ij
double effective_coupling_full(const CouplerParams& p);

// Equal-frequency reduction:
// J = (1/2)[omega^2 eta / (D S) + 1] C_ij / sqrt(C_i C_j) * omega.
// Algebraically identical to the full form when omega_i == omega_j.
double effective_coupling_capacitive(const CouplerParams& p);

// Coupler frequency where the direct and coupler-mediated couplings cancel:
// omega_off = omega sqrt(1 + eta), cross-checked by bisection on the
// capacitive form over [omega + 0.01, 4 omega].
double cutoff_frequency(const CouplerParams& p);

enum class EdgeState { On, Off };

struct ScheduleEdge {
    Vertex i = 0, j = 0;
    EdgeState state = EdgeState::Off;
    double omega_c = 0.0;  // GHz
    double j_eff = 0.0;    // GHz
};

// Per-edge coupler-frequency assignment realizing the switched sub-hypercube,
// plus the transfer time t0 = pi / (2 J_on) in ns.
struct Schedule {
    std::vector<ScheduleEdge> edges;
    double j_on = 0.0;  // GHz; mean over On edges when parameters vary
    double t0_ns = 0.0;
    SubcubeSpec subcube;
    double j_on_spread = 0.0;  // max - min over On edges
    bool spread_warning = false;
    std::string warning;
};

using EdgeParamsMap = std::map<std::pair<Vertex, Vertex>, CouplerParams>;

// Dispersive-validity gate used when accepting an On frequency.
inline constexpr double kDispersiveReject = 0.2;
inline constexpr double kDispersiveWarn = 0.1;
inline constexpr double kSpreadTolerance = 1e-9;  // GHz

Schedule compile_schedule(int ambient_n, const VertexLabel& x, const VertexLabel& y,
                          const EdgeParamsMap& params_per_edge, double omega_on);

}  // namespace pstcube
