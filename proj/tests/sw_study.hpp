#pragma once

// Shared configuration of the effective-model scaling study: both qubits at
// 4 GHz, coupler at 5.426 GHz, couplings co-scaled so that g_i = g_j = g and
// g_ij = 1.2 g (capacitances solved from the coupling formulas). The direct
// and mediated couplings keep a fixed ratio, so the model error is probed at
// a fixed operating point while the overall coupling strength varies.

#include <cmath>

#include "pstcube/coupler.hpp"

namespace pstcube_tests {

inline pstcube::CouplerParams sw_study_params(double g_over_delta) {
    constexpr double omega = 4.0;
    constexpr double omega_c = 5.426;
    const double g = g_over_delta * std::abs(omega - omega_c);
    pstcube::CouplerParams p;
    p.C_i = p.C_j = 71.0;
    p.C_c = 200.0;
    p.omega_i = p.omega_j = omega;
    p.omega_c = omega_c;
    p.C_ic = p.C_jc = 2.0 * g * std::sqrt(p.C_i * p.C_c) / std::sqrt(omega * omega_c);
    p.C_ij = 2.0 * (1.2 * g) * std::sqrt(p.C_i * p.C_j) / omega - p.C_ic * p.C_jc / p.C_c;
    return p;
}

inline constexpr double kSwStudyHorizonNs = 2.0;

}  // namespace pstcube_tests
