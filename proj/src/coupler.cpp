#include "pstcube/coupler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pstcube {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw std::invalid_argument(std::string("coupler parameter ") + name +
                                    " must be positive");
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0))
        throw std::invalid_argument(std::string("coupler parameter ") + name +
                                    " must be nonnegative");
}

constexpr double kBisectionTol = 1e-10;   // GHz
constexpr double kCutoffAgreeTol = 1e-9;  // closed form vs bisection

}  // namespace

void CouplerParams::validate() const {
    require_positive(C_i, "C_i");
    require_positive(C_j, "C_j");
    require_positive(C_c, "C_c");
    // Coupling capacitances may vanish (no qubit-coupler or no direct path).
    require_nonnegative(C_ic, "C_ic");
    require_nonnegative(C_jc, "C_jc");
    require_nonnegative(C_ij, "C_ij");
    require_positive(omega_i, "omega_i");
    require_positive(omega_j, "omega_j");
    require_positive(omega_c, "omega_c");
}

CouplerParams CouplerParams::with_omega_c(double omega) const {
    CouplerParams p = *this;
    p.omega_c = omega;
    return p;
}

double qubit_coupler_g_i(const CouplerParams& p) {
    p.validate();
    return 0.5 * p.C_ic / std::sqrt(p.C_i * p.C_c) * std::sqrt(p.omega_i * p.omega_c);
}

double qubit_coupler_g_j(const CouplerParams& p) {
    p.validate();
    return 0.5 * p.C_jc / std::sqrt(p.C_j * p.C_c) * std::sqrt(p.omega_j * p.omega_c);
}

double direct_coupling_g(const CouplerParams& p) {
    p.validate();
    // (1 + eta) C_ij = C_ij + C_ic C_jc / C_c: finite also in the C_ij -> 0 limit.
    return 0.5 * (p.C_ij + p.C_ic * p.C_jc / p.C_c) / std::sqrt(p.C_i * p.C_j) *
           std::sqrt(p.omega_i * p.omega_j);
}

double effective_coupling_full(const CouplerParams& p) {
    p.validate();
    if (p.delta_i() == 0.0 || p.delta_j() == 0.0)
        throw std::domain_error("effective coupling undefined at zero detuning "
                                "(qubit resonant with coupler)");
    const double gi = qubit_coupler_g_i(p);
    const double gj = qubit_coupler_g_j(p);
    const double mediated = gi * gj / 2.0 *
                            (1.0 / p.delta_i() + 1.0 / p.delta_j() -
                             1.0 / p.sigma_i() - 1.0 / p.sigma_j());
    return mediated + direct_coupling_g(p);
}

double effective_coupling_capacitive(const CouplerParams& p) {
    p.validate();
    if (p.omega_i != p.omega_j)
        throw std::invalid_argument("capacitive form requires equal qubit frequencies; "
                                    "use effective_coupling_full");
    const double omega = p.omega_i;
    const double ds = p.delta_i() * p.sigma_i();  // omega^2 - omega_c^2
    if (ds == 0.0)
        throw std::domain_error("effective coupling undefined at zero detuning");
    // [omega^2 eta / (D S) + 1] C_ij written with eta C_ij = C_ic C_jc / C_c so
    // the expression survives C_ij -> 0.
    const double weighted =
        omega * omega / ds * (p.C_ic * p.C_jc / p.C_c) + p.C_ij;
    return 0.5 * weighted / std::sqrt(p.C_i * p.C_j) * omega;
}

double cutoff_frequency(const CouplerParams& p) {
    p.validate();
    if (p.omega_i != p.omega_j)
        throw std::invalid_argument("cutoff search requires equal qubit frequencies");
    const double omega = p.omega_i;
    if (p.C_ic * p.C_jc <= 0.0)
        throw std::domain_error("no cutoff exists for eta = 0: the coupling "
                                "never changes sign");
    if (p.C_ij <= 0.0)
        throw std::domain_error("no finite cutoff without a direct coupling path");
    const double eta = p.eta();

    const double closed_form = omega * std::sqrt(1.0 + eta);

    // Bisection cross-check on the negative-detuning branch.
    double lo = omega + 0.01;
    double hi = 4.0 * omega;
    auto j_at = [&p](double wc) { return effective_coupling_capacitive(p.with_omega_c(wc)); };
    double f_lo = j_at(lo);
    double f_hi = j_at(hi);
    if (f_lo * f_hi > 0.0)
        throw std::domain_error("no coupling zero inside the search bracket "
                                "[omega + 0.01, 4 omega]");
    while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = j_at(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if (f_lo * f_mid < 0.0) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    const double bisected = 0.5 * (lo + hi);
    if (std::abs(bisected - closed_form) > kCutoffAgreeTol)
        throw std::runtime_error("cutoff disagreement: closed form " +
                                 std::to_string(closed_form) + " GHz vs bisection " +
                                 std::to_string(bisected) + " GHz");
    return closed_form;
}

Schedule compile_schedule(int ambient_n, const VertexLabel& x, const VertexLabel& y,
                          const EdgeParamsMap& params_per_edge, double omega_on) {
    const WeightedGraph ambient = make_hypercube(ambient_n);
    Schedule schedule;
    schedule.subcube = induced_subcube(x, y);

    double j_sum = 0.0;
    double j_min = std::numeric_limits<double>::infinity();
    double j_max = -std::numeric_limits<double>::infinity();
    std::size_t on_count = 0;

    for (const auto& [edge, w] : ambient.edges()) {
        (void)w;
        auto it = params_per_edge.find(edge);
        if (it == params_per_edge.end())
            throw std::invalid_argument("missing coupler parameters for edge (" +
                                        std::to_string(edge.first) + ", " +
                                        std::to_string(edge.second) + ")");
        const CouplerParams& base = it->second;
        ScheduleEdge se;
        se.i = edge.first;
        se.j = edge.second;
        const bool on = schedule.subcube.contains(edge.first) &&
                        schedule.subcube.contains(edge.second);
        if (on) {
            const CouplerParams p = base.with_omega_c(omega_on);
            const double ratio =
                std::max(qubit_coupler_g_i(p) / std::abs(p.delta_i()),
                         qubit_coupler_g_j(p) / std::abs(p.delta_j()));
            if (ratio > kDispersiveReject)
                throw std::invalid_argument(
                    "omega_on violates the dispersive condition: g/|Delta| = " +
                    std::to_string(ratio) + " > " + std::to_string(kDispersiveReject));
            if (ratio > kDispersiveWarn)
                schedule.warning = "weak dispersive regime: g/|Delta| = " +
                                   std::to_string(ratio);
            se.state = EdgeState::On;
            se.omega_c = omega_on;
            se.j_eff = effective_coupling_full(p);
            j_sum += se.j_eff;
            j_min = std::min(j_min, se.j_eff);
            j_max = std::max(j_max, se.j_eff);
            ++on_count;
        } else {
            se.state = EdgeState::Off;
            se.omega_c = cutoff_frequency(base);
            se.j_eff = 0.0;
        }
        schedule.edges.push_back(se);
    }

    schedule.j_on = j_sum / static_cast<double>(on_count);
    schedule.j_on_spread = j_max - j_min;
    if (schedule.j_on_spread > kSpreadTolerance) {
        schedule.spread_warning = true;
        if (!schedule.warning.empty()) schedule.warning += "; ";
        schedule.warning += "heterogeneous On couplings: spread " +
                            std::to_string(schedule.j_on_spread) + " GHz";
    }
    if (schedule.j_on == 0.0)
        throw std::domain_error("omega_on sits at the coupling cutoff: J_on = 0");
    // The coupling sign is a gauge choice; the transfer time follows |J_on|.
    schedule.t0_ns = std::numbers::pi / (2.0 * std::abs(schedule.j_on));
    return schedule;
}

}  // namespace pstcube
