#include "pstcube/walker.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "pstcube/parallel.hpp"

namespace pstcube {

namespace {

constexpr Eigen::Index kDensePropagatorCap = 1024;  // beyond this use the closed form
constexpr double kSymmetryTol = 1e-12;

using Cx = std::complex<double>;

}  // namespace

WalkHamiltonian WalkHamiltonian::adjacency(const WeightedGraph& g) {
    return {HamiltonianKind::Adjacency, g.adjacency_matrix()};
}

WalkHamiltonian WalkHamiltonian::laplacian(const WeightedGraph& g) {
    return {HamiltonianKind::Laplacian, g.laplacian_matrix()};
}

WalkHamiltonian WalkHamiltonian::of(const WeightedGraph& g, HamiltonianKind kind) {
    return kind == HamiltonianKind::Adjacency ? adjacency(g) : laplacian(g);
}

SpectralPropagator::SpectralPropagator(const WalkHamiltonian& h)
    : SpectralPropagator(h.matrix) {}

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols())
        throw std::invalid_argument("propagator generator must be square");
    if (symmetric.rows() > kDensePropagatorCap)
        throw std::invalid_argument("dense propagator capped at dimension " +
                                    std::to_string(kDensePropagatorCap) +
                                    "; use the hypercube closed form beyond that");
    const double defect = (symmetric - symmetric.transpose()).cwiseAbs().maxCoeff();
    if (defect > kSymmetryTol)
        throw std::invalid_argument("generator is not symmetric (max asymmetry " +
                                    std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd SpectralPropagator::at(double t) const {
    const Eigen::VectorXcd phases =
        (Cx(0.0, -t) * eigenvalues_.cast<Cx>().array()).exp().matrix();
    return eigenvectors_.cast<Cx>() * phases.asDiagonal() *
           eigenvectors_.transpose().cast<Cx>();
}

std::complex<double> SpectralPropagator::entry(double t, Vertex row, Vertex col) const {
    const auto n = static_cast<Eigen::Index>(dimension());
    if (static_cast<Eigen::Index>(row) >= n || static_cast<Eigen::Index>(col) >= n)
        throw std::out_of_range("vertex index out of range");
    Cx sum{0.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = eigenvectors_(static_cast<Eigen::Index>(row), k) *
                         eigenvectors_(static_cast<Eigen::Index>(col), k);
        sum += w * std::exp(Cx(0.0, -t * eigenvalues_(k)));
    }
    return sum;
}

Eigen::VectorXcd SpectralPropagator::evolve(double t, const Eigen::VectorXcd& state) const {
    if (state.size() != dimension())
        throw std::invalid_argument("state dimension mismatch");
    const Eigen::VectorXcd coeffs = eigenvectors_.transpose().cast<Cx>() * state;
    const Eigen::VectorXcd phases =
        (Cx(0.0, -t) * eigenvalues_.cast<Cx>().array()).exp().matrix();
    return eigenvectors_.cast<Cx>() * phases.cwiseProduct(coeffs);
}

double SpectralPropagator::unitarity_defect(double t) const {
    const Eigen::MatrixXcd u = at(t);
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    const Eigen::MatrixXcd dev =
        gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dev);
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

Eigen::MatrixXcd hermitian_propagator(const WalkHamiltonian& h, double t) {
    return SpectralPropagator(h).at(t);
}

FidelityReport transfer_fidelity(const WalkHamiltonian& h, double t, Vertex u, Vertex v) {
    const SpectralPropagator prop(h);
    FidelityReport report;
    report.u = u;
    report.v = v;
    report.time = t;
    report.amplitude = prop.entry(t, v, u);
    report.fidelity = std::abs(report.amplitude);
    return report;
}

std::complex<double> hypercube_closed_form(int n, double t, Vertex u, Vertex v) {
    if (n < 1) throw std::invalid_argument("hypercube dimension must be positive");
    const int differ = std::popcount((u ^ v) & ((std::uint32_t{1} << n) - 1));
    const int agree = n - differ;
    Cx amp = std::pow(Cx(std::cos(t), 0.0), agree) * std::pow(std::sin(t), differ);
    switch (differ % 4) {  // (-i)^differ
        case 1: amp *= Cx(0.0, -1.0); break;
        case 2: amp *= -1.0; break;
        case 3: amp *= Cx(0.0, 1.0); break;
        default: break;
    }
    return amp;
}

std::vector<FidelityReport> fidelity_curve(const WalkHamiltonian& h, Vertex u, Vertex v,
                                           const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("fidelity_curve: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("fidelity_curve: time grid must be nondecreasing");
    const SpectralPropagator prop(h);
    std::vector<FidelityReport> reports(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        FidelityReport& r = reports[i];
        r.u = u;
        r.v = v;
        r.time = t_grid[i];
        r.amplitude = prop.entry(t_grid[i], v, u);
        r.fidelity = std::abs(r.amplitude);
    });
    return reports;
}

bool pst_check(const WeightedGraph& g, HamiltonianKind kind, Vertex u, Vertex v, double t0,
               double tol) {
    const FidelityReport r = transfer_fidelity(WalkHamiltonian::of(g, kind), t0, u, v);
    return r.fidelity >= 1.0 - tol;
}

}  // namespace pstcube
