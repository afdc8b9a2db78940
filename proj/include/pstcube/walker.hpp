#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pstcube/graph.hpp"

namespace pstcube {

enum class HamiltonianKind { Adjacency, Laplacian };

// Quantum-walk generator: A(G) or L(G), dimensionless (hbar = 1, weights in
// units of the reference coupling, times in its inverse).
struct WalkHamiltonian {
    HamiltonianKind kind = HamiltonianKind::Adjacency;
    Eigen::MatrixXd matrix;

    static WalkHamiltonian adjacency(const WeightedGraph& g);
    static WalkHamiltonian laplacian(const WeightedGraph& g);
    static WalkHamiltonian of(const WeightedGraph& g, HamiltonianKind kind);
};

struct FidelityReport {
    Vertex u = 0;
    Vertex v = 0;
    double time = 0.0;
    std::complex<double> amplitude;
    double fidelity = 0.0;  // |amplitude|
};

// Real-symmetric eigendecomposition of the generator, reused across times:
// exp(-itH) = V exp(-it diag(lambda)) V^T.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const WalkHamiltonian& h);
    explicit SpectralPropagator(const Eigen::MatrixXd& symmetric);

    Eigen::Index dimension() const { return eigenvalues_.size(); }

    Eigen::MatrixXcd at(double t) const;
    std::complex<double> entry(double t, Vertex row, Vertex col) const;
    Eigen::VectorXcd evolve(double t, const Eigen::VectorXcd& state) const;

    // Operator-norm deviation of U(t)^dagger U(t) from the identity.
    double unitarity_defect(double t) const;

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

Eigen::MatrixXcd hermitian_propagator(const WalkHamiltonian& h, double t);

FidelityReport transfer_fidelity(const WalkHamiltonian& h, double t, Vertex u, Vertex v);

// Exact tensor factorization of exp(-itA(Q_n)) entries: one factor per bit
// position, cos t where the endpoint bits agree and -i sin t where they differ.
std::complex<double> hypercube_closed_form(int n, double t, Vertex u, Vertex v);

// One report per grid point from a single eigendecomposition.
std::vector<FidelityReport> fidelity_curve(const WalkHamiltonian& h, Vertex u, Vertex v,
                                           const std::vector<double>& t_grid);

// True iff the transfer fidelity at t0 is >= 1 - tol.
bool pst_check(const WeightedGraph& g, HamiltonianKind kind, Vertex u, Vertex v, double t0,
               double tol);

}  // namespace pstcube
