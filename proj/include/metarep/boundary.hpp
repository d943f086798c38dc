#pragma once

#include "metarep/twisted.hpp"

namespace metarep {

/// Restriction of H^1(N_K; ad rho) to the boundary torus, evaluated in
/// floating point. Cocycles are extended to words by
/// u(vw) = u(v) + ad rho(v) u(w); the symplectic form on the torus is
///   Omega(u, v) = tr(u(mu) ad rho(mu) v(lambda)) - tr(u(lambda) ad rho(lambda) v(mu)).
struct BoundaryReport {
    long image_dim = 0;        // dim of the restriction image in H^1(torus)
    Eigen::MatrixXcd omega;    // Omega on an image basis
    double isotropy_residual = 0.0; // max |Omega| over image basis pairs
    long torus_h0 = 0, torus_h1 = 0, torus_z1 = 0;
    long h1_interior = 0;      // dim H^1(N_K; ad rho)
};

/// Throws NotRegular if rho(mu) does not have dim-many distinct eigenvalues,
/// MissingLongitude without peripheral data.
BoundaryReport boundary_restriction(const KnotPresentation& p, const Representation& rho,
                                    bool with_longitude = true);

/// Evaluate a 1-cochain (given per generator) on a word by the twisted
/// extension rule. Matrices are dim x dim blocks stacked per generator.
Eigen::MatrixXcd cochain_on_word(const KnotPresentation& p, const Representation& rho_float,
                                 const std::vector<Eigen::MatrixXcd>& values, const Word& w);

/// Float sl(n) basis (E_ij then H_i), coordinates, and adjoint matrices.
std::vector<Eigen::MatrixXcd> sl_basis_float(long n);
Eigen::VectorXcd sl_coords_float(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd adjoint_of_float(const Eigen::MatrixXcd& a,
                                  const std::vector<Eigen::MatrixXcd>& basis);

} // namespace metarep
