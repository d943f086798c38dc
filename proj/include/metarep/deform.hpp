#pragma once

#include "metarep/boundary.hpp"

namespace metarep {

/// 1-cochain with values in trace-zero matrices, one value per generator.
struct Cochain1 {
    std::vector<Eigen::MatrixXcd> values;
};

/// Z^1 / B^1 / H^1 for ad rho in floating point. H^1 representatives are
/// chosen orthogonal to B^1 in the Frobenius inner product on coordinates.
struct CocycleSpaces {
    long dim_z1 = 0, dim_b1 = 0, dim_h1 = 0;
    std::vector<Cochain1> z1;
    std::vector<Cochain1> b1;
    std::vector<Cochain1> h1_reps;
};

CocycleSpaces cocycle_spaces(const KnotPresentation& p, const Representation& rho);

/// Formal deformation exp(sum_i t^i a_i(g)) alpha(g) solved order by order:
/// at each order k+1 the linear system L a_{k+1} = -c_k is solved by least
/// squares, where L is the relator cocycle map and c_k collects the lower
/// order cross terms. A residual above 1e-7 raises ObstructionNonzero(k+1).
struct DeformSeries {
    int order = 0;
    std::vector<Cochain1> a;        // a[0] = a_1, ..., a[K-1] = a_K
    std::vector<double> residuals;  // relator residual per order 1..K
};

DeformSeries solve_formal(const KnotPresentation& p, const Representation& rho,
                          const Cochain1& a1, int order);

struct NewtonStep {
    double t = 0.0;
    Representation rep; // float backend, provenance Deformed
    std::vector<std::complex<double>> probe; // traces on the fixed probe set
    int iterations = 0;
    double residual = 0.0;
};

/// Newton continuation from exp(t a1) alpha with gauge fixing (corrections
/// orthogonal to B^1 and to the a1 direction, determinant renormalized).
/// Convergence means relator residual <= 1e-10; 50 iterations max
/// (NewtonDiverged otherwise).
std::vector<NewtonStep> newton_deform(const KnotPresentation& p, const Representation& rho,
                                      const Cochain1& a1, const std::vector<double>& steps);

/// Fixed probe words for character comparison (20 seeded words plus the
/// generators and the peripheral pair).
std::vector<Word> probe_words(const KnotPresentation& p);

std::vector<std::complex<double>> probe_character(const KnotPresentation& p,
                                                  const Representation& rep_float);

/// True iff rep is irreducible and its probe character differs from every
/// irreducible metabelian class by more than 1e-4 in sup norm.
bool certify_nonmetabelian(const Representation& rep, const KnotPresentation& p, long n);

} // namespace metarep
