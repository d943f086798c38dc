#pragma once

#include <memory>
#include <optional>

#include "metarep/character.hpp"
#include "metarep/cyclotomic.hpp"
#include "metarep/presentation.hpp"

namespace metarep {

/// The identification pi/pi^(2) = Z x| H/(t^n-1): per generator the pair
/// (eps, h) with eps the abelianization degree and h the class of
/// mu^{-eps} x. Relators are checked to evaluate to (0, 0) exactly.
struct StructureMap {
    std::shared_ptr<const FinAbT> group;
    std::vector<long> eps;
    std::vector<ZVec> h;

    /// Evaluate a word under g -> (eps(g), mu^{-eps(g)} g).
    std::pair<long, ZVec> eval(const Word& w) const;
};

StructureMap structure_map(const KnotPresentation& p, long n);
StructureMap structure_map(const KnotPresentation& p, std::shared_ptr<const FinAbT> group);

enum class RepBackend { ExactCyclotomic, ComplexFloat };
enum class RepKind { Metabelian, Deformed, Manual };

/// Images of the presentation generators as dim x dim matrices, exact
/// cyclotomic or complex floating point.
struct Representation {
    int dim = 0;
    RepBackend backend = RepBackend::ExactCyclotomic;
    RepKind provenance = RepKind::Manual;
    long field = 1; // N of Q(zeta_N), exact backend

    std::vector<CycMat> exact;     // per generator, with cached inverses
    std::vector<CycMat> exact_inv;
    std::vector<Eigen::MatrixXcd> flt;
    std::vector<Eigen::MatrixXcd> flt_inv;

    // metabelian provenance
    long rank_n = 0;
    std::optional<Character> chi;
    long z_exponent = 0; // z = zeta_{2n}^{z_exponent}

    int num_generators() const {
        return static_cast<int>(backend == RepBackend::ExactCyclotomic ? exact.size()
                                                                       : flt.size());
    }
    CycMat eval_exact(const Word& w) const;
    Eigen::MatrixXcd eval_float(const Word& w) const;
    CycNum trace_exact(const Word& w) const;
    std::complex<double> trace_float(const Word& w) const;

    /// Float mirror of an exact representation.
    Representation to_float() const;
};

enum class ZChoice { Canonical, Explicit };

/// The metabelian representation alpha_{(n,chi,z)}: generator x maps to
/// P_z^{eps(x)} D(h(x)) with P_z the z-scaled cyclic permutation and
/// D(h) = diag(chi(h), chi(th), ..., chi(t^{n-1} h)). Canonical z is
/// zeta_{2n}^{n+1}; Explicit k uses z = zeta_{2n}^{n+1+2k}. All entries are
/// exact in Q(zeta_N), N = lcm(2n, exponent of the torsion group), and every
/// relator is verified exactly (RelatorViolation otherwise).
Representation build_rep(const KnotPresentation& p, long n, const Character& chi,
                         ZChoice z_choice = ZChoice::Canonical, long z_k = 0);

/// beta_{(n,sigma)} = alpha_{(n,sigma,z=1)} as a GL(n,C) representation;
/// for the trivial sigma this is the regular representation of Z/n.
Representation build_beta(const KnotPresentation& p, long n, const Character& sigma);

/// The Z/n regular representation pi -> Aut(C[Z/n]) through the
/// abelianization.
Representation regular_rep(const KnotPresentation& p, long n);

/// theta_1, the trivial 1-dimensional representation.
Representation trivial_rep(const KnotPresentation& p);

/// Adjoint action on sl(n): dimension n^2 - 1, basis E_ij (i != j) followed
/// by H_i = E_ii - E_{i+1,i+1}.
Representation adjoint_rep(const Representation& rep);

/// sl(n) coordinate maps for the adjoint basis above.
CycMat sl_basis_element(long n_rank, long index, long field);
long sl_dim(long n_rank);

/// Commutant dimension = dim {M : M rho(x) = rho(x) M for all x};
/// irreducible iff 1 (Schur). Metabelian provenance is cross-checked
/// against order(chi) = n.
long commutant_dimension(const Representation& rep);
bool is_irreducible(const Representation& rep);

/// tr rho(w) for the exact backend.
CycNum character_of(const Representation& rep, const Word& w);

/// alpha(mu) must have n distinct eigenvalues (regularity); exact check via
/// squarefreeness of the characteristic polynomial.
bool has_distinct_eigenvalues_exact(const CycMat& a);

/// det(a) == 1 exactly.
bool is_special_linear(const CycMat& a);
/// a * a^dagger == I exactly.
bool is_unitary_exact(const CycMat& a);

} // namespace metarep
