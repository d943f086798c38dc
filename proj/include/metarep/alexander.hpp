#pragma once

#include <optional>
#include <vector>

#include "metarep/fox.hpp"
#include "metarep/laurent.hpp"
#include "metarep/presentation.hpp"
#include "metarep/zmat.hpp"

namespace metarep {

using LMat = Eigen::Matrix<LaurentPoly, Eigen::Dynamic, Eigen::Dynamic>;

/// Abelianized Fox Jacobian: entry (j, k) = d(r_j)/d(x_k) with x_i -> t^{eps_i}.
LMat alexander_matrix(const KnotPresentation& p);

/// Alexander polynomial, normalized to lowest degree 0 with positive leading
/// coefficient. Throws NormalizationFailure unless |Delta(1)| = 1.
LaurentPoly alexander_poly(const KnotPresentation& p);

/// Gcd of all maximal minors of the Alexander matrix (first elementary ideal);
/// agrees with alexander_poly up to a unit for Wirtinger presentations.
LaurentPoly alexander_minors_gcd(const KnotPresentation& p);

/// H_1(L_n) = H/(t^n - 1) as a finitely generated abelian group with t-action,
/// in Smith normal form coordinates: torsion coordinates first (moduli = the
/// invariant factors, ascending divisibility), then free coordinates.
struct FinAbT {
    long n = 1;
    long free_rank = 0;
    std::vector<mpz_class> invariant_factors; // each >= 2, d1 | d2 | ...
    /// t-action on (torsion..., free...) coordinates, h -> t_matrix * h,
    /// torsion rows reduced mod their invariant factor.
    ZMat t_matrix;

    mpz_class torsion_order() const;
    long dim() const { return static_cast<long>(invariant_factors.size()) + free_rank; }
    bool is_finite() const { return free_rank == 0; }

    /// Coordinates of a group element given by a word of degree = 0 mod n
    /// (an element of the commutator subgroup pushed into H/(t^n-1)).
    ZVec class_of_word(const Word& w) const;
    /// Same for a 1-chain of the n-fold cover complex (length g*n).
    ZVec class_of_chain(const ZVec& chain) const;
    /// Chain vector of a word in the n-fold cover complex.
    ZVec chain_of_word(const Word& w) const;
    /// Apply t_matrix with torsion reduction.
    ZVec t_apply(const ZVec& h) const;
    ZVec reduce(ZVec h) const;

    // transform closure (kernel basis of d1, SNF row transform of relations)
    ZMat kernel_basis;
    ZMat snf_u, snf_u_inv;
    std::vector<Eigen::Index> kept_rows;
    std::vector<long> abelian_degrees; // copied from the presentation
    int num_generators = 0;
};

/// Compute H/(t^n - 1) by substituting the n x n companion matrix of t^n - 1
/// into the chain complex of the presentation and reducing over Z:
/// H_1(L_n) = ker d1 / (im d2 + <lifted meridian cycle>).
FinAbT branched_homology(const KnotPresentation& p, long n);

/// |Tor H_1(L_n)| = |Res(Delta, t^n - 1)|; nullopt = infinite (b_1(L_n) > 0).
std::optional<mpz_class> torsion_order_resultant(const LaurentPoly& delta, long n);

/// Mahler measure |lead| * prod max(1, |root|), companion-matrix eigenvalues
/// with Newton polishing.
double mahler(const LaurentPoly& delta);

/// ln |Tor H_1(L_n)| / n; nullopt = infinite.
std::optional<double> sw_ratio(const KnotPresentation& p, long n);
std::optional<double> sw_ratio(const LaurentPoly& delta, long n);

/// log of a positive big integer.
double log_mpz(const mpz_class& x);

} // namespace metarep
