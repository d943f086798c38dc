#pragma once

#include <optional>

#include "metarep/representation.hpp"

namespace metarep {

/// Twisted cochain complex of the presentation 2-complex:
///   C^0 = V -> C^1 = V^g -> C^2 = V^r
/// d0 blocks rho(x_i) - I, d1 blocks Phi(dr_j/dx_i) (Fox Jacobian under rho).
/// The complex condition d1 d0 = 0 is the Fox fundamental identity and is
/// checked at assembly.
struct TwistedComplexExact {
    long d = 0, g = 0, r = 0;
    CycMat d0, d1;
};
struct TwistedComplexFloat {
    long d = 0, g = 0, r = 0;
    Eigen::MatrixXcd d0, d1;
};

TwistedComplexExact twisted_complex_exact(const KnotPresentation& p, const Representation& rho);
TwistedComplexFloat twisted_complex_float(const KnotPresentation& p, const Representation& rho);

struct CohomologyReport {
    long d = 0;      // coefficient dimension
    long h0 = 0;     // dim of the joint fixed space
    long z1 = 0;     // dim Z^1
    long b1_dim = 0; // dim B^1 = d - h0
    long h1 = 0;     // z1 - b1_dim
    long rank_d0 = 0, rank_d1 = 0;
};

/// h0 = d - rank d0, z1 = g d - rank d1, h1 = z1 - (d - h0).
/// Exact backend: elimination over Q(zeta_N). Float backend: singular-value
/// rank with relative threshold 1e-8; a singular value inside
/// [tol/10, tol*10] raises ToleranceAmbiguous.
CohomologyReport cohomology_dims(const KnotPresentation& p, const Representation& rho);

/// Float matrix rank with the ambiguity guard above.
long rank_float(const Eigen::MatrixXcd& m, double rel_tol = 1e-8);

/// Reproducible word sampler (seed 0x5EED, lengths 1..12 uniform).
std::vector<Word> sample_words(int count, int num_generators, unsigned long seed = 0x5EED);

// ---------------------------------------------------------------------------

/// Check of the adjoint decomposition
///   ad alpha (+) theta_1 = alpha_n (+) (+)_{i=1}^{n-1} beta_{(n,chi_i)}
/// with chi_i(v) = chi(v)^{-1} chi(t^i v): exact trace identity on all
/// generators and `samples` seeded words, plus the h1 bookkeeping
///   h1(ad alpha) = b1(L_n) + sum_i h1(beta_{(n,chi_i)}).
/// Throws DecompositionMismatch if the trace identity fails.
struct DecompositionReport {
    long n = 0;
    long words_checked = 0;
    long h1_ad = 0;
    long b1_ln = 0;
    long h1_alpha_n = 0;
    std::vector<long> h1_beta;
    bool h1_additive = false;
    bool twist_orders_ok = false; // chi_i of order n when chi has order n
};

DecompositionReport verify_decomposition(const KnotPresentation& p, long n,
                                         const Character& chi, int samples = 200);

// ---------------------------------------------------------------------------

/// Laurent polynomial over Q(zeta_N): map degree -> coefficient.
struct CycPoly {
    long field = 1;
    std::map<long, CycNum> coeffs;

    void set(long deg, const CycNum& c);
    bool is_zero() const { return coeffs.empty(); }
    CycPoly operator*(const CycPoly& r) const;
    /// Equal up to +- t^k.
    bool equals_up_to_unit_pm(const CycPoly& r) const;
    /// Exact division (throws on inexact).
    CycPoly exact_div(const CycPoly& r) const;
    CycNum eval(const CycNum& t0) const;
    std::string str() const;

    static CycPoly from_laurent(const LaurentPoly& p, long field);
    /// p(-t) embedded.
    static CycPoly from_laurent_neg(const LaurentPoly& p, long field);
};

/// Wada pair of the twisted Alexander invariant: numerator = det of the Fox
/// Jacobian under Phi(x) = rho(x) t^{eps(x)} with one generator column
/// removed, denominator = det(rho(x_k) t^{eps_k} - I) for the same k. The
/// first generator whose denominator is nonzero is used; if none exists the
/// input is degenerate (SingularDenominator).
struct TwistedAlexander {
    CycPoly numerator;
    CycPoly denominator;
    int removed_generator = 0;
};

TwistedAlexander twisted_alexander(const KnotPresentation& p, const Representation& rho);

// ---------------------------------------------------------------------------

struct CriterionVerdict {
    long h1 = 0;
    bool criterion_met = false;
    long b1_ln = 0;
};

/// criterion_met = (h1(ad alpha_{(n,chi)}) == n-1), exact rank; asserts the
/// implication criterion_met => b1(L_n) = 0.
CriterionVerdict criterion_check(const KnotPresentation& p, long n, const Character& chi);

struct CoverBettiReport {
    mpz_class k;          // |H| = |Tor H_1(L_n)|
    long b1_tilde = 0;    // b_1 of the metabelian cover N_phi
    bool equality = false;        // b1_tilde == k
    mpz_class sigma_lower_bound;  // Mayer-Vietoris: b_1(Sigma_phi) >= b1_tilde - k
};

/// b_1(N_phi) = sum over all |H| characters sigma of h1(beta_{(n,sigma)});
/// equality b1_tilde = |H| certifies h1(ad alpha) = n-1.
/// Throws InfiniteFamily if b_1(L_n) > 0, Intractable if |H| > cap.
CoverBettiReport cover_betti(const KnotPresentation& p, long n, const Character& chi,
                             long cap = 10000);

} // namespace metarep
