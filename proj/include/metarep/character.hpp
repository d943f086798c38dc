#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "metarep/alexander.hpp"
#include "metarep/cyclotomic.hpp"

namespace metarep {

/// Character chi: Tor H_1(L_n) -> C^*, stored as one residue per invariant
/// factor; chi(e_i) = zeta_{d_i}^{a_i}. The order of chi is the minimal
/// l >= 1 with t^l chi = chi; it divides n.
class Character {
public:
    Character(std::shared_ptr<const FinAbT> ambient, std::vector<mpz_class> exponents);

    const FinAbT& ambient() const { return *ambient_; }
    std::shared_ptr<const FinAbT> ambient_ptr() const { return ambient_; }
    const std::vector<mpz_class>& exponents() const { return exponents_; }
    long order() const { return order_; }
    bool is_trivial() const;

    /// chi composed with the t-action.
    Character t_shifted() const;
    /// chi(v)^{-1} chi(t^i v), the i-th twist appearing in the adjoint
    /// decomposition.
    Character adjoint_twist(long i) const;

    /// Value on a group element in SNF coordinates, as a root of unity in
    /// Q(zeta_field); requires exponent(group) | field.
    CycNum eval(const ZVec& h, long field) const;

    /// Exponent of chi(h) as a residue k mod m with chi(h) = zeta_m^k,
    /// m = exponent of the group.
    mpz_class eval_exponent(const ZVec& h) const;

    bool operator==(const Character& r) const { return exponents_ == r.exponents_; }
    bool operator<(const Character& r) const { return exponents_ < r.exponents_; }

private:
    std::shared_ptr<const FinAbT> ambient_;
    std::vector<mpz_class> exponents_;
    long order_;
    long compute_order_() const;
};

/// All characters of the torsion group, lexicographic in the exponent
/// vector, each with its t-orbit size (= order). Throws InfiniteFamily if
/// free_rank > 0.
void enumerate_characters(std::shared_ptr<const FinAbT> hn,
                          const std::function<void(const Character&, long)>& yield);
std::vector<std::pair<Character, long>> enumerate_characters(
    std::shared_ptr<const FinAbT> hn);

/// Lexicographically smallest representative of each t-orbit of characters
/// of order exactly `order`.
std::vector<Character> orbit_representatives(std::shared_ptr<const FinAbT> hn, long order);

/// chi2 = t^k chi1 for some k (conjugate alpha_{(n,chi)} classes).
bool conjugate_classes_equal(const Character& chi1, const Character& chi2);

/// Number of conjugacy classes of irreducible metabelian SL(n,C)
/// representations by Moebius inversion over exact resultants:
///   #order-n characters = sum_{d | n} mu(n/d) |Tor H_1(L_d)|, divided by n.
/// nullopt = infinite family (b_1(L_n) > 0).
std::optional<mpz_class> count_classes(const KnotPresentation& p, long n);
std::optional<mpz_class> count_classes(const LaurentPoly& delta, long n);

/// Lower bound r_n >= (1/n)(|Tor H_1(L_n)| - sum_i |Tor H_1(L_{n/p_i})|),
/// rounded up and clamped at 0; n = p_1 ... p_k with multiplicity.
/// Throws InfiniteFamily if a needed cover has b_1 > 0.
mpz_class rn_lower_bound(const KnotPresentation& p, long n);
mpz_class rn_lower_bound(const LaurentPoly& delta, long n);

} // namespace metarep
