#pragma once

#include <gmpxx.h>

#include <map>

#include "metarep/word.hpp"

namespace metarep {

/// Element of the integral free-group ring Z[F], carrier for Fox derivatives
/// before specialization into a representation or the abelianization.
struct FreeGroupRingElt {
    std::map<Word, mpz_class> terms; // no zero coefficients stored

    void add(const Word& w, const mpz_class& c);
    FreeGroupRingElt operator+(const FreeGroupRingElt& rhs) const;
    FreeGroupRingElt operator-(const FreeGroupRingElt& rhs) const;
    /// Left-multiply every term by w.
    FreeGroupRingElt translated(const Word& w) const;
    FreeGroupRingElt operator*(const FreeGroupRingElt& rhs) const;

    bool operator==(const FreeGroupRingElt& rhs) const = default;
    bool is_zero() const { return terms.empty(); }

    static FreeGroupRingElt one();
    static FreeGroupRingElt of(const Word& w, mpz_class c = 1);
};

/// Free Fox derivative d(w)/d(x_k):
///   d(uv) = du + u*dv,  d(x_k) = 1,  d(x_k^{-1}) = -x_k^{-1},  d(x_j) = 0.
FreeGroupRingElt fox_derivative(const Word& w, int k);

} // namespace metarep
