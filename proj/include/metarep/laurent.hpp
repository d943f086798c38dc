#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>

namespace metarep {

/// Integer Laurent polynomial, sparse map degree -> coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long deg, mpz_class coeff) { set(deg, std::move(coeff)); }
    static LaurentPoly constant(mpz_class c) { return LaurentPoly(0, std::move(c)); }
    static LaurentPoly t_power(long k) { return LaurentPoly(k, 1); }

    const std::map<long, mpz_class>& coeffs() const { return c_; }
    void set(long deg, mpz_class coeff);
    mpz_class coeff(long deg) const;
    bool is_zero() const { return c_.empty(); }
    bool is_unit() const; // +- t^k
    long min_degree() const; // requires nonzero
    long max_degree() const;

    LaurentPoly operator+(const LaurentPoly& r) const;
    LaurentPoly operator-(const LaurentPoly& r) const;
    LaurentPoly operator*(const LaurentPoly& r) const;
    LaurentPoly operator-() const;
    bool operator==(const LaurentPoly& r) const = default;

    LaurentPoly shifted(long k) const; // * t^k
    LaurentPoly reversed() const;      // t -> t^-1
    LaurentPoly substituted_neg() const; // t -> -t

    /// Lowest degree 0 and positive leading coefficient.
    LaurentPoly normalized() const;
    /// Equal up to a unit +-t^k.
    bool equals_up_to_unit(const LaurentPoly& r) const;
    /// Palindromic up to unit: p(t) ~ p(1/t).
    bool is_palindromic_up_to_unit() const;

    mpz_class eval_int(const mpz_class& x) const; // requires min_degree >= 0 or x = +-1
    std::complex<double> eval(std::complex<double> x) const;

    /// Exact division; throws if not divisible.
    LaurentPoly exact_div(const LaurentPoly& d) const;

    mpz_class content() const;
    LaurentPoly primitive_part() const;
    /// Gcd via primitive polynomial remainder sequence, normalized.
    static LaurentPoly gcd(LaurentPoly a, LaurentPoly b);

    /// |Res(p, t^n - 1)| as a Sylvester determinant; 0 iff a root of p is
    /// an n-th root of unity.
    friend mpz_class resultant_with_cyclotomic_units(const LaurentPoly& p, long n);

    std::string str() const;

private:
    std::map<long, mpz_class> c_;
};

mpz_class resultant_with_cyclotomic_units(const LaurentPoly& p, long n);

} // namespace metarep
