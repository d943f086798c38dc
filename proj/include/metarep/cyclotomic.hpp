#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "metarep/zmat.hpp"

namespace metarep {

/// Element of the cyclotomic field Q(zeta_N), reduced modulo the N-th
/// cyclotomic polynomial. Coefficient vector of length phi(N) over a common
/// positive denominator, kept canonical (gcd(content, den) = 1).
class CycNum {
public:
    CycNum(); // zero of Q = Q(zeta_1)
    explicit CycNum(long n_field);
    CycNum(long n_field, const mpq_class& rational);

    static CycNum from_int(long n_field, long v) { return CycNum(n_field, mpq_class(v)); }
    /// zeta_N^k
    static CycNum root_of_unity(long n_field, long k);

    long field_order() const { return n_; }
    long degree() const { return static_cast<long>(num_.size()); }
    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    mpq_class rational_value() const; // requires is_rational

    CycNum operator+(const CycNum& r) const;
    CycNum operator-(const CycNum& r) const;
    CycNum operator*(const CycNum& r) const;
    CycNum operator-() const;
    CycNum inverse() const;
    CycNum operator/(const CycNum& r) const { return *this * r.inverse(); }
    CycNum& operator+=(const CycNum& r) { return *this = *this + r; }
    CycNum& operator-=(const CycNum& r) { return *this = *this - r; }
    CycNum& operator*=(const CycNum& r) { return *this = *this * r; }
    bool operator==(const CycNum& r) const;
    bool operator!=(const CycNum& r) const { return !(*this == r); }

    /// Complex conjugate (zeta -> zeta^{N-1}).
    CycNum conj() const;
    std::complex<double> to_complex() const;

    /// Re-embed into Q(zeta_M); requires N | M.
    CycNum promoted(long m_field) const;

    std::string str() const;

    /// Coefficients as strings "p/q" for serialization (length phi(N)).
    std::vector<std::string> coeff_strings() const;
    static CycNum from_coeff_strings(long n_field, const std::vector<std::string>& coeffs);

private:
    long n_ = 1;
    std::vector<mpz_class> num_; // length phi(n_)
    mpz_class den_ = 1;
    void canonicalize_();
    friend CycNum cyc_mul_(const CycNum& a, const CycNum& b);
};

/// phi(N) and the N-th cyclotomic polynomial (cached).
const std::vector<mpz_class>& cyclotomic_polynomial(long n); // monic, ascending coeffs

using CycMat = Eigen::Matrix<CycNum, Eigen::Dynamic, Eigen::Dynamic>;
using CycVec = Eigen::Matrix<CycNum, Eigen::Dynamic, 1>;

CycMat cyc_zero(long n_field, Eigen::Index r, Eigen::Index c);
CycMat cyc_identity(long n_field, Eigen::Index n);
CycMat cyc_mul(const CycMat& a, const CycMat& b);
CycMat cyc_add(const CycMat& a, const CycMat& b);
CycMat cyc_sub(const CycMat& a, const CycMat& b);
CycMat cyc_scale(const CycNum& s, const CycMat& a);
CycNum cyc_trace(const CycMat& a);
CycMat cyc_conj_transpose(const CycMat& a);
CycMat cyc_transpose(const CycMat& a);
bool cyc_is_zero(const CycMat& a);
bool cyc_equal(const CycMat& a, const CycMat& b);
CycMat cyc_pow(const CycMat& a, long k); // k may be negative

/// Exact rank by Gaussian elimination over the field.
long cyc_rank(CycMat a);
/// Exact determinant.
CycNum cyc_det(CycMat a);
/// Inverse; throws on singular input.
CycMat cyc_inverse(CycMat a);
/// Basis of the right kernel as matrix columns.
CycMat cyc_kernel(CycMat a);

Eigen::MatrixXcd cyc_to_complex(const CycMat& a);

} // namespace metarep

namespace Eigen {
template <>
struct NumTraits<metarep::CycNum> : GenericNumTraits<metarep::CycNum> {
    using Real = metarep::CycNum;
    using NonInteger = metarep::CycNum;
    using Nested = metarep::CycNum;
    using Literal = long;
    static inline Real epsilon() { return {}; }
    static inline Real dummy_precision() { return {}; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 200,
        MulCost = 1000
    };
};
} // namespace Eigen
