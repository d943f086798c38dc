#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

// Eigen scalar traits for GMP integers/rationals. Matrices of these scalars
// are used as containers with elementwise algorithms; Eigen expression
// arithmetic is avoided for them.
namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    using Real = mpz_class;
    using NonInteger = mpq_class;
    using Nested = mpz_class;
    using Literal = long;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 30,
        MulCost = 50
    };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    using Literal = long;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 60,
        MulCost = 100
    };
};

} // namespace Eigen

namespace metarep {

using ZMat = Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic>;
using ZVec = Eigen::Matrix<mpz_class, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<mpq_class, Eigen::Dynamic, Eigen::Dynamic>;

ZMat zmat_zero(Eigen::Index r, Eigen::Index c);
ZMat zmat_identity(Eigen::Index n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);

/// Smith normal form U*A*V = D with U, V unimodular, D diagonal with
/// d_1 | d_2 | ... >= 0. Inverse transforms are accumulated alongside.
struct SmithForm {
    ZMat d;
    ZMat u, u_inv; // u * a * v = d, a = u_inv * d * v_inv
    ZMat v, v_inv;
    long rank() const;
    /// Diagonal entries > 1 (the nontrivial invariant factors).
    std::vector<mpz_class> invariant_factors() const;
};

SmithForm smith_form(const ZMat& a);

/// Basis of the integer kernel {x : A x = 0} as matrix columns.
/// The column lattice is saturated (a direct summand of Z^cols).
ZMat integer_kernel(const ZMat& a);

/// Solve A X = B over the integers. Returns false if no integral solution.
bool solve_integer(const ZMat& a, const ZMat& b, ZMat& x);

/// Exact determinant by Bareiss fraction-free elimination.
mpz_class bareiss_det(ZMat a);

/// Rank over Q of an integer matrix.
long integer_rank(const ZMat& a);

} // namespace metarep
