#include "metarep/zmat.hpp"

#include <stdexcept>

namespace metarep {

ZMat zmat_zero(Eigen::Index r, Eigen::Index c) {
    ZMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = 0;
    return m;
}

ZMat zmat_identity(Eigen::Index n) {
    ZMat m = zmat_zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("zmat_mul shape");
    ZMat c = zmat_zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                if (b(k, j) == 0) continue;
                c(i, j) += a(i, k) * b(k, j);
            }
        }
    return c;
}

long SmithForm::rank() const {
    long r = 0;
    for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) != 0) ++r;
    return r;
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
    std::vector<mpz_class> out;
    for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) > 1) out.push_back(d(i, i));
    return out;
}

namespace {

struct SmithOps {
    ZMat& d;
    ZMat& u;
    ZMat& ui;
    ZMat& v;
    ZMat& vi;

    // row j += f * row i  on d and u; inverse transform gets the opposite op.
    void row_add(Eigen::Index j, Eigen::Index i, const mpz_class& f) {
        for (Eigen::Index k = 0; k < d.cols(); ++k) d(j, k) += f * d(i, k);
        for (Eigen::Index k = 0; k < u.cols(); ++k) u(j, k) += f * u(i, k);
        for (Eigen::Index k = 0; k < ui.rows(); ++k) ui(k, i) -= f * ui(k, j);
    }
    void col_add(Eigen::Index j, Eigen::Index i, const mpz_class& f) {
        for (Eigen::Index k = 0; k < d.rows(); ++k) d(k, j) += f * d(k, i);
        for (Eigen::Index k = 0; k < v.rows(); ++k) v(k, j) += f * v(k, i);
        for (Eigen::Index k = 0; k < vi.cols(); ++k) vi(i, k) -= f * vi(j, k);
    }
    void row_swap(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        d.row(i).swap(d.row(j));
        u.row(i).swap(u.row(j));
        ui.col(i).swap(ui.col(j));
    }
    void col_swap(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        d.col(i).swap(d.col(j));
        v.col(i).swap(v.col(j));
        vi.row(i).swap(vi.row(j));
    }
    void row_negate(Eigen::Index i) {
        for (Eigen::Index k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
        for (Eigen::Index k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (Eigen::Index k = 0; k < ui.rows(); ++k) ui(k, i) = -ui(k, i);
    }
};

} // namespace

SmithForm smith_form(const ZMat& a) {
    SmithForm s;
    const Eigen::Index m = a.rows(), n = a.cols();
    s.d = a;
    s.u = zmat_identity(m);
    s.u_inv = zmat_identity(m);
    s.v = zmat_identity(n);
    s.v_inv = zmat_identity(n);
    SmithOps ops{s.d, s.u, s.u_inv, s.v, s.v_inv};
    ZMat& d = s.d;

    const Eigen::Index nmin = std::min(m, n);
    for (Eigen::Index t = 0; t < nmin; ++t) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block
            Eigen::Index pi = -1, pj = -1;
            mpz_class best;
            for (Eigen::Index i = t; i < m; ++i)
                for (Eigen::Index j = t; j < n; ++j) {
                    if (d(i, j) == 0) continue;
                    mpz_class v = abs(d(i, j));
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { // trailing block is zero
                pj = -1;
                break;
            }
            ops.row_swap(t, pi);
            ops.col_swap(t, pj);
            bool clean = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                ops.row_add(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                ops.col_add(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // pivot now lone; make sure it divides the rest of the block
            bool divides = true;
            for (Eigen::Index i = t + 1; i < m && divides; ++i)
                for (Eigen::Index j = t + 1; j < n && divides; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        ops.row_add(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) ops.row_negate(t);
        if (d(t, t) == 0) break; // all remaining entries are zero
    }
    return s;
}

ZMat integer_kernel(const ZMat& a) {
    SmithForm s = smith_form(a);
    const long r = s.rank();
    const Eigen::Index n = a.cols();
    ZMat k = zmat_zero(n, n - r);
    for (Eigen::Index j = r; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) k(i, j - r) = s.v(i, j);
    return k;
}

bool solve_integer(const ZMat& a, const ZMat& b, ZMat& x) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_integer shape");
    SmithForm s = smith_form(a);
    const long r = s.rank();
    ZMat ub = zmat_mul(s.u, b);
    ZMat y = zmat_zero(a.cols(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i < r) {
                mpz_class rem, q;
                mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), ub(i, j).get_mpz_t(),
                            s.d(i, i).get_mpz_t());
                if (rem != 0) return false;
                if (i < a.cols()) y(i, j) = q;
            } else if (ub(i, j) != 0) {
                return false;
            }
        }
    }
    x = zmat_mul(s.v, y);
    return true;
}

mpz_class bareiss_det(ZMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("bareiss_det shape");
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            a.row(k).swap(a.row(piv));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) {
                mpz_class num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

long integer_rank(const ZMat& a) { return smith_form(a).rank(); }

} // namespace metarep
