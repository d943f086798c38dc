#include "metarep/alexander.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "metarep/errors.hpp"

namespace metarep {

namespace {

LaurentPoly abelianize(const FreeGroupRingElt& e, const std::vector<long>& deg) {
    LaurentPoly out;
    for (const auto& [w, c] : e.terms) {
        long d = w.degree(deg);
        out.set(d, out.coeff(d) + c);
    }
    return out;
}

// Bareiss fraction-free determinant over Z[t^{+-1}]
LaurentPoly bareiss_det_poly(LMat a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("bareiss_det_poly shape");
    if (n == 0) return LaurentPoly::constant(1);
    LaurentPoly prev = LaurentPoly::constant(1);
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = k + 1; i < n; ++i)
                if (!a(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return LaurentPoly();
            for (Eigen::Index j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)).exact_div(prev);
        prev = a(k, k);
    }
    LaurentPoly det = a(n - 1, n - 1);
    return sign > 0 ? det : -det;
}

} // namespace

LMat alexander_matrix(const KnotPresentation& p) {
    const int g = p.num_generators;
    const int r = static_cast<int>(p.relators.size());
    LMat m(r, g);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < g; ++k)
            m(j, k) = abelianize(fox_derivative(p.relators[static_cast<size_t>(j)], k),
                                 p.abelian_degrees);
    return m;
}

LaurentPoly alexander_poly(const KnotPresentation& p) {
    const int g = p.num_generators;
    LMat m = alexander_matrix(p);
    if (m.rows() + 1 != g)
        throw NormalizationFailure("alexander_poly needs a deficiency-1 presentation");
    // delete the column of the meridian generator when the meridian is a
    // plain generator (Wirtinger); otherwise any generator of nonzero degree
    int k0 = -1;
    const auto& ms = p.meridian.syllables();
    if (ms.size() == 1 && ms[0].exp == 1) k0 = ms[0].gen;
    if (k0 < 0)
        for (int k = 0; k < g; ++k)
            if (p.abelian_degrees[static_cast<size_t>(k)] != 0) {
                k0 = k;
                break;
            }
    LMat sub(m.rows(), g - 1);
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (int k = 0, c = 0; k < g; ++k)
            if (k != k0) sub(j, c++) = m(j, k);
    LaurentPoly det = bareiss_det_poly(std::move(sub));
    if (det.is_zero()) throw NormalizationFailure("vanishing Alexander determinant");
    const long eps = p.abelian_degrees[static_cast<size_t>(k0)];
    // det * (t - 1) = unit * Delta * (t^eps - 1)
    LaurentPoly tm1 = LaurentPoly::t_power(1) - LaurentPoly::constant(1);
    LaurentPoly te1 = LaurentPoly::t_power(eps) - LaurentPoly::constant(1);
    LaurentPoly delta = (det * tm1).exact_div(te1).normalized();
    mpz_class at1 = delta.eval_int(1);
    if (at1 != 1 && at1 != -1)
        throw NormalizationFailure("Delta(1) = " + at1.get_str() + ", presentation is not valid");
    return delta;
}

LaurentPoly alexander_minors_gcd(const KnotPresentation& p) {
    const int g = p.num_generators;
    LMat m = alexander_matrix(p);
    LaurentPoly acc;
    for (int k0 = 0; k0 < g; ++k0) {
        LMat sub(m.rows(), g - 1);
        for (Eigen::Index j = 0; j < m.rows(); ++j)
            for (int k = 0, c = 0; k < g; ++k)
                if (k != k0) sub(j, c++) = m(j, k);
        acc = LaurentPoly::gcd(acc, bareiss_det_poly(std::move(sub)));
    }
    return acc.normalized();
}

// ---------------------------------------------------------------------------

mpz_class FinAbT::torsion_order() const {
    mpz_class out = 1;
    for (const auto& d : invariant_factors) out *= d;
    return out;
}

ZVec FinAbT::reduce(ZVec h) const {
    for (size_t i = 0; i < invariant_factors.size(); ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), h(static_cast<Eigen::Index>(i)).get_mpz_t(),
                   invariant_factors[i].get_mpz_t());
        h(static_cast<Eigen::Index>(i)) = r;
    }
    return h;
}

ZVec FinAbT::t_apply(const ZVec& h) const {
    return reduce(zmat_mul(t_matrix, h));
}

ZVec FinAbT::chain_of_word(const Word& w) const {
    const int g = num_generators;
    ZVec chain = zmat_zero(static_cast<Eigen::Index>(g) * n, 1);
    Word prefix;
    for (const auto& [gen, sign] : w.letters()) {
        Word letter = Word::generator(gen, sign);
        // fox derivative contribution: prefix (sign>0) or -prefix*letter (sign<0)
        const Word& u = (sign > 0) ? prefix : (prefix * letter);
        long d = u.degree(abelian_degrees);
        long slot = ((d % n) + n) % n;
        chain(static_cast<Eigen::Index>(gen) * n + slot) += (sign > 0) ? 1 : -1;
        prefix = prefix * letter;
    }
    return chain;
}

ZVec FinAbT::class_of_chain(const ZVec& chain) const {
    ZMat k_coords;
    if (!solve_integer(kernel_basis, chain, k_coords))
        throw std::logic_error("chain is not a cycle of the cover complex");
    ZVec w = zmat_mul(snf_u, k_coords);
    ZVec out(static_cast<Eigen::Index>(kept_rows.size()));
    for (size_t i = 0; i < kept_rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = w(kept_rows[i]);
    return reduce(std::move(out));
}

ZVec FinAbT::class_of_word(const Word& w) const {
    long d = w.degree(abelian_degrees);
    if (((d % n) + n) % n != 0)
        throw std::logic_error("word degree not divisible by n");
    return class_of_chain(chain_of_word(w));
}

FinAbT branched_homology(const KnotPresentation& p, long n) {
    if (n < 1) throw std::domain_error("branched_homology needs n >= 1");
    const int g = p.num_generators;
    const int r = static_cast<int>(p.relators.size());
    const Eigen::Index gn = static_cast<Eigen::Index>(g) * n;

    // companion of t^n - 1 acting on Z[Z/n]: C e_j = e_{j+1 mod n}
    auto comp_pow = [n](long e) {
        ZMat c = zmat_zero(n, n);
        for (long j = 0; j < n; ++j) c(((j + e) % n + n) % n, j) = 1;
        return c;
    };

    // d1 : C1 -> C0, block k = C^{eps_k} - I
    ZMat d1 = zmat_zero(n, gn);
    for (int k = 0; k < g; ++k) {
        ZMat blk = comp_pow(p.abelian_degrees[static_cast<size_t>(k)]);
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < n; ++j) d1(i, static_cast<Eigen::Index>(k) * n + j) += blk(i, j);
            d1(i, static_cast<Eigen::Index>(k) * n + i) -= 1;
        }
    }

    FinAbT h;
    h.n = n;
    h.num_generators = g;
    h.abelian_degrees = p.abelian_degrees;
    h.kernel_basis = integer_kernel(d1);
    const Eigen::Index m0 = h.kernel_basis.cols();

    // d2 : C2 -> C1. Each relator lifts to n cells (its deck translates),
    // and the branched filling kills the lifted meridian cycle and its
    // translates.
    auto t_shift = [g, n](const ZVec& v) {
        ZVec out = zmat_zero(static_cast<Eigen::Index>(g) * n, 1);
        for (int k = 0; k < g; ++k)
            for (long i = 0; i < n; ++i)
                out(static_cast<Eigen::Index>(k) * n + (i + 1) % n) =
                    v(static_cast<Eigen::Index>(k) * n + i);
        return out;
    };
    ZMat rels = zmat_zero(gn, (r + 1) * n);
    {
        Eigen::Index col = 0;
        for (int j = 0; j <= r; ++j) {
            ZVec ch = j < r ? h.chain_of_word(p.relators[static_cast<size_t>(j)])
                            : h.chain_of_word(p.meridian.pow(n));
            for (long s = 0; s < n; ++s) {
                for (Eigen::Index i = 0; i < gn; ++i) rels(i, col) = ch(i);
                ch = t_shift(ch);
                ++col;
            }
        }
    }
    ZMat x;
    if (!solve_integer(h.kernel_basis, rels, x))
        throw std::logic_error("relator chains not in kernel of d1");

    SmithForm s = smith_form(x);
    h.snf_u = s.u;
    h.snf_u_inv = s.u_inv;
    const long rank = s.rank();
    for (Eigen::Index i = 0; i < m0; ++i) {
        bool torsion = i < rank && s.d(i, i) > 1;
        bool free = i >= rank;
        if (torsion) {
            h.kept_rows.push_back(i);
            h.invariant_factors.push_back(s.d(i, i));
        } else if (free) {
            h.kept_rows.push_back(i);
        }
    }
    h.free_rank = m0 - rank;

    // t acts by h -> mu^{-1} h mu, which on chains is the inverse companion
    // shift blockwise: slot i -> i - 1
    ZMat bc_k = zmat_zero(gn, m0);
    for (Eigen::Index j = 0; j < m0; ++j)
        for (int k = 0; k < g; ++k)
            for (long i = 0; i < n; ++i)
                bc_k(static_cast<Eigen::Index>(k) * n + (i + n - 1) % n, j) =
                    h.kernel_basis(static_cast<Eigen::Index>(k) * n + i, j);
    ZMat t_k;
    if (!solve_integer(h.kernel_basis, bc_k, t_k))
        throw std::logic_error("t-action does not preserve the kernel");
    ZMat t_u = zmat_mul(zmat_mul(s.u, t_k), s.u_inv);
    const Eigen::Index kd = static_cast<Eigen::Index>(h.kept_rows.size());
    h.t_matrix = zmat_zero(kd, kd);
    for (Eigen::Index i = 0; i < kd; ++i)
        for (Eigen::Index j = 0; j < kd; ++j) {
            mpz_class v = t_u(h.kept_rows[static_cast<size_t>(i)], h.kept_rows[static_cast<size_t>(j)]);
            if (i < static_cast<Eigen::Index>(h.invariant_factors.size())) {
                mpz_class m;
                mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(),
                           h.invariant_factors[static_cast<size_t>(i)].get_mpz_t());
                v = m;
            }
            h.t_matrix(i, j) = v;
        }
    return h;
}

std::optional<mpz_class> torsion_order_resultant(const LaurentPoly& delta, long n) {
    if (delta.is_zero()) throw std::domain_error("zero Alexander polynomial");
    mpz_class r = resultant_with_cyclotomic_units(delta, n);
    if (r == 0) return std::nullopt;
    return r;
}

double mahler(const LaurentPoly& delta) {
    if (delta.is_zero()) throw std::domain_error("Mahler measure of zero");
    LaurentPoly q = delta.normalized();
    const long deg = q.max_degree();
    if (deg == 0) return std::abs(q.coeff(0).get_d());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    const double lead = q.coeff(deg).get_d();
    for (long i = 0; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), deg - 1) = -q.coeff(i).get_d() / lead;
        if (i + 1 < deg) companion(static_cast<Eigen::Index>(i) + 1, static_cast<Eigen::Index>(i)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    double out = std::abs(lead);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        // a few Newton steps; residuals here are far below the 1e-12 target
        for (int it = 0; it < 3; ++it) {
            std::complex<double> f = 0.0, df = 0.0;
            for (const auto& [d, c] : q.coeffs()) {
                double cd = c.get_d();
                f += cd * std::pow(z, static_cast<double>(d));
                if (d != 0) df += cd * static_cast<double>(d) * std::pow(z, static_cast<double>(d - 1));
            }
            if (std::abs(df) < 1e-300) break;
            z -= f / df;
        }
        out *= std::max(1.0, std::abs(z));
    }
    return out;
}

double log_mpz(const mpz_class& x) {
    if (x <= 0) throw std::domain_error("log of nonpositive integer");
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

std::optional<double> sw_ratio(const LaurentPoly& delta, long n) {
    auto tor = torsion_order_resultant(delta, n);
    if (!tor) return std::nullopt;
    return log_mpz(*tor) / static_cast<double>(n);
}

std::optional<double> sw_ratio(const KnotPresentation& p, long n) {
    return sw_ratio(alexander_poly(p), n);
}

} // namespace metarep
