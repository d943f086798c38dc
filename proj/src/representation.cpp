#include "metarep/representation.hpp"

#include <Eigen/SVD>

#include "metarep/errors.hpp"
#include "metarep/numth.hpp"

namespace metarep {

std::pair<long, ZVec> StructureMap::eval(const Word& w) const {
    // (e1,h1)(e2,h2) = (e1+e2, t^{e2} h1 + h2)
    long e_acc = 0;
    ZVec h_acc = zmat_zero(group->dim(), 1);
    auto t_pow = [&](const ZVec& v, long k) {
        long kk = ((k % group->n) + group->n) % group->n;
        ZVec out = v;
        for (long i = 0; i < kk; ++i) out = group->t_apply(out);
        return out;
    };
    for (const auto& [gen, sign] : w.letters()) {
        long e2 = eps[static_cast<size_t>(gen)];
        ZVec h2 = h[static_cast<size_t>(gen)];
        if (sign < 0) { // (e,h)^{-1} = (-e, -t^{-e} h)
            h2 = t_pow(h2, -e2);
            for (Eigen::Index i = 0; i < h2.size(); ++i) h2(i) = -h2(i);
            e2 = -e2;
        }
        h_acc = t_pow(h_acc, e2);
        for (Eigen::Index i = 0; i < h_acc.size(); ++i) h_acc(i) += h2(i);
        h_acc = group->reduce(std::move(h_acc));
        e_acc += e2;
    }
    return {e_acc, h_acc};
}

StructureMap structure_map(const KnotPresentation& p, long n) {
    return structure_map(p, std::make_shared<FinAbT>(branched_homology(p, n)));
}

StructureMap structure_map(const KnotPresentation& p, std::shared_ptr<const FinAbT> group) {
    if (group->num_generators != p.num_generators)
        throw std::invalid_argument("group was computed from a different presentation");
    StructureMap sm;
    sm.group = std::move(group);
    sm.eps = p.abelian_degrees;
    sm.h.reserve(static_cast<size_t>(p.num_generators));
    for (int k = 0; k < p.num_generators; ++k) {
        Word w = p.meridian.pow(-p.abelian_degrees[static_cast<size_t>(k)]) * Word::generator(k);
        sm.h.push_back(sm.group->class_of_word(w));
    }
    // well-definedness: every relator evaluates to the identity of Z x| H
    for (const auto& r : p.relators) {
        auto [e, h] = sm.eval(r);
        bool zero = e == 0;
        for (Eigen::Index i = 0; i < h.size() && zero; ++i) zero = h(i) == 0;
        if (!zero) throw std::logic_error("structure map fails on a relator");
    }
    // meridian -> (1, 0)
    auto [em, hm] = sm.eval(p.meridian);
    if (em != 1) throw std::logic_error("meridian degree != 1 in structure map");
    for (Eigen::Index i = 0; i < hm.size(); ++i)
        if (hm(i) != 0) throw std::logic_error("meridian has nonzero H-part");
    return sm;
}

// ---------------------------------------------------------------------------

CycMat Representation::eval_exact(const Word& w) const {
    CycMat acc = cyc_identity(field, dim);
    for (const auto& [gen, sign] : w.letters())
        acc = cyc_mul(acc, sign > 0 ? exact[static_cast<size_t>(gen)]
                                    : exact_inv[static_cast<size_t>(gen)]);
    return acc;
}

Eigen::MatrixXcd Representation::eval_float(const Word& w) const {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& [gen, sign] : w.letters())
        acc = acc * (sign > 0 ? flt[static_cast<size_t>(gen)] : flt_inv[static_cast<size_t>(gen)]);
    return acc;
}

CycNum Representation::trace_exact(const Word& w) const { return cyc_trace(eval_exact(w)); }

std::complex<double> Representation::trace_float(const Word& w) const {
    return eval_float(w).trace();
}

Representation Representation::to_float() const {
    Representation out = *this;
    out.backend = RepBackend::ComplexFloat;
    out.flt.clear();
    out.flt_inv.clear();
    for (const auto& m : exact) out.flt.push_back(cyc_to_complex(m));
    for (const auto& m : exact_inv) out.flt_inv.push_back(cyc_to_complex(m));
    return out;
}

namespace {

Representation assemble_exact(std::vector<CycMat> mats, int dim, long field, RepKind kind) {
    Representation rep;
    rep.dim = dim;
    rep.field = field;
    rep.backend = RepBackend::ExactCyclotomic;
    rep.provenance = kind;
    rep.exact = std::move(mats);
    rep.exact_inv.reserve(rep.exact.size());
    for (const auto& m : rep.exact) rep.exact_inv.push_back(cyc_inverse(m));
    return rep;
}

Representation build_metabelian(const KnotPresentation& p, long n, const Character& chi,
                                long z_exp_in_2n, RepKind kind) {
    const auto& group = chi.ambient();
    if (group.n != n) throw std::invalid_argument("character group has wrong cover degree");
    StructureMap sm = structure_map(p, chi.ambient_ptr());

    const mpz_class m = group.invariant_factors.empty() ? mpz_class(1)
                                                        : group.invariant_factors.back();
    if (!m.fits_slong_p()) throw Intractable("torsion exponent too large for a field order");
    const long field = lcm_long(2 * n, m.get_si());

    // P_z: z-scaled cyclic permutation, P e_i = z e_{i+1}
    CycNum z = CycNum::root_of_unity(field, z_exp_in_2n * (field / (2 * n)));
    CycMat p_z = cyc_zero(field, n, n);
    for (long i = 0; i < n; ++i) p_z((i + 1) % n, i) = z;

    auto diag_of = [&](const ZVec& h) {
        CycMat d = cyc_zero(field, n, n);
        ZVec cur = h;
        for (long j = 0; j < n; ++j) {
            d(j, j) = chi.eval(cur, field);
            cur = group.t_apply(cur);
        }
        return d;
    };

    std::vector<CycMat> mats;
    mats.reserve(static_cast<size_t>(p.num_generators));
    for (int k = 0; k < p.num_generators; ++k) {
        CycMat img = cyc_mul(cyc_pow(p_z, sm.eps[static_cast<size_t>(k)]),
                             diag_of(sm.h[static_cast<size_t>(k)]));
        mats.push_back(std::move(img));
    }
    Representation rep = assemble_exact(std::move(mats), static_cast<int>(n), field, kind);
    rep.rank_n = n;
    rep.chi = chi;
    rep.z_exponent = z_exp_in_2n;

    // every relator must hold exactly
    CycMat id = cyc_identity(field, n);
    for (const auto& r : p.relators)
        if (!cyc_equal(rep.eval_exact(r), id))
            throw RelatorViolation("metabelian image violates a relator");
    return rep;
}

} // namespace

Representation build_rep(const KnotPresentation& p, long n, const Character& chi,
                         ZChoice z_choice, long z_k) {
    long ze = (n + 1) + (z_choice == ZChoice::Explicit ? 2 * z_k : 0);
    ze = ((ze % (2 * n)) + 2 * n) % (2 * n);
    // z^n = (-1)^{n+1} for every valid exponent
    return build_metabelian(p, n, chi, ze, RepKind::Metabelian);
}

Representation build_beta(const KnotPresentation& p, long n, const Character& sigma) {
    return build_metabelian(p, n, sigma, 0, RepKind::Metabelian);
}

Representation regular_rep(const KnotPresentation& p, long n) {
    auto hn = std::make_shared<FinAbT>(branched_homology(p, n));
    Character trivial(hn, std::vector<mpz_class>(hn->invariant_factors.size(), mpz_class(0)));
    return build_beta(p, n, trivial);
}

Representation trivial_rep(const KnotPresentation& p) {
    std::vector<CycMat> mats(static_cast<size_t>(p.num_generators), cyc_identity(1, 1));
    return assemble_exact(std::move(mats), 1, 1, RepKind::Manual);
}

// ---------------------------------------------------------------------------
// adjoint representation

long sl_dim(long n_rank) { return n_rank * n_rank - 1; }

CycMat sl_basis_element(long n_rank, long index, long field) {
    CycMat m = cyc_zero(field, n_rank, n_rank);
    long off = 0;
    for (long i = 0; i < n_rank; ++i)
        for (long j = 0; j < n_rank; ++j) {
            if (i == j) continue;
            if (off == index) {
                m(i, j) = CycNum(field, 1);
                return m;
            }
            ++off;
        }
    long h = index - off; // H_h = E_hh - E_{h+1,h+1}
    m(h, h) = CycNum(field, 1);
    m(h + 1, h + 1) = CycNum(field, -1);
    return m;
}

namespace {

CycVec sl_coordinates(const CycMat& m) {
    const long n = m.rows();
    const long d = sl_dim(n);
    long nf = m(0, 0).field_order();
    CycVec v(d);
    long off = 0;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            if (i == j) continue;
            v(off++) = m(i, j);
        }
    // diagonal = sum c_h H_h with c_h = m_00 + ... + m_hh (trace-zero input)
    CycNum acc(nf);
    for (long h = 0; h + 1 < n; ++h) {
        acc += m(h, h);
        v(off++) = acc;
    }
    return v;
}

} // namespace

Representation adjoint_rep(const Representation& rep) {
    if (rep.backend != RepBackend::ExactCyclotomic)
        throw std::invalid_argument("adjoint_rep needs the exact backend");
    const long n = rep.dim;
    const long d = sl_dim(n);
    std::vector<CycMat> mats;
    mats.reserve(rep.exact.size());
    for (size_t g = 0; g < rep.exact.size(); ++g) {
        CycMat ad = cyc_zero(rep.field, d, d);
        for (long b = 0; b < d; ++b) {
            CycMat col = cyc_mul(cyc_mul(rep.exact[g], sl_basis_element(n, b, rep.field)),
                                 rep.exact_inv[g]);
            CycVec coords = sl_coordinates(col);
            for (long i = 0; i < d; ++i) ad(i, b) = coords(i);
        }
        mats.push_back(std::move(ad));
    }
    Representation out = assemble_exact(std::move(mats), static_cast<int>(d), rep.field,
                                        rep.provenance);
    out.rank_n = rep.rank_n ? rep.rank_n : rep.dim;
    out.chi = rep.chi;
    out.z_exponent = rep.z_exponent;
    return out;
}

// ---------------------------------------------------------------------------

long commutant_dimension(const Representation& rep) {
    const long d = rep.dim;
    if (rep.backend == RepBackend::ExactCyclotomic) {
        const long g = static_cast<long>(rep.exact.size());
        // (I (x) A - A^T (x) I) vec(M) = 0, stacked over generators
        CycMat sys = cyc_zero(rep.field, g * d * d, d * d);
        for (long gi = 0; gi < g; ++gi) {
            const CycMat& a = rep.exact[static_cast<size_t>(gi)];
            // vec columnwise: M(i,j) at j*d+i ; (AM)(i,j) = sum_k a(i,k) M(k,j)
            for (long j = 0; j < d; ++j)
                for (long i = 0; i < d; ++i) {
                    long row = gi * d * d + j * d + i;
                    for (long k = 0; k < d; ++k) {
                        sys(row, j * d + k) += a(i, k);         // A M
                        sys(row, k * d + i) -= a(k, j);         // - M A
                    }
                }
        }
        return d * d - cyc_rank(std::move(sys));
    }
    const long g = static_cast<long>(rep.flt.size());
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(g * d * d, d * d);
    for (long gi = 0; gi < g; ++gi) {
        const auto& a = rep.flt[static_cast<size_t>(gi)];
        for (long j = 0; j < d; ++j)
            for (long i = 0; i < d; ++i) {
                long row = gi * d * d + j * d + i;
                for (long k = 0; k < d; ++k) {
                    sys(row, j * d + k) += a(i, k);
                    sys(row, k * d + i) -= a(k, j);
                }
            }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
    const auto& sv = svd.singularValues();
    double tol = 1e-8 * (sv.size() ? sv(0) : 1.0);
    long rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return d * d - rank;
}

bool is_irreducible(const Representation& rep) {
    long cd = commutant_dimension(rep);
    if (rep.provenance == RepKind::Metabelian && rep.chi && rep.rank_n == rep.dim) {
        bool by_order = rep.chi->order() == rep.rank_n;
        if (by_order != (cd == 1))
            throw std::logic_error("commutant dimension disagrees with character order");
    }
    return cd == 1;
}

CycNum character_of(const Representation& rep, const Word& w) { return rep.trace_exact(w); }

bool has_distinct_eigenvalues_exact(const CycMat& a) {
    // characteristic polynomial by Faddeev-LeVerrier, then squarefreeness
    const long n = a.rows();
    long nf = a(0, 0).field_order();
    std::vector<CycNum> c(static_cast<size_t>(n) + 1, CycNum(nf)); // coeffs of x^k
    c[static_cast<size_t>(n)] = CycNum(nf, 1);
    CycMat m = cyc_zero(nf, n, n);
    CycMat id = cyc_identity(nf, n);
    for (long k = 1; k <= n; ++k) {
        m = cyc_mul(a, m);
        for (long i = 0; i < n; ++i) m(i, i) += c[static_cast<size_t>(n - k + 1)];
        CycNum ck = cyc_trace(cyc_mul(a, m));
        ck = ck * CycNum(nf, mpq_class(-1, k));
        c[static_cast<size_t>(n - k)] = ck;
    }
    // squarefree iff gcd(p, p') is constant; Euclid over Q(zeta_N)[x]
    std::vector<CycNum> p = c, dp(static_cast<size_t>(n), CycNum(nf));
    for (long k = 1; k <= n; ++k)
        dp[static_cast<size_t>(k - 1)] = c[static_cast<size_t>(k)] * CycNum(nf, mpq_class(k));
    auto trim = [](std::vector<CycNum>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(p);
    trim(dp);
    while (!dp.empty()) {
        // p mod dp
        while (p.size() >= dp.size()) {
            CycNum f = p.back() / dp.back();
            size_t off = p.size() - dp.size();
            for (size_t i = 0; i < dp.size(); ++i) p[off + i] -= f * dp[i];
            trim(p);
            if (p.empty()) break;
        }
        std::swap(p, dp);
        trim(dp);
    }
    return p.size() == 1; // gcd is a nonzero constant
}

bool is_special_linear(const CycMat& a) {
    return cyc_det(a) == CycNum(a(0, 0).field_order(), 1);
}

bool is_unitary_exact(const CycMat& a) {
    CycMat prod = cyc_mul(a, cyc_conj_transpose(a));
    return cyc_equal(prod, cyc_identity(a(0, 0).field_order(), a.rows()));
}

} // namespace metarep
