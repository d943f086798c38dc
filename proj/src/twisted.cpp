#include "metarep/twisted.hpp"

#include <Eigen/SVD>
#include <random>
#include <sstream>

#include "metarep/errors.hpp"
#include "metarep/numth.hpp"

namespace metarep {

namespace {

// Phi(sum c_u u) = sum c_u rho(u) under the exact backend
CycMat fox_block_exact(const Representation& rho, const FreeGroupRingElt& e) {
    CycMat acc = cyc_zero(rho.field, rho.dim, rho.dim);
    for (const auto& [u, c] : e.terms)
        acc = cyc_add(acc, cyc_scale(CycNum(rho.field, mpq_class(c)), rho.eval_exact(u)));
    return acc;
}

} // namespace

TwistedComplexExact twisted_complex_exact(const KnotPresentation& p, const Representation& rho) {
    TwistedComplexExact tc;
    tc.d = rho.dim;
    tc.g = p.num_generators;
    tc.r = static_cast<long>(p.relators.size());
    tc.d0 = cyc_zero(rho.field, tc.g * tc.d, tc.d);
    for (long k = 0; k < tc.g; ++k) {
        const CycMat& a = rho.exact[static_cast<size_t>(k)];
        for (long i = 0; i < tc.d; ++i)
            for (long j = 0; j < tc.d; ++j)
                tc.d0(k * tc.d + i, j) = i == j ? a(i, j) - CycNum(rho.field, 1) : a(i, j);
    }
    tc.d1 = cyc_zero(rho.field, tc.r * tc.d, tc.g * tc.d);
    for (long j = 0; j < tc.r; ++j)
        for (long k = 0; k < tc.g; ++k) {
            CycMat blk = fox_block_exact(
                rho, fox_derivative(p.relators[static_cast<size_t>(j)], static_cast<int>(k)));
            for (long i = 0; i < tc.d; ++i)
                for (long l = 0; l < tc.d; ++l) tc.d1(j * tc.d + i, k * tc.d + l) = blk(i, l);
        }
    if (!cyc_is_zero(cyc_mul(tc.d1, tc.d0)))
        throw std::logic_error("twisted complex condition d1 d0 = 0 violated");
    return tc;
}

TwistedComplexFloat twisted_complex_float(const KnotPresentation& p, const Representation& rho) {
    const Representation* r = &rho;
    Representation tmp;
    if (rho.backend == RepBackend::ExactCyclotomic) {
        tmp = rho.to_float();
        r = &tmp;
    }
    TwistedComplexFloat tc;
    tc.d = r->dim;
    tc.g = p.num_generators;
    tc.r = static_cast<long>(p.relators.size());
    tc.d0 = Eigen::MatrixXcd::Zero(tc.g * tc.d, tc.d);
    for (long k = 0; k < tc.g; ++k)
        tc.d0.block(k * tc.d, 0, tc.d, tc.d) =
            r->flt[static_cast<size_t>(k)] - Eigen::MatrixXcd::Identity(tc.d, tc.d);
    tc.d1 = Eigen::MatrixXcd::Zero(tc.r * tc.d, tc.g * tc.d);
    for (long j = 0; j < tc.r; ++j)
        for (long k = 0; k < tc.g; ++k) {
            Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(tc.d, tc.d);
            auto e = fox_derivative(p.relators[static_cast<size_t>(j)], static_cast<int>(k));
            for (const auto& [u, c] : e.terms) blk += c.get_d() * r->eval_float(u);
            tc.d1.block(j * tc.d, k * tc.d, tc.d, tc.d) = blk;
        }
    double resid = (tc.d1 * tc.d0).norm();
    if (resid > 1e-9 * std::max(1.0, tc.d1.norm() * tc.d0.norm()))
        throw std::logic_error("twisted complex condition violated (float)");
    return tc;
}

long rank_float(const Eigen::MatrixXcd& m, double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return 0;
    double tol = rel_tol * smax;
    long rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * 10 || sv(i) < tol / 10) {
            if (sv(i) > tol) ++rank;
            continue;
        }
        throw ToleranceAmbiguous("singular value " + std::to_string(sv(i)) +
                                 " inside the ambiguity band; use the exact backend");
    }
    return rank;
}

CohomologyReport cohomology_dims(const KnotPresentation& p, const Representation& rho) {
    CohomologyReport rep;
    rep.d = rho.dim;
    if (rho.backend == RepBackend::ExactCyclotomic) {
        TwistedComplexExact tc = twisted_complex_exact(p, rho);
        rep.rank_d0 = cyc_rank(tc.d0);
        rep.rank_d1 = cyc_rank(tc.d1);
    } else {
        TwistedComplexFloat tc = twisted_complex_float(p, rho);
        rep.rank_d0 = rank_float(tc.d0);
        rep.rank_d1 = rank_float(tc.d1);
    }
    rep.h0 = rep.d - rep.rank_d0;
    rep.z1 = static_cast<long>(p.num_generators) * rep.d - rep.rank_d1;
    rep.b1_dim = rep.d - rep.h0;
    rep.h1 = rep.z1 - rep.b1_dim;
    return rep;
}

std::vector<Word> sample_words(int count, int num_generators, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> gen(0, num_generators - 1), len(1, 12), sgn(0, 1);
    std::vector<Word> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        Word w;
        int l = len(rng);
        for (int j = 0; j < l; ++j) w = w * Word::generator(gen(rng), sgn(rng) ? 1 : -1);
        out.push_back(std::move(w));
    }
    return out;
}

DecompositionReport verify_decomposition(const KnotPresentation& p, long n,
                                         const Character& chi, int samples) {
    DecompositionReport out;
    out.n = n;
    auto alpha = build_rep(p, n, chi);
    auto ad = adjoint_rep(alpha);
    auto hn = chi.ambient_ptr();
    Character trivial(hn, std::vector<mpz_class>(hn->invariant_factors.size(), mpz_class(0)));
    auto alpha_n = build_beta(p, n, trivial);
    std::vector<Representation> betas;
    out.twist_orders_ok = true;
    for (long i = 1; i < n; ++i) {
        Character chi_i = chi.adjoint_twist(i);
        if (chi.order() == n && chi_i.order() != n) out.twist_orders_ok = false;
        betas.push_back(build_beta(p, n, chi_i));
    }

    std::vector<Word> words;
    for (int k = 0; k < p.num_generators; ++k) words.push_back(Word::generator(k));
    for (auto& w : sample_words(samples, p.num_generators)) words.push_back(std::move(w));
    const CycNum one(ad.field, 1);
    for (const auto& w : words) {
        CycNum lhs = ad.trace_exact(w) + one;
        CycNum rhs = alpha_n.trace_exact(w);
        for (const auto& b : betas) rhs += b.trace_exact(w);
        if (!(lhs == rhs))
            throw DecompositionMismatch("adjoint decomposition trace identity fails on " +
                                        w.str());
    }
    out.words_checked = static_cast<long>(words.size());

    out.h1_ad = cohomology_dims(p, ad).h1;
    out.b1_ln = hn->free_rank;
    out.h1_alpha_n = cohomology_dims(p, alpha_n).h1;
    long sum = 0;
    for (const auto& b : betas) {
        out.h1_beta.push_back(cohomology_dims(p, b).h1);
        sum += out.h1_beta.back();
    }
    out.h1_additive = (out.h1_ad == out.b1_ln + sum) && (out.h1_alpha_n == out.b1_ln + 1);
    return out;
}

// ---------------------------------------------------------------------------
// polynomials over Q(zeta_N)

void CycPoly::set(long deg, const CycNum& c) {
    if (c.is_zero())
        coeffs.erase(deg);
    else
        coeffs[deg] = c;
}

CycPoly CycPoly::operator*(const CycPoly& r) const {
    CycPoly out;
    out.field = std::max(field, r.field);
    for (const auto& [d1, c1] : coeffs)
        for (const auto& [d2, c2] : r.coeffs) {
            CycNum v = c1 * c2;
            auto it = out.coeffs.find(d1 + d2);
            if (it == out.coeffs.end()) {
                if (!v.is_zero()) out.coeffs.emplace(d1 + d2, std::move(v));
            } else {
                it->second += v;
                if (it->second.is_zero()) out.coeffs.erase(it);
            }
        }
    return out;
}

bool CycPoly::equals_up_to_unit_pm(const CycPoly& r) const {
    if (is_zero() || r.is_zero()) return is_zero() == r.is_zero();
    if (coeffs.size() != r.coeffs.size()) return false;
    long s1 = coeffs.begin()->first, s2 = r.coeffs.begin()->first;
    bool plus = true, minus = true;
    auto it1 = coeffs.begin();
    auto it2 = r.coeffs.begin();
    for (; it1 != coeffs.end(); ++it1, ++it2) {
        if (it1->first - s1 != it2->first - s2) return false;
        if (!(it1->second == it2->second)) plus = false;
        if (!(it1->second == -it2->second)) minus = false;
        if (!plus && !minus) return false;
    }
    return plus || minus;
}

CycPoly CycPoly::exact_div(const CycPoly& r) const {
    if (r.is_zero()) throw std::domain_error("division by zero polynomial");
    CycPoly rem = *this, quot;
    quot.field = field;
    while (!rem.is_zero()) {
        long dd = rem.coeffs.rbegin()->first - r.coeffs.rbegin()->first;
        CycNum qc = rem.coeffs.rbegin()->second / r.coeffs.rbegin()->second;
        quot.set(dd, qc);
        // rem -= (qc t^dd) * r
        for (const auto& [d2, c2] : r.coeffs) {
            auto it = rem.coeffs.find(dd + d2);
            CycNum v = (it == rem.coeffs.end() ? CycNum(field) : it->second) - qc * c2;
            rem.set(dd + d2, v);
        }
        if (!rem.is_zero() && rem.coeffs.rbegin()->first >= dd + r.coeffs.rbegin()->first)
            throw std::domain_error("inexact polynomial division");
    }
    return quot;
}

CycNum CycPoly::eval(const CycNum& t0) const {
    CycNum acc(field);
    for (const auto& [d, c] : coeffs) {
        CycNum base = d >= 0 ? t0 : t0.inverse();
        CycNum pw(field, 1);
        for (long i = 0; i < std::labs(d); ++i) pw *= base;
        acc += c * pw;
    }
    return acc;
}

std::string CycPoly::str() const {
    std::ostringstream os;
    for (const auto& [d, c] : coeffs) os << "[t^" << d << "] " << c.str() << "  ";
    return os.str();
}

CycPoly CycPoly::from_laurent(const LaurentPoly& p, long field) {
    CycPoly out;
    out.field = field;
    for (const auto& [d, c] : p.coeffs()) out.set(d, CycNum(field, mpq_class(c)));
    return out;
}

CycPoly CycPoly::from_laurent_neg(const LaurentPoly& p, long field) {
    return from_laurent(p.substituted_neg(), field);
}

// ---------------------------------------------------------------------------
// twisted Alexander via evaluation + interpolation at rational nodes

namespace {

// interpolate a polynomial of degree <= values.size()-1 from values at 1..m
CycPoly interpolate(long field, const std::vector<CycNum>& values) {
    const long npts = static_cast<long>(values.size());
    CycPoly acc;
    acc.field = field;
    for (long i = 0; i < npts; ++i) {
        if (values[static_cast<size_t>(i)].is_zero()) continue;
        CycPoly li;
        li.field = field;
        li.set(0, CycNum(field, 1));
        mpq_class denom = 1;
        for (long j = 0; j < npts; ++j) {
            if (j == i) continue;
            CycPoly lin;
            lin.field = field;
            lin.set(1, CycNum(field, 1));
            lin.set(0, CycNum(field, mpq_class(-(j + 1))));
            li = li * lin;
            denom *= mpq_class(i - j);
        }
        CycNum scale = values[static_cast<size_t>(i)] * CycNum(field, mpq_class(1) / denom);
        for (const auto& [d, c] : li.coeffs) {
            CycNum v = c * scale;
            auto it = acc.coeffs.find(d);
            if (it == acc.coeffs.end()) {
                if (!v.is_zero()) acc.coeffs.emplace(d, std::move(v));
            } else {
                it->second += v;
                if (it->second.is_zero()) acc.coeffs.erase(it);
            }
        }
    }
    return acc;
}

CycNum pow_rational(long field, const CycNum& t0, const CycNum& t0inv, long e) {
    const CycNum& base = e >= 0 ? t0 : t0inv;
    CycNum pw(field, 1);
    for (long i = 0; i < std::labs(e); ++i) pw *= base;
    return pw;
}

} // namespace

TwistedAlexander twisted_alexander(const KnotPresentation& p, const Representation& rho) {
    if (rho.backend != RepBackend::ExactCyclotomic)
        throw std::invalid_argument("twisted_alexander needs the exact backend");
    const long d = rho.dim;
    const long g = p.num_generators;
    const long r = static_cast<long>(p.relators.size());
    if (r + 1 != g) throw std::invalid_argument("twisted_alexander needs deficiency 1");
    const long field = rho.field;

    std::vector<std::vector<FreeGroupRingElt>> fox(static_cast<size_t>(r));
    long max_abs_deg = 1;
    for (long j = 0; j < r; ++j) {
        fox[static_cast<size_t>(j)].reserve(static_cast<size_t>(g));
        for (long k = 0; k < g; ++k) {
            auto e = fox_derivative(p.relators[static_cast<size_t>(j)], static_cast<int>(k));
            for (const auto& [u, c] : e.terms)
                max_abs_deg = std::max(max_abs_deg, std::labs(p.degree(u)));
            fox[static_cast<size_t>(j)].push_back(std::move(e));
        }
    }
    long max_eps = 1;
    for (long e : p.abelian_degrees) max_eps = std::max(max_eps, std::labs(e));

    auto denom_at = [&](long k0, const CycNum& t0, const CycNum& t0inv) {
        long eps = p.abelian_degrees[static_cast<size_t>(k0)];
        CycMat m = cyc_scale(pow_rational(field, t0, t0inv, eps),
                             rho.exact[static_cast<size_t>(k0)]);
        for (long i = 0; i < d; ++i) m(i, i) -= CycNum(field, 1);
        return cyc_det(std::move(m));
    };
    auto numer_at = [&](long k0, const CycNum& t0, const CycNum& t0inv) {
        CycMat m = cyc_zero(field, r * d, r * d);
        for (long j = 0; j < r; ++j) {
            long col = 0;
            for (long k = 0; k < g; ++k) {
                if (k == k0) continue;
                CycMat blk = cyc_zero(field, d, d);
                for (const auto& [u, c] :
                     fox[static_cast<size_t>(j)][static_cast<size_t>(k)].terms) {
                    CycNum w = pow_rational(field, t0, t0inv, p.degree(u)) *
                               CycNum(field, mpq_class(c));
                    blk = cyc_add(blk, cyc_scale(w, rho.eval_exact(u)));
                }
                for (long i = 0; i < d; ++i)
                    for (long l = 0; l < d; ++l) m(j * d + i, col * d + l) = blk(i, l);
                ++col;
            }
        }
        return cyc_det(std::move(m));
    };

    auto sample_poly = [&](auto&& evaluator, long shift) {
        long npts = 2 * shift + 1;
        std::vector<CycNum> vals;
        vals.reserve(static_cast<size_t>(npts));
        bool all_zero = true;
        for (long i = 1; i <= npts; ++i) {
            CycNum t0(field, mpq_class(i));
            CycNum t0inv = t0.inverse();
            CycNum v = evaluator(t0, t0inv) * pow_rational(field, t0, t0inv, shift);
            if (!v.is_zero()) all_zero = false;
            vals.push_back(std::move(v));
        }
        CycPoly out;
        out.field = field;
        if (all_zero) return out;
        CycPoly raw = interpolate(field, vals);
        for (const auto& [dd, c] : raw.coeffs) out.set(dd - shift, c);
        return out;
    };

    const long shift_den = d * max_eps;
    const long shift_num = r * d * max_abs_deg;
    for (long k0 = 0; k0 < g; ++k0) {
        CycPoly den = sample_poly(
            [&](const CycNum& t0, const CycNum& t0inv) { return denom_at(k0, t0, t0inv); },
            shift_den);
        if (den.is_zero()) continue;
        TwistedAlexander out;
        out.removed_generator = static_cast<int>(k0);
        out.denominator = std::move(den);
        out.numerator = sample_poly(
            [&](const CycNum& t0, const CycNum& t0inv) { return numer_at(k0, t0, t0inv); },
            shift_num);
        return out;
    }
    throw SingularDenominator("rho(x_k) t^eps - I is singular for every generator");
}

// ---------------------------------------------------------------------------

CriterionVerdict criterion_check(const KnotPresentation& p, long n, const Character& chi) {
    if (chi.order() != n)
        throw std::invalid_argument("criterion_check needs an order-n character");
    CriterionVerdict v;
    v.b1_ln = chi.ambient().free_rank;
    auto alpha = build_rep(p, n, chi);
    v.h1 = cohomology_dims(p, adjoint_rep(alpha)).h1;
    v.criterion_met = (v.h1 == n - 1);
    if (v.criterion_met && v.b1_ln != 0)
        throw std::logic_error("criterion met but b_1(L_n) > 0: impossible");
    return v;
}

CoverBettiReport cover_betti(const KnotPresentation& p, long n, const Character& chi,
                             long cap) {
    auto hn = chi.ambient_ptr();
    if (!hn->is_finite()) throw InfiniteFamily("b_1(L_n) > 0");
    CoverBettiReport out;
    out.k = hn->torsion_order();
    if (out.k > cap)
        throw Intractable("|H| = " + out.k.get_str() + " exceeds the cap " +
                          std::to_string(cap));
    long sum = 0;
    enumerate_characters(hn, [&](const Character& sigma, long) {
        sum += cohomology_dims(p, build_beta(p, n, sigma)).h1;
    });
    out.b1_tilde = sum;
    out.equality = (mpz_class(sum) == out.k);
    out.sigma_lower_bound = mpz_class(sum) - out.k;
    if (out.sigma_lower_bound < 0) out.sigma_lower_bound = 0;
    return out;
}

} // namespace metarep
