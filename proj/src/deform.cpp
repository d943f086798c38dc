#include "metarep/deform.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "metarep/errors.hpp"
#include "metarep/twisted.hpp"

namespace metarep {

namespace {

// truncated series of matrices: coeffs of t^0 .. t^K
using Series = std::vector<Eigen::MatrixXcd>;

Series series_zero(long n, int order) {
    return Series(static_cast<size_t>(order) + 1, Eigen::MatrixXcd::Zero(n, n));
}

Series series_mul(const Series& a, const Series& b) {
    const int order = static_cast<int>(a.size()) - 1;
    const long n = a[0].rows();
    Series c = series_zero(n, order);
    for (int i = 0; i <= order; ++i)
        for (int j = 0; i + j <= order; ++j) c[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    return c;
}

// exp of a series with zero constant term, truncated
Series series_exp(const Series& s) {
    const int order = static_cast<int>(s.size()) - 1;
    const long n = s[0].rows();
    Series acc = series_zero(n, order);
    acc[0] = Eigen::MatrixXcd::Identity(n, n);
    Series term = acc;
    for (int m = 1; m <= order; ++m) {
        term = series_mul(term, s);
        for (auto& mat : term) mat /= static_cast<double>(m);
        for (int i = 0; i <= order; ++i) acc[static_cast<size_t>(i)] += term[static_cast<size_t>(i)];
    }
    return acc;
}

Series series_neg(Series s) {
    for (auto& m : s) m = -m;
    return s;
}

struct AdContext {
    Representation rf;  // float SL(n) rep
    std::vector<Eigen::MatrixXcd> basis;
    Representation ad;  // float adjoint
    long n = 0, d = 0, g = 0, r = 0;
    Eigen::MatrixXcd d1; // relator cocycle map in sl coordinates, (r d) x (g d)
    Eigen::MatrixXcd d0; // coboundary map, (g d) x d
};

AdContext make_context(const KnotPresentation& p, const Representation& rho) {
    AdContext cx;
    cx.rf = rho.backend == RepBackend::ComplexFloat ? rho : rho.to_float();
    cx.n = cx.rf.dim;
    cx.d = cx.n * cx.n - 1;
    cx.g = p.num_generators;
    cx.r = static_cast<long>(p.relators.size());
    cx.basis = sl_basis_float(cx.n);
    cx.ad.dim = static_cast<int>(cx.d);
    cx.ad.backend = RepBackend::ComplexFloat;
    for (const auto& a : cx.rf.flt) cx.ad.flt.push_back(adjoint_of_float(a, cx.basis));
    for (const auto& m : cx.ad.flt) cx.ad.flt_inv.push_back(m.inverse());
    cx.d1 = Eigen::MatrixXcd::Zero(cx.r * cx.d, cx.g * cx.d);
    for (long j = 0; j < cx.r; ++j)
        for (long k = 0; k < cx.g; ++k) {
            Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(cx.d, cx.d);
            auto e = fox_derivative(p.relators[static_cast<size_t>(j)], static_cast<int>(k));
            for (const auto& [u, c] : e.terms) blk += c.get_d() * cx.ad.eval_float(u);
            cx.d1.block(j * cx.d, k * cx.d, cx.d, cx.d) = blk;
        }
    cx.d0 = Eigen::MatrixXcd::Zero(cx.g * cx.d, cx.d);
    for (long k = 0; k < cx.g; ++k)
        cx.d0.block(k * cx.d, 0, cx.d, cx.d) =
            cx.ad.flt[static_cast<size_t>(k)] - Eigen::MatrixXcd::Identity(cx.d, cx.d);
    return cx;
}

Cochain1 cochain_from_coords(const AdContext& cx, const Eigen::VectorXcd& v) {
    Cochain1 c;
    c.values.reserve(static_cast<size_t>(cx.g));
    for (long k = 0; k < cx.g; ++k) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cx.n, cx.n);
        for (long b = 0; b < cx.d; ++b) m += v(k * cx.d + b) * cx.basis[static_cast<size_t>(b)];
        c.values.push_back(std::move(m));
    }
    return c;
}

Eigen::VectorXcd coords_from_cochain(const AdContext& cx, const Cochain1& c) {
    Eigen::VectorXcd v(cx.g * cx.d);
    for (long k = 0; k < cx.g; ++k)
        v.segment(k * cx.d, cx.d) = sl_coords_float(c.values[static_cast<size_t>(k)]);
    return v;
}

} // namespace

CocycleSpaces cocycle_spaces(const KnotPresentation& p, const Representation& rho) {
    AdContext cx = make_context(p, rho);
    CocycleSpaces out;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cx.d1, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double tol = 1e-8 * (sv.size() && sv(0) > 0 ? sv(0) : 1.0);
    long rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    out.dim_z1 = cx.g * cx.d - rank;
    for (long c = 0; c < out.dim_z1; ++c)
        out.z1.push_back(cochain_from_coords(cx, svd.matrixV().col(cx.g * cx.d - 1 - c)));

    // B1: orthonormalized columns of d0
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd0(cx.d0, Eigen::ComputeFullU);
    const auto& sv0 = svd0.singularValues();
    double tol0 = 1e-8 * (sv0.size() && sv0(0) > 0 ? sv0(0) : 1.0);
    out.dim_b1 = 0;
    for (Eigen::Index i = 0; i < sv0.size(); ++i)
        if (sv0(i) > tol0) ++out.dim_b1;
    Eigen::MatrixXcd b1_basis = svd0.matrixU().leftCols(out.dim_b1);
    for (long c = 0; c < out.dim_b1; ++c)
        out.b1.push_back(cochain_from_coords(cx, b1_basis.col(c)));

    // H1 representatives: project the Z1 basis off span(B1), orthonormalize
    out.dim_h1 = out.dim_z1 - out.dim_b1;
    Eigen::MatrixXcd pool(cx.g * cx.d, out.dim_z1);
    for (long c = 0; c < out.dim_z1; ++c) {
        Eigen::VectorXcd v = coords_from_cochain(cx, out.z1[static_cast<size_t>(c)]);
        v -= b1_basis * (b1_basis.adjoint() * v);
        pool.col(c) = v;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svp(pool, Eigen::ComputeFullU);
    for (long c = 0; c < out.dim_h1; ++c)
        out.h1_reps.push_back(cochain_from_coords(cx, svp.matrixU().col(c)));
    return out;
}

// ---------------------------------------------------------------------------

DeformSeries solve_formal(const KnotPresentation& p, const Representation& rho,
                          const Cochain1& a1, int order) {
    if (order < 2) throw std::invalid_argument("solve_formal needs order >= 2");
    AdContext cx = make_context(p, rho);
    DeformSeries out;
    out.order = order;
    out.a.push_back(a1);

    // least-squares operator for all higher orders: the relator cocycle map
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(cx.d1);

    auto relator_series = [&](int upto) {
        // generator series exp(sum t^i a_i) alpha, truncated at `upto`
        std::vector<Series> gen_series, gen_series_inv;
        for (long k = 0; k < cx.g; ++k) {
            Series s = series_zero(cx.n, upto);
            for (size_t i = 0; i < out.a.size(); ++i)
                if (static_cast<int>(i) + 1 <= upto)
                    s[i + 1] = out.a[i].values[static_cast<size_t>(k)];
            Series e = series_exp(s);
            Series a = series_zero(cx.n, upto);
            Series ai = series_zero(cx.n, upto);
            Series en = series_exp(series_neg(s));
            for (int i = 0; i <= upto; ++i) {
                a[static_cast<size_t>(i)] = e[static_cast<size_t>(i)] * cx.rf.flt[static_cast<size_t>(k)];
                ai[static_cast<size_t>(i)] = cx.rf.flt_inv[static_cast<size_t>(k)] * en[static_cast<size_t>(i)];
            }
            gen_series.push_back(std::move(a));
            gen_series_inv.push_back(std::move(ai));
        }
        std::vector<Series> rel;
        for (long j = 0; j < cx.r; ++j) {
            Series acc = series_zero(cx.n, upto);
            acc[0] = Eigen::MatrixXcd::Identity(cx.n, cx.n);
            for (const auto& [gen, sign] : p.relators[static_cast<size_t>(j)].letters())
                acc = series_mul(acc, sign > 0 ? gen_series[static_cast<size_t>(gen)]
                                               : gen_series_inv[static_cast<size_t>(gen)]);
            rel.push_back(std::move(acc));
        }
        return rel;
    };

    // order-1 residual: a1 must be a cocycle
    {
        auto rel = relator_series(1);
        double r1 = 0.0;
        for (const auto& s : rel) r1 = std::max(r1, s[1].norm());
        out.residuals.push_back(r1);
        if (r1 > 1e-7) throw ObstructionNonzero(1, "a1 is not a cocycle");
    }

    for (int k = 1; k < order; ++k) {
        // cross terms at order k+1 with a_{k+1} = 0
        auto rel = relator_series(k + 1);
        Eigen::VectorXcd c(cx.r * cx.d);
        for (long j = 0; j < cx.r; ++j)
            c.segment(j * cx.d, cx.d) = sl_coords_float(rel[static_cast<size_t>(j)][static_cast<size_t>(k + 1)]);
        Eigen::VectorXcd x = cod.solve(-c);
        out.a.push_back(cochain_from_coords(cx, x));
        // recompute the series including a_{k+1}; the order-(k+1) residual is
        // the empirical obstruction
        auto rel2 = relator_series(k + 1);
        double resid = 0.0;
        for (const auto& s : rel2) resid = std::max(resid, s[static_cast<size_t>(k + 1)].norm());
        out.residuals.push_back(resid);
        if (resid > 1e-7)
            throw ObstructionNonzero(k + 1, "nonvanishing obstruction at order " +
                                                std::to_string(k + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Word> probe_words(const KnotPresentation& p) {
    std::vector<Word> out;
    out.push_back(p.meridian);
    if (p.longitude) out.push_back(*p.longitude);
    auto rest = sample_words(20 - static_cast<int>(out.size()), p.num_generators);
    for (auto& w : rest) out.push_back(std::move(w));
    return out;
}

std::vector<std::complex<double>> probe_character(const KnotPresentation& p,
                                                  const Representation& rep_float) {
    const Representation* r = &rep_float;
    Representation tmp;
    if (rep_float.backend != RepBackend::ComplexFloat) {
        tmp = rep_float.to_float();
        r = &tmp;
    }
    std::vector<std::complex<double>> out;
    for (const auto& w : probe_words(p)) out.push_back(r->trace_float(w));
    return out;
}

std::vector<NewtonStep> newton_deform(const KnotPresentation& p, const Representation& rho,
                                      const Cochain1& a1, const std::vector<double>& steps) {
    AdContext cx = make_context(p, rho);
    const long gd = cx.g * cx.d;

    Eigen::VectorXcd a1v = coords_from_cochain(cx, a1);

    std::vector<NewtonStep> out;
    for (double t : steps) {
        // initial guess exp(t a1(x)) alpha(x)
        std::vector<Eigen::MatrixXcd> cur(static_cast<size_t>(cx.g));
        for (long k = 0; k < cx.g; ++k)
            cur[static_cast<size_t>(k)] =
                (t * a1.values[static_cast<size_t>(k)]).exp() * cx.rf.flt[static_cast<size_t>(k)];

        auto rep_of = [&](const std::vector<Eigen::MatrixXcd>& mats) {
            Representation r;
            r.dim = static_cast<int>(cx.n);
            r.backend = RepBackend::ComplexFloat;
            r.provenance = RepKind::Deformed;
            r.flt = mats;
            for (const auto& m : mats) r.flt_inv.push_back(m.inverse());
            return r;
        };

        double resid = 0.0;
        int it = 0;
        bool converged = false;
        for (; it < 50; ++it) {
            Representation rcur = rep_of(cur);
            // relator residuals F and the gauge-fixed linearization
            std::vector<Eigen::MatrixXcd> rel(static_cast<size_t>(cx.r));
            resid = 0.0;
            for (long j = 0; j < cx.r; ++j) {
                rel[static_cast<size_t>(j)] = rcur.eval_float(p.relators[static_cast<size_t>(j)]);
                resid = std::max(resid,
                                 (rel[static_cast<size_t>(j)] -
                                  Eigen::MatrixXcd::Identity(cx.n, cx.n))
                                     .norm());
            }
            if (resid <= 1e-10) {
                converged = true;
                break;
            }
            // gauge constraints at the current point: B1(current) and a1
            std::vector<Eigen::MatrixXcd> basis = cx.basis;
            Eigen::MatrixXcd d0c = Eigen::MatrixXcd::Zero(gd, cx.d);
            for (long k = 0; k < cx.g; ++k)
                d0c.block(k * cx.d, 0, cx.d, cx.d) =
                    adjoint_of_float(cur[static_cast<size_t>(k)], basis) -
                    Eigen::MatrixXcd::Identity(cx.d, cx.d);
            Eigen::MatrixXcd constraints(gd, cx.d + 1);
            constraints.leftCols(cx.d) = d0c;
            constraints.col(cx.d) = a1v;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svc(constraints, Eigen::ComputeFullU);
            const auto& svv = svc.singularValues();
            double tolc = 1e-10 * (svv.size() && svv(0) > 0 ? svv(0) : 1.0);
            long rankc = 0;
            for (Eigen::Index i = 0; i < svv.size(); ++i)
                if (svv(i) > tolc) ++rankc;
            Eigen::MatrixXcd q = svc.matrixU().rightCols(gd - rankc); // u with u ^| constraints

            // F and L: dF_j = delta_u(r_j) R(r_j)
            Eigen::VectorXcd f(cx.r * cx.n * cx.n);
            for (long j = 0; j < cx.r; ++j) {
                Eigen::MatrixXcd df =
                    rel[static_cast<size_t>(j)] - Eigen::MatrixXcd::Identity(cx.n, cx.n);
                f.segment(j * cx.n * cx.n, cx.n * cx.n) =
                    Eigen::Map<Eigen::VectorXcd>(df.data(), cx.n * cx.n);
            }
            Eigen::MatrixXcd l(cx.r * cx.n * cx.n, gd);
            for (long k = 0; k < cx.g; ++k)
                for (long b = 0; b < cx.d; ++b) {
                    Cochain1 dir;
                    dir.values.assign(static_cast<size_t>(cx.g),
                                      Eigen::MatrixXcd::Zero(cx.n, cx.n));
                    dir.values[static_cast<size_t>(k)] = basis[static_cast<size_t>(b)];
                    for (long j = 0; j < cx.r; ++j) {
                        Eigen::MatrixXcd dv =
                            cochain_on_word(p, rcur, dir.values,
                                            p.relators[static_cast<size_t>(j)]) *
                            rel[static_cast<size_t>(j)];
                        l.block(j * cx.n * cx.n, k * cx.d + b, cx.n * cx.n, 1) =
                            Eigen::Map<Eigen::VectorXcd>(dv.data(), cx.n * cx.n);
                    }
                }
            // least squares in the gauge subspace by normal equations;
            // Tikhonov 1e-12 only on detected rank deficiency
            Eigen::MatrixXcd lq = l * q;
            Eigen::MatrixXcd normal = lq.adjoint() * lq;
            Eigen::VectorXcd rhs = -lq.adjoint() * f;
            Eigen::LDLT<Eigen::MatrixXcd> ldlt(normal);
            Eigen::VectorXcd y;
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                y = ldlt.solve(rhs);
                if (!y.allFinite())
                    y = (normal + 1e-12 * Eigen::MatrixXcd::Identity(normal.rows(),
                                                                     normal.cols()))
                            .ldlt()
                            .solve(rhs);
            } else {
                y = (normal + 1e-12 * Eigen::MatrixXcd::Identity(normal.rows(), normal.cols()))
                        .ldlt()
                        .solve(rhs);
            }
            Eigen::VectorXcd u = q * y;
            Cochain1 upd = cochain_from_coords(cx, u);
            for (long k = 0; k < cx.g; ++k) {
                cur[static_cast<size_t>(k)] =
                    upd.values[static_cast<size_t>(k)].exp() * cur[static_cast<size_t>(k)];
                // determinant renormalization
                std::complex<double> det = cur[static_cast<size_t>(k)].determinant();
                cur[static_cast<size_t>(k)] /= std::pow(det, 1.0 / static_cast<double>(cx.n));
            }
        }
        if (!converged) throw NewtonDiverged(t, "no convergence after 50 iterations");
        NewtonStep step;
        step.t = t;
        step.rep = rep_of(cur);
        step.iterations = it;
        step.residual = resid;
        step.probe = probe_character(p, step.rep);
        out.push_back(std::move(step));
    }
    return out;
}

bool certify_nonmetabelian(const Representation& rep, const KnotPresentation& p, long n) {
    auto hn = std::make_shared<FinAbT>(branched_homology(p, n));
    if (!hn->is_finite()) throw InfiniteFamily("infinitely many metabelian classes");
    if (commutant_dimension(rep.backend == RepBackend::ComplexFloat ? rep : rep.to_float()) != 1)
        return false;
    auto mine = probe_character(p, rep);
    double min_dist = 1e300;
    for (const auto& chi : orbit_representatives(hn, n)) {
        auto other = probe_character(p, build_rep(p, n, chi));
        double dist = 0.0;
        for (size_t i = 0; i < mine.size(); ++i)
            dist = std::max(dist, std::abs(mine[i] - other[i]));
        min_dist = std::min(min_dist, dist);
    }
    return min_dist > 1e-4;
}

} // namespace metarep
