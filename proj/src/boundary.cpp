#include "metarep/boundary.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "metarep/errors.hpp"

namespace metarep {

// coordinates of a trace-zero matrix in the sl basis (E_ij then H_i)
Eigen::VectorXcd sl_coords_float(const Eigen::MatrixXcd& m) {
    const long n = m.rows();
    const long d = n * n - 1;
    Eigen::VectorXcd v(d);
    long off = 0;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            if (i == j) continue;
            v(off++) = m(i, j);
        }
    std::complex<double> acc = 0.0;
    for (long h = 0; h + 1 < n; ++h) {
        acc += m(h, h);
        v(off++) = acc;
    }
    return v;
}

std::vector<Eigen::MatrixXcd> sl_basis_float(long n) {
    std::vector<Eigen::MatrixXcd> basis;
    for (long b = 0; b < n * n - 1; ++b) basis.push_back(cyc_to_complex(sl_basis_element(n, b, 1)));
    return basis;
}

Eigen::MatrixXcd adjoint_of_float(const Eigen::MatrixXcd& a,
                                  const std::vector<Eigen::MatrixXcd>& basis) {
    const long d = static_cast<long>(basis.size());
    Eigen::MatrixXcd ainv = a.inverse();
    Eigen::MatrixXcd ad(d, d);
    for (long b = 0; b < d; ++b)
        ad.col(b) = sl_coords_float(a * basis[static_cast<size_t>(b)] * ainv);
    return ad;
}

namespace {
Eigen::MatrixXcd from_coords(const Eigen::VectorXcd& v,
                             const std::vector<Eigen::MatrixXcd>& basis) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
    for (long i = 0; i < v.size(); ++i) m += v(i) * basis[static_cast<size_t>(i)];
    return m;
}
} // namespace

Eigen::MatrixXcd cochain_on_word(const KnotPresentation& p, const Representation& rho_float,
                                 const std::vector<Eigen::MatrixXcd>& values, const Word& w) {
    // u(vw) = u(v) + ad rho(v) u(w), letterwise; u(x^-1) = -ad rho(x^-1) u(x)
    const long n = rho_float.dim;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd pref = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& [gen, sign] : w.letters()) {
        const Eigen::MatrixXcd& a = rho_float.flt[static_cast<size_t>(gen)];
        const Eigen::MatrixXcd& ai = rho_float.flt_inv[static_cast<size_t>(gen)];
        if (sign > 0) {
            acc += pref * values[static_cast<size_t>(gen)] * pref.inverse();
            pref = pref * a;
        } else {
            pref = pref * ai;
            acc -= pref * values[static_cast<size_t>(gen)] * pref.inverse();
        }
    }
    return acc;
}

BoundaryReport boundary_restriction(const KnotPresentation& p, const Representation& rho,
                                    bool with_longitude) {
    if (with_longitude && !p.longitude)
        throw MissingLongitude("boundary_restriction needs a longitude");
    Representation rf = rho.backend == RepBackend::ComplexFloat ? rho : rho.to_float();
    const long n = rf.dim;
    const long d = n * n - 1;

    Eigen::MatrixXcd rmu = rf.eval_float(p.meridian);
    {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(rmu);
        auto ev = es.eigenvalues();
        double scale = 0.0;
        for (long i = 0; i < n; ++i) scale = std::max(scale, std::abs(ev(i)));
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j)
                if (std::abs(ev(i) - ev(j)) < 1e-6 * std::max(1.0, scale))
                    throw NotRegular("rho(mu) does not have distinct eigenvalues");
    }
    Eigen::MatrixXcd rlam = rf.eval_float(p.longitude_or_throw());

    std::vector<Eigen::MatrixXcd> basis = sl_basis_float(n);
    std::vector<Eigen::MatrixXcd> ad;
    ad.reserve(rf.flt.size());
    for (const auto& a : rf.flt) ad.push_back(adjoint_of_float(a, basis));

    Representation ad_rep;
    ad_rep.dim = static_cast<int>(d);
    ad_rep.backend = RepBackend::ComplexFloat;
    ad_rep.flt = ad;
    for (const auto& m : ad) ad_rep.flt_inv.push_back(m.inverse());

    const long g = p.num_generators;
    const long r = static_cast<long>(p.relators.size());
    Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(r * d, g * d);
    for (long j = 0; j < r; ++j)
        for (long k = 0; k < g; ++k) {
            Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(d, d);
            auto e = fox_derivative(p.relators[static_cast<size_t>(j)], static_cast<int>(k));
            for (const auto& [u, c] : e.terms) blk += c.get_d() * ad_rep.eval_float(u);
            d1.block(j * d, k * d, d, d) = blk;
        }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d1, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double tol = 1e-8 * (sv.size() && sv(0) > 0 ? sv(0) : 1.0);
    long rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    const long z1 = g * d - rank;
    std::vector<std::vector<Eigen::MatrixXcd>> cocycles;
    for (long c = 0; c < z1; ++c) {
        Eigen::VectorXcd v = svd.matrixV().col(g * d - 1 - c);
        std::vector<Eigen::MatrixXcd> vals;
        vals.reserve(static_cast<size_t>(g));
        for (long k = 0; k < g; ++k) vals.push_back(from_coords(v.segment(k * d, d), basis));
        cocycles.push_back(std::move(vals));
    }

    BoundaryReport rep;
    {
        Eigen::MatrixXcd d0 = Eigen::MatrixXcd::Zero(g * d, d);
        for (long k = 0; k < g; ++k)
            d0.block(k * d, 0, d, d) =
                ad[static_cast<size_t>(k)] - Eigen::MatrixXcd::Identity(d, d);
        rep.h1_interior = z1 - rank_float(d0);
    }

    Eigen::MatrixXcd admu = adjoint_of_float(rmu, basis), adlam = adjoint_of_float(rlam, basis);
    {
        Eigen::MatrixXcd stacked(2 * d, d);
        stacked.topRows(d) = admu - Eigen::MatrixXcd::Identity(d, d);
        stacked.bottomRows(d) = adlam - Eigen::MatrixXcd::Identity(d, d);
        long b1t = rank_float(stacked);
        rep.torus_h0 = d - b1t;
        Eigen::MatrixXcd cond(d, 2 * d);
        cond.leftCols(d) = Eigen::MatrixXcd::Identity(d, d) - adlam;
        cond.rightCols(d) = admu - Eigen::MatrixXcd::Identity(d, d);
        rep.torus_z1 = 2 * d - rank_float(cond);
        rep.torus_h1 = rep.torus_z1 - b1t;
    }

    Eigen::MatrixXcd restr(2 * d, z1);
    std::vector<Eigen::MatrixXcd> umu(static_cast<size_t>(z1)), ulam(static_cast<size_t>(z1));
    for (long c = 0; c < z1; ++c) {
        umu[static_cast<size_t>(c)] =
            cochain_on_word(p, rf, cocycles[static_cast<size_t>(c)], p.meridian);
        ulam[static_cast<size_t>(c)] =
            cochain_on_word(p, rf, cocycles[static_cast<size_t>(c)], p.longitude_or_throw());
        restr.col(c).head(d) = sl_coords_float(umu[static_cast<size_t>(c)]);
        restr.col(c).tail(d) = sl_coords_float(ulam[static_cast<size_t>(c)]);
    }
    Eigen::MatrixXcd cob(2 * d, d);
    cob.topRows(d) = admu - Eigen::MatrixXcd::Identity(d, d);
    cob.bottomRows(d) = adlam - Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd both(2 * d, z1 + d);
    both.leftCols(z1) = restr;
    both.rightCols(d) = cob;
    rep.image_dim = rank_float(both) - rank_float(cob);

    // Omega descends to H^1 and should vanish on the whole restriction image
    rep.omega = Eigen::MatrixXcd::Zero(z1, z1);
    Eigen::MatrixXcd rmu_inv = rmu.inverse(), rlam_inv = rlam.inverse();
    double resid = 0.0;
    for (long a = 0; a < z1; ++a)
        for (long b = 0; b < z1; ++b) {
            std::complex<double> om =
                (umu[static_cast<size_t>(a)] * rmu * ulam[static_cast<size_t>(b)] * rmu_inv)
                    .trace() -
                (ulam[static_cast<size_t>(a)] * rlam * umu[static_cast<size_t>(b)] * rlam_inv)
                    .trace();
            rep.omega(a, b) = om;
            resid = std::max(resid, std::abs(om));
        }
    rep.isotropy_residual = resid;
    return rep;
}

} // namespace metarep
