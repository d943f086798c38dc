#include "metarep/character.hpp"

#include "metarep/errors.hpp"
#include "metarep/numth.hpp"

namespace metarep {

Character::Character(std::shared_ptr<const FinAbT> ambient, std::vector<mpz_class> exponents)
    : ambient_(std::move(ambient)), exponents_(std::move(exponents)) {
    if (!ambient_->is_finite())
        throw InfiniteFamily("characters of an infinite H_1(L_n) form an infinite family");
    if (exponents_.size() != ambient_->invariant_factors.size())
        throw std::invalid_argument("character exponent count != invariant factor count");
    for (size_t i = 0; i < exponents_.size(); ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), exponents_[i].get_mpz_t(),
                   ambient_->invariant_factors[i].get_mpz_t());
        exponents_[i] = r;
    }
    order_ = compute_order_();
}

bool Character::is_trivial() const {
    for (const auto& a : exponents_)
        if (a != 0) return false;
    return true;
}

namespace {
// (t chi)(e_j) = chi(T e_j); with m the group exponent,
// a'_j = [sum_i a_i T_ij (m/d_i)] / (m/d_j) mod d_j
std::vector<mpz_class> t_transform_exponents(const FinAbT& g,
                                             const std::vector<mpz_class>& a) {
    const auto& d = g.invariant_factors;
    const size_t k = d.size();
    const mpz_class m = k ? d.back() : mpz_class(1);
    std::vector<mpz_class> out(k);
    for (size_t j = 0; j < k; ++j) {
        mpz_class acc = 0;
        for (size_t i = 0; i < k; ++i)
            acc += a[i] * g.t_matrix(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j)) *
                   (m / d[i]);
        mpz_class unit = m / d[j], q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), unit.get_mpz_t());
        if (r != 0) throw std::logic_error("t-action does not preserve the character lattice");
        mpz_fdiv_r(out[j].get_mpz_t(), q.get_mpz_t(), d[j].get_mpz_t());
    }
    return out;
}
} // namespace

Character Character::t_shifted() const {
    return Character(ambient_, t_transform_exponents(*ambient_, exponents_));
}

Character Character::adjoint_twist(long i) const {
    // chi_i(v) = chi(v)^{-1} chi(t^i v): exponents of chi o t^i minus chi
    Character shifted = *this;
    long steps = ((i % ambient_->n) + ambient_->n) % ambient_->n;
    for (long s = 0; s < steps; ++s) shifted = shifted.t_shifted();
    std::vector<mpz_class> out(exponents_.size());
    for (size_t j = 0; j < out.size(); ++j) out[j] = shifted.exponents_[j] - exponents_[j];
    return Character(ambient_, std::move(out));
}

mpz_class Character::eval_exponent(const ZVec& h) const {
    const auto& d = ambient_->invariant_factors;
    const mpz_class m = d.empty() ? mpz_class(1) : d.back();
    mpz_class acc = 0;
    for (size_t i = 0; i < d.size(); ++i)
        acc += exponents_[i] * h(static_cast<Eigen::Index>(i)) * (m / d[i]);
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    return r;
}

CycNum Character::eval(const ZVec& h, long field) const {
    const auto& d = ambient_->invariant_factors;
    const mpz_class m = d.empty() ? mpz_class(1) : d.back();
    if (mpz_class(field) % m != 0)
        throw std::logic_error("field order not divisible by group exponent");
    mpz_class stride = mpz_class(field) / m;
    mpz_class k = eval_exponent(h) * stride;
    unsigned long kk = mpz_fdiv_ui(k.get_mpz_t(), static_cast<unsigned long>(field));
    return CycNum::root_of_unity(field, static_cast<long>(kk));
}

long Character::compute_order_() const {
    std::vector<mpz_class> cur = t_transform_exponents(*ambient_, exponents_);
    long l = 1;
    while (cur != exponents_) {
        cur = t_transform_exponents(*ambient_, cur);
        ++l;
        if (l > ambient_->n)
            throw std::logic_error("character order exceeds n; t-action inconsistent");
    }
    return l;
}

void enumerate_characters(std::shared_ptr<const FinAbT> hn,
                          const std::function<void(const Character&, long)>& yield) {
    if (!hn->is_finite())
        throw InfiniteFamily("enumerate_characters requires b_1(L_n) = 0");
    const auto& d = hn->invariant_factors;
    std::vector<mpz_class> a(d.size(), mpz_class(0));
    for (;;) {
        Character chi(hn, a);
        yield(chi, chi.order());
        if (d.empty()) return;
        // odometer, last index fastest (lexicographic ascending)
        size_t i = d.size();
        for (;;) {
            --i;
            a[i] += 1;
            if (a[i] < d[i]) break;
            a[i] = 0;
            if (i == 0) return;
        }
    }
}

std::vector<std::pair<Character, long>> enumerate_characters(std::shared_ptr<const FinAbT> hn) {
    std::vector<std::pair<Character, long>> out;
    enumerate_characters(hn, [&](const Character& c, long orbit) { out.emplace_back(c, orbit); });
    return out;
}

std::vector<Character> orbit_representatives(std::shared_ptr<const FinAbT> hn, long order) {
    std::vector<Character> reps;
    enumerate_characters(hn, [&](const Character& chi, long orb) {
        if (orb != order) return;
        Character cur = chi.t_shifted();
        while (!(cur == chi)) {
            if (cur < chi) return; // not the smallest in its orbit
            cur = cur.t_shifted();
        }
        reps.push_back(chi);
    });
    return reps;
}

bool conjugate_classes_equal(const Character& chi1, const Character& chi2) {
    if (chi1.ambient().invariant_factors != chi2.ambient().invariant_factors ||
        chi1.ambient().n != chi2.ambient().n)
        throw std::invalid_argument("characters of different groups");
    Character cur = chi1;
    for (long k = 0; k < chi1.ambient().n; ++k) {
        if (cur == chi2) return true;
        cur = cur.t_shifted();
    }
    return false;
}

std::optional<mpz_class> count_classes(const LaurentPoly& delta, long n) {
    auto rn = torsion_order_resultant(delta, n);
    if (!rn) return std::nullopt;
    mpz_class total = 0;
    for (long d : divisors_of(n)) {
        int mu = mobius(n / d);
        if (mu == 0) continue;
        auto rd = torsion_order_resultant(delta, d);
        total += mu * *rd; // d | n and b_1(L_n) = 0 force b_1(L_d) = 0
    }
    mpz_class q, r;
    mpz_class nn(n);
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), total.get_mpz_t(), nn.get_mpz_t());
    if (r != 0) throw std::logic_error("order-n character count not divisible by n");
    return q;
}

std::optional<mpz_class> count_classes(const KnotPresentation& p, long n) {
    auto delta = alexander_poly(p);
    auto fast = torsion_order_resultant(delta, n);
    if (fast) return count_classes(delta, n);

    // b_1(L_n) > 0: the character set is infinite, but order-n characters can
    // still be absent. chi has order dividing n/q iff it kills
    // M_q = im(t^{n/q} - 1); order-n characters exist iff some character
    // avoids killing every M_q.
    FinAbT b = branched_homology(p, n);
    const long dim = b.dim();
    const long tor = static_cast<long>(b.invariant_factors.size());
    std::vector<std::vector<ZVec>> m_gens; // torsion parts of the M_q generators
    bool any_infinite = false;
    auto primes = prime_factors(n);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long q : primes) {
        long e = n / q;
        ZMat tk = zmat_identity(dim);
        for (long i = 0; i < e; ++i) tk = zmat_mul(b.t_matrix, tk);
        std::vector<ZVec> gens;
        bool zero_subgroup = true, infinite = false;
        for (long j = 0; j < dim; ++j) {
            ZVec col(dim);
            for (long i = 0; i < dim; ++i) col(i) = tk(i, j) - (i == j ? 1 : 0);
            col = b.reduce(std::move(col));
            bool nonzero = false;
            for (long i = 0; i < dim; ++i)
                if (col(i) != 0) {
                    nonzero = true;
                    if (i >= tor) infinite = true;
                }
            if (nonzero) {
                zero_subgroup = false;
                gens.push_back(col);
            }
        }
        if (zero_subgroup) return mpz_class(0); // every chi is fixed by t^{n/q}
        if (infinite) {
            any_infinite = true;
            continue;
        }
        m_gens.push_back(std::move(gens));
    }
    if (m_gens.empty()) return std::nullopt; // all constraints infinite: infinite family
    // rare branch: some M_q is a finite nonzero subgroup; decide existence on
    // the torsion dual, where characters restrict faithfully
    mpz_class torsion = b.torsion_order();
    if (torsion > 100000) throw Intractable("torsion dual too large: " + torsion.get_str());
    std::vector<mpz_class> a(static_cast<size_t>(tor), mpz_class(0));
    const auto& d = b.invariant_factors;
    const mpz_class m = d.empty() ? mpz_class(1) : d.back();
    auto psi_kills = [&](const std::vector<ZVec>& gens) {
        for (const auto& g : gens) {
            mpz_class acc = 0;
            for (long i = 0; i < tor; ++i) acc += a[static_cast<size_t>(i)] * g(i) * (m / d[static_cast<size_t>(i)]);
            if (acc % m != 0) return false; // psi(g) != 1
        }
        return true;
    };
    for (;;) {
        bool avoids_all = true;
        for (const auto& gens : m_gens)
            if (psi_kills(gens)) {
                avoids_all = false;
                break;
            }
        if (avoids_all) return std::nullopt; // an order-n character exists: infinite family
        size_t i = a.size();
        bool done = a.empty();
        while (i > 0) {
            --i;
            a[i] += 1;
            if (a[i] < d[i]) break;
            a[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return mpz_class(0);
}

mpz_class rn_lower_bound(const LaurentPoly& delta, long n) {
    auto rn = torsion_order_resultant(delta, n);
    if (!rn) throw InfiniteFamily("b_1(L_n) > 0");
    mpz_class rhs = *rn;
    for (long pr : prime_factors(n)) {
        auto rd = torsion_order_resultant(delta, n / pr);
        if (!rd) throw InfiniteFamily("b_1(L_{n/p}) > 0");
        rhs -= *rd;
    }
    mpz_class q, nn(n);
    mpz_cdiv_q(q.get_mpz_t(), rhs.get_mpz_t(), nn.get_mpz_t());
    if (q < 0) q = 0;
    return q;
}

mpz_class rn_lower_bound(const KnotPresentation& p, long n) {
    return rn_lower_bound(alexander_poly(p), n);
}

} // namespace metarep
