#include "metarep/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "metarep/numth.hpp"

namespace metarep {

namespace {

// dense Z[x] helpers for building cyclotomic polynomials
using ZP = std::vector<mpz_class>; // ascending, no trailing zeros

void zp_trim(ZP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ZP zp_mul(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    ZP c(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

ZP zp_exact_div(ZP a, const ZP& b) {
    ZP q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpz_class(0));
    while (a.size() >= b.size()) {
        zp_trim(a);
        if (a.size() < b.size()) break;
        mpz_class c = a.back() / b.back();
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        zp_trim(a);
        if (!a.empty() && a.size() >= off + b.size())
            throw std::logic_error("inexact cyclotomic division");
    }
    if (!a.empty()) throw std::logic_error("inexact cyclotomic division");
    return q;
}

struct FieldData {
    long n = 1;
    long phi = 1;
    ZP cyclo;                        // Phi_N, monic
    std::vector<std::vector<mpz_class>> power; // x^k mod Phi_N, k in [0, limit)
    long power_limit = 0;
};

std::map<long, FieldData> g_fields;
std::mutex g_fields_mutex;

const FieldData& field(long n) {
    std::lock_guard<std::mutex> lock(g_fields_mutex);
    auto it = g_fields.find(n);
    if (it != g_fields.end()) return it->second;
    if (n < 1) throw std::domain_error("cyclotomic field order must be >= 1");
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::function<ZP(long)> phi_poly = [&](long m) -> ZP {
        auto found = g_fields.find(m);
        if (found != g_fields.end()) return found->second.cyclo;
        ZP num(static_cast<size_t>(m) + 1, mpz_class(0));
        num[0] = -1;
        num[static_cast<size_t>(m)] = 1;
        for (long d : divisors_of(m))
            if (d < m) num = zp_exact_div(std::move(num), phi_poly(d));
        return num;
    };
    FieldData fd;
    fd.n = n;
    fd.cyclo = phi_poly(n);
    fd.phi = static_cast<long>(fd.cyclo.size()) - 1;
    fd.power_limit = std::max<long>(n + 1, 2 * fd.phi);
    fd.power.resize(static_cast<size_t>(fd.power_limit));
    // x^k mod Phi iteratively: multiply by x, fold the top power back
    std::vector<mpz_class> cur(static_cast<size_t>(fd.phi), mpz_class(0));
    if (fd.phi > 0) cur[0] = 1;
    for (long k = 0; k < fd.power_limit; ++k) {
        fd.power[static_cast<size_t>(k)] = cur;
        // shift
        mpz_class top = fd.phi > 0 ? cur[static_cast<size_t>(fd.phi - 1)] : mpz_class(0);
        for (long i = fd.phi - 1; i > 0; --i) cur[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
        if (fd.phi > 0) cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < fd.phi; ++i)
                cur[static_cast<size_t>(i)] -= top * fd.cyclo[static_cast<size_t>(i)];
    }
    auto [pos, inserted] = g_fields.emplace(n, std::move(fd));
    return pos->second;
}

} // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(long n) { return field(n).cyclo; }

CycNum::CycNum() : n_(1), num_(1, mpz_class(0)), den_(1) {}

CycNum::CycNum(long n_field) : n_(n_field), den_(1) {
    num_.assign(static_cast<size_t>(field(n_field).phi), mpz_class(0));
}

CycNum::CycNum(long n_field, const mpq_class& rational) : CycNum(n_field) {
    num_[0] = rational.get_num();
    den_ = rational.get_den();
    canonicalize_();
}

CycNum CycNum::root_of_unity(long n_field, long k) {
    const FieldData& fd = field(n_field);
    CycNum out(n_field);
    long kk = ((k % n_field) + n_field) % n_field;
    out.num_ = fd.power[static_cast<size_t>(kk)];
    out.canonicalize_();
    return out;
}

void CycNum::canonicalize_() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_) x = -x;
    }
    mpz_class g = den_;
    for (const auto& x : num_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1) {
        for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
    bool zero = true;
    for (const auto& x : num_)
        if (x != 0) {
            zero = false;
            break;
        }
    if (zero) den_ = 1;
}

bool CycNum::is_zero() const {
    for (const auto& x : num_)
        if (x != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

mpq_class CycNum::rational_value() const {
    if (!is_rational()) throw std::logic_error("not a rational cyclotomic number");
    mpq_class q(num_[0], den_);
    q.canonicalize();
    return q;
}

namespace {
void check_same_field(const CycNum& a, const CycNum& b) {
    if (a.field_order() != b.field_order())
        throw std::logic_error("cyclotomic field mismatch: Q(zeta_" +
                               std::to_string(a.field_order()) + ") vs Q(zeta_" +
                               std::to_string(b.field_order()) + ")");
}
} // namespace

CycNum CycNum::operator+(const CycNum& r) const {
    if (n_ != r.n_) {
        if (is_zero()) return r;
        if (r.is_zero()) return *this;
        check_same_field(*this, r);
    }
    CycNum out(n_ >= r.n_ ? n_ : r.n_);
    out.num_.resize(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) out.num_[i] = num_[i] * r.den_ + r.num_[i] * den_;
    out.den_ = den_ * r.den_;
    out.canonicalize_();
    return out;
}

CycNum CycNum::operator-(const CycNum& r) const { return *this + (-r); }

CycNum CycNum::operator-() const {
    CycNum out = *this;
    for (auto& x : out.num_) x = -x;
    return out;
}

CycNum CycNum::operator*(const CycNum& r) const {
    if (n_ != r.n_) {
        if (is_zero() || r.is_zero()) return CycNum(std::max(n_, r.n_));
        check_same_field(*this, r);
    }
    const FieldData& fd = field(n_);
    const long phi = fd.phi;
    std::vector<mpz_class> prod(static_cast<size_t>(2 * phi - 1), mpz_class(0));
    for (long i = 0; i < phi; ++i) {
        if (num_[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (r.num_[static_cast<size_t>(j)] == 0) continue;
            prod[static_cast<size_t>(i + j)] += num_[static_cast<size_t>(i)] * r.num_[static_cast<size_t>(j)];
        }
    }
    CycNum out(n_);
    for (long k = 0; k < 2 * phi - 1; ++k) {
        if (prod[static_cast<size_t>(k)] == 0) continue;
        if (k < phi) {
            out.num_[static_cast<size_t>(k)] += prod[static_cast<size_t>(k)];
        } else {
            const auto& row = fd.power[static_cast<size_t>(k)];
            for (long i = 0; i < phi; ++i)
                if (row[static_cast<size_t>(i)] != 0)
                    out.num_[static_cast<size_t>(i)] += prod[static_cast<size_t>(k)] * row[static_cast<size_t>(i)];
        }
    }
    out.den_ = den_ * r.den_;
    out.canonicalize_();
    return out;
}

bool CycNum::operator==(const CycNum& r) const {
    if (n_ != r.n_) {
        if (is_zero() && r.is_zero()) return true;
        if (is_rational() && r.is_rational()) return rational_value() == r.rational_value();
        return false;
    }
    return den_ == r.den_ && num_ == r.num_;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
    const FieldData& fd = field(n_);
    // extended Euclid over Q[x]: s * this + t * Phi_N = gcd = const
    using QP = std::vector<mpq_class>;
    auto trim = [](QP& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    QP a(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) a[i] = mpq_class(num_[i], den_);
    for (auto& x : a) x.canonicalize();
    trim(a);
    QP b(fd.cyclo.size());
    for (size_t i = 0; i < fd.cyclo.size(); ++i) b[i] = mpq_class(fd.cyclo[i]);
    // invariants: a = sa * this mod Phi, b = sb * this mod Phi
    QP sa{mpq_class(1)}, sb{};
    while (true) {
        trim(a);
        if (a.empty()) throw std::logic_error("cyclotomic inverse: zero divisor");
        if (a.size() == 1) break;
        if (a.size() > b.size()) {
            std::swap(a, b);
            std::swap(sa, sb);
            continue;
        }
        // b -= (lead(b)/lead(a)) x^(db-da) * a
        mpq_class c = b.back() / a.back();
        size_t off = b.size() - a.size();
        for (size_t i = 0; i < a.size(); ++i) b[off + i] -= c * a[i];
        if (sb.size() < sa.size() + off) sb.resize(sa.size() + off, mpq_class(0));
        for (size_t i = 0; i < sa.size(); ++i) sb[off + i] -= c * sa[i];
        trim(b);
        if (b.empty()) throw std::logic_error("cyclotomic inverse: zero divisor");
        if (b.size() < a.size()) {
            std::swap(a, b);
            std::swap(sa, sb);
        }
    }
    // a = const = sa * this (mod Phi) => this^{-1} = sa / const
    mpq_class c = a[0];
    CycNum out(n_);
    mpz_class den_lcm = 1;
    sa.resize(static_cast<size_t>(fd.phi), mpq_class(0));
    for (auto& x : sa) {
        x /= c;
        x.canonicalize();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    for (long i = 0; i < fd.phi; ++i)
        out.num_[static_cast<size_t>(i)] = sa[static_cast<size_t>(i)].get_num() *
                                           (den_lcm / sa[static_cast<size_t>(i)].get_den());
    out.den_ = den_lcm;
    out.canonicalize_();
    return out;
}

CycNum CycNum::conj() const {
    const FieldData& fd = field(n_);
    CycNum out(n_);
    for (long i = 0; i < fd.phi; ++i) {
        if (num_[static_cast<size_t>(i)] == 0) continue;
        long k = (n_ - 1) * i % n_;
        const auto& row = fd.power[static_cast<size_t>(k)];
        for (long j = 0; j < fd.phi; ++j)
            if (row[static_cast<size_t>(j)] != 0)
                out.num_[static_cast<size_t>(j)] += num_[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
    }
    out.den_ = den_;
    out.canonicalize_();
    return out;
}

std::complex<double> CycNum::to_complex() const {
    const double angle = 2.0 * std::numbers::pi / static_cast<double>(n_);
    std::complex<double> zeta(std::cos(angle), std::sin(angle));
    std::complex<double> out = 0.0, p = 1.0;
    for (size_t i = 0; i < num_.size(); ++i) {
        out += num_[i].get_d() * p;
        p *= zeta;
    }
    return out / den_.get_d();
}

CycNum CycNum::promoted(long m_field) const {
    if (m_field == n_) return *this;
    if (m_field % n_ != 0) throw std::logic_error("promotion target is not a multiple");
    const long stride = m_field / n_;
    const FieldData& fd = field(m_field);
    CycNum out(m_field);
    for (size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const auto& row = fd.power[static_cast<size_t>((static_cast<long>(i) * stride) % m_field)];
        for (long j = 0; j < fd.phi; ++j)
            if (row[static_cast<size_t>(j)] != 0)
                out.num_[static_cast<size_t>(j)] += num_[i] * row[static_cast<size_t>(j)];
    }
    out.den_ = den_;
    out.canonicalize_();
    return out;
}

std::string CycNum::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < num_.size(); ++i) {
        if (i) os << ",";
        os << num_[i].get_str();
    }
    os << ")/" << den_.get_str() << " in Q(zeta_" << n_ << ")";
    return os.str();
}

std::vector<std::string> CycNum::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(num_.size());
    for (const auto& x : num_) {
        mpq_class q(x, den_);
        q.canonicalize();
        out.push_back(q.get_str());
    }
    return out;
}

CycNum CycNum::from_coeff_strings(long n_field, const std::vector<std::string>& coeffs) {
    const FieldData& fd = field(n_field);
    if (static_cast<long>(coeffs.size()) != fd.phi)
        throw std::invalid_argument("coefficient vector length != phi(N)");
    CycNum out(n_field);
    mpz_class den_lcm = 1;
    std::vector<mpq_class> qs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        qs[i] = mpq_class(coeffs[i]);
        qs[i].canonicalize();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), qs[i].get_den().get_mpz_t());
    }
    for (size_t i = 0; i < coeffs.size(); ++i)
        out.num_[i] = qs[i].get_num() * (den_lcm / qs[i].get_den());
    out.den_ = den_lcm;
    out.canonicalize_();
    return out;
}

// ---------------------------------------------------------------------------
// matrix helpers

CycMat cyc_zero(long n_field, Eigen::Index r, Eigen::Index c) {
    CycMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = CycNum(n_field);
    return m;
}

CycMat cyc_identity(long n_field, Eigen::Index n) {
    CycMat m = cyc_zero(n_field, n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = CycNum(n_field, 1);
    return m;
}

CycMat cyc_mul(const CycMat& a, const CycMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("cyc_mul shape");
    long nf = a.size() ? a(0, 0).field_order() : 1;
    CycMat c = cyc_zero(nf, a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j) {
                if (b(k, j).is_zero()) continue;
                c(i, j) += a(i, k) * b(k, j);
            }
        }
    return c;
}

CycMat cyc_add(const CycMat& a, const CycMat& b) {
    CycMat c = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

CycMat cyc_sub(const CycMat& a, const CycMat& b) {
    CycMat c = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

CycMat cyc_scale(const CycNum& s, const CycMat& a) {
    CycMat c = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

CycNum cyc_trace(const CycMat& a) {
    CycNum t(a.size() ? a(0, 0).field_order() : 1);
    for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

CycMat cyc_transpose(const CycMat& a) {
    CycMat c(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

CycMat cyc_conj_transpose(const CycMat& a) {
    CycMat c(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(j, i) = a(i, j).conj();
    return c;
}

bool cyc_is_zero(const CycMat& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

bool cyc_equal(const CycMat& a, const CycMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

CycMat cyc_pow(const CycMat& a, long k) {
    long nf = a.size() ? a(0, 0).field_order() : 1;
    CycMat base = k >= 0 ? a : cyc_inverse(a);
    long e = std::labs(k);
    CycMat out = cyc_identity(nf, a.rows());
    while (e > 0) {
        if (e & 1) out = cyc_mul(out, base);
        base = cyc_mul(base, base);
        e >>= 1;
    }
    return out;
}

namespace {
// row-echelon elimination; returns rank, optionally accumulating a transform
long eliminate(CycMat& a, std::vector<Eigen::Index>* pivot_cols = nullptr) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < rows; ++i)
            if (!a(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (Eigen::Index j = 0; j < cols; ++j) std::swap(a(row, j), a(piv, j));
        CycNum inv = a(row, col).inverse();
        for (Eigen::Index j = col; j < cols; ++j) a(row, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            CycNum f = a(i, col);
            for (Eigen::Index j = col; j < cols; ++j) a(i, j) -= f * a(row, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++row;
    }
    return row;
}
} // namespace

long cyc_rank(CycMat a) { return eliminate(a); }

CycNum cyc_det(CycMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cyc_det shape");
    const Eigen::Index n = a.rows();
    long nf = n ? a(0, 0).field_order() : 1;
    CycNum det(nf, 1);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = col; i < n; ++i)
            if (!a(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return CycNum(nf);
        if (piv != col) {
            for (Eigen::Index j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        CycNum inv = a(col, col).inverse();
        for (Eigen::Index i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            CycNum f = a(i, col) * inv;
            for (Eigen::Index j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

CycMat cyc_inverse(CycMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cyc_inverse shape");
    const Eigen::Index n = a.rows();
    long nf = n ? a(0, 0).field_order() : 1;
    CycMat aug = cyc_zero(nf, n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = CycNum(nf, 1);
    }
    long rank = eliminate(aug);
    if (rank != n) throw std::domain_error("singular cyclotomic matrix");
    CycMat inv = cyc_zero(nf, n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

CycMat cyc_kernel(CycMat a) {
    long nf = a.size() ? a(0, 0).field_order() : 1;
    const Eigen::Index cols = a.cols();
    std::vector<Eigen::Index> pivots;
    long rank = eliminate(a, &pivots);
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (Eigen::Index c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    CycMat k = cyc_zero(nf, cols, cols - rank);
    Eigen::Index kc = 0;
    for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        k(free_col, kc) = CycNum(nf, 1);
        for (long pr = 0; pr < rank; ++pr)
            k(pivots[static_cast<size_t>(pr)], kc) = -a(pr, free_col);
        ++kc;
    }
    return k;
}

Eigen::MatrixXcd cyc_to_complex(const CycMat& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_complex();
    return m;
}

} // namespace metarep
