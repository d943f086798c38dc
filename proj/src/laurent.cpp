#include "metarep/laurent.hpp"

#include <sstream>
#include <stdexcept>

#include "metarep/zmat.hpp"

namespace metarep {

void LaurentPoly::set(long deg, mpz_class coeff) {
    if (coeff == 0)
        c_.erase(deg);
    else
        c_[deg] = std::move(coeff);
}

mpz_class LaurentPoly::coeff(long deg) const {
    auto it = c_.find(deg);
    return it == c_.end() ? mpz_class(0) : it->second;
}

bool LaurentPoly::is_unit() const {
    return c_.size() == 1 && abs(c_.begin()->second) == 1;
}

long LaurentPoly::min_degree() const {
    if (c_.empty()) throw std::logic_error("min_degree of zero polynomial");
    return c_.begin()->first;
}

long LaurentPoly::max_degree() const {
    if (c_.empty()) throw std::logic_error("max_degree of zero polynomial");
    return c_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& r) const {
    LaurentPoly out = *this;
    for (const auto& [d, c] : r.c_) out.set(d, out.coeff(d) + c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& r) const {
    LaurentPoly out = *this;
    for (const auto& [d, c] : r.c_) out.set(d, out.coeff(d) - c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& r) const {
    LaurentPoly out;
    for (const auto& [d1, c1] : c_)
        for (const auto& [d2, c2] : r.c_) out.set(d1 + d2, out.coeff(d1 + d2) + c1 * c2);
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [d, c] : c_) out.c_[d] = -c;
    return out;
}

LaurentPoly LaurentPoly::shifted(long k) const {
    LaurentPoly out;
    for (const auto& [d, c] : c_) out.c_[d + k] = c;
    return out;
}

LaurentPoly LaurentPoly::reversed() const {
    LaurentPoly out;
    for (const auto& [d, c] : c_) out.c_[-d] = c;
    return out;
}

LaurentPoly LaurentPoly::substituted_neg() const {
    LaurentPoly out;
    for (const auto& [d, c] : c_) out.c_[d] = (d % 2 == 0) ? c : -c;
    return out;
}

LaurentPoly LaurentPoly::normalized() const {
    if (is_zero()) return *this;
    LaurentPoly out = shifted(-min_degree());
    if (out.c_.rbegin()->second < 0) out = -out;
    return out;
}

bool LaurentPoly::equals_up_to_unit(const LaurentPoly& r) const {
    if (is_zero() || r.is_zero()) return is_zero() == r.is_zero();
    LaurentPoly a = shifted(-min_degree());
    LaurentPoly b = r.shifted(-r.min_degree());
    return a == b || a == -b;
}

bool LaurentPoly::is_palindromic_up_to_unit() const {
    return is_zero() || equals_up_to_unit(reversed());
}

mpz_class LaurentPoly::eval_int(const mpz_class& x) const {
    mpz_class out = 0;
    if (x == 1) {
        for (const auto& [d, c] : c_) out += c;
        return out;
    }
    if (x == -1) {
        for (const auto& [d, c] : c_) out += (d % 2 == 0) ? c : -c;
        return out;
    }
    for (const auto& [d, c] : c_) {
        if (d < 0) throw std::domain_error("negative degree at integer argument");
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(d));
        out += c * p;
    }
    return out;
}

std::complex<double> LaurentPoly::eval(std::complex<double> x) const {
    std::complex<double> out = 0.0;
    for (const auto& [d, c] : c_) out += c.get_d() * std::pow(x, static_cast<double>(d));
    return out;
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    LaurentPoly rem = *this;
    LaurentPoly quot;
    while (!rem.is_zero()) {
        long dd = rem.max_degree() - d.max_degree();
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rem.c_.rbegin()->second.get_mpz_t(),
                    d.c_.rbegin()->second.get_mpz_t());
        if (r != 0) throw std::domain_error("inexact polynomial division");
        LaurentPoly term(dd, qc);
        quot = quot + term;
        rem = rem - term * d;
        if (!rem.is_zero() && rem.max_degree() >= dd + d.max_degree())
            throw std::domain_error("inexact polynomial division");
    }
    return quot;
}

mpz_class LaurentPoly::content() const {
    mpz_class g = 0;
    for (const auto& [d, c] : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

LaurentPoly LaurentPoly::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    LaurentPoly out;
    for (const auto& [d, c] : c_) out.c_[d] = c / g;
    return out;
}

LaurentPoly LaurentPoly::gcd(LaurentPoly a, LaurentPoly b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    mpz_class cont;
    mpz_gcd(cont.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    a = a.primitive_part().normalized();
    b = b.primitive_part().normalized();
    // primitive PRS: pseudo-remainders, re-primitivized each step
    while (!b.is_zero()) {
        if (a.max_degree() < b.max_degree()) std::swap(a, b);
        // pseudo-divide a by b
        long k = a.max_degree() - b.max_degree() + 1;
        mpz_class lb = b.c_.rbegin()->second;
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(k));
        LaurentPoly rem = LaurentPoly::constant(scale) * a;
        while (!rem.is_zero() && rem.max_degree() >= b.max_degree()) {
            long dd = rem.max_degree() - b.max_degree();
            mpz_class qc = rem.c_.rbegin()->second / lb;
            rem = rem - LaurentPoly(dd, qc) * b;
        }
        a = b;
        b = rem.is_zero() ? rem : rem.primitive_part().normalized();
    }
    return (LaurentPoly::constant(cont) * a).normalized();
}

mpz_class resultant_with_cyclotomic_units(const LaurentPoly& p, long n) {
    if (p.is_zero()) throw std::domain_error("resultant of zero polynomial");
    LaurentPoly q = p.shifted(-p.min_degree());
    const long dp = q.max_degree();
    if (dp == 0) {
        // Res(c, t^n - 1) = c^n
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), q.coeff(0).get_mpz_t(), static_cast<unsigned long>(n));
        return abs(out);
    }
    // Sylvester matrix of q (degree dp) and t^n - 1, size dp + n
    const long size = dp + n;
    ZMat s = zmat_zero(size, size);
    for (long row = 0; row < n; ++row)
        for (long j = 0; j <= dp; ++j) s(row, row + j) = q.coeff(dp - j);
    for (long row = 0; row < dp; ++row) {
        s(n + row, row) = 1;            // t^n
        s(n + row, row + n) = -1;       // -1
    }
    return abs(bareiss_det(std::move(s)));
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [d, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        mpz_class a = first ? c : mpz_class(abs(c));
        first = false;
        if (d == 0 || abs(a) != 1) os << a.get_str();
        else if (a == -1) os << '-';
        if (d != 0) {
            os << 't';
            if (d != 1) os << '^' << d;
        }
    }
    return os.str();
}

} // namespace metarep
