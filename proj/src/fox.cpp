#include "metarep/fox.hpp"

namespace metarep {

void FreeGroupRingElt::add(const Word& w, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

FreeGroupRingElt FreeGroupRingElt::operator+(const FreeGroupRingElt& rhs) const {
    FreeGroupRingElt out = *this;
    for (const auto& [w, c] : rhs.terms) out.add(w, c);
    return out;
}

FreeGroupRingElt FreeGroupRingElt::operator-(const FreeGroupRingElt& rhs) const {
    FreeGroupRingElt out = *this;
    for (const auto& [w, c] : rhs.terms) out.add(w, -c);
    return out;
}

FreeGroupRingElt FreeGroupRingElt::translated(const Word& w) const {
    FreeGroupRingElt out;
    for (const auto& [u, c] : terms) out.add(w * u, c);
    return out;
}

FreeGroupRingElt FreeGroupRingElt::operator*(const FreeGroupRingElt& rhs) const {
    FreeGroupRingElt out;
    for (const auto& [u, cu] : terms)
        for (const auto& [v, cv] : rhs.terms) out.add(u * v, cu * cv);
    return out;
}

FreeGroupRingElt FreeGroupRingElt::one() { return of(Word()); }

FreeGroupRingElt FreeGroupRingElt::of(const Word& w, mpz_class c) {
    FreeGroupRingElt e;
    e.add(w, c);
    return e;
}

FreeGroupRingElt fox_derivative(const Word& w, int k) {
    // d(l1 l2 ... lm)/dx_k = sum over letters, prefix-translated base cases.
    FreeGroupRingElt out;
    Word prefix;
    for (const auto& [gen, sign] : w.letters()) {
        Word letter = Word::generator(gen, sign);
        if (gen == k) {
            if (sign > 0) {
                out.add(prefix, 1);
            } else {
                out.add(prefix * letter, -1);
            }
        }
        prefix = prefix * letter;
    }
    return out;
}

} // namespace metarep
