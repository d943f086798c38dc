#include "metarep/word.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace metarep {

Word::Word(std::vector<Syllable> syllables) : syls_(std::move(syllables)) {
    for (const auto& s : syls_) {
        if (s.exp == 0) throw std::invalid_argument("zero exponent syllable");
        if (s.gen < 0) throw std::invalid_argument("negative generator index");
    }
    reduce_();
}

Word Word::generator(int gen, long exp) {
    if (exp == 0) return Word();
    return Word({Syllable{gen, exp}});
}

Word Word::from_signed_letters(std::span<const int> letters) {
    std::vector<Syllable> syls;
    syls.reserve(letters.size());
    for (int l : letters) {
        if (l == 0) throw std::invalid_argument("zero letter");
        syls.push_back({std::abs(l) - 1, l > 0 ? 1L : -1L});
    }
    return Word(std::move(syls));
}

void Word::reduce_() {
    std::vector<Syllable> out;
    for (const auto& s : syls_) {
        if (!out.empty() && out.back().gen == s.gen) {
            out.back().exp += s.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(s);
        }
    }
    syls_ = std::move(out);
}

long Word::length() const {
    long n = 0;
    for (const auto& s : syls_) n += std::labs(s.exp);
    return n;
}

Word Word::operator*(const Word& rhs) const {
    Word w;
    w.syls_ = syls_;
    w.syls_.insert(w.syls_.end(), rhs.syls_.begin(), rhs.syls_.end());
    w.reduce_();
    return w;
}

Word Word::inverse() const {
    Word w;
    w.syls_.reserve(syls_.size());
    for (auto it = syls_.rbegin(); it != syls_.rend(); ++it)
        w.syls_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(long k) const {
    if (k == 0) return Word();
    Word base = k > 0 ? *this : inverse();
    long m = std::labs(k);
    Word acc;
    for (long i = 0; i < m; ++i) acc = acc * base;
    return acc;
}

long Word::exponent_sum(int g) const {
    long n = 0;
    for (const auto& s : syls_)
        if (s.gen == g) n += s.exp;
    return n;
}

long Word::degree(std::span<const long> weights) const {
    long n = 0;
    for (const auto& s : syls_) n += weights[static_cast<size_t>(s.gen)] * s.exp;
    return n;
}

int Word::max_generator() const {
    int m = -1;
    for (const auto& s : syls_) m = std::max(m, s.gen);
    return m;
}

std::vector<std::pair<int, int>> Word::letters() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(length()));
    for (const auto& s : syls_) {
        int sign = s.exp > 0 ? 1 : -1;
        for (long i = 0; i < std::labs(s.exp); ++i) out.emplace_back(s.gen, sign);
    }
    return out;
}

std::string Word::str() const {
    if (syls_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : syls_) {
        if (!first) os << ' ';
        first = false;
        os << 'x' << s.gen;
        if (s.exp != 1) os << '^' << s.exp;
    }
    return os.str();
}

} // namespace metarep
