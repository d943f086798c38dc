#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace metarep {

/// One syllable x_gen^exp of a free-group word, exp != 0.
struct Syllable {
    int gen = 0;
    long exp = 0;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word in generators x_0, x_1, ...
/// The empty word is the identity.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Syllable> syllables);

    static Word generator(int gen, long exp = 1);
    /// From signed letters: +k means x_{k-1}, -k means x_{k-1}^{-1} (1-based).
    static Word from_signed_letters(std::span<const int> letters);

    const std::vector<Syllable>& syllables() const { return syls_; }
    bool is_identity() const { return syls_.empty(); }

    /// Total letter count (sum of |exp|).
    long length() const;

    Word operator*(const Word& rhs) const;
    Word inverse() const;
    Word pow(long k) const;

    /// Exponent sum of generator g.
    long exponent_sum(int g) const;
    /// Weighted abelianization: sum over letters of weights[gen]*exp.
    long degree(std::span<const long> weights) const;
    /// Largest generator index appearing, or -1 if identity.
    int max_generator() const;

    /// Expand into single letters (gen, +-1), e.g. for Fox calculus.
    std::vector<std::pair<int, int>> letters() const;

    friend auto operator<=>(const Word&, const Word&) = default;

    std::string str() const; // "x0 x1^-2 ..."

private:
    std::vector<Syllable> syls_;
    void reduce_();
};

} // namespace metarep
