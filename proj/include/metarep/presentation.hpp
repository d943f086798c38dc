#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "metarep/word.hpp"

namespace metarep {

enum class KnotSource { Braid, PD, Torus, Manual };

/// Group presentation of a knot exterior with peripheral data.
/// The single source of truth for all downstream computation.
///
/// Construction validates: H_1 = Z by integer Smith form of the
/// abelianized relator matrix, meridian mapping to a generator (the
/// abelianization is sign-normalized so the meridian maps to +1),
/// deficiency 1 for Braid/PD/Torus sources, and, when a longitude is
/// present, that it is null-homologous.
struct KnotPresentation {
    int num_generators = 0;
    std::vector<Word> relators;
    Word meridian;
    std::optional<Word> longitude;
    KnotSource source = KnotSource::Manual;

    /// Abelianization degree of each generator; meridian has degree +1.
    std::vector<long> abelian_degrees;

    long degree(const Word& w) const { return w.degree(abelian_degrees); }

    const Word& longitude_or_throw() const;
};

/// Validate invariants and fill abelian_degrees. Throws on violation.
KnotPresentation finalize_presentation(KnotPresentation p);

/// Braid word -> Wirtinger presentation of the closure complement.
/// Tokens: "s3" / "S3" / "-s3" / "3" / "-3", whitespace separated;
/// sK with 1 <= K < strands. One generator per arc of the closed-braid
/// diagram, one crossing relator dropped (the last).
KnotPresentation parse_braid(const std::string& text, int strands);

/// Planar diagram code -> Wirtinger presentation. Each crossing is a
/// 4-tuple of edge labels listed counterclockwise starting at the
/// incoming under-strand; edges are numbered 1..2c along the orientation.
KnotPresentation parse_pd(const std::vector<std::array<int, 4>>& code);

/// <x,y | x^p y^-q> with meridian x^s y^r, rp + sq = 1 (smallest
/// nonnegative s) and longitude x^p mu^{-pq}.
KnotPresentation torus_knot(long p, long q);

/// Presentation of the unknot exterior <x | > with mu = x, lambda = 1.
KnotPresentation unknot();

/// Manual presentation; longitude optional.
KnotPresentation manual_presentation(int num_generators, std::vector<Word> relators,
                                     Word meridian, std::optional<Word> longitude);

/// Look up a PD code in the bundled knot table ("3_1", "10_153", ...).
std::vector<std::array<int, 4>> load_table(const std::string& name);
std::vector<std::array<int, 4>> load_table(const std::string& name,
                                           const std::string& table_path);
/// Path used by the single-argument load_table (data/knot_table.txt next to
/// the binary or METAREP_TABLE env override).
std::string default_table_path();

/// Convenience: resolve a CLI-style knot spec. Accepted forms:
///   "unknot", table names ("4_1"), "torus:p,q",
///   "braid:s1 s1 s1:2" (word:strands), "pd:(1,4,2,5)(3,6,4,1)(5,2,6,3)",
///   "manual:<file>".
KnotPresentation resolve_knot_spec(const std::string& spec);

int pd_crossing_sign(const std::array<int, 4>& x, int num_edges);

} // namespace metarep
