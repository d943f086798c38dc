#include "metarep/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "metarep/errors.hpp"
#include "metarep/zmat.hpp"

namespace metarep {

const Word& KnotPresentation::longitude_or_throw() const {
    if (!longitude) throw MissingLongitude("presentation carries no longitude");
    return *longitude;
}

KnotPresentation finalize_presentation(KnotPresentation p) {
    const int g = p.num_generators;
    if (g <= 0) throw ParseError("presentation needs at least one generator");
    if (p.source != KnotSource::Manual &&
        static_cast<int>(p.relators.size()) != g - 1)
        throw ParseError("deficiency-1 violation: " + std::to_string(p.relators.size()) +
                         " relators for " + std::to_string(g) + " generators");

    // abelianized relator matrix, generators as rows
    ZMat m = zmat_zero(g, static_cast<Eigen::Index>(p.relators.size()));
    for (size_t j = 0; j < p.relators.size(); ++j)
        for (int k = 0; k < g; ++k) m(k, static_cast<Eigen::Index>(j)) = p.relators[j].exponent_sum(k);
    SmithForm s = smith_form(m);
    const long r = s.rank();
    for (long i = 0; i < r; ++i)
        if (s.d(i, i) != 1)
            throw ParseError("H1 is not Z: invariant factor " + s.d(i, i).get_str());
    if (g - r != 1) throw ParseError("H1 has rank " + std::to_string(g - r) + ", not 1");

    // the free coordinate of coker = row r of U; degree of x_k = U(r, k)
    std::vector<long> deg(static_cast<size_t>(g));
    for (int k = 0; k < g; ++k) {
        if (!s.u(r, k).fits_slong_p()) throw ParseError("abelianization overflow");
        deg[static_cast<size_t>(k)] = s.u(r, k).get_si();
    }
    long dmu = p.meridian.degree(deg);
    if (dmu != 1 && dmu != -1)
        throw ParseError("meridian maps to " + std::to_string(dmu) + " in H1, not a generator");
    if (dmu == -1)
        for (auto& x : deg) x = -x;
    p.abelian_degrees = std::move(deg);

    if (p.longitude && p.degree(*p.longitude) != 0)
        throw ParseError("longitude is not null-homologous");
    return p;
}

// ---------------------------------------------------------------------------
// braid closures

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(static_cast<size_t>(n)) {
        std::iota(up.begin(), up.end(), 0);
    }
    int find(int x) {
        while (up[static_cast<size_t>(x)] != x) {
            up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
            x = up[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { up[static_cast<size_t>(find(a))] = find(b); }
};

std::vector<int> parse_braid_tokens(const std::string& text, int strands) {
    std::vector<int> word;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        bool neg = false;
        size_t i = 0;
        if (tok[i] == '-') {
            neg = true;
            ++i;
        }
        if (i < tok.size() && (tok[i] == 's' || tok[i] == 'S')) {
            if (tok[i] == 'S') neg = !neg;
            ++i;
        }
        if (i >= tok.size()) throw ParseError("bad braid token '" + tok + "'");
        int k = 0;
        for (; i < tok.size(); ++i) {
            if (!isdigit(static_cast<unsigned char>(tok[i])))
                throw ParseError("bad braid token '" + tok + "'");
            k = k * 10 + (tok[i] - '0');
        }
        if (k < 1 || k >= strands)
            throw ParseError("braid generator s" + std::to_string(k) + " out of range for " +
                             std::to_string(strands) + " strands");
        word.push_back(neg ? -k : k);
    }
    if (word.empty()) throw ParseError("empty braid word");
    return word;
}

struct BraidCrossing {
    int over, under_in, under_out; // arc ids
    int sign;
    int under_strand_entry; // arc id of the under strand before the crossing
};

} // namespace

KnotPresentation parse_braid(const std::string& text, int strands) {
    if (strands < 2) throw ParseError("need at least 2 strands");
    std::vector<int> word = parse_braid_tokens(text, strands);
    const int c = static_cast<int>(word.size());

    // closure permutation must be a single cycle
    {
        std::vector<int> perm(static_cast<size_t>(strands));
        std::iota(perm.begin(), perm.end(), 0);
        for (int w : word) {
            int i = std::abs(w) - 1;
            std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(i + 1)]);
        }
        int x = 0, steps = 0;
        do {
            x = perm[static_cast<size_t>(x)];
            ++steps;
        } while (x != 0);
        if (steps != strands)
            throw MultiComponentLink("braid closure has more than one component");
    }

    // arcs: ids 0..strands-1 at the top, new id per undercrossing
    std::vector<int> cur(static_cast<size_t>(strands));
    std::iota(cur.begin(), cur.end(), 0);
    int next_arc = strands;
    std::vector<BraidCrossing> crossings;
    crossings.reserve(static_cast<size_t>(c));
    for (int w : word) {
        int i = std::abs(w) - 1;
        int left = cur[static_cast<size_t>(i)], right = cur[static_cast<size_t>(i + 1)];
        int sign = w > 0 ? 1 : -1;
        int over = sign > 0 ? left : right;
        int under = sign > 0 ? right : left;
        int fresh = next_arc++;
        crossings.push_back({over, under, fresh, sign, under});
        if (sign > 0) { // left passes over and moves to i+1
            cur[static_cast<size_t>(i)] = fresh;
            cur[static_cast<size_t>(i + 1)] = over;
        } else {
            cur[static_cast<size_t>(i)] = over;
            cur[static_cast<size_t>(i + 1)] = fresh;
        }
    }
    UnionFind uf(next_arc);
    for (int pth = 0; pth < strands; ++pth) uf.unite(cur[static_cast<size_t>(pth)], pth);

    // enumerate generator classes
    std::vector<int> cls(static_cast<size_t>(next_arc), -1);
    int g = 0;
    auto gen_of = [&](int arc) {
        int root = uf.find(arc);
        if (cls[static_cast<size_t>(root)] < 0) cls[static_cast<size_t>(root)] = g++;
        return cls[static_cast<size_t>(root)];
    };
    int mer = gen_of(0);
    std::vector<Word> relators;
    for (int j = 0; j < c; ++j) {
        const auto& cr = crossings[static_cast<size_t>(j)];
        int o = gen_of(cr.over), u = gen_of(cr.under_in), uo = gen_of(cr.under_out);
        if (j + 1 == c) continue; // dropped relator
        Word w = Word::generator(uo, -1) * Word::generator(o, cr.sign) *
                 Word::generator(u) * Word::generator(o, -cr.sign);
        relators.push_back(std::move(w));
    }

    // longitude: walk the closure from the top of strand 0, collecting the
    // over-arc at every underpass, based at the start of the meridian arc
    std::vector<std::pair<int, int>> events; // (over generator, sign)
    int start_event = -1;
    {
        int pos = 0;
        for (int pass = 0; pass < strands; ++pass) {
            // walk one strand from the top of position `pos` to the bottom,
            // replaying crossings and tracking only our own position
            int p2 = pos;
            for (int j = 0; j < c; ++j) {
                int i = std::abs(word[static_cast<size_t>(j)]) - 1;
                int sign = word[static_cast<size_t>(j)] > 0 ? 1 : -1;
                bool we_left = (p2 == i), we_right = (p2 == i + 1);
                if (!we_left && !we_right) continue;
                bool we_over = (sign > 0 && we_left) || (sign < 0 && we_right);
                if (!we_over) {
                    const auto& cr = crossings[static_cast<size_t>(j)];
                    events.emplace_back(gen_of(cr.over), -sign);
                    if (uf.find(cr.under_out) == uf.find(0))
                        start_event = static_cast<int>(events.size()) - 1;
                }
                p2 = we_left ? i + 1 : i;
            }
            pos = p2; // closure: bottom p2 reconnects to top p2
        }
        if (pos != 0 || static_cast<int>(events.size()) != c || start_event < 0)
            throw MultiComponentLink("closure traversal did not cover the diagram");
    }
    long writhe = 0;
    for (int w : word) writhe += w > 0 ? 1 : -1;
    Word lon;
    const int ne = static_cast<int>(events.size());
    for (int k = 1; k <= ne; ++k) {
        auto [og, sg] = events[static_cast<size_t>((start_event + k) % ne)];
        lon = lon * Word::generator(og, sg);
    }
    lon = lon * Word::generator(mer, writhe);

    KnotPresentation p;
    p.num_generators = g;
    p.relators = std::move(relators);
    p.meridian = Word::generator(mer);
    p.longitude = std::move(lon);
    p.source = KnotSource::Braid;
    return finalize_presentation(std::move(p));
}

// ---------------------------------------------------------------------------
// planar diagrams

int pd_crossing_sign(const std::array<int, 4>& x, int num_edges) {
    auto next = [num_edges](int e) { return e % num_edges + 1; };
    if (x[1] == next(x[3])) return 1;  // over-strand runs d -> b
    if (x[3] == next(x[1])) return -1; // over-strand runs b -> d
    throw InvalidPD("over-strand edges not consecutive in crossing");
}

KnotPresentation parse_pd(const std::vector<std::array<int, 4>>& code) {
    if (code.empty()) throw InvalidPD("empty PD code");
    const int c = static_cast<int>(code.size());
    const int ne = 2 * c;
    std::vector<int> seen(static_cast<size_t>(ne) + 1, 0);
    for (const auto& x : code)
        for (int e : x) {
            if (e < 1 || e > ne) throw InvalidPD("edge label out of range");
            ++seen[static_cast<size_t>(e)];
        }
    for (int e = 1; e <= ne; ++e)
        if (seen[static_cast<size_t>(e)] != 2)
            throw InvalidPD("edge " + std::to_string(e) + " does not appear exactly twice");
    // under-strand continuity: c = a + 1 mod 2c, and each edge heads exactly
    // one crossing as incoming under
    std::vector<int> under_at(static_cast<size_t>(ne) + 1, -1); // crossing entered under at end of edge a
    auto next = [ne](int e) { return e % ne + 1; };
    for (int j = 0; j < c; ++j) {
        const auto& x = code[static_cast<size_t>(j)];
        if (x[2] != next(x[0]))
            throw MultiComponentLink(
                "under-strand labels not consecutive: link or non-standard code");
        if (under_at[static_cast<size_t>(x[0])] != -1)
            throw InvalidPD("edge enters two crossings as under-strand");
        under_at[static_cast<size_t>(x[0])] = j;
    }
    // with edges 1..2c appearing twice and under/over labels consecutive,
    // the orientation walk 1 -> 2 -> ... -> 2c is a single knot component

    UnionFind uf(ne + 1);
    for (const auto& x : code) uf.unite(x[1], x[3]);
    std::vector<int> cls(static_cast<size_t>(ne) + 1, -1);
    int g = 0;
    auto gen_of = [&](int edge) {
        int root = uf.find(edge);
        if (cls[static_cast<size_t>(root)] < 0) cls[static_cast<size_t>(root)] = g++;
        return cls[static_cast<size_t>(root)];
    };
    int mer = gen_of(1);

    std::vector<Word> relators;
    long writhe = 0;
    std::vector<int> signs(static_cast<size_t>(c));
    for (int j = 0; j < c; ++j) {
        const auto& x = code[static_cast<size_t>(j)];
        int sign = pd_crossing_sign(x, ne);
        signs[static_cast<size_t>(j)] = sign;
        writhe += sign;
        if (j + 1 == c) continue;
        int u = gen_of(x[0]), uo = gen_of(x[2]), o = gen_of(x[1]);
        relators.push_back(Word::generator(uo, -1) * Word::generator(o, sign) *
                           Word::generator(u) * Word::generator(o, -sign));
    }

    // longitude: underpasses in edge order; base at the start of the meridian arc
    std::vector<std::pair<int, int>> events;
    int start_event = -1;
    for (int e = 1; e <= ne; ++e) {
        int j = under_at[static_cast<size_t>(e)];
        if (j < 0) continue; // edge ends at an overpass
        const auto& x = code[static_cast<size_t>(j)];
        events.emplace_back(gen_of(x[1]), -signs[static_cast<size_t>(j)]);
        if (uf.find(x[2]) == uf.find(1)) start_event = static_cast<int>(events.size()) - 1;
    }
    Word lon;
    for (int k = 1; k <= c; ++k) {
        auto [og, sg] = events[static_cast<size_t>((start_event + k) % c)];
        lon = lon * Word::generator(og, sg);
    }
    lon = lon * Word::generator(mer, writhe);

    KnotPresentation p;
    p.num_generators = g;
    p.relators = std::move(relators);
    p.meridian = Word::generator(mer);
    p.longitude = std::move(lon);
    p.source = KnotSource::PD;
    return finalize_presentation(std::move(p));
}

// ---------------------------------------------------------------------------

KnotPresentation torus_knot(long p, long q) {
    if (p < 2 || q < 2) throw NotCoprime("torus parameters must be >= 2");
    mpz_class g, r0, s0;
    mpz_class zp = p, zq = q;
    mpz_gcdext(g.get_mpz_t(), r0.get_mpz_t(), s0.get_mpz_t(), zp.get_mpz_t(), zq.get_mpz_t());
    if (g != 1) throw NotCoprime("gcd(p, q) != 1");
    // r p + s q = 1 with the smallest nonnegative s (s is determined mod p)
    mpz_class s = s0 % zp;
    if (s < 0) s += zp;
    mpz_class r = (1 - s * zq) / zp;
    long rl = r.get_si(), sl = s.get_si();

    KnotPresentation kp;
    kp.num_generators = 2;
    kp.relators = {Word::generator(0, p) * Word::generator(1, -q)};
    kp.meridian = Word::generator(0, sl) * Word::generator(1, rl);
    kp.longitude = Word::generator(0, p) * kp.meridian.pow(-p * q);
    kp.source = KnotSource::Torus;
    return finalize_presentation(std::move(kp));
}

KnotPresentation unknot() {
    KnotPresentation p;
    p.num_generators = 1;
    p.meridian = Word::generator(0);
    p.longitude = Word();
    p.source = KnotSource::Manual;
    return finalize_presentation(std::move(p));
}

KnotPresentation manual_presentation(int num_generators, std::vector<Word> relators,
                                     Word meridian, std::optional<Word> longitude) {
    KnotPresentation p;
    p.num_generators = num_generators;
    p.relators = std::move(relators);
    p.meridian = std::move(meridian);
    p.longitude = std::move(longitude);
    p.source = KnotSource::Manual;
    return finalize_presentation(std::move(p));
}

// ---------------------------------------------------------------------------
// bundled table

std::string default_table_path() {
    if (const char* env = std::getenv("METAREP_TABLE")) return env;
#ifdef METAREP_DATA_DIR
    return std::string(METAREP_DATA_DIR) + "/knot_table.txt";
#else
    return "data/knot_table.txt";
#endif
}

std::vector<std::array<int, 4>> load_table(const std::string& name) {
    return load_table(name, default_table_path());
}

std::vector<std::array<int, 4>> load_table(const std::string& name,
                                           const std::string& table_path) {
    std::ifstream in(table_path);
    if (!in) throw UnknownKnot("cannot open knot table at " + table_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string knot, pd;
        is >> knot >> pd;
        if (knot != name) continue;
        if (pd.rfind("PD:", 0) != 0) throw UnknownKnot("malformed table line for " + name);
        std::vector<std::array<int, 4>> code;
        std::array<int, 4> cur{};
        int slot = 0, val = 0;
        bool in_num = false;
        for (size_t i = 3; i < pd.size(); ++i) {
            char ch = pd[i];
            if (isdigit(static_cast<unsigned char>(ch))) {
                val = val * 10 + (ch - '0');
                in_num = true;
            } else if (ch == ',' || ch == ')') {
                if (!in_num) throw UnknownKnot("malformed PD tuple for " + name);
                if (slot > 3) throw UnknownKnot("malformed PD tuple for " + name);
                cur[static_cast<size_t>(slot++)] = val;
                val = 0;
                in_num = false;
                if (ch == ')') {
                    if (slot != 4) throw UnknownKnot("malformed PD tuple for " + name);
                    code.push_back(cur);
                    slot = 0;
                }
            } else if (ch == '(') {
                slot = 0;
            } else {
                throw UnknownKnot("malformed PD entry for " + name);
            }
        }
        return code;
    }
    throw UnknownKnot("knot '" + name + "' not in table " + table_path);
}

KnotPresentation resolve_knot_spec(const std::string& spec) {
    if (spec == "unknot" || spec == "0_1") return unknot();
    auto colon = spec.find(':');
    if (colon == std::string::npos) return parse_pd(load_table(spec));
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "torus") {
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw ParseError("torus spec needs p,q");
        return torus_knot(std::stol(rest.substr(0, comma)), std::stol(rest.substr(comma + 1)));
    }
    if (kind == "braid") {
        auto last = rest.rfind(':');
        if (last == std::string::npos) throw ParseError("braid spec needs word:strands");
        return parse_braid(rest.substr(0, last), std::stoi(rest.substr(last + 1)));
    }
    if (kind == "pd") {
        std::vector<std::array<int, 4>> code;
        std::array<int, 4> cur{};
        int slot = 0, val = 0;
        bool in_num = false;
        for (char ch : rest) {
            if (isdigit(static_cast<unsigned char>(ch))) {
                val = val * 10 + (ch - '0');
                in_num = true;
            } else if (ch == ',' || ch == ')') {
                if (in_num) {
                    if (slot > 3) throw ParseError("bad pd tuple");
                    cur[static_cast<size_t>(slot++)] = val;
                }
                val = 0;
                in_num = false;
                if (ch == ')') {
                    if (slot != 4) throw ParseError("bad pd tuple");
                    code.push_back(cur);
                    slot = 0;
                }
            } else if (ch == '(' || ch == ' ') {
                // separator
            } else {
                throw ParseError("bad pd spec");
            }
        }
        return parse_pd(code);
    }
    if (kind == "manual") {
        std::ifstream in(rest);
        if (!in) throw ParseError("cannot open manual presentation " + rest);
        // format: line "generators N", lines "relator <signed gens>",
        // "meridian <signed gens>", optional "longitude <signed gens>"
        int g = -1;
        std::vector<Word> rel;
        std::optional<Word> mer, lon;
        std::string line;
        auto words_of = [](std::istringstream& is) {
            std::vector<int> ls;
            int x;
            while (is >> x) ls.push_back(x);
            return Word::from_signed_letters(ls);
        };
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream is(line);
            std::string key;
            is >> key;
            if (key == "generators")
                is >> g;
            else if (key == "relator")
                rel.push_back(words_of(is));
            else if (key == "meridian")
                mer = words_of(is);
            else if (key == "longitude")
                lon = words_of(is);
            else
                throw ParseError("bad manual presentation line: " + line);
        }
        if (g <= 0 || !mer) throw ParseError("manual presentation needs generators and meridian");
        return manual_presentation(g, std::move(rel), *mer, lon);
    }
    throw ParseError("unknown knot spec '" + spec + "'");
}

} // namespace metarep
