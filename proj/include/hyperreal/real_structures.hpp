#pragma once

// Generator systems with an anti-holomorphic symmetry sigma: genus-zero
// reflection systems, right-angled hexagons, and curves without real boundary
// built from a sequential set plus the D_j elements.

#include "hyperreal/geometry.hpp"
#include "hyperreal/moduli.hpp"
#include "hyperreal/moebius.hpp"
#include "hyperreal/sequential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperreal {

struct Generator {
    std::string role;
    MoebiusMap map;
    IsometryKind expected = IsometryKind::hyperbolic;
};

struct GeneratorSystem {
    std::vector<Generator> gens;
    MoebiusMap sigma;
    GroupWord sigma_squared;                      // empty when sigma is an involution
    std::vector<std::optional<GroupWord>> sigma_words; // known sigma g sigma^-1, per generator
    std::vector<GroupWord> relators;
    std::vector<std::pair<int, int>> nonreal_pairs; // (X, sigma X sigma^-1 up to inversion)
    std::optional<Geodesic> reference;              // c_0 for boundary markings
    std::vector<Geodesic> mirrors;                  // fixed or glide axis of sigma
    std::vector<Geodesic> walls;                    // l_j of reflection-built systems
    std::vector<int> sequential;                    // indices of the underlying sequential set
    std::optional<SurfaceType> surface;
    std::optional<RealCurveType> type;
    std::string provenance;

    std::vector<MoebiusMap> maps() const
    {
        std::vector<MoebiusMap> out;
        for (const Generator& g : gens) {
            out.push_back(g.map);
        }
        return out;
    }

    std::optional<int> index_of(const std::string& role) const
    {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].role == role) {
                return static_cast<int>(i);
            }
        }
        return std::nullopt;
    }

    int add(std::string role, const MoebiusMap& m, IsometryKind expected = IsometryKind::hyperbolic)
    {
        gens.push_back({std::move(role), m, expected});
        sigma_words.emplace_back();
        return static_cast<int>(gens.size()) - 1;
    }
};

namespace detail {

/// Letters as small codes: 2 i for g_i, 2 i + 1 for g_i^-1.
inline Letter letter_of(int code) { return {code / 2, code % 2 ? -1 : 1}; }

struct StoredWord {
    std::array<std::int16_t, 4> codes{};
    std::int8_t len = 0;
};

inline GroupWord to_word(const StoredWord& w)
{
    GroupWord out;
    for (int i = 0; i < w.len; ++i) {
        out.push_back(letter_of(w.codes[i]));
    }
    return out;
}

/// Shortlex order with g_0 < g_0^-1 < g_1 < ...
inline bool shortlex_less(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

/// Meet-in-the-middle search: every word of length <= 8 is w1 w2 with w1, w2
/// of length <= 4. Returns the shortest match, ties broken by shortlex.
class WordSearch {
public:
    WordSearch(const std::vector<MoebiusMap>& gens, double eps) : gens_(gens), eps_(eps)
    {
        const int letters = 2 * static_cast<int>(gens.size());
        for (int c = 0; c < letters; ++c) {
            letter_maps_.push_back(c % 2 ? inverse(gens[c / 2]) : gens[c / 2]);
        }
        levels_.resize(5);
        levels_[0].push_back({StoredWord{}, MoebiusMap::identity()});
        for (int len = 1; len <= 4; ++len) {
            for (const auto& [w, m] : levels_[len - 1]) {
                for (int c = 0; c < letters; ++c) {
                    if (w.len > 0 && (w.codes[w.len - 1] ^ 1) == c) {
                        continue; // not reduced
                    }
                    StoredWord next = w;
                    next.codes[next.len++] = static_cast<std::int16_t>(c);
                    levels_[len].push_back({next, m * letter_maps_[c]});
                }
            }
        }
        for (auto& level : levels_) {
            std::sort(level.begin(), level.end(), [](const auto& x, const auto& y) { return key(x.second) < key(y.second); });
        }
    }

    std::optional<GroupWord> find(const MoebiusMap& target, int max_len = 8) const
    {
        for (int total = 0; total <= max_len; ++total) {
            const int l1 = (total + 1) / 2, l2 = total / 2;
            std::optional<std::vector<int>> best;
            for (const auto& [w2, m2] : levels_[l2]) {
                const MoebiusMap want = target * inverse(m2);
                const double k = key(want);
                const auto& level = levels_[l1];
                auto it = std::lower_bound(level.begin(), level.end(), k - window(k),
                                           [](const auto& x, double v) { return key(x.second) < v; });
                for (; it != level.end() && key(it->second) <= k + window(k); ++it) {
                    const StoredWord& w1 = it->first;
                    if (w1.len > 0 && w2.len > 0 && (w1.codes[w1.len - 1] ^ 1) == w2.codes[0]) {
                        continue;
                    }
                    if (projective_distance(it->second * m2, target) > eps_) {
                        continue;
                    }
                    std::vector<int> codes(w1.codes.begin(), w1.codes.begin() + w1.len);
                    codes.insert(codes.end(), w2.codes.begin(), w2.codes.begin() + w2.len);
                    if (!best || shortlex_less(codes, *best)) {
                        best = codes;
                    }
                }
            }
            if (best) {
                GroupWord out;
                for (int c : *best) {
                    out.push_back(letter_of(c));
                }
                return reduce_word(out);
            }
        }
        return std::nullopt;
    }

private:
    // sign-insensitive so projective ambiguity near zero leading entries is harmless
    static double key(const MoebiusMap& m) { return std::abs(m.a()) + std::abs(m.d()); }
    static double window(double k) { return 1e-6 * (1.0 + k); }

    std::vector<MoebiusMap> gens_;
    double eps_;
    std::vector<MoebiusMap> letter_maps_;
    std::vector<std::vector<std::pair<StoredWord, MoebiusMap>>> levels_;
};

} // namespace detail

/// Shortest word (length <= max_len, shortlex among equals) evaluating to target.
inline std::optional<GroupWord> find_word(const MoebiusMap& target, const std::vector<MoebiusMap>& gens, int max_len = 8,
                                          double eps = tol::relation)
{
    return detail::WordSearch(gens, eps).find(target, max_len);
}

/// Word for sigma gens[i] sigma^-1: the stored closed form when it checks out,
/// otherwise a bounded search.
inline GroupWord sigma_conjugation_word(const GeneratorSystem& sys, int i, double eps = tol::relation)
{
    if (i < 0 || i >= static_cast<int>(sys.gens.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "generator index out of range");
    }
    const std::vector<MoebiusMap> gens = sys.maps();
    const MoebiusMap target = conjugate(sys.sigma, gens[i]);
    if (i < static_cast<int>(sys.sigma_words.size()) && sys.sigma_words[i]) {
        const GroupWord& w = *sys.sigma_words[i];
        if (projective_distance(eval_word(w, gens), target) <= eps) {
            return w;
        }
    }
    if (auto w = find_word(target, gens, 8, eps)) {
        return *w;
    }
    throw Error(ErrorCode::WordNotFound, "no word of length <= 8 for sigma " + sys.gens[i].role + " sigma^-1");
}

struct SigmaEntry {
    int index = 0;
    std::string role;
    bool ok = false;
    bool class_ok = false;
    std::string source; // "closed-form", "search" or "not-found"
    GroupWord word;
    double defect = 0.0;
};

struct SigmaReport {
    bool sigma_orientation_ok = false;
    bool sigma_squared_ok = false;
    double sigma_squared_defect = 0.0;
    std::vector<SigmaEntry> entries;

    bool passed() const
    {
        if (!sigma_orientation_ok || !sigma_squared_ok) {
            return false;
        }
        return std::all_of(entries.begin(), entries.end(), [](const SigmaEntry& e) { return e.ok && e.class_ok; });
    }
};

/// Checks sigma and finds a conjugation word for every generator. Words are
/// searched once for all generators lacking a valid closed form.
inline SigmaReport verify_real_structure(const GeneratorSystem& sys, double eps = tol::relation)
{
    SigmaReport r;
    const std::vector<MoebiusMap> gens = sys.maps();
    r.sigma_orientation_ok = sys.sigma.orientation() == -1;
    try {
        r.sigma_squared_defect = projective_distance(sys.sigma * sys.sigma, eval_word(sys.sigma_squared, gens));
        r.sigma_squared_ok = r.sigma_squared_defect <= eps;
    } catch (const Error&) {
        r.sigma_squared_ok = false;
    }
    std::optional<detail::WordSearch> search;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        SigmaEntry e;
        e.index = static_cast<int>(i);
        e.role = sys.gens[i].role;
        e.class_ok = classify(gens[i]).kind == sys.gens[i].expected;
        const MoebiusMap target = conjugate(sys.sigma, gens[i]);
        bool done = false;
        if (i < sys.sigma_words.size() && sys.sigma_words[i]) {
            try {
                const double d = projective_distance(eval_word(*sys.sigma_words[i], gens), target);
                if (d <= eps) {
                    e.ok = true;
                    e.source = "closed-form";
                    e.word = *sys.sigma_words[i];
                    e.defect = d;
                    done = true;
                }
            } catch (const Error&) {
            }
        }
        if (!done) {
            if (!search) {
                search.emplace(gens, eps);
            }
            if (auto w = search->find(target)) {
                e.ok = true;
                e.source = "search";
                e.word = *w;
                e.defect = projective_distance(eval_word(*w, gens), target);
            } else {
                e.source = "not-found";
            }
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

/// Largest projective distance from the identity over all relators.
inline double relator_defect(const GeneratorSystem& sys)
{
    const std::vector<MoebiusMap> gens = sys.maps();
    double worst = 0.0;
    for (const GroupWord& w : sys.relators) {
        worst = std::max(worst, projective_distance(eval_word(w, gens), MoebiusMap::identity()));
    }
    return worst;
}

/// The sequential set a system was built from: the first n+m indices are the
/// C's, then A_1, B_1, A_2, ...
inline std::optional<SequentialSetOfType> sequential_part(const GeneratorSystem& sys)
{
    if (!sys.surface) {
        return std::nullopt;
    }
    const SurfaceType t = *sys.surface;
    const int r = t.n + t.m;
    if (static_cast<int>(sys.sequential.size()) != r + 2 * t.g) {
        return std::nullopt;
    }
    SequentialSetOfType set;
    set.type = t;
    for (int i = 0; i < r; ++i) {
        set.cs.push_back(sys.gens[sys.sequential[i]].map);
    }
    for (int i = 0; i < t.g; ++i) {
        set.as.push_back(sys.gens[sys.sequential[r + 2 * i]].map);
        set.bs.push_back(sys.gens[sys.sequential[r + 2 * i + 1]].map);
    }
    return set;
}

/// Reasons the sequential part fails to be a sequential set; empty when it is
/// one or when the system records none. Genus-zero systems may interleave
/// holes and punctures, so only the counts are checked there.
inline std::vector<std::string> sequential_violations(const GeneratorSystem& sys)
{
    const auto set = sequential_part(sys);
    if (!set) {
        return {};
    }
    if (set->type.g > 0) {
        std::vector<std::string> out = class_pattern_violations(*set);
        if (out.empty() && !is_sequential_of_type(*set)) {
            out.push_back("not a sequential set of its type");
        }
        return out;
    }
    int n = 0, m = 0;
    for (const MoebiusMap& c : set->cs) {
        const IsometryKind k = classify(c).kind;
        if (k == IsometryKind::hyperbolic) {
            ++n;
        } else if (k == IsometryKind::parabolic) {
            ++m;
        } else {
            return {"a boundary generator is elliptic"};
        }
    }
    if (n != set->type.n || m != set->type.m) {
        return {"hole and puncture counts do not match the type"};
    }
    if (set->cs.size() < 3 || !is_sequential_tuple(set->cs)) {
        return {"boundary generators are not a sequential tuple"};
    }
    return {};
}

namespace detail {

/// R_a R_b for geodesics a, b, formed in extended precision from the
/// endpoints and rounded once.
inline MoebiusMap reflection_product(const Geodesic& a, const Geodesic& b)
{
    using L = long double;
    struct M {
        L a, b, c, d;
    };
    auto refl = [](const Geodesic& g) {
        const L x1 = g.from.x(), y1 = g.from.y(), x2 = g.to.x(), y2 = g.to.y();
        const L s = x1 * y2 + x2 * y1;
        return M{s, -2 * x1 * x2, 2 * y1 * y2, -s};
    };
    const M p = refl(a), q = refl(b);
    M r{p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
    const L scale = std::sqrt(std::abs(r.a * r.d - r.b * r.c));
    return MoebiusMap::make(static_cast<double>(r.a / scale), static_cast<double>(r.b / scale), static_cast<double>(r.c / scale),
                            static_cast<double>(r.d / scale));
}

/// C_j = R_j R_{j+1} (cyclically), sigma = R_1, with the telescoping closed
/// forms R_1 C_j R_1 = W_j C_j^-1 W_j^-1, W_j = C_1 ... C_{j-1}.
inline GeneratorSystem reflection_system(const std::vector<Geodesic>& ls, const std::vector<IsometryKind>& kinds)
{
    const int r = static_cast<int>(ls.size());
    GeneratorSystem sys;
    std::vector<MoebiusMap> refl;
    for (const Geodesic& l : ls) {
        refl.push_back(reflection_in(l));
    }
    GroupWord relator;
    for (int j = 0; j < r; ++j) {
        sys.add("C" + std::to_string(j + 1), reflection_product(ls[j], ls[(j + 1) % r]), kinds[j]);
        relator.push_back({j, 1});
        sys.sequential.push_back(j);
    }
    for (int j = 0; j < r; ++j) {
        GroupWord w;
        for (int i = 0; i < j; ++i) {
            w.push_back({i, 1});
        }
        sys.sigma_words[j] = concat(concat(w, {{j, -1}}), inverse_word(w));
    }
    sys.sigma = refl[0];
    sys.relators.push_back(relator);
    sys.mirrors.push_back(ls[0]);
    sys.walls = ls;
    int n = 0, m = 0;
    for (IsometryKind k : kinds) {
        (k == IsometryKind::parabolic ? m : n) += 1;
    }
    sys.surface = SurfaceType{0, n, m};
    return sys;
}

} // namespace detail

/// Genus-zero system for one oval of type s. placement holds 2r endpoints, two
/// per geodesic, non-decreasing. Symbol s[j] (j >= 1) is the junction of l_j
/// and l_{j+1} (generator C_j); s[0] is the junction of l_r and l_1 through
/// infinity (generator C_r). A puncture there is encoded as -inf first and
/// +inf last.
inline GeneratorSystem build_genus_zero(const OvalType& s, const std::vector<double>& placement)
{
    const int r = s.size();
    if (r < 3) {
        throw Error(ErrorCode::TooFewBoundary, "genus-zero systems need at least three boundary components");
    }
    if (static_cast<int>(placement.size()) != 2 * r) {
        throw Error(ErrorCode::BadPlacement, "placement needs " + std::to_string(2 * r) + " endpoints");
    }
    auto bad = [](const std::string& why) { return Error(ErrorCode::BadPlacement, why); };
    const bool lo_inf = std::isinf(placement.front()) && placement.front() < 0;
    const bool hi_inf = std::isinf(placement.back()) && placement.back() > 0;
    if (lo_inf != hi_inf) {
        throw bad("a puncture at infinity needs both -inf first and +inf last");
    }
    for (std::size_t i = 0; i < placement.size(); ++i) {
        const bool end_slot = (i == 0 && lo_inf) || (i + 1 == placement.size() && hi_inf);
        if (!end_slot && !std::isfinite(placement[i])) {
            throw bad("endpoints must be finite except the outer pair");
        }
    }
    if ((s[0] == BoundaryKind::puncture) != lo_inf) {
        throw bad("the junction through infinity does not match the oval type");
    }
    for (int j = 0; j < r; ++j) {
        if (!(placement[2 * j] < placement[2 * j + 1])) {
            throw bad("geodesic " + std::to_string(j + 1) + " has non-increasing endpoints");
        }
    }
    for (int j = 0; j + 1 < r; ++j) {
        const double right = placement[2 * j + 1], left = placement[2 * j + 2];
        const bool puncture = s[j + 1] == BoundaryKind::puncture;
        if (puncture ? right != left : !(right < left)) {
            throw bad("junction " + std::to_string(j + 1) + " does not match the oval type");
        }
    }
    std::vector<Geodesic> ls;
    std::vector<IsometryKind> kinds;
    for (int j = 0; j < r; ++j) {
        ls.push_back(make_geodesic(placement[2 * j], placement[2 * j + 1]));
        const BoundaryKind b = s[(j + 1) % r];
        kinds.push_back(b == BoundaryKind::puncture ? IsometryKind::parabolic : IsometryKind::hyperbolic);
    }
    GeneratorSystem sys = detail::reflection_system(ls, kinds);
    sys.type = RealCurveType{0, 1, 1, 0, 0, {s}};
    sys.provenance = "genus-zero " + s.str();
    return sys;
}

/// Default placement: arcs of equal length around the boundary circle, seen
/// through the Cayley map, so that no generator is much longer than the
/// others. Holes leave a narrow gap, punctures none.
inline std::vector<double> default_placement(const OvalType& s)
{
    const int r = s.size();
    const double gap_ratio = 0.05; // short holes keep the entries small
    const double arc = 2.0 * std::numbers::pi / (r + gap_ratio * s.n_R());
    const double gap = gap_ratio * arc;
    auto at = [](double theta) { return std::tan(0.5 * theta); };
    std::vector<double> p;
    double theta = -std::numbers::pi + (r > 0 && s[0] == BoundaryKind::hole ? 0.5 * gap : 0.0);
    for (int j = 0; j < r; ++j) {
        p.push_back(at(theta));
        p.push_back(at(theta + arc));
        theta += arc + ((j + 1 < r && s[j + 1] == BoundaryKind::puncture) ? 0.0 : gap);
    }
    for (int j = 0; j + 1 < r; ++j) {
        if (s[j + 1] == BoundaryKind::puncture) {
            p[2 * j + 2] = p[2 * j + 1]; // exact contact
        }
    }
    if (r > 0 && s[0] == BoundaryKind::puncture) {
        p.front() = -INFINITY;
        p.back() = INFINITY;
    }
    return p;
}

struct Hexagon {
    std::array<Geodesic, 3> ls;
    std::array<Geodesic, 3> cs; // c_i = axis of C_i
    GeneratorSystem system;
};

/// Pairwise disjoint l_1 < l_2 < l_3 with C_1 = R_1 R_2, C_2 = R_2 R_3,
/// C_3 = R_3 R_1 of shift parameters lambda_1..3.
///
/// Built in closed form: l_1 = |z| = 1 and l_2 = |z| = sqrt(lambda_1) are
/// concentric, l_3 sits between them on the negative side at the inversive
/// distances fixed by lambda_2 and lambda_3, and a map sending a point between
/// l_3 and l_1 to infinity lays the three out left to right.
inline Hexagon build_hexagon(double lambda1, double lambda2, double lambda3)
{
    for (double l : {lambda1, lambda2, lambda3}) {
        if (!(l > 1.0) || !std::isfinite(l)) {
            throw Error(ErrorCode::NoSolution, "hexagon shift parameters must exceed 1");
        }
    }
    const double R = std::sqrt(lambda1);
    const double ch23 = std::cosh(0.5 * std::log(lambda2));
    const double ch31 = std::cosh(0.5 * std::log(lambda3));
    // l_3 = circle of centre -c and radius rho; with P = c^2 - rho^2,
    // cosh d(l_3, l_1) = (P - 1) / (2 rho) and cosh d(l_2, l_3) = (R^2 - P) / (2 rho R)
    const double P = R * (R * ch31 + ch23) / (R * ch23 + ch31);
    const double rho = (P - 1.0) / (2.0 * ch31);
    const double c = std::sqrt(P + rho * rho);
    if (!(rho > 0.0) || !(c - rho > 1.0) || !(c + rho < R)) {
        throw Error(ErrorCode::NoSolution, "hexagon placement failed");
    }
    const double cut = 0.5 * ((-c + rho) + (-1.0));
    const MoebiusMap layout = make_map(0.0, 1.0, -1.0, cut); // z -> 1 / (cut - z)
    Hexagon h;
    h.ls = {apply(layout, make_geodesic(-1.0, 1.0)), apply(layout, make_geodesic(-R, R)), apply(layout, make_geodesic(-c - rho, -c + rho))};
    for (Geodesic& l : h.ls) {
        if (l.to.value() < l.from.value()) {
            l = l.reversed();
        }
    }
    h.system = detail::reflection_system({h.ls.begin(), h.ls.end()}, std::vector<IsometryKind>(3, IsometryKind::hyperbolic));
    for (int i = 0; i < 3; ++i) {
        h.cs[i] = axis_of(h.system.gens[i].map);
    }
    h.system.type = RealCurveType{0, 1, 1, 0, 0, {OvalType::parse("hhh")}};
    h.system.provenance = "hexagon";
    return h;
}

/// Pair of pants whose symmetry swaps the holes c_1, c_2 and keeps c_3.
inline GeneratorSystem build_symmetric_three_holes(double lambda_pair, double lambda_real)
{
    Hexagon h = build_hexagon(lambda_pair, lambda_pair, lambda_real);
    GeneratorSystem sys = h.system;
    // the symmetry axis is the common perpendicular of the opposite sides l_2 and c_3
    const Geodesic mirror = common_perpendicular(h.ls[1], h.cs[2]).perp;
    sys.sigma = reflection_in(mirror);
    sys.sigma_words = {GroupWord{{1, -1}}, GroupWord{{0, -1}}, GroupWord{{2, -1}}};
    sys.nonreal_pairs = {{0, 1}};
    sys.reference = h.cs[2];
    sys.mirrors = {mirror};
    sys.type = RealCurveType{0, 1, 1, 1, 0, {OvalType::parse("h")}};
    sys.provenance = "symmetric-three-holes";
    return sys;
}

/// Curve of type t without real holes or punctures. params feed
/// construct_surface_set for the sequential set (C_0, C_1..C_r, A, B) of type
/// (h, g-2h+1+n_I, m_I): the g-2h holes after C_0 pair up with D_j, then come
/// the n_I non-real holes and the m_I non-real punctures.
///
/// The set is moved so that C_0 translates up the imaginary axis; R_0 is the
/// reflection in it. Besides C_0..C_r, A_i, B_i and D_j the system carries
/// "~X" = sigma X sigma^-1 for every non-real C and every A_i, B_i, so that
/// the generated group is sigma-invariant.
inline GeneratorSystem build_real_curve(const RealCurveType& t, const std::vector<double>& params)
{
    if (!admissible(t) || t.n_R() != 0 || t.m_R() != 0) {
        throw Error(ErrorCode::NotAdmissible, "type must be admissible and without real holes or punctures");
    }
    const int h = handle_count(t);
    const int real_holes = t.g - 2 * h; // C_1..C_{g-2h}, one D_j each
    const SurfaceType st{h, real_holes + 1 + t.n_I, t.m_I};
    SequentialSetOfType set = construct_surface_set(st, params);

    const IsometryClass k0 = classify(set.cs[0]);
    // beta -> 0, alpha -> infinity, orientation preserving
    Mat2 fm{k0.beta.y(), -k0.beta.x(), k0.alpha.y(), -k0.alpha.x()};
    if (fm.det() < 0.0) {
        fm.a = -fm.a;
        fm.b = -fm.b;
    }
    const MoebiusMap f = MoebiusMap::make(fm);
    auto move = [&](std::vector<MoebiusMap>& ms) {
        for (MoebiusMap& m : ms) {
            m = conjugate(f, m);
        }
    };
    move(set.cs);
    move(set.as);
    move(set.bs);

    GeneratorSystem sys;
    const int r = static_cast<int>(set.cs.size()) - 1;
    for (int j = 0; j <= r; ++j) {
        sys.add("C" + std::to_string(j), set.cs[j], j <= real_holes + t.n_I ? IsometryKind::hyperbolic : IsometryKind::parabolic);
    }
    for (int i = 0; i < h; ++i) {
        sys.add("A" + std::to_string(i + 1), set.as[i]);
        sys.add("B" + std::to_string(i + 1), set.bs[i]);
    }
    for (int i = 0; i < static_cast<int>(sys.gens.size()); ++i) {
        sys.sequential.push_back(i);
    }
    sys.surface = st;

    const MoebiusMap r0 = make_map(-1.0, 0.0, 0.0, 1.0);
    const MoebiusMap root0 = sqrt_hyperbolic(set.cs[0]);
    sys.sigma = t.k > 0 ? r0 : root0 * r0;
    if (t.k == 0) {
        sys.sigma_squared = {{0, 1}};
    }

    std::vector<std::string> violations;
    std::vector<int> d_index;
    for (int j = 1; j <= real_holes; ++j) {
        const MoebiusMap rj = reflection_in(axis_of(set.cs[j]));
        MoebiusMap d = r0 * rj;
        if (t.eps == 0 && t.k == 0) {
            d = root0 * r0 * rj * sqrt_hyperbolic(set.cs[j]);
        } else if (t.eps == 0 && j >= t.k) {
            d = r0 * rj * sqrt_hyperbolic(set.cs[j]);
        }
        if (classify(d).kind != IsometryKind::hyperbolic) {
            violations.push_back("D" + std::to_string(j) + " is " + std::string(to_string(classify(d).kind)));
        }
        d_index.push_back(sys.add("D" + std::to_string(j), d));
    }
    if (!violations.empty()) {
        std::string msg;
        for (const std::string& v : violations) {
            msg += (msg.empty() ? "" : "; ") + v;
        }
        throw Error(ErrorCode::ClassViolation, msg);
    }

    // closed forms
    sys.sigma_words[0] = GroupWord{{0, 1}};
    for (int j = 1; j <= real_holes; ++j) {
        const int d = d_index[j - 1];
        sys.sigma_words[j] = GroupWord{{d, 1}, {j, 1}, {d, -1}};
        if (t.eps == 0 && t.k == 0) {
            sys.sigma_words[d] = GroupWord{{0, 1}, {j, 1}, {d, -1}};
        } else if (t.eps == 0 && j >= t.k) {
            sys.sigma_words[d] = GroupWord{{j, 1}, {d, -1}};
        } else {
            sys.sigma_words[d] = GroupWord{{d, -1}};
        }
    }
    std::vector<int> mirrored;
    for (int j = real_holes + 1; j <= r; ++j) {
        mirrored.push_back(j);
    }
    for (int i = 0; i < 2 * h; ++i) {
        mirrored.push_back(r + 1 + i);
    }
    for (int x : mirrored) {
        const Generator g = sys.gens[x];
        const int y = sys.add("~" + g.role, conjugate(sys.sigma, g.map), g.expected);
        sys.sigma_words[x] = GroupWord{{y, 1}};
        sys.sigma_words[y] = t.k > 0 ? GroupWord{{x, 1}} : GroupWord{{0, 1}, {x, 1}, {0, -1}};
        if (x <= r) {
            sys.nonreal_pairs.push_back({x, y});
        }
    }

    GroupWord relator;
    for (int j = 0; j <= r; ++j) {
        relator.push_back({j, 1});
    }
    for (int i = 0; i < h; ++i) {
        const int a = r + 1 + 2 * i, b = a + 1;
        relator.insert(relator.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
    }
    sys.relators.push_back(relator);
    sys.reference = axis_of(set.cs[0]);
    sys.mirrors = {make_geodesic(0.0, INFINITY)};
    sys.type = t;
    sys.provenance = "real-curve";
    return sys;
}

} // namespace hyperreal
