#pragma once

// Sequential sets: ordered tuples of shifts with product one, the words that
// address them, and a constructor that parametrizes all but the last element.

#include "hyperreal/geometry.hpp"
#include "hyperreal/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace hyperreal {

/// Genus, holes, punctures.
struct SurfaceType {
    int g = 0;
    int n = 0;
    int m = 0;

    int param_count() const { return 6 * g + 3 * n + 2 * m - 3; }
    int dimension() const { return 6 * g + 3 * n + 2 * m - 6; }
    bool hyperbolic() const { return n + m + 2 * g > 2 || (g >= 1 && n + m >= 1); }
    /// The derived tuple needs at least three entries.
    bool constructible() const { return g >= 0 && n >= 0 && m >= 0 && n + m + 2 * g >= 3 && dimension() >= 0; }

    friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

struct Letter {
    int index = 0;
    int exponent = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

using GroupWord = std::vector<Letter>;

inline GroupWord inverse_word(const GroupWord& w)
{
    GroupWord out(w.rbegin(), w.rend());
    for (Letter& l : out) {
        l.exponent = -l.exponent;
    }
    return out;
}

inline GroupWord concat(GroupWord a, const GroupWord& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Merges adjacent letters with equal index and drops zero exponents.
inline GroupWord reduce_word(const GroupWord& w)
{
    GroupWord out;
    for (const Letter& l : w) {
        if (!out.empty() && out.back().index == l.index) {
            out.back().exponent += l.exponent;
            if (out.back().exponent == 0) {
                out.pop_back();
            }
        } else if (l.exponent != 0) {
            out.push_back(l);
        }
    }
    return out;
}

inline int word_length(const GroupWord& w)
{
    int n = 0;
    for (const Letter& l : w) {
        n += std::abs(l.exponent);
    }
    return n;
}

namespace detail {

/// Long products accumulate in extended precision; relator checks compare
/// against 1e-9 and double accumulation alone can use that up.
class ProductAccumulator {
public:
    void times(const MoebiusMap& m)
    {
        const Mat2& q = m.matrix();
        const long double a = a_ * q.a + b_ * q.c, b = a_ * q.b + b_ * q.d;
        const long double c = c_ * q.a + d_ * q.c, d = c_ * q.b + d_ * q.d;
        a_ = a, b_ = b, c_ = c, d_ = d;
        orientation_ *= m.orientation();
    }

    MoebiusMap result() const
    {
        return MoebiusMap::from_unimodular(Mat2{static_cast<double>(a_), static_cast<double>(b_), static_cast<double>(c_),
                                                static_cast<double>(d_)},
                                           orientation_);
    }

private:
    long double a_ = 1, b_ = 0, c_ = 0, d_ = 1;
    int orientation_ = 1;
};

} // namespace detail

/// Left-to-right product; the empty word is the identity.
inline MoebiusMap eval_word(const GroupWord& w, const std::vector<MoebiusMap>& gens)
{
    detail::ProductAccumulator acc;
    for (const Letter& l : w) {
        if (l.index < 0 || l.index >= static_cast<int>(gens.size())) {
            throw Error(ErrorCode::IndexOutOfRange, "word letter " + std::to_string(l.index) + " out of range");
        }
        const MoebiusMap g = l.exponent < 0 ? inverse(gens[l.index]) : gens[l.index];
        for (int i = 0; i < std::abs(l.exponent); ++i) {
            acc.times(g);
        }
    }
    return acc.result();
}

inline MoebiusMap product(const std::vector<MoebiusMap>& ms)
{
    detail::ProductAccumulator acc;
    for (const MoebiusMap& m : ms) {
        acc.times(m);
    }
    return acc.result();
}

inline MoebiusMap commutator(const MoebiusMap& a, const MoebiusMap& b) { return a * b * inverse(a) * inverse(b); }

namespace detail {

inline IsometryClass require_shift(const MoebiusMap& m)
{
    const IsometryClass k = classify(m);
    if (!k.is_shift()) {
        throw Error(ErrorCode::NotShift, std::string("expected a shift, got ") + std::string(to_string(k.kind)));
    }
    return k;
}

inline std::pair<double, double> finite_range(const IsometryClass& k)
{
    double lo = INFINITY, hi = -INFINITY;
    for (const BoundaryPoint& p : fixed_points(k)) {
        if (p.is_infinite()) {
            throw Error(ErrorCode::InfiniteFixedPoint, "fixed point at infinity");
        }
        lo = std::min(lo, p.value());
        hi = std::max(hi, p.value());
    }
    return {lo, hi};
}

inline bool left_of(const IsometryClass& k1, const IsometryClass& k2)
{
    return finite_range(k1).second < finite_range(k2).first - tol::boundary;
}

/// Angle of a boundary point on the projective line, in [0, pi); infinity is 0.
inline double projective_angle(const BoundaryPoint& p)
{
    const double t = std::atan2(p.y(), p.x());
    return t >= std::numbers::pi ? 0.0 : t;
}

/// Rotation sending the boundary point of projective angle theta to infinity.
inline MoebiusMap cut_at(double theta) { return make_map(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta)); }

} // namespace detail

/// All fixed points of m1 strictly left of all fixed points of m2.
inline bool is_left_of(const MoebiusMap& m1, const MoebiusMap& m2)
{
    return detail::left_of(detail::require_shift(m1), detail::require_shift(m2));
}

namespace detail {

/// The ordering part of the triple test; the product is checked by callers.
/// Tries a cut point in every gap of the cyclic order of fixed points.
inline bool ordered_triple(const MoebiusMap& c1, const MoebiusMap& c2, const MoebiusMap& c3)
{
    const IsometryClass ks[3] = {require_shift(c1), require_shift(c2), require_shift(c3)};
    std::vector<double> angles;
    for (const IsometryClass& k : ks) {
        for (const BoundaryPoint& p : fixed_points(k)) {
            angles.push_back(detail::projective_angle(p));
        }
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> cuts;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double lo = angles[i];
        const double hi = i + 1 < angles.size() ? angles[i + 1] : angles.front() + std::numbers::pi;
        if (hi - lo > tol::boundary) {
            cuts.push_back(0.5 * (lo + hi));
        }
    }
    const MoebiusMap cs[3] = {c1, c2, c3};
    for (double cut : cuts) {
        const MoebiusMap a = cut_at(cut);
        IsometryClass t[3];
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            t[i] = classify(conjugate(a, cs[i]));
            ok = t[i].is_shift() && t[i].positive;
            for (const BoundaryPoint& p : fixed_points(t[i])) {
                ok = ok && !p.is_infinite();
            }
        }
        if (ok && left_of(t[0], t[1]) && left_of(t[1], t[2])) {
            return true;
        }
    }
    return false;
}

} // namespace detail

inline bool is_sequential_triple(const MoebiusMap& c1, const MoebiusMap& c2, const MoebiusMap& c3)
{
    detail::require_shift(c1);
    detail::require_shift(c2);
    detail::require_shift(c3);
    if (projective_distance(product({c1, c2, c3}), MoebiusMap::identity()) > tol::relation) {
        return false;
    }
    return detail::ordered_triple(c1, c2, c3);
}

/// Every split (C1...C_{j-1}, C_j, C_{j+1}...C_r) is a sequential triple.
inline bool is_sequential_tuple(const std::vector<MoebiusMap>& cs)
{
    const int r = static_cast<int>(cs.size());
    if (r < 3) {
        throw Error(ErrorCode::TooShort, "a sequential tuple needs at least three entries");
    }
    for (const MoebiusMap& c : cs) {
        detail::require_shift(c);
    }
    // every split regroups the same product, so it is checked once
    if (projective_distance(product(cs), MoebiusMap::identity()) > tol::relation) {
        return false;
    }
    for (int j = 1; j + 1 < r; ++j) {
        GroupWord prefix, suffix;
        for (int i = 0; i < j; ++i) {
            prefix.push_back({i, 1});
        }
        for (int i = j + 1; i < r; ++i) {
            suffix.push_back({i, 1});
        }
        const MoebiusMap p = eval_word(prefix, cs), s = eval_word(suffix, cs);
        if (!classify(p).is_shift() || !classify(s).is_shift()) {
            return false;
        }
        if (!detail::ordered_triple(p, cs[j], s)) {
            return false;
        }
    }
    return true;
}

struct SequentialSetOfType {
    std::vector<MoebiusMap> cs;
    std::vector<MoebiusMap> as;
    std::vector<MoebiusMap> bs;
    SurfaceType type;

    /// (C_1, ..., C_{n+m}, A_1, B_1 A_1^-1 B_1^-1, ...).
    std::vector<MoebiusMap> derived_tuple() const
    {
        std::vector<MoebiusMap> out = cs;
        for (std::size_t i = 0; i < as.size() && i < bs.size(); ++i) {
            out.push_back(as[i]);
            out.push_back(conjugate(bs[i], inverse(as[i])));
        }
        return out;
    }

    /// C_1 ... C_{n+m} [A_1, B_1] ... [A_g, B_g].
    MoebiusMap relation() const
    {
        MoebiusMap out = product(cs);
        for (std::size_t i = 0; i < as.size() && i < bs.size(); ++i) {
            out = out * commutator(as[i], bs[i]);
        }
        return out;
    }
};

inline double relation_defect(const SequentialSetOfType& s) { return projective_distance(s.relation(), MoebiusMap::identity()); }

/// Which entries break the hyperbolic/parabolic pattern; empty when it holds.
inline std::vector<std::string> class_pattern_violations(const SequentialSetOfType& s)
{
    std::vector<std::string> out;
    const SurfaceType& t = s.type;
    if (static_cast<int>(s.cs.size()) != t.n + t.m || static_cast<int>(s.as.size()) != t.g || static_cast<int>(s.bs.size()) != t.g) {
        out.push_back("generator counts do not match the type");
        return out;
    }
    auto expect = [&](const MoebiusMap& m, IsometryKind want, const std::string& name) {
        const IsometryKind got = classify(m).kind;
        if (got != want) {
            out.push_back(name + " is " + std::string(to_string(got)) + ", expected " + std::string(to_string(want)));
        }
    };
    for (int j = 0; j < t.n + t.m; ++j) {
        expect(s.cs[j], j < t.n ? IsometryKind::hyperbolic : IsometryKind::parabolic, "C" + std::to_string(j + 1));
    }
    for (int i = 0; i < t.g; ++i) {
        expect(s.as[i], IsometryKind::hyperbolic, "A" + std::to_string(i + 1));
        expect(s.bs[i], IsometryKind::hyperbolic, "B" + std::to_string(i + 1));
    }
    return out;
}

inline bool is_sequential_of_type(const SequentialSetOfType& s)
{
    if (!class_pattern_violations(s).empty() || relation_defect(s) > tol::relation) {
        return false;
    }
    const std::vector<MoebiusMap> tuple = s.derived_tuple();
    for (const MoebiusMap& m : tuple) {
        if (!classify(m).is_shift()) {
            return false;
        }
    }
    return is_sequential_tuple(tuple);
}

/// B with B a^-1 B^-1 = d, for hyperbolic a and d of equal shift; the twist
/// moves B along the centralizer of a.
inline MoebiusMap pair_conjugator(const MoebiusMap& a, const MoebiusMap& d, double twist = 0.0)
{
    const IsometryClass ka = classify(a), kd = classify(d);
    if (ka.kind != IsometryKind::hyperbolic || kd.kind != IsometryKind::hyperbolic) {
        throw Error(ErrorCode::NotHyperbolic, "pair conjugator needs hyperbolic elements");
    }
    auto frame = [](const IsometryClass& k) {
        Mat2 t{k.alpha.x(), k.beta.x(), k.alpha.y(), k.beta.y()};
        if (t.det() < 0.0) {
            t.b = -t.b;
            t.d = -t.d;
        }
        return t;
    };
    const Mat2 swap{0.0, 1.0, -1.0, 0.0};
    const Mat2 shift{std::exp(twist), 0.0, 0.0, std::exp(-twist)};
    return MoebiusMap::make(frame(kd) * swap * shift * frame(ka).adjugate());
}

namespace detail {

/// Frame with columns alpha, beta and determinant one.
inline Mat2 unit_frame(const BoundaryPoint& alpha, const BoundaryPoint& beta)
{
    Mat2 t{alpha.x(), beta.x(), alpha.y(), beta.y()};
    double det = t.det();
    if (det < 0.0) {
        t.b = -t.b;
        t.d = -t.d;
        det = -det;
    }
    const double s = 1.0 / std::sqrt(det);
    return {t.a * s, t.b * s, t.c * s, t.d * s};
}

/// Shift parameters of tau_{alpha,beta} making |tr(p * tau)| equal to target(mu).
/// With u, v the diagonal of T^-1 p T, tr(p tau) = u mu + v / mu.
inline std::vector<double> solve_hyperbolic_lambda(const Mat2& p, const BoundaryPoint& alpha, const BoundaryPoint& beta, bool match_own_trace)
{
    const Mat2 t = unit_frame(alpha, beta);
    const Mat2 m = t.adjugate() * p * t;
    const double u = m.a, v = m.d;
    std::vector<double> mus;
    for (double s : {1.0, -1.0}) {
        if (match_own_trace) {
            // u mu^2 + v = s (mu^2 + 1)
            if (std::abs(u - s) > tol::input) {
                const double mu2 = (s - v) / (u - s);
                if (mu2 > 0.0) {
                    mus.push_back(std::sqrt(mu2));
                }
            }
        } else {
            // u mu^2 - 2 s mu + v = 0
            if (std::abs(u) <= tol::input) {
                if (std::abs(v) > tol::input) {
                    mus.push_back(v / (2.0 * s));
                }
                continue;
            }
            const double disc = 1.0 - u * v;
            if (disc < 0.0) {
                continue;
            }
            mus.push_back((s + std::sqrt(disc)) / u);
            mus.push_back((s - std::sqrt(disc)) / u);
        }
    }
    std::vector<double> out;
    for (double mu : mus) {
        if (mu > 1.0 + tol::input) {
            out.push_back(mu * mu);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Shift parameters of pi_alpha making |tr(p * pi)| = 2; the trace is affine in lambda.
inline std::vector<double> solve_parabolic_lambda(const Mat2& p, const BoundaryPoint& alpha)
{
    const double vx = alpha.is_infinite() ? 1.0 : alpha.value();
    const double vy = alpha.is_infinite() ? 0.0 : 1.0;
    const Mat2 n{-vx * vy, vx * vx, -vy * vy, vx * vy};
    const double t0 = p.trace(), t1 = (p * n).trace();
    std::vector<double> out;
    if (std::abs(t1) <= tol::input) {
        return out;
    }
    for (double s : {2.0, -2.0}) {
        const double l = (s - t0) / t1;
        if (std::abs(l) > tol::input) {
            out.push_back(l);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

class ParamReader {
public:
    explicit ParamReader(const std::vector<double>& p) : p_(p) {}
    double next() { return p_.at(i_++); }
    BoundaryPoint point() { return BoundaryPoint::real(next()); }

private:
    const std::vector<double>& p_;
    std::size_t i_ = 0;
};

inline void validate_constructed(const SequentialSetOfType& s)
{
    const auto bad = class_pattern_violations(s);
    if (!bad.empty()) {
        throw Error(ErrorCode::ClassMismatch, bad.front());
    }
    if (relation_defect(s) > tol::relation) {
        throw Error(ErrorCode::NotSequential, "relation defect above tolerance");
    }
    const std::vector<MoebiusMap> tuple = s.derived_tuple();
    for (const MoebiusMap& m : tuple) {
        if (!classify(m).is_shift()) {
            throw Error(ErrorCode::ClassMismatch, "derived tuple contains a non-shift");
        }
    }
    if (!is_sequential_tuple(tuple)) {
        throw Error(ErrorCode::NotSequential, "derived tuple is not sequential");
    }
}

} // namespace detail

/// Parameter layout, in order:
///  - C_j hyperbolic: alpha, beta, lambda; C_j parabolic: alpha, lambda.
///  - genus zero: the last C is solved from the relation. Without punctures the
///    C before it is given in full; with punctures it contributes only its fixed
///    points and its shift is solved so the last C comes out parabolic.
///  - positive genus: all C are given; each pair before the last has A_i and
///    B_i as (alpha, beta, lambda); A_g gives (alpha, beta) and a twist follows.
///    The shift of A_g is solved so that B_g exists, and the twist picks B_g.
/// When several solved shifts are possible the smallest one that validates wins.
inline SequentialSetOfType construct_surface_set(const SurfaceType& t, const std::vector<double>& params)
{
    if (!t.constructible()) {
        throw Error(ErrorCode::NotConstructible, "type is not constructible");
    }
    if (static_cast<int>(params.size()) != t.param_count()) {
        throw Error(ErrorCode::BadParamCount, "expected " + std::to_string(t.param_count()) + " parameters, got " + std::to_string(params.size()));
    }
    detail::ParamReader in(params);
    SequentialSetOfType s;
    s.type = t;
    const int r = t.n + t.m;

    auto read_c = [&](int j) {
        const BoundaryPoint alpha = in.point();
        if (j < t.n) {
            const BoundaryPoint beta = in.point();
            return canonical_hyperbolic(alpha, beta, in.next());
        }
        return canonical_parabolic(alpha, in.next());
    };

    // candidates are tried in order; the first valid one is returned
    std::vector<SequentialSetOfType> candidates;

    if (t.g == 0 && t.m == 0) {
        for (int j = 0; j + 1 < r; ++j) {
            s.cs.push_back(read_c(j));
        }
        s.cs.push_back(inverse(product(s.cs)));
        candidates.push_back(s);
    } else if (t.g == 0) {
        for (int j = 0; j + 2 < r; ++j) {
            s.cs.push_back(read_c(j));
        }
        const int x = r - 2;
        const Mat2 p = product(s.cs).matrix();
        const BoundaryPoint alpha = in.point();
        if (x < t.n) {
            const BoundaryPoint beta = in.point();
            for (double l : detail::solve_hyperbolic_lambda(p, alpha, beta, false)) {
                SequentialSetOfType c = s;
                c.cs.push_back(canonical_hyperbolic(alpha, beta, l));
                c.cs.push_back(inverse(product(c.cs)));
                candidates.push_back(c);
            }
        } else {
            for (double l : detail::solve_parabolic_lambda(p, alpha)) {
                SequentialSetOfType c = s;
                c.cs.push_back(canonical_parabolic(alpha, l));
                c.cs.push_back(inverse(product(c.cs)));
                candidates.push_back(c);
            }
        }
    } else {
        for (int j = 0; j < r; ++j) {
            s.cs.push_back(read_c(j));
        }
        for (int i = 0; i + 1 < t.g; ++i) {
            const BoundaryPoint a1 = in.point(), a2 = in.point();
            s.as.push_back(canonical_hyperbolic(a1, a2, in.next()));
            const BoundaryPoint b1 = in.point(), b2 = in.point();
            s.bs.push_back(canonical_hyperbolic(b1, b2, in.next()));
        }
        const BoundaryPoint alpha = in.point(), beta = in.point();
        const double twist = in.next();
        MoebiusMap p = product(s.cs);
        for (std::size_t i = 0; i < s.as.size(); ++i) {
            p = p * commutator(s.as[i], s.bs[i]);
        }
        for (double l : detail::solve_hyperbolic_lambda(p.matrix(), alpha, beta, true)) {
            const MoebiusMap a = canonical_hyperbolic(alpha, beta, l);
            const MoebiusMap d = inverse(p * a);
            if (classify(d).kind != IsometryKind::hyperbolic) {
                continue;
            }
            SequentialSetOfType c = s;
            c.as.push_back(a);
            c.bs.push_back(pair_conjugator(a, d, twist));
            candidates.push_back(c);
        }
    }

    if (candidates.empty()) {
        throw Error(ErrorCode::ClassMismatch, "no shift parameter gives the solved generator its required class");
    }
    std::optional<Error> first_error;
    for (const SequentialSetOfType& c : candidates) {
        try {
            detail::validate_constructed(c);
            return c;
        } catch (const Error& e) {
            if (!first_error) {
                first_error = e;
            }
        }
    }
    throw *first_error;
}

} // namespace hyperreal
