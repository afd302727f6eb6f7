#pragma once

// Holomorphic and anti-holomorphic isometries of the upper half-plane.
//
// A MoebiusMap is a real 2x2 matrix up to sign, normalized to |det| = 1.
// Orientation +1 acts as z -> (az+b)/(cz+d); orientation -1 acts on conj(z).
// Boundary points are homogeneous pairs so that infinity needs no special case.

#include "hyperreal/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace hyperreal {

namespace tol {
inline constexpr double input = 1e-12;      // degenerate inputs
inline constexpr double projective = 1e-12; // projective distance of exact identities
inline constexpr double classify = 1e-9;    // normalized trace thresholds
inline constexpr double boundary = 1e-9;    // homogeneous cross products
inline constexpr double relation = 1e-9;    // relator defects
} // namespace tol

struct HPoint {
    double re = 0.0;
    double im = 1.0;

    std::complex<double> z() const { return {re, im}; }
};

inline HPoint make_hpoint(double re, double im)
{
    if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
        throw Error(ErrorCode::MalformedInput, "interior point needs finite coordinates with im > 0");
    }
    return {re, im};
}

/// A point of R u {inf} stored as a unit homogeneous vector (x, y) with
/// y >= 0, and x > 0 when y = 0. Infinity is (1, 0).
class BoundaryPoint {
public:
    BoundaryPoint() = default;

    static BoundaryPoint infinity() { return {}; }

    /// Non-finite reals map to infinity.
    static BoundaryPoint real(double t)
    {
        if (!std::isfinite(t)) {
            return infinity();
        }
        return homogeneous(t, 1.0);
    }

    static BoundaryPoint homogeneous(double x, double y)
    {
        const double n = std::hypot(x, y);
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw Error(ErrorCode::MalformedInput, "homogeneous boundary point (0,0)");
        }
        BoundaryPoint p;
        p.x_ = x / n;
        p.y_ = y / n;
        if (p.y_ < 0.0 || (p.y_ == 0.0 && p.x_ < 0.0)) {
            p.x_ = -p.x_;
            p.y_ = -p.y_;
        }
        if (p.y_ == 0.0) {
            p.x_ = 1.0;
        }
        return p;
    }

    double x() const { return x_; }
    double y() const { return y_; }

    bool is_infinite(double eps = tol::boundary) const { return std::abs(y_) <= eps; }

    /// x/y, or +inf for the point at infinity.
    double value() const
    {
        return y_ == 0.0 ? std::numeric_limits<double>::infinity() : x_ / y_;
    }

    /// Position on the boundary circle, in (0, pi]; increases with the real
    /// value and puts infinity at pi.
    double cyclic_coordinate() const { return std::numbers::pi - std::atan2(y_, x_); }

    bool same_as(const BoundaryPoint& o, double eps = tol::boundary) const
    {
        return std::abs(x_ * o.y_ - o.x_ * y_) <= eps;
    }

private:
    double x_ = 1.0;
    double y_ = 0.0;
};

struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

    friend Mat2 operator*(const Mat2& l, const Mat2& r)
    {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    // adjugate; equals the inverse up to the determinant
    Mat2 adjugate() const { return {d, -b, -c, a}; }
};

class MoebiusMap {
public:
    MoebiusMap() = default;

    static MoebiusMap identity() { return {}; }

    /// Normalizes (a,b,c,d) to |det| = 1 with the canonical projective sign.
    static MoebiusMap make(double a, double b, double c, double d)
    {
        const double det = a * d - b * c;
        if (!std::isfinite(det) || std::abs(det) < tol::input) {
            throw Error(ErrorCode::ZeroDeterminant, "|ad-bc| below input tolerance");
        }
        const double s = std::sqrt(std::abs(det));
        MoebiusMap m;
        m.m_ = {a / s, b / s, c / s, d / s};
        m.orientation_ = det > 0.0 ? 1 : -1;
        m.canonicalize_sign();
        return m;
    }

    static MoebiusMap make(const Mat2& m) { return make(m.a, m.b, m.c, m.d); }

    /// For matrices already of determinant +-1 up to roundoff (products and
    /// adjugates of normalized maps). Rescaling by a recomputed determinant
    /// would cost about |entries|^3 ulps, so only the sign is canonicalized.
    static MoebiusMap from_unimodular(const Mat2& m, int orientation)
    {
        MoebiusMap out;
        out.m_ = m;
        out.orientation_ = orientation;
        out.canonicalize_sign();
        return out;
    }

    double a() const { return m_.a; }
    double b() const { return m_.b; }
    double c() const { return m_.c; }
    double d() const { return m_.d; }
    const Mat2& matrix() const { return m_; }
    int orientation() const { return orientation_; }
    std::array<double, 4> entries() const { return {m_.a, m_.b, m_.c, m_.d}; }

private:
    void canonicalize_sign()
    {
        // first entry that is not roundoff-level decides the sign
        for (double v : {m_.a, m_.b, m_.c, m_.d}) {
            if (std::abs(v) > tol::input) {
                if (v < 0.0) {
                    m_ = {-m_.a, -m_.b, -m_.c, -m_.d};
                }
                break;
            }
        }
        for (double* v : {&m_.a, &m_.b, &m_.c, &m_.d}) {
            if (*v == 0.0) {
                *v = 0.0; // drop negative zero
            }
        }
    }

    Mat2 m_{};
    int orientation_ = 1;
};

inline MoebiusMap make_map(double a, double b, double c, double d) { return MoebiusMap::make(a, b, c, d); }

/// compose(m1, m2) = m1 o m2. Real entries let conjugation pass through the
/// matrix product, so orientations multiply.
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2)
{
    return MoebiusMap::from_unimodular(m1.matrix() * m2.matrix(), m1.orientation() * m2.orientation());
}

inline MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) { return compose(m1, m2); }

inline MoebiusMap inverse(const MoebiusMap& m)
{
    // adj(M) = det(M) M^-1, and det = -1 flips the projective sign only
    return MoebiusMap::from_unimodular(m.matrix().adjugate(), m.orientation());
}

inline MoebiusMap power(const MoebiusMap& m, int exponent)
{
    MoebiusMap base = exponent < 0 ? inverse(m) : m;
    MoebiusMap out;
    for (int i = 0; i < std::abs(exponent); ++i) {
        out = out * base;
    }
    return out;
}

inline MoebiusMap conjugate(const MoebiusMap& by, const MoebiusMap& m) { return by * m * inverse(by); }

/// Frobenius distance between the two closest sign representatives;
/// infinite when orientations differ.
inline double projective_distance(const MoebiusMap& m1, const MoebiusMap& m2)
{
    if (m1.orientation() != m2.orientation()) {
        return std::numeric_limits<double>::infinity();
    }
    const Mat2& p = m1.matrix();
    const Mat2& q = m2.matrix();
    const double minus = Mat2{p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d}.norm();
    const double plus = Mat2{p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d}.norm();
    return std::min(minus, plus);
}

inline bool approx_equal(const MoebiusMap& m1, const MoebiusMap& m2, double eps = tol::projective)
{
    return projective_distance(m1, m2) <= eps;
}

inline HPoint apply(const MoebiusMap& m, const HPoint& p)
{
    const std::complex<double> w = m.orientation() > 0 ? p.z() : std::conj(p.z());
    const std::complex<double> r = (m.a() * w + m.b()) / (m.c() * w + m.d());
    return {r.real(), r.imag()};
}

inline BoundaryPoint apply(const MoebiusMap& m, const BoundaryPoint& p)
{
    return BoundaryPoint::homogeneous(m.a() * p.x() + m.b() * p.y(), m.c() * p.x() + m.d() * p.y());
}

enum class IsometryKind { identity, hyperbolic, parabolic, elliptic, orientation_reversing };

inline std::string_view to_string(IsometryKind k)
{
    switch (k) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::hyperbolic: return "hyperbolic";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::elliptic: return "elliptic";
    case IsometryKind::orientation_reversing: return "orientation-reversing";
    }
    return "unknown";
}

/// Hyperbolic: alpha attracting, beta repelling, lambda > 1.
/// Parabolic: alpha fixed, lambda signed shift (z -> z + lambda at infinity).
/// Elliptic: center and counter-clockwise angle in (-pi, pi].
struct IsometryClass {
    IsometryKind kind = IsometryKind::identity;
    BoundaryPoint alpha;
    BoundaryPoint beta;
    double lambda = 0.0;
    bool positive = false;
    HPoint center;
    double angle = 0.0;

    bool is_shift() const { return kind == IsometryKind::hyperbolic || kind == IsometryKind::parabolic; }
};

namespace detail {

inline Mat2 positive_trace(const Mat2& m)
{
    return m.trace() < 0.0 ? Mat2{-m.a, -m.b, -m.c, -m.d} : m;
}

inline BoundaryPoint eigen_direction(const Mat2& m, double mu)
{
    const double x1 = m.b, y1 = mu - m.a;
    const double x2 = mu - m.d, y2 = m.c;
    if (std::hypot(x1, y1) >= std::hypot(x2, y2)) {
        return BoundaryPoint::homogeneous(x1, y1);
    }
    return BoundaryPoint::homogeneous(x2, y2);
}

inline double wrap_angle(double phi)
{
    phi = std::remainder(phi, 2.0 * std::numbers::pi);
    if (phi <= -std::numbers::pi) {
        phi += 2.0 * std::numbers::pi;
    }
    return phi;
}

} // namespace detail

inline IsometryClass classify(const MoebiusMap& map)
{
    IsometryClass out;
    if (map.orientation() < 0) {
        out.kind = IsometryKind::orientation_reversing;
        return out;
    }
    const Mat2 m = detail::positive_trace(map.matrix());
    const double t = m.trace();

    if (t > 2.0 + tol::classify) {
        const double mu = 0.5 * (t + std::sqrt(t * t - 4.0));
        out.kind = IsometryKind::hyperbolic;
        out.alpha = detail::eigen_direction(m, mu);
        out.beta = detail::eigen_direction(m, 1.0 / mu);
        out.lambda = mu * mu;
        out.positive = !out.alpha.is_infinite() && !out.beta.is_infinite() && out.alpha.value() < out.beta.value();
        return out;
    }
    if (t >= 2.0 - tol::classify) {
        const Mat2 n{m.a - 1.0, m.b, m.c, m.d - 1.0};
        if (n.norm() <= tol::classify) {
            out.kind = IsometryKind::identity;
            return out;
        }
        // n = -lambda' u (Ju)^T for a unit fixed direction u
        const double c1 = std::hypot(n.a, n.c), c2 = std::hypot(n.b, n.d);
        const BoundaryPoint u = c1 >= c2 ? BoundaryPoint::homogeneous(n.a, n.c) : BoundaryPoint::homogeneous(n.b, n.d);
        const double wx = u.y(), wy = -u.x();
        const double lambda_unit = -(u.x() * (n.a * wx + n.b * wy) + u.y() * (n.c * wx + n.d * wy));
        out.kind = IsometryKind::parabolic;
        out.alpha = u;
        out.lambda = u.is_infinite() ? lambda_unit : lambda_unit * u.y() * u.y();
        out.positive = out.lambda > 0.0;
        return out;
    }
    out.kind = IsometryKind::elliptic;
    const double s = std::sqrt(std::max(0.0, 4.0 - t * t));
    const std::complex<double> x((m.a - m.d) / (2.0 * m.c), s / (2.0 * std::abs(m.c)));
    out.center = {x.real(), x.imag()};
    out.angle = detail::wrap_angle(-2.0 * std::arg(m.c * x + m.d));
    return out;
}

/// tau_{alpha,beta}(lambda): alpha attracting when lambda > 1.
inline MoebiusMap canonical_hyperbolic(const BoundaryPoint& alpha, const BoundaryPoint& beta, double lambda)
{
    if (alpha.same_as(beta, tol::input)) {
        throw Error(ErrorCode::DegenerateAxis, "hyperbolic fixed points coincide");
    }
    if (!(lambda > 0.0) || std::abs(lambda - 1.0) < tol::input) {
        throw Error(ErrorCode::UnitShift, "shift parameter must be positive and differ from 1");
    }
    const Mat2 p{alpha.x(), beta.x(), alpha.y(), beta.y()};
    const double r = std::sqrt(lambda);
    const Mat2 diag{r, 0.0, 0.0, 1.0 / r};
    return MoebiusMap::make(p * diag * p.adjugate());
}

inline MoebiusMap canonical_hyperbolic(double alpha, double beta, double lambda)
{
    return canonical_hyperbolic(BoundaryPoint::real(alpha), BoundaryPoint::real(beta), lambda);
}

/// pi_alpha(lambda); at infinity z -> z + lambda.
inline MoebiusMap canonical_parabolic(const BoundaryPoint& alpha, double lambda)
{
    if (!std::isfinite(lambda) || std::abs(lambda) < tol::input) {
        throw Error(ErrorCode::ZeroShift, "parabolic shift parameter is zero");
    }
    const double vx = alpha.is_infinite() ? 1.0 : alpha.value();
    const double vy = alpha.is_infinite() ? 0.0 : 1.0;
    // I - lambda v (Jv)^T with Jv = (vy, -vx)
    return MoebiusMap::make(1.0 - lambda * vx * vy, lambda * vx * vx, -lambda * vy * vy, 1.0 + lambda * vx * vy);
}

inline MoebiusMap canonical_parabolic(double alpha, double lambda)
{
    return canonical_parabolic(BoundaryPoint::real(alpha), lambda);
}

/// Counter-clockwise rotation through phi about x.
inline MoebiusMap canonical_elliptic(const HPoint& x, double phi)
{
    const Mat2 move{x.im, x.re, 0.0, 1.0};
    const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
    const Mat2 rot{c, s, -s, c};
    return MoebiusMap::make(move * rot * move.adjugate());
}

inline MoebiusMap sqrt_hyperbolic(const MoebiusMap& m)
{
    const IsometryClass k = classify(m);
    if (k.kind != IsometryKind::hyperbolic) {
        throw Error(ErrorCode::NotHyperbolic, "square root needs a hyperbolic element");
    }
    return canonical_hyperbolic(k.alpha, k.beta, std::sqrt(k.lambda));
}

/// Boundary points fixed by an orientation-preserving shift (one or two).
inline std::vector<BoundaryPoint> fixed_points(const IsometryClass& k)
{
    if (k.kind == IsometryKind::hyperbolic) {
        return {k.alpha, k.beta};
    }
    if (k.kind == IsometryKind::parabolic) {
        return {k.alpha};
    }
    return {};
}

} // namespace hyperreal
