#pragma once

// Geodesics, reflections, distances, perpendiculars and angles in the
// upper half-plane.

#include "hyperreal/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <utility>

namespace hyperreal {

/// Oriented geodesic running from `from` to `to`.
struct Geodesic {
    BoundaryPoint from;
    BoundaryPoint to = BoundaryPoint::real(0.0);

    Geodesic reversed() const { return {to, from}; }
};

inline Geodesic make_geodesic(const BoundaryPoint& from, const BoundaryPoint& to)
{
    if (from.same_as(to, tol::input)) {
        throw Error(ErrorCode::DegenerateAxis, "geodesic endpoints coincide");
    }
    return {from, to};
}

/// Non-finite values stand for infinity.
inline Geodesic make_geodesic(double from, double to)
{
    return make_geodesic(BoundaryPoint::real(from), BoundaryPoint::real(to));
}

inline bool same_oriented(const Geodesic& g1, const Geodesic& g2, double eps = tol::boundary)
{
    return g1.from.same_as(g2.from, eps) && g1.to.same_as(g2.to, eps);
}

/// Equality as point sets, ignoring orientation.
inline bool same_unoriented(const Geodesic& g1, const Geodesic& g2, double eps = tol::boundary)
{
    return same_oriented(g1, g2, eps) || same_oriented(g1, g2.reversed(), eps);
}

inline Geodesic apply(const MoebiusMap& m, const Geodesic& g) { return {apply(m, g.from), apply(m, g.to)}; }

/// Orientation-preserving map taking the imaginary axis (0 -> inf) onto g.
inline MoebiusMap geodesic_frame(const Geodesic& g)
{
    Mat2 t{g.to.x(), g.from.x(), g.to.y(), g.from.y()};
    if (t.det() < 0.0) {
        t.b = -t.b;
        t.d = -t.d;
    }
    return MoebiusMap::make(t);
}

/// Point at signed distance s from frame(g)(i) along g.
inline HPoint point_on(const Geodesic& g, double s) { return apply(geodesic_frame(g), HPoint{0.0, std::exp(s)}); }

/// Coefficients (A, B, C) of A(x^2+y^2) + Bx + C = 0 for the carrier circle or line.
inline std::array<double, 3> circle_coefficients(const Geodesic& g)
{
    const BoundaryPoint& p = g.from;
    const BoundaryPoint& q = g.to;
    return {p.y() * q.y(), -(p.x() * q.y() + q.x() * p.y()), p.x() * q.x()};
}

/// Bilinear form whose zero set is orthogonality of carrier circles.
inline double inversive_form(const std::array<double, 3>& l1, const std::array<double, 3>& l2)
{
    return l1[1] * l2[1] - 2.0 * (l1[0] * l2[2] + l2[0] * l1[2]);
}

/// Normalized inversive product: cos(angle) when crossing, +-cosh(distance) when disjoint.
inline double inversive_product(const Geodesic& g1, const Geodesic& g2)
{
    const auto l1 = circle_coefficients(g1);
    const auto l2 = circle_coefficients(g2);
    return inversive_form(l1, l2) / std::sqrt(inversive_form(l1, l1) * inversive_form(l2, l2));
}

inline bool on_geodesic(const HPoint& z, const Geodesic& g, double eps = 1e-9)
{
    const HPoint w = apply(inverse(geodesic_frame(g)), z);
    return std::abs(w.re) <= eps * std::max(1.0, w.im);
}

/// Signed distance from z to w, both on g, positive along g's orientation.
inline double signed_distance_along(const Geodesic& g, const HPoint& z, const HPoint& w)
{
    const MoebiusMap back = inverse(geodesic_frame(g));
    return std::log(apply(back, w).im / apply(back, z).im);
}

inline MoebiusMap reflection_in(const Geodesic& g)
{
    const Mat2 p{g.from.x(), g.to.x(), g.from.y(), g.to.y()};
    const Mat2 flip{1.0, 0.0, 0.0, -1.0};
    return MoebiusMap::make(p * flip * p.adjugate());
}

enum class EndpointRelation { disjoint_closures, one_shared, crossing, equal };

inline std::string_view to_string(EndpointRelation r)
{
    switch (r) {
    case EndpointRelation::disjoint_closures: return "disjoint-closures";
    case EndpointRelation::one_shared: return "one-shared";
    case EndpointRelation::crossing: return "crossing";
    case EndpointRelation::equal: return "equal";
    }
    return "unknown";
}

inline EndpointRelation endpoint_relation(const Geodesic& g1, const Geodesic& g2)
{
    const bool ff = g1.from.same_as(g2.from), ft = g1.from.same_as(g2.to);
    const bool tf = g1.to.same_as(g2.from), tt = g1.to.same_as(g2.to);
    const int shared = int(ff || ft) + int(tf || tt);
    if (shared == 2) {
        return EndpointRelation::equal;
    }
    if (shared == 1) {
        return EndpointRelation::one_shared;
    }
    const double a = g1.from.cyclic_coordinate(), b = g1.to.cyclic_coordinate();
    const double lo = std::min(a, b), hi = std::max(a, b);
    auto inside = [&](const BoundaryPoint& p) {
        const double x = p.cyclic_coordinate();
        return lo < x && x < hi;
    };
    return inside(g2.from) != inside(g2.to) ? EndpointRelation::crossing : EndpointRelation::disjoint_closures;
}

/// Oriented in the direction of translation: from the repelling to the attracting fixed point.
inline Geodesic axis_of(const MoebiusMap& m)
{
    const IsometryClass k = classify(m);
    if (k.kind != IsometryKind::hyperbolic) {
        throw Error(ErrorCode::NotHyperbolic, "axis needs a hyperbolic element");
    }
    return {k.beta, k.alpha};
}

inline double distance(const HPoint& z, const HPoint& w)
{
    return 2.0 * std::asinh(std::abs(z.z() - w.z()) / (2.0 * std::sqrt(z.im * w.im)));
}

struct Perpendicular {
    Geodesic perp; // oriented from foot1 towards foot2
    HPoint foot1;
    HPoint foot2;
    double dist = 0.0;
};

inline Perpendicular common_perpendicular(const Geodesic& g1, const Geodesic& g2)
{
    if (endpoint_relation(g1, g2) != EndpointRelation::disjoint_closures) {
        throw Error(ErrorCode::NotDisjoint, "common perpendicular needs disjoint closures");
    }
    // The carrier of the perpendicular is orthogonal to both carriers: solve
    // the two linear orthogonality conditions with a cross product.
    const auto l1 = circle_coefficients(g1);
    const auto l2 = circle_coefficients(g2);
    const std::array<double, 3> m1{-2.0 * l1[2], l1[1], -2.0 * l1[0]};
    const std::array<double, 3> m2{-2.0 * l2[2], l2[1], -2.0 * l2[0]};
    const double A = m1[1] * m2[2] - m1[2] * m2[1];
    const double B = m1[2] * m2[0] - m1[0] * m2[2];
    const double C = m1[0] * m2[1] - m1[1] * m2[0];
    const double disc = B * B - 4.0 * A * C;
    if (!(disc > 0.0)) {
        throw Error(ErrorCode::NotDisjoint, "orthogonal carrier has no real endpoints");
    }
    // roots of A x^2 + B xy + C y^2 = 0
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    const BoundaryPoint e1 = BoundaryPoint::homogeneous(q, A);
    const BoundaryPoint e2 = BoundaryPoint::homogeneous(C, q);

    const MoebiusMap frame = geodesic_frame({e2, e1});
    const MoebiusMap back = inverse(frame);
    auto radius = [&](const Geodesic& g) {
        const BoundaryPoint u = apply(back, g.from), v = apply(back, g.to);
        return std::sqrt(std::abs(u.value() * v.value()));
    };
    const double r1 = radius(g1), r2 = radius(g2);

    Perpendicular out;
    out.perp = r2 > r1 ? Geodesic{e2, e1} : Geodesic{e1, e2};
    out.foot1 = apply(frame, HPoint{0.0, r1});
    out.foot2 = apply(frame, HPoint{0.0, r2});
    out.dist = std::abs(std::log(r2 / r1));
    return out;
}

/// Angle between the oriented tangent directions at the crossing point.
inline double angle_between(const Geodesic& g1, const Geodesic& g2)
{
    if (endpoint_relation(g1, g2) != EndpointRelation::crossing) {
        throw Error(ErrorCode::NotCrossing, "angle needs crossing geodesics");
    }
    const MoebiusMap back = inverse(geodesic_frame(g1));
    const double u = apply(back, g2.from).value();
    const double v = apply(back, g2.to).value();
    const double c = 0.5 * (u + v), r = 0.5 * std::abs(u - v);
    const double y = std::sqrt(std::max(0.0, r * r - c * c));
    // g1 is the upward imaginary axis in this frame
    const double tx = v < u ? -y : y;
    const double ty = v < u ? -c : c;
    return std::acos(std::clamp(ty / std::hypot(tx, ty), -1.0, 1.0));
}

/// Crossing point of two crossing geodesics.
inline HPoint intersection(const Geodesic& g1, const Geodesic& g2)
{
    if (endpoint_relation(g1, g2) != EndpointRelation::crossing) {
        throw Error(ErrorCode::NotCrossing, "intersection needs crossing geodesics");
    }
    const MoebiusMap frame = geodesic_frame(g1);
    const MoebiusMap back = inverse(frame);
    const double u = apply(back, g2.from).value();
    const double v = apply(back, g2.to).value();
    const double c = 0.5 * (u + v), r = 0.5 * std::abs(u - v);
    return apply(frame, HPoint{0.0, std::sqrt(std::max(0.0, r * r - c * c))});
}

} // namespace hyperreal
