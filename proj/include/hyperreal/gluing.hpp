#pragma once

// Boundary markings, twist isometries, and gluing a symmetric piece into a
// pair of non-real holes.

#include "hyperreal/geometry.hpp"
#include "hyperreal/real_structures.hpp"

#include <cmath>
#include <map>
#include <string>

namespace hyperreal {

inline double boundary_length(const MoebiusMap& m)
{
    const IsometryClass k = classify(m);
    if (k.kind != IsometryKind::hyperbolic) {
        throw Error(ErrorCode::NotHyperbolic, "boundary length needs a hyperbolic element");
    }
    return std::log(k.lambda);
}

struct BoundaryMark {
    std::string role;
    int index = 0;
    Geodesic axis; // oriented along the translation
    double rho = 0.0;
    HPoint basepoint; // foot of the shortest segment to the reference geodesic
};

inline BoundaryMark mark_boundary(const GeneratorSystem& sys, const std::string& role)
{
    const auto i = sys.index_of(role);
    if (!i) {
        throw Error(ErrorCode::RoleNotFound, "no generator with role " + role);
    }
    if (!sys.reference) {
        throw Error(ErrorCode::NoReference, "system has no reference geodesic");
    }
    const MoebiusMap& m = sys.gens[*i].map;
    BoundaryMark mark;
    mark.role = role;
    mark.index = *i;
    mark.rho = boundary_length(m);
    mark.axis = axis_of(m);
    mark.basepoint = common_perpendicular(mark.axis, *sys.reference).foot1;
    return mark;
}

namespace detail {

/// Orientation-preserving frame: imaginary axis onto g, i onto z (z on g).
inline MoebiusMap pointed_frame(const Geodesic& g, const HPoint& z)
{
    const MoebiusMap f = geodesic_frame(g);
    const double s = std::sqrt(apply(inverse(f), z).im);
    return f * make_map(s, 0.0, 0.0, 1.0 / s);
}

} // namespace detail

/// phi maps from.axis onto to.axis with the direction reversed, so that the
/// two sides glue exterior to exterior; phi(from.basepoint) lies at signed
/// distance theta from to.basepoint along to.axis.
inline MoebiusMap twist_isometry(const BoundaryMark& from, const BoundaryMark& to, double theta)
{
    if (std::abs(from.rho - to.rho) > 1e-9) {
        throw Error(ErrorCode::LengthMismatch, "boundary lengths differ: " + std::to_string(from.rho) + " vs " + std::to_string(to.rho));
    }
    const MoebiusMap f = detail::pointed_frame(from.axis, from.basepoint);
    const MoebiusMap g = detail::pointed_frame(to.axis, to.basepoint);
    const MoebiusMap shift = make_map(std::exp(0.5 * theta), 0.0, 0.0, std::exp(-0.5 * theta));
    const MoebiusMap flip = make_map(0.0, -1.0, 1.0, 0.0); // z -> -1/z
    return g * shift * flip * inverse(f);
}

/// Glues the piece's non-real pair (u, sigma u) into the host's pair
/// (X, ~X) named by hole. With phi = twist_isometry(X, u, theta):
///   P_i = phi^-1 C_i phi, so P_1 = X^-1,
///   T = sigma phi^-1 sigma_piece phi, which carries P_2 to ~X,
///   ~P_i = sigma P_i sigma^-1.
/// X and ~X leave the generator list and are rewritten as P_1^-1 and ~P_1^-1.
inline GeneratorSystem glue(const GeneratorSystem& host, const std::string& hole, const GeneratorSystem& piece, double theta)
{
    const auto xi = host.index_of(hole);
    if (!xi) {
        throw Error(ErrorCode::RoleNotFound, "host has no generator with role " + hole);
    }
    int partner = -1;
    for (const auto& [a, b] : host.nonreal_pairs) {
        if (a == *xi) {
            partner = b;
        }
    }
    if (partner < 0) {
        throw Error(ErrorCode::NotNonRealPair, hole + " is not the first hole of a non-real pair");
    }
    if (piece.nonreal_pairs.size() != 1 || piece.gens.size() != 3) {
        throw Error(ErrorCode::NotNonRealPair, "piece must be a pair of pants with one non-real pair");
    }
    const auto [u, su] = piece.nonreal_pairs.front();
    const int third = 3 - u - su;

    const BoundaryMark from = mark_boundary(host, hole);
    const BoundaryMark to = mark_boundary(piece, piece.gens[u].role);
    const MoebiusMap phi = twist_isometry(from, to, theta);
    const MoebiusMap phi_inv = inverse(phi);
    const MoebiusMap s = phi_inv * piece.sigma * phi;

    GeneratorSystem out;
    std::map<int, int> remap;
    for (int i = 0; i < static_cast<int>(host.gens.size()); ++i) {
        if (i != *xi && i != partner) {
            remap[i] = out.add(host.gens[i].role, host.gens[i].map, host.gens[i].expected);
        }
    }
    const int order[3] = {u, su, third};
    int p[3], q[3];
    for (int k = 0; k < 3; ++k) {
        p[k] = out.add("P" + std::to_string(k + 1), phi_inv * piece.gens[order[k]].map * phi);
    }
    for (int k = 0; k < 3; ++k) {
        q[k] = out.add("~P" + std::to_string(k + 1), conjugate(host.sigma, out.gens[p[k]].map));
    }
    const int t = out.add("T", host.sigma * s);

    auto rewrite = [&](const GroupWord& w) {
        GroupWord r;
        for (const Letter& l : w) {
            if (l.index == *xi) {
                r.push_back({p[0], -l.exponent});
            } else if (l.index == partner) {
                r.push_back({q[0], -l.exponent});
            } else {
                r.push_back({remap.at(l.index), l.exponent});
            }
        }
        return reduce_word(r);
    };

    out.sigma = host.sigma;
    out.sigma_squared = rewrite(host.sigma_squared);
    for (const auto& [old_index, new_index] : remap) {
        if (host.sigma_words[old_index]) {
            out.sigma_words[new_index] = rewrite(*host.sigma_words[old_index]);
        }
    }
    const GroupWord& sq = out.sigma_squared;
    for (int k = 0; k < 3; ++k) {
        out.sigma_words[p[k]] = GroupWord{{q[k], 1}};
        out.sigma_words[q[k]] = concat(concat(sq, {{p[k], 1}}), inverse_word(sq));
    }
    out.sigma_words[t] = concat(sq, {{t, -1}});

    for (const GroupWord& w : host.relators) {
        out.relators.push_back(rewrite(w));
    }
    out.relators.push_back({{p[0], 1}, {p[1], 1}, {p[2], 1}});
    out.relators.push_back({{q[0], 1}, {q[1], 1}, {q[2], 1}});
    out.relators.push_back({{t, 1}, {p[1], 1}, {t, -1}, {q[0], 1}});

    for (const auto& [a, b] : host.nonreal_pairs) {
        if (a != *xi) {
            out.nonreal_pairs.push_back({remap.at(a), remap.at(b)});
        }
    }
    out.reference = host.reference;
    out.mirrors = host.mirrors;
    if (host.type && piece.type) {
        RealCurveType ty = *host.type;
        ty.g += 1;
        ty.k += piece.type->k;
        ty.n_I -= 1;
        ty.ovals.insert(ty.ovals.end(), piece.type->ovals.begin(), piece.type->ovals.end());
        out.type = ty;
    }
    out.provenance = host.provenance + " + glued " + piece.provenance + " at " + hole;
    return out;
}

} // namespace hyperreal
