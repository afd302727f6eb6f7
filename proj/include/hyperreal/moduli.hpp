#pragma once

// Topological types of real curves and the dimension arithmetic of their
// moduli spaces.

#include "hyperreal/errors.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hyperreal {

enum class BoundaryKind { hole, puncture };

/// Cyclic pattern of real holes and punctures along one compactified oval.
/// Empty means a plain oval with neither.
class OvalType {
public:
    OvalType() = default;
    explicit OvalType(std::vector<BoundaryKind> seq) : seq_(std::move(seq)) {}

    /// Letters 'h' (hole) and 'p' (puncture).
    static OvalType parse(const std::string& s)
    {
        std::vector<BoundaryKind> seq;
        for (char c : s) {
            if (c == 'h') {
                seq.push_back(BoundaryKind::hole);
            } else if (c == 'p') {
                seq.push_back(BoundaryKind::puncture);
            } else {
                throw Error(ErrorCode::MalformedInput, std::string("oval letter must be h or p, got '") + c + "'");
            }
        }
        return OvalType(std::move(seq));
    }

    std::string str() const
    {
        std::string out;
        for (BoundaryKind k : seq_) {
            out += k == BoundaryKind::hole ? 'h' : 'p';
        }
        return out;
    }

    const std::vector<BoundaryKind>& sequence() const { return seq_; }
    int size() const { return static_cast<int>(seq_.size()); }
    BoundaryKind operator[](int i) const { return seq_[i]; }
    int n_R() const { return static_cast<int>(std::count(seq_.begin(), seq_.end(), BoundaryKind::hole)); }
    int m_R() const { return size() - n_R(); }

    /// Equality up to cyclic rotation.
    friend bool operator==(const OvalType& a, const OvalType& b)
    {
        if (a.size() != b.size()) {
            return false;
        }
        if (a.seq_.empty()) {
            return true;
        }
        std::vector<BoundaryKind> doubled = a.seq_;
        doubled.insert(doubled.end(), a.seq_.begin(), a.seq_.end());
        return std::search(doubled.begin(), doubled.end(), b.seq_.begin(), b.seq_.end()) != doubled.end();
    }

private:
    std::vector<BoundaryKind> seq_;
};

/// (g, k, eps | 2 n_I, 2 m_I, ovals).
struct RealCurveType {
    int g = 0;
    int k = 0;
    int eps = 0;
    int n_I = 0;
    int m_I = 0;
    std::vector<OvalType> ovals;

    int n_R() const
    {
        int n = 0;
        for (const OvalType& o : ovals) {
            n += o.n_R();
        }
        return n;
    }
    int m_R() const
    {
        int m = 0;
        for (const OvalType& o : ovals) {
            m += o.m_R();
        }
        return m;
    }

    /// The same type with k plain ovals.
    static RealCurveType plain(int g, int k, int eps, int n_I = 0, int m_I = 0)
    {
        return {g, k, eps, n_I, m_I, std::vector<OvalType>(std::max(k, 0))};
    }

    friend bool operator==(const RealCurveType&, const RealCurveType&) = default;
};

inline bool admissible(const RealCurveType& t)
{
    if (t.g < 0 || t.n_I < 0 || t.m_I < 0 || (t.eps != 0 && t.eps != 1)) {
        return false;
    }
    const bool ovals_ok = t.eps == 1 ? (1 <= t.k && t.k <= t.g + 1 && (t.g + 1 - t.k) % 2 == 0) : (0 <= t.k && t.k <= t.g);
    const bool hyperbolic = 2 * t.g + 2 * t.n_I + t.n_R() + 2 * t.m_I + t.m_R() > 2;
    return ovals_ok && hyperbolic && t.k == static_cast<int>(t.ovals.size());
}

/// Handles of the sequential set used for curves without real boundary.
inline int handle_count(const RealCurveType& t) { return t.eps == 1 ? (t.g - t.k + 1) / 2 : 0; }

struct Dimensions {
    int teich_dim = 0;
    int closed_dim = 0;     // without real holes and punctures
    int surface_dim = 0;    // of the sequential set type (h, g-2h+1+n_I, m_I)
    int genus_zero_dim = 0; // 2 n_R + m_R - 3
    int oval_factor = 0;    // 2 n_R + m_R
    int h = 0;
    bool oval_factor_consistent = false; // teich_dim == closed_dim + oval_factor
};

inline Dimensions dimensions(const RealCurveType& t)
{
    if (!admissible(t)) {
        throw Error(ErrorCode::NotAdmissible, "type is not admissible");
    }
    Dimensions d;
    const int nR = t.n_R(), mR = t.m_R();
    d.h = handle_count(t);
    d.teich_dim = 3 * t.g - 3 + 3 * t.n_I + 2 * t.m_I + 2 * nR + mR;
    d.closed_dim = 3 * t.g - 3 + 3 * t.n_I + 2 * t.m_I;
    d.surface_dim = 6 * d.h + 3 * (t.g - 2 * d.h + 1 + t.n_I) + 2 * t.m_I - 6;
    d.genus_zero_dim = 2 * nR + mR - 3;
    d.oval_factor = 2 * nR + mR;
    d.oval_factor_consistent = d.teich_dim == d.closed_dim + d.oval_factor;
    return d;
}

} // namespace hyperreal
