#include "hyperreal/sequential.hpp"

#include "seeds.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hyperreal;
using hyperreal::fixtures::Rng;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::MalformedInput;
}

std::vector<MoebiusMap> conjugate_all(const MoebiusMap& a, const std::vector<MoebiusMap>& ms)
{
    std::vector<MoebiusMap> out;
    for (const MoebiusMap& m : ms) {
        out.push_back(conjugate(a, m));
    }
    return out;
}

std::vector<MoebiusMap> side_by_side_chain(int r)
{
    std::vector<Geodesic> ls;
    for (int j = 0; j < r; ++j) {
        ls.push_back(make_geodesic(3.0 * j, 3.0 * j + 2.0));
    }
    return fixtures::reflection_chain(ls);
}

} // namespace

TEST(IsLeftOf, Examples)
{
    const MoebiusMap m01 = canonical_hyperbolic(0, 1, 3), m23 = canonical_hyperbolic(2, 3, 3);
    const MoebiusMap m03 = canonical_hyperbolic(0, 3, 3), m25 = canonical_hyperbolic(2, 5, 3);
    EXPECT_TRUE(is_left_of(m01, m23));
    EXPECT_FALSE(is_left_of(m23, m01));
    EXPECT_FALSE(is_left_of(m03, m25));
    EXPECT_TRUE(is_left_of(canonical_parabolic(1, 1), canonical_hyperbolic(2, 4, 2)));
    // orientation of the axis does not matter, only the positions
    EXPECT_TRUE(is_left_of(canonical_hyperbolic(1, 0, 3), m23));
    EXPECT_EQ(code_of([&] { is_left_of(canonical_hyperbolic(BoundaryPoint::infinity(), BoundaryPoint::real(0), 2), m23); }),
              ErrorCode::InfiniteFixedPoint);
    EXPECT_EQ(code_of([&] { is_left_of(canonical_elliptic({0, 1}, 1.0), m23); }), ErrorCode::NotShift);
}

TEST(SequentialTriple, ReflectionChain)
{
    const auto c = fixtures::reflection_chain({make_geodesic(0, 2), make_geodesic(3, 5), make_geodesic(6, 8)});
    EXPECT_LE(projective_distance(c[0] * c[1] * c[2], MoebiusMap::identity()), 1e-12);
    EXPECT_TRUE(is_sequential_triple(c[0], c[1], c[2]));
    EXPECT_FALSE(is_sequential_triple(c[0], c[1], canonical_hyperbolic(6, 8, 2)));
    EXPECT_EQ(code_of([&] { is_sequential_triple(c[0], c[1], canonical_elliptic({0, 1}, 1.0)); }), ErrorCode::NotShift);
    EXPECT_EQ(code_of([&] { is_sequential_triple(c[0], MoebiusMap::identity(), c[2]); }), ErrorCode::NotShift);
    EXPECT_EQ(code_of([&] { is_sequential_triple(c[0], c[1], reflection_in(make_geodesic(0, 1))); }), ErrorCode::NotShift);
}

TEST(SequentialTriple, ThreeAxesWitness)
{
    const auto c = fixtures::three_axes_triple();
    const Geodesic axes[3] = {make_geodesic(-4, -2), make_geodesic(-1, 1), make_geodesic(2, 4)};
    for (int i = 0; i < 3; ++i) {
        const IsometryClass k = classify(c[i]);
        ASSERT_EQ(k.kind, IsometryKind::hyperbolic);
        EXPECT_TRUE(k.positive);
        EXPECT_TRUE(same_unoriented(axis_of(c[i]), axes[i], 1e-9));
    }
    EXPECT_LE(projective_distance(c[0] * c[1] * c[2], MoebiusMap::identity()), 1e-12);
    EXPECT_TRUE(is_sequential_triple(c[0], c[1], c[2]));
    EXPECT_TRUE(is_left_of(c[0], c[1]));
    EXPECT_TRUE(is_left_of(c[1], c[2]));
}

TEST(SequentialTriple, ParabolicEntries)
{
    const auto s = fixtures::surface_seed({0, 1, 2});
    EXPECT_EQ(classify(s.chain[1]).kind, IsometryKind::parabolic);
    EXPECT_EQ(classify(s.chain[2]).kind, IsometryKind::parabolic);
    EXPECT_TRUE(is_sequential_triple(s.chain[0], s.chain[1], s.chain[2]));
}

TEST(SequentialTriple, ConjugationInvariance)
{
    Rng rng(21);
    const auto fig = fixtures::three_axes_triple();
    const auto bad = side_by_side_chain(3);
    for (int i = 0; i < 100; ++i) {
        const MoebiusMap a = fixtures::random_map(rng);
        const auto c = conjugate_all(a, fig);
        EXPECT_TRUE(is_sequential_triple(c[0], c[1], c[2]));
        const auto d = conjugate_all(a, bad);
        EXPECT_FALSE(is_sequential_triple(d[2], d[1], d[0]));
    }
}

TEST(SequentialTriple, InverseReversal)
{
    // (C3^-1, C2^-1, C1^-1) always multiplies to one. For a reflection chain it
    // is the chain of the geodesics walked the other way round, and ordering it
    // would need an orientation-reversing conjugator, so it is never sequential.
    Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const MoebiusMap a = fixtures::random_map(rng);
        const auto c = conjugate_all(a, fixtures::three_axes_triple());
        const MoebiusMap i1 = inverse(c[2]), i2 = inverse(c[1]), i3 = inverse(c[0]);
        EXPECT_LE(projective_distance(i1 * i2 * i3, MoebiusMap::identity()), 1e-9);
        EXPECT_FALSE(is_sequential_triple(i1, i2, i3));
        // conjugating by a reflection restores it
        const MoebiusMap r = reflection_in(make_geodesic(0, INFINITY));
        EXPECT_TRUE(is_sequential_triple(conjugate(r, i1), conjugate(r, i2), conjugate(r, i3)));
    }
}

TEST(SequentialTuple, Examples)
{
    // the last geodesic wraps around the others through infinity
    std::vector<Geodesic> ls;
    for (int j = 0; j < 4; ++j) {
        ls.push_back(make_geodesic(3.0 * j, 3.0 * j + 2.0));
    }
    ls.push_back(make_geodesic(12.0, -1.0));
    const auto good = fixtures::reflection_chain(ls);
    EXPECT_TRUE(is_sequential_tuple(good));
    const auto f = fixtures::three_axes_triple();
    EXPECT_TRUE(is_sequential_tuple(f));
    EXPECT_EQ(is_sequential_tuple(f), is_sequential_triple(f[0], f[1], f[2]));

    std::vector<MoebiusMap> reversed(good.rbegin(), good.rend());
    EXPECT_FALSE(is_sequential_tuple(reversed));

    EXPECT_EQ(code_of([&] { is_sequential_tuple({good[0], good[1]}); }), ErrorCode::TooShort);
    auto with_elliptic = good;
    with_elliptic[2] = canonical_elliptic({1, 1}, 0.5);
    EXPECT_EQ(code_of([&] { is_sequential_tuple(with_elliptic); }), ErrorCode::NotShift);
}

TEST(SequentialTuple, SideBySideGeodesicsAlsoBoundARegion)
{
    // five semicircles in a row bound the region above them all
    EXPECT_TRUE(is_sequential_tuple(side_by_side_chain(5)));
}

TEST(SequentialTuple, ConjugationInvariance)
{
    Rng rng(23);
    const auto s = fixtures::surface_seed({0, 3, 2});
    for (int i = 0; i < 30; ++i) {
        const MoebiusMap a = fixtures::random_moderate_map(rng);
        const auto c = conjugate_all(a, s.chain);
        EXPECT_TRUE(is_sequential_tuple(c));
        EXPECT_FALSE(is_sequential_tuple(std::vector<MoebiusMap>(c.rbegin(), c.rend())));
    }
}

TEST(EvalWord, Examples)
{
    const MoebiusMap a = canonical_hyperbolic(0, 1, 3), b = canonical_hyperbolic(2, 5, 2);
    const std::vector<MoebiusMap> gens{a, b};
    EXPECT_LE(projective_distance(eval_word({}, gens), MoebiusMap::identity()), 0.0);
    EXPECT_LE(projective_distance(eval_word({{0, 1}, {0, -1}}, gens), MoebiusMap::identity()), 1e-14);
    EXPECT_LE(projective_distance(eval_word({{0, 1}, {1, 1}, {0, -1}, {1, -1}}, gens), commutator(a, b)), 1e-14);
    EXPECT_LE(projective_distance(eval_word({{1, 3}}, gens), b * b * b), 1e-13);
    EXPECT_EQ(code_of([&] { eval_word({{2, 1}}, gens); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { eval_word({{-1, 1}}, gens); }), ErrorCode::IndexOutOfRange);
}

TEST(EvalWord, InverseAndReduce)
{
    Rng rng(24);
    const std::vector<MoebiusMap> gens{fixtures::random_map(rng), fixtures::random_map(rng), fixtures::random_map(rng)};
    const GroupWord w{{0, 2}, {1, -1}, {2, 1}, {2, 1}, {0, -1}};
    EXPECT_LE(projective_distance(eval_word(inverse_word(w), gens), inverse(eval_word(w, gens))), 1e-12);
    EXPECT_LE(projective_distance(eval_word(reduce_word(w), gens), eval_word(w, gens)), 1e-12);
    EXPECT_EQ(reduce_word(w), (GroupWord{{0, 2}, {1, -1}, {2, 2}, {0, -1}}));
    EXPECT_TRUE(reduce_word(concat(w, inverse_word(w))).empty());
    EXPECT_EQ(word_length(w), 6);
}

TEST(SurfaceType, Counts)
{
    EXPECT_EQ((SurfaceType{0, 3, 0}).param_count(), 6);
    EXPECT_EQ((SurfaceType{1, 0, 1}).param_count(), 5);
    EXPECT_EQ((SurfaceType{2, 1, 0}).param_count(), 12);
    EXPECT_TRUE((SurfaceType{0, 0, 3}).constructible());
    EXPECT_FALSE((SurfaceType{1, 0, 0}).constructible());
    EXPECT_FALSE((SurfaceType{0, 2, 0}).constructible());
    EXPECT_TRUE((SurfaceType{1, 0, 0}).hyperbolic() == false);
    EXPECT_TRUE((SurfaceType{1, 1, 0}).hyperbolic());
}

TEST(ConstructSurfaceSet, ThreeHolesMatchesReflectionOracle)
{
    const auto s = fixtures::surface_seed({0, 3, 0});
    ASSERT_EQ(static_cast<int>(s.params.size()), 6);
    const SequentialSetOfType set = construct_surface_set({0, 3, 0}, s.params);
    EXPECT_LE(relation_defect(set), 1e-12);
    EXPECT_TRUE(is_sequential_of_type(set));
    for (int i = 0; i < 3; ++i) {
        EXPECT_LE(projective_distance(set.cs[i], s.chain[i]), 1e-9) << i;
    }
}

TEST(ConstructSurfaceSet, SolvedPunctureIsParabolic)
{
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}, {0, 3}, {3, 2}, {2, 3}}) {
        const auto s = fixtures::surface_seed({0, n, m});
        const SequentialSetOfType set = construct_surface_set({0, n, m}, s.params);
        EXPECT_LE(relation_defect(set), 1e-9);
        EXPECT_TRUE(class_pattern_violations(set).empty());
        EXPECT_EQ(classify(set.cs.back()).kind, IsometryKind::parabolic);
        EXPECT_TRUE(is_sequential_of_type(set));
    }
}

TEST(ConstructSurfaceSet, OnePuncturedTorus)
{
    const auto s = fixtures::surface_seed({1, 0, 1});
    const SequentialSetOfType set = construct_surface_set({1, 0, 1}, s.params);
    EXPECT_LE(relation_defect(set), 1e-9);
    EXPECT_TRUE(is_sequential_of_type(set));
    // classic trace identity: the commutator of a one-holed torus pair with a cusp has trace -2
    const Mat2 k = commutator(set.as[0], set.bs[0]).matrix();
    EXPECT_NEAR(std::abs(k.trace()), 2.0, 1e-6);
    EXPECT_LE(projective_distance(set.as[0], s.chain[1]), 1e-9);
}

TEST(ConstructSurfaceSet, HandlesWithHoles)
{
    const auto s1 = fixtures::surface_seed({1, 1, 0});
    const SequentialSetOfType t1 = construct_surface_set({1, 1, 0}, s1.params);
    EXPECT_LE(relation_defect(t1), 1e-9);
    EXPECT_TRUE(is_sequential_of_type(t1));

    const auto s2 = fixtures::surface_seed({2, 1, 0});
    ASSERT_EQ(static_cast<int>(s2.params.size()), 12);
    const SequentialSetOfType t2 = construct_surface_set({2, 1, 0}, s2.params);
    EXPECT_LE(relation_defect(t2), 1e-9);
    EXPECT_TRUE(is_sequential_of_type(t2));
    EXPECT_LE(projective_distance(conjugate(t2.bs[1], inverse(t2.as[1])), s2.chain[4]), 1e-8);
}

TEST(ConstructSurfaceSet, TwistMovesOnlyTheLastB)
{
    auto s = fixtures::surface_seed({1, 1, 0});
    const SequentialSetOfType a = construct_surface_set({1, 1, 0}, s.params);
    s.params.back() += 0.25;
    const SequentialSetOfType b = construct_surface_set({1, 1, 0}, s.params);
    EXPECT_LE(projective_distance(a.as[0], b.as[0]), 1e-12);
    EXPECT_GT(projective_distance(a.bs[0], b.bs[0]), 1e-3);
    EXPECT_LE(projective_distance(a.bs[0] * inverse(a.as[0]) * inverse(a.bs[0]), b.bs[0] * inverse(b.as[0]) * inverse(b.bs[0])), 1e-9);
}

TEST(ConstructSurfaceSet, Errors)
{
    const auto s = fixtures::surface_seed({0, 3, 0});
    auto shorter = s.params;
    shorter.pop_back();
    EXPECT_EQ(code_of([&] { construct_surface_set({0, 3, 0}, shorter); }), ErrorCode::BadParamCount);
    EXPECT_EQ(code_of([&] { construct_surface_set({1, 0, 0}, {1, 2, 3}); }), ErrorCode::NotConstructible);

    // reversing the first axis destroys the ordering
    auto flipped = s.params;
    std::swap(flipped[0], flipped[1]);
    const ErrorCode e = code_of([&] { construct_surface_set({0, 3, 0}, flipped); });
    EXPECT_TRUE(e == ErrorCode::NotSequential || e == ErrorCode::ClassMismatch);

    // a three-punctured sphere asked as three holes: the solved C3 is parabolic
    const auto p = fixtures::surface_seed({0, 2, 1});
    std::vector<double> as_holes(p.params.begin(), p.params.begin() + 3);
    const IsometryClass k = classify(p.chain[1]);
    as_holes.insert(as_holes.end(), {k.alpha.value(), k.beta.value(), k.lambda});
    EXPECT_EQ(code_of([&] { construct_surface_set({0, 3, 0}, as_holes); }), ErrorCode::ClassMismatch);
}

TEST(RelationDefect, Sensitivity)
{
    const auto s = fixtures::surface_seed({0, 3, 0});
    SequentialSetOfType set = construct_surface_set({0, 3, 0}, s.params);
    EXPECT_LE(relation_defect(set), 1e-12);
    const Mat2 m = set.cs[1].matrix();
    set.cs[1] = MoebiusMap::make(m.a + 1e-3, m.b, m.c, m.d);
    EXPECT_GT(relation_defect(set), 1e-6);
    EXPECT_FALSE(is_sequential_of_type(set));
}

TEST(ConstructSurfaceSet, ParameterCountProperty)
{
    for (int g = 0; g <= 3; ++g) {
        for (int n = 0; n <= 4; ++n) {
            for (int m = 0; m <= 4; ++m) {
                const SurfaceType t{g, n, m};
                if (!t.constructible()) {
                    continue;
                }
                std::vector<double> wrong(t.param_count() + 1, 0.5);
                EXPECT_EQ(code_of([&] { construct_surface_set(t, wrong); }), ErrorCode::BadParamCount);
            }
        }
    }
}
