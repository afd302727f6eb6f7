#include "hyperreal/real_structures.hpp"

#include "seeds.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hyperreal;

namespace {

std::vector<std::string> oval_strings(int len)
{
    std::vector<std::string> out;
    for (int bits = 0; bits < (1 << len); ++bits) {
        std::string s;
        for (int i = 0; i < len; ++i) {
            s += (bits >> i) & 1 ? 'p' : 'h';
        }
        out.push_back(s);
    }
    return out;
}

double relator_oracle(const GeneratorSystem& sys)
{
    double worst = 0.0;
    for (const GroupWord& w : sys.relators) {
        worst = std::max(worst, projective_distance(eval_word(w, sys.maps()), MoebiusMap::identity()));
    }
    return worst;
}

bool perpendicular(const Geodesic& a, const Geodesic& b, double eps)
{
    return endpoint_relation(a, b) == EndpointRelation::crossing && std::abs(angle_between(a, b) - std::numbers::pi / 2) <= eps;
}

} // namespace

TEST(FindWord, ShortestAndShortlex)
{
    fixtures::Rng rng(11);
    const std::vector<MoebiusMap> gens = {fixtures::random_moderate_map(rng), fixtures::random_moderate_map(rng),
                                          fixtures::random_moderate_map(rng)};
    const GroupWord w = {{0, 1}, {2, -1}, {1, 1}};
    const auto found = find_word(eval_word(w, gens), gens);
    ASSERT_TRUE(found);
    EXPECT_EQ(*found, w);
    EXPECT_EQ(*find_word(MoebiusMap::identity(), gens), GroupWord{});
    const GroupWord long_word = {{0, 1}, {1, 1}, {2, 1}, {0, 1}, {1, 1}, {2, 1}, {0, 1}, {1, -1}};
    const auto eight = find_word(eval_word(long_word, gens), gens);
    ASSERT_TRUE(eight);
    EXPECT_EQ(word_length(*eight), 8);
    EXPECT_FALSE(find_word(eval_word(long_word, gens) * gens[0], gens, 8));
}

TEST(BuildGenusZero, AllOvalTypesUpToEight)
{
    for (int len = 3; len <= 8; ++len) {
        for (const std::string& s : oval_strings(len)) {
            const OvalType t = OvalType::parse(s);
            const GeneratorSystem sys = build_genus_zero(t, default_placement(t));
            EXPECT_LE(relator_oracle(sys), 1e-12) << s;
            EXPECT_TRUE(is_sequential_tuple(sys.maps())) << s;
            const SigmaReport rep = verify_real_structure(sys);
            EXPECT_TRUE(rep.passed()) << s;
            for (const SigmaEntry& e : rep.entries) {
                EXPECT_EQ(e.source, "closed-form") << s << " " << e.role;
            }
            for (int j = 0; j < len; ++j) {
                const IsometryKind want = t[(j + 1) % len] == BoundaryKind::puncture ? IsometryKind::parabolic : IsometryKind::hyperbolic;
                EXPECT_EQ(classify(sys.gens[j].map).kind, want) << s << j;
            }
        }
    }
}

TEST(BuildGenusZero, Errors)
{
    EXPECT_THROW(build_genus_zero(OvalType::parse("hh"), {0, 1, 2, 3}), Error);
    const OvalType hhh = OvalType::parse("hhh");
    try {
        build_genus_zero(hhh, {0, 1, 1, 2, 3, 4}); // touching where a hole is required
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadPlacement);
    }
    try {
        build_genus_zero(hhh, {0, 1, 2, 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadPlacement);
    }
    try {
        build_genus_zero(OvalType::parse("phh"), {0, 1, 2, 3, 4, 5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadPlacement);
    }
}

TEST(BuildGenusZero, PunctureFixedPointIsTheSharedEndpoint)
{
    const OvalType t = OvalType::parse("hph");
    const GeneratorSystem sys = build_genus_zero(t, {0, 1, 1, 2, 3, 4});
    // s[1] is the junction of l_1 and l_2
    const IsometryClass k = classify(sys.gens[0].map);
    ASSERT_EQ(k.kind, IsometryKind::parabolic);
    EXPECT_NEAR(k.alpha.value(), 1.0, 1e-9);
}

TEST(Hexagon, RightAnglesAndSideLengths)
{
    fixtures::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double l1 = std::exp(fixtures::uniform(rng, 0.5, 3.0));
        const double l2 = std::exp(fixtures::uniform(rng, 0.5, 3.0));
        const double l3 = std::exp(fixtures::uniform(rng, 0.5, 3.0));
        const Hexagon h = build_hexagon(l1, l2, l3);
        const double lambdas[3] = {l1, l2, l3};
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(classify(h.system.gens[i].map).lambda, lambdas[i], 1e-9 * lambdas[i]);
            const Geodesic& a = h.ls[i];
            const Geodesic& b = h.ls[(i + 1) % 3];
            EXPECT_TRUE(perpendicular(h.cs[i], a, 1e-6)) << trial << i;
            EXPECT_TRUE(perpendicular(h.cs[i], b, 1e-6)) << trial << i;
            EXPECT_NEAR(common_perpendicular(a, b).dist, 0.5 * std::log(lambdas[i]), 1e-6);
        }
        // left to right
        EXPECT_LT(h.ls[0].to.value(), h.ls[1].from.value());
        EXPECT_LT(h.ls[1].to.value(), h.ls[2].from.value());
        EXPECT_LE(relator_oracle(h.system), 1e-12);
    }
}

TEST(SymmetricThreeHoles, SigmaSwapsTheFirstTwoHoles)
{
    const GeneratorSystem sys = build_symmetric_three_holes(std::exp(1.2), std::exp(2.0));
    const auto gens = sys.maps();
    EXPECT_LE(projective_distance(conjugate(sys.sigma, gens[0]), inverse(gens[1])), 1e-9);
    EXPECT_LE(projective_distance(conjugate(sys.sigma, gens[2]), inverse(gens[2])), 1e-9);
    EXPECT_TRUE(same_unoriented(apply(sys.sigma, axis_of(gens[2])), axis_of(gens[2])));
    EXPECT_LE(projective_distance(sys.sigma * sys.sigma, MoebiusMap::identity()), 1e-12);
    EXPECT_TRUE(verify_real_structure(sys).passed());
}

struct CurveCase {
    int g, k, eps, nI, mI;
};

class RealCurve : public ::testing::TestWithParam<CurveCase> {};

TEST_P(RealCurve, SigmaReportPasses)
{
    const CurveCase c = GetParam();
    const RealCurveType t = RealCurveType::plain(c.g, c.k, c.eps, c.nI, c.mI);
    const int h = handle_count(t);
    const SurfaceType st{h, c.g - 2 * h + 1 + c.nI, c.mI};
    const GeneratorSystem sys = build_real_curve(t, fixtures::surface_seed(st).params);
    const auto gens = sys.maps();
    for (const Generator& g : sys.gens) {
        EXPECT_EQ(classify(g.map).kind, g.expected) << g.role;
    }
    const MoebiusMap s2 = sys.sigma * sys.sigma;
    EXPECT_LE(projective_distance(s2, c.k > 0 ? MoebiusMap::identity() : gens[0]), 1e-9);
    const SigmaReport rep = verify_real_structure(sys);
    for (const SigmaEntry& e : rep.entries) {
        EXPECT_TRUE(e.ok) << e.role;
        EXPECT_EQ(e.source, "closed-form") << e.role;
    }
    EXPECT_TRUE(rep.passed());
    EXPECT_LE(relator_oracle(sys), 1e-9);
    // C_0 sits on the imaginary axis
    const IsometryClass k0 = classify(gens[0]);
    EXPECT_TRUE(k0.alpha.is_infinite());
    EXPECT_NEAR(k0.beta.value(), 0.0, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Types, RealCurve,
                         ::testing::Values(CurveCase{3, 2, 1, 0, 0}, CurveCase{3, 2, 1, 1, 0}, CurveCase{3, 2, 1, 0, 1},
                                           CurveCase{3, 2, 1, 1, 1}, CurveCase{2, 1, 0, 0, 0}, CurveCase{2, 1, 0, 1, 0},
                                           CurveCase{2, 1, 0, 0, 1}, CurveCase{2, 1, 0, 1, 1}, CurveCase{2, 0, 0, 0, 0},
                                           CurveCase{2, 0, 0, 1, 0}, CurveCase{2, 0, 0, 0, 1}, CurveCase{2, 0, 0, 1, 1}));

TEST(RealCurve, Errors)
{
    try {
        build_real_curve(RealCurveType::plain(2, 2, 1), {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAdmissible);
    }
    RealCurveType with_hole = RealCurveType::plain(2, 1, 1);
    with_hole.ovals[0] = OvalType::parse("h");
    EXPECT_THROW(build_real_curve(with_hole, {}), Error);
}
