#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quivdc;

namespace {

std::vector<std::string> letter_names(const Algebra& alg)
{
    std::vector<std::string> out;
    for (const auto& p : letters(alg))
        out.push_back(path_name(alg.quiver(), p));
    std::sort(out.begin(), out.end());
    return out;
}

bool multiplicity_free(const PerfectComplex& p)
{
    for (const auto& c : p.components()) {
        std::set<VertexId> seen(c.begin(), c.end());
        if (seen.size() != c.size())
            return false;
    }
    return true;
}

} // namespace

TEST(Gentle, GentlenessOfNamedAlgebras)
{
    EXPECT_TRUE(is_gentle(*lambda_algebra(1, 2, 0)).is_gentle);
    EXPECT_TRUE(is_gentle(*lambda_algebra(2, 3, 1)).is_gentle);
    EXPECT_TRUE(is_gentle(*kronecker()).is_gentle);
    EXPECT_TRUE(is_gentle(*truncated_linear(3, 2)).is_gentle);
    EXPECT_TRUE(is_gentle(*hereditary_linear(3)).is_gentle);

    const auto rep = is_gentle(*truncated_linear(4, 3));
    EXPECT_FALSE(rep.is_gentle);
    ASSERT_FALSE(rep.violations.empty());
    EXPECT_EQ(rep.violations[0].condition, "relation length ≠ 2");
    EXPECT_THROW(has_generalized_band(*truncated_linear(4, 3)), OutOfScope);
}

TEST(Gentle, ThreeArrowsIntoAVertexIsNotGentle)
{
    Quiver q;
    for (auto v : {"0", "1", "2", "3"})
        q.add_vertex(v);
    q.add_arrow("x", "1", "0");
    q.add_arrow("y", "2", "0");
    q.add_arrow("z", "3", "0");
    EXPECT_FALSE(is_gentle(*Algebra::compile(q, {})).is_gentle);
}

TEST(Gentle, LettersOfSmallAlgebras)
{
    EXPECT_EQ(letter_names(*truncated_linear(3, 2)), (std::vector<std::string>{"a1", "a2"}));
    EXPECT_EQ(letter_names(*hereditary_linear(3)), (std::vector<std::string>{"a1", "a2", "a2.a1"}));
    EXPECT_EQ(letter_names(*lambda_algebra(1, 2, 0)), (std::vector<std::string>{"a0", "a0.a1", "a1"}));
}

TEST(Gentle, ValidateStringExamples)
{
    auto a32 = truncated_linear(3, 2);
    EXPECT_FALSE(validate_string(*a32, parse_word(*a32, {"a1", "a2"}, false)));

    auto h3 = hereditary_linear(3);
    const auto v = validate_string(*h3, parse_word(*h3, {"a1", "a2"}, false));
    ASSERT_TRUE(v);
    EXPECT_EQ(v->position, 0u);

    auto kr = kronecker();
    const auto band = parse_word(*kr, {"a", "~b"}, true);
    EXPECT_FALSE(validate_string(*kr, band));
    EXPECT_TRUE(is_balanced(band));
    EXPECT_TRUE(is_primitive(band));
    EXPECT_TRUE(validate_string(*kr, parse_word(*kr, {"a", "~a"}, true)));
    EXPECT_FALSE(is_primitive(parse_word(*kr, {"a", "~b", "a", "~b"}, true)));
    EXPECT_THROW(parse_word(*kr, {"c"}, false), ValidationError);
}

TEST(Gentle, StringComplexExamples)
{
    auto alg = truncated_linear(3, 2);
    const Quiver& q = alg->quiver();
    const auto one = string_complex(alg, parse_word(*alg, {"a1"}, false));
    EXPECT_EQ(one.components(), (std::vector<std::vector<VertexId>>{{q.vertex("1")}, {q.vertex("2")}}));
    EXPECT_EQ(path_name(q, one.differentials()[0](0, 0).terms().begin()->first), "a1");

    const auto two = string_complex(alg, parse_word(*alg, {"a1", "a2"}, false));
    EXPECT_EQ(two.components(),
              (std::vector<std::vector<VertexId>>{{q.vertex("1")}, {q.vertex("2")}, {q.vertex("3")}}));
    EXPECT_TRUE(is_minimal(two));

    const auto stalk = string_complex(alg, parse_word(*alg, {}, false, "2"));
    EXPECT_EQ(stalk, PerfectComplex::stalk(alg, q.vertex("2")));

    auto h3 = hereditary_linear(3);
    EXPECT_THROW(string_complex(h3, parse_word(*h3, {"a1", "a2"}, false)), ValidationError);
}

TEST(Gentle, StringComplexesAreMinimalWithOneSummandPerWalkVertex)
{
    auto alg = lambda_algebra(2, 3, 1);
    for (const auto& w : enumerate_strings(*alg, 5)) {
        const auto p = string_complex(alg, w);
        EXPECT_TRUE(is_minimal(p));
        EXPECT_EQ(p.summand_count(), w.letters.size() + 1);
        for (const auto& d : p.differentials())
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c)
                    EXPECT_LE(d(r, c).terms().size(), 1u);
    }
}

TEST(Gentle, KroneckerBandComplex)
{
    auto kr = kronecker();
    const auto w = parse_word(*kr, {"a", "~b"}, true);
    const auto b1 = band_complex(kr, w, 1, 1);
    EXPECT_EQ(b1.components().size(), 2u);
    EXPECT_EQ(invariants(b1), (InvariantTriple{2, 1, 2}));
    EXPECT_EQ(oracle::triple_from_dims(oracle::cohomology_by_degree(b1)), invariants(b1));
    EXPECT_EQ(invariants(band_complex(kr, w, 1, 2)).hl, 4u);
    for (std::size_t d = 1; d <= 4; ++d) {
        const auto b = band_complex(kr, w, 3, d);
        EXPECT_EQ(invariants(b).hl, 2 * d);
        EXPECT_EQ(is_indecomposable(b).verdict, Verdict::Yes);
    }
    EXPECT_THROW(band_complex(kr, w, 0, 1), ValidationError);
    EXPECT_THROW(band_complex(kr, parse_word(*kr, {"a", "~b", "a", "~b"}, true), 1, 1), ValidationError);
}

TEST(Gentle, DiscretenessDecisions)
{
    EXPECT_TRUE(is_derived_discrete_gentle(*lambda_algebra(1, 2, 0)));
    EXPECT_TRUE(is_derived_discrete_gentle(*lambda_algebra(2, 3, 1)));
    EXPECT_TRUE(is_derived_discrete_gentle(*truncated_linear(3, 2)));
    EXPECT_TRUE(is_derived_discrete_gentle(*hereditary_linear(3)));

    auto kr = kronecker();
    const auto s = has_generalized_band(*kr);
    ASSERT_TRUE(s.found);
    ASSERT_TRUE(s.witness);
    EXPECT_FALSE(validate_string(*kr, *s.witness));
    EXPECT_TRUE(is_balanced(*s.witness));
    EXPECT_TRUE(is_primitive(*s.witness));
    EXPECT_NO_THROW(band_complex(kr, *s.witness, 1, 1));
}

TEST(Gentle, StringComplexesOverLambdaAreBoundedAndMultiplicityFree)
{
    auto alg = lambda_algebra(1, 2, 0);
    for (const auto& w : enumerate_strings(*alg, 6)) {
        const auto p = string_complex(alg, w);
        EXPECT_TRUE(multiplicity_free(p));
        EXPECT_LE(invariants(p).hl, alg->dimension());
    }
}

TEST(Gentle, LemmaFamilyShapeAndInvariants)
{
    EXPECT_THROW(lemma_family(2, 0, 1), ValidationError);
    EXPECT_THROW(lemma_family(3, 0, 0), ValidationError);
    std::size_t prev_hr = 0;
    for (std::size_t d = 1; d <= 3; ++d) {
        const auto base = lemma_family(3, 0, d);
        const std::vector<std::size_t> sizes{d, 2 * d, 2 * d, 2 * d, 2 * d, d};
        for (std::size_t i = 0; i < 6; ++i)
            EXPECT_EQ(base.components()[i].size(), sizes[i]);
        const auto t = invariants(base);
        EXPECT_EQ(t.hw, 5u);
        EXPECT_GT(t.hr, prev_hr);
        prev_hr = t.hr;
        EXPECT_EQ(cohomology(base).dim_at(0), 0u);
        for (int lambda : {1, 5})
            EXPECT_EQ(invariants(lemma_family(3, lambda, d)), t);
    }
}

TEST(Gentle, LemmaFamilyForLargerM)
{
    const auto p = lemma_family(4, 2, 1);
    EXPECT_TRUE(is_minimal(p));
    EXPECT_EQ(cohomology(p).dim_at(0), 0u);
    EXPECT_EQ(is_indecomposable(p).verdict, Verdict::Yes);
}
