#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quivdc;

namespace {

std::size_t normal_total(const Algebra& alg)
{
    std::size_t n = 0;
    for (VertexId s = 0; s < alg.vertex_count(); ++s)
        for (VertexId t = 0; t < alg.vertex_count(); ++t)
            n += alg.normal_count(s, t);
    return n;
}

std::vector<std::vector<ArrowId>> monomial_relations(const Algebra& alg)
{
    std::vector<std::vector<ArrowId>> out;
    for (const auto& r : alg.relations())
        out.push_back(r.terms().begin()->first.arrows);
    return out;
}

AlgebraPtr commutative_square()
{
    Quiver q;
    for (auto v : {"1", "2", "3", "4"})
        q.add_vertex(v);
    q.add_arrow("a", "1", "2");
    q.add_arrow("b", "2", "4");
    q.add_arrow("c", "1", "3");
    q.add_arrow("d", "3", "4");
    auto rel = make_relation(q, {{1, {"a", "b"}}, {-1, {"c", "d"}}});
    return Algebra::compile(q, {rel});
}

} // namespace

TEST(Quiver, RejectsDuplicatesAndUnknownNames)
{
    Quiver q;
    q.add_vertex("1");
    EXPECT_THROW(q.add_vertex("1"), ValidationError);
    EXPECT_THROW(q.add_arrow("a", "1", "9"), ValidationError);
    q.add_vertex("2");
    q.add_arrow("a", "1", "2");
    EXPECT_THROW(q.add_arrow("a", "2", "1"), ValidationError);
    EXPECT_THROW(make_path(q, std::vector<std::string>{"a", "a"}), ValidationError);
}

TEST(Algebra, LambdaOneTwoZeroHasDimensionFive)
{
    auto alg = lambda_algebra(1, 2, 0);
    EXPECT_EQ(alg->vertex_count(), 2u);
    EXPECT_EQ(alg->quiver().arrow_count(), 2u);
    ASSERT_EQ(alg->relations().size(), 1u);
    // The single relation is a_{n-1} a_0 = a1 a0.
    EXPECT_EQ(combo_name(alg->quiver(), alg->relations()[0]), "a1.a0");
    EXPECT_EQ(alg->dimension(), 5u);
}

TEST(Algebra, TruncatedLinearDimensionMatchesCountOracle)
{
    for (std::size_t n = 1; n <= 9; ++n)
        for (std::size_t m = 2; m <= 4; ++m) {
            auto alg = truncated_linear(n, m);
            EXPECT_EQ(alg->dimension(), oracle::truncated_linear_dim(n, m)) << "A_" << n << "^" << m;
        }
    EXPECT_EQ(truncated_linear(9, 3)->dimension(), 24u);
}

TEST(Algebra, TruncatedLinearProjectivesMatchIntervalOracle)
{
    const std::size_t n = 7, m = 3;
    auto alg = truncated_linear(n, m);
    for (std::size_t a = 1; a <= n; ++a) {
        const auto p = projective(alg, alg->quiver().vertex(std::to_string(a)));
        for (std::size_t v = 1; v <= n; ++v)
            EXPECT_EQ(p.dim(alg->quiver().vertex(std::to_string(v))), oracle::truncated_linear_proj_dim(a, v, m))
                << "P_" << a << "(" << v << ")";
    }
}

TEST(Algebra, NormalPathsMatchMonomialEnumeration)
{
    std::vector<AlgebraPtr> algs{lambda_algebra(1, 2, 0), lambda_algebra(2, 3, 1), lambda_algebra(3, 3, 2),
                                 truncated_linear(5, 2),  truncated_linear(4, 3),  loop_algebra(4),
                                 hereditary_linear(4)};
    for (const auto& alg : algs) {
        auto paths = oracle::monomial_nonzero_paths(alg->quiver(), monomial_relations(*alg), 20);
        EXPECT_EQ(normal_total(*alg), paths.size() + alg->vertex_count());
        for (const auto& arrows : paths)
            EXPECT_FALSE(alg->is_zero_path(make_path(alg->quiver(), arrows)));
    }
}

TEST(Algebra, LambdaParameterChecks)
{
    EXPECT_THROW(lambda_algebra(0, 2, 0), ValidationError);
    EXPECT_THROW(lambda_algebra(3, 2, 0), ValidationError);
    EXPECT_THROW(lambda_algebra(1, 2, -1), ValidationError);
    EXPECT_NO_THROW(lambda_algebra(2, 2, 0)); // fully cyclic, every composite zero
    EXPECT_EQ(lambda_algebra(2, 2, 0)->dimension(), 4u);
}

TEST(Algebra, NonAdmissibleIdealIsRejected)
{
    Quiver q;
    q.add_vertex("a");
    q.add_arrow("x", "a", "a");
    EXPECT_THROW(Algebra::compile(q, {}), ValidationError);
    EXPECT_THROW(Algebra::compile(q, {}, 5), ValidationError);
}

TEST(Algebra, PathCapIsEnforced)
{
    Quiver q;
    q.add_vertex("a");
    q.add_arrow("x", "a", "a");
    q.add_arrow("y", "a", "a");
    auto rel = monomial(q, std::vector<std::string>(12, "x"));
    EXPECT_THROW(Algebra::compile(q, {rel}, 12, CompileOptions{1000}), ValidationError);
}

TEST(Algebra, CommutativeSquareIdentifiesParallelPaths)
{
    auto alg = commutative_square();
    EXPECT_EQ(alg->dimension(), 9u);
    const Quiver& q = alg->quiver();
    EXPECT_EQ(alg->reduce(monomial(q, {"a", "b"})), alg->reduce(monomial(q, {"c", "d"})));
    EXPECT_EQ(alg->normal_count(q.vertex("1"), q.vertex("4")), 1u);
}

TEST(Algebra, ReduceIsIdempotentAndLinear)
{
    auto alg = commutative_square();
    const Quiver& q = alg->quiver();
    const auto ab = make_path(q, std::vector<std::string>{"a", "b"});
    const auto cd = make_path(q, std::vector<std::string>{"c", "d"});
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            PathCombo x(ab.source, ab.target);
            x.add(ab, i);
            x.add(cd, j);
            const auto r = alg->reduce(x);
            EXPECT_EQ(alg->reduce(r), r);
            PathCombo y = PathCombo::single(ab, 2);
            auto sum = x;
            sum += y;
            auto rs = alg->reduce(x);
            rs += alg->reduce(y);
            EXPECT_EQ(alg->reduce(sum), rs);
            EXPECT_EQ(alg->reduce(x.scaled(Rational(1, 3))), r.scaled(Rational(1, 3)));
        }
}

TEST(Algebra, PathActionIsFunctorial)
{
    for (const auto& alg : {truncated_linear(3, 2), lambda_algebra(1, 2, 0), commutative_square()}) {
        std::vector<Path> all;
        for (VertexId s = 0; s < alg->vertex_count(); ++s)
            for (VertexId t = 0; t < alg->vertex_count(); ++t)
                for (const auto& p : alg->normal_paths(s, t))
                    all.push_back(p);
        for (const auto& u : all)
            for (const auto& v : all) {
                if (u.target != v.source)
                    continue;
                const auto pu = alg->path_action(PathCombo::single(u));
                const auto pv = alg->path_action(PathCombo::single(v));
                const auto puv = alg->path_action(alg->multiply(PathCombo::single(u), PathCombo::single(v)));
                for (VertexId w = 0; w < alg->vertex_count(); ++w)
                    EXPECT_EQ(pu[w] * pv[w], puv[w]);
            }
    }
}

TEST(Algebra, HomBetweenProjectivesIsPathsBackwards)
{
    auto alg = truncated_linear(3, 2);
    const Quiver& q = alg->quiver();
    // Hom(P_1, P_2) is spanned by a1: 2 -> 1.
    const auto& h = alg->hom_proj(q.vertex("1"), q.vertex("2"));
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(path_name(q, h[0]), "a1");
    EXPECT_TRUE(alg->hom_proj(q.vertex("1"), q.vertex("3")).empty());
}
