#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "quivdc_cli.hpp"

using namespace quivdc;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "quivdc");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("quivdc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name) const { return (dir / name).string(); }

    std::string write(const std::string& name, const json& j) const
    {
        write_json_file(dir / name, j);
        return file(name);
    }

    std::string slurp(const std::string& name) const
    {
        std::ifstream f(dir / name);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    fs::path dir;
};

} // namespace

TEST_F(Cli, ValidateAlgebra)
{
    const auto r = invoke({"validate", write("lambda.json", algebra_to_json(*lambda_algebra(1, 2, 0)))});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "dim=5"));
}

TEST_F(Cli, ValidateRejectsNonzeroSquare)
{
    auto alg = truncated_linear(3, 3);
    const Quiver& q = alg->quiver();
    ComboMatrix d0({1}, {0}), d1({2}, {1});
    d0.set(0, 0, monomial(q, {"a1"}));
    d1.set(0, 0, monomial(q, {"a2"}));
    const PerfectComplex p(alg, 0, {{0}, {1}, {2}}, {d0, d1});
    const auto r = invoke({"validate", write("bad.json", complex_to_json(p, algebra_to_json(*alg)))});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "d^2 != 0 at degree 0"));
}

TEST_F(Cli, ValidateRejectsFunctorThatMissesARelation)
{
    json f{{"source", "linear:3,2"}, {"target", "loop:3"}, {"vertex_map", {{"1", "a"}, {"2", "a"}, {"3", "a"}}}};
    const json x = json::array({json{{"coeff", "1"}, {"path", json::array({"x"})}}});
    f["arrow_map"] = {{"a1", x}, {"a2", x}};
    EXPECT_EQ(invoke({"validate", write("f.json", f)}).code, 1);
    f["source"] = "linear:9,3";
    f["vertex_map"] = json::object();
    f["arrow_map"] = json::object();
    for (int v = 1; v <= 9; ++v)
        f["vertex_map"][std::to_string(v)] = "a";
    for (int a = 1; a <= 8; ++a)
        f["arrow_map"]["a" + std::to_string(a)] = x;
    EXPECT_EQ(invoke({"validate", write("g.json", f)}).code, 0);
}

TEST_F(Cli, InvariantsOfStalkModuleAndShiftInvariance)
{
    auto alg = truncated_linear(3, 2);
    auto m = direct_sum(projective(alg, 2), projective(alg, 1)); // dims 2 + 2
    json j = representation_to_json(m);
    j["algebra"] = "linear:3,2";
    const auto r = invoke({"invariants", write("m.json", j)});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "hl=4 hw=1 hr=4"));

    const auto lemma = lemma_family(3, 1, 2);
    const auto a = invoke({"invariants", write("p.json", complex_to_json(lemma, algebra_to_json(*lemma.algebra())))});
    const auto b =
        invoke({"invariants", write("q.json", complex_to_json(shift(lemma, 3), algebra_to_json(*lemma.algebra())))});
    EXPECT_EQ(a.code, 0);
    EXPECT_TRUE(contains(a.out, "hw=5"));
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, InvariantsOfAcyclicComplexExitsTwo)
{
    auto alg = truncated_linear(3, 2);
    ComboMatrix d({0}, {0});
    d.set(0, 0, PathCombo::single(Path::trivial(0)));
    const PerfectComplex cone(alg, 0, {{0}, {0}}, {d});
    const auto r = invoke({"invariants", write("cone.json", complex_to_json(cone, "linear:3,2"))});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "zero object in D^b"));
}

TEST_F(Cli, FamilyEmitsFilesThatValidate)
{
    auto r = invoke({"family", "lemma", "--m", "3", "--lambda", "1", "--d", "1", "--emit", file("lemma.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "lemma.algebra.json"));
    r = invoke({"validate", file("lemma.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "degrees 0..5"));

    r = invoke({"family", "band", "--algebra", "builtin:kronecker", "--word", "a,~b", "--lambda", "1", "--d", "3",
             "--emit", file("band.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(invoke({"validate", file("band.json")}).code, 0);

    EXPECT_EQ(invoke({"family", "lemma", "--m", "2"}).code, 1);
    EXPECT_EQ(invoke({"family", "band", "--word", "a,~b", "--lambda", "0"}).code, 1);
}

TEST_F(Cli, EmitParseEmitIsByteIdentical)
{
    ASSERT_EQ(invoke({"family", "lemma", "--m", "3", "--lambda", "5/2", "--d", "2", "--emit", file("a.json")}).code, 0);
    fs::create_directories(dir / "again");
    ASSERT_EQ(invoke({"minimize", file("a.json"), "--emit", file("again/a.json")}).code, 0);
    EXPECT_EQ(slurp("a.json"), slurp("again/a.json"));
    EXPECT_EQ(slurp("a.algebra.json"), slurp("again/a.algebra.json"));
}

TEST_F(Cli, Discrete)
{
    auto r = invoke({"discrete", "lambda:1,2,0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "discrete\n");

    r = invoke({"discrete", "builtin:kronecker"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "not-discrete"));
    EXPECT_TRUE(contains(r.out, "band witness:"));

    r = invoke({"discrete", "linear:9,3", "--json"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "undecidable here: gentle criterion only"));
}

TEST_F(Cli, IndecMinimizeAndGlue)
{
    ASSERT_EQ(invoke({"family", "lemma", "--lambda", "0", "--d", "2", "--emit", file("l.json")}).code, 0);
    auto r = invoke({"indec", file("l.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "indecomposable: yes"));

    auto alg = loop_algebra(2);
    ComboMatrix d({0}, {0});
    d.set(0, 0, monomial(alg->quiver(), {"x"}));
    write("px.json", complex_to_json(PerfectComplex(alg, -1, {{0}, {0}}, {d}), "loop:2"));
    r = invoke({"glue", file("px.json"), "--cutoff", "3", "--emit", file("glued.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "4 summands"));
    EXPECT_TRUE(contains(r.out, "status: truncated at cutoff"));

    ComboMatrix e({0}, {0});
    e.set(0, 0, PathCombo::single(Path::trivial(0)));
    write("cone.json", complex_to_json(PerfectComplex(alg, 0, {{0}, {0}}, {e}), "loop:2"));
    r = invoke({"minimize", file("cone.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(invoke({"glue", file("cone.json")}).code, 1);
}

TEST_F(Cli, RestrictAndExtend)
{
    json f{{"source", "linear:9,3"}, {"target", "loop:3"}, {"vertex_map", json::object()}, {"arrow_map", json::object()}};
    for (int v = 1; v <= 9; ++v)
        f["vertex_map"][std::to_string(v)] = "a";
    for (int a = 1; a <= 8; ++a)
        f["arrow_map"]["a" + std::to_string(a)] = json::array({json{{"coeff", "1"}, {"path", json::array({"x"})}}});
    write("F.json", f);

    json s = representation_to_json(Representation::simple(loop_algebra(3), 0));
    s["algebra"] = "loop:3";
    auto r = invoke({"restrict", file("F.json"), write("s.json", s), "--emit", file("fs.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    r = invoke({"validate", file("fs.json")});
    EXPECT_TRUE(contains(r.out, "dim=9")) << r.out << r.err;

    ASSERT_EQ(invoke({"family", "lemma", "--d", "2", "--emit", file("l.json")}).code, 0);
    r = invoke({"extend", file("F.json"), file("l.json"), "--report", "--emit", file("e.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "width bound: PASS"));
    EXPECT_TRUE(contains(r.out, "cohomology bound (cleaving-consistent): PASS"));
    EXPECT_EQ(invoke({"validate", file("e.json")}).code, 0);
}

TEST_F(Cli, SurveyLemmaGrid)
{
    const json config{{"family", "lemma"},
                      {"grid", {{"m", 3}, {"lambda", {0, 1, 5}}, {"d", {1, 2, 3, 4}}}},
                      {"out", "survey.csv"}};
    const auto r = invoke({"survey", write("survey.json", config)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "witness pattern: CONFIRMED"));
    std::istringstream csv(slurp("survey.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "family,params,hl,hw,hr,indec,minimal");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        EXPECT_TRUE(contains(line, ",5,"));
        EXPECT_TRUE(contains(line, ",yes,true"));
    }
    EXPECT_EQ(rows, 12u);
}

TEST_F(Cli, SurveyBandAndEmptyGrid)
{
    auto r = invoke({"survey", write("band.json", json{{"family", "band"}, {"grid", {{"lambda", {1}}, {"d", {1, 2, 3, 4}}}}})});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "CONFIRMED"));
    EXPECT_TRUE(contains(r.out, ",8,1,8,"));

    r = invoke({"survey", write("empty.json", json{{"family", "lemma"}, {"grid", {{"lambda", json::array()}}}})});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "family,params,hl,hw,hr,indec,minimal\nwitness pattern: NOT CONFIRMED (no rows)\n");
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(invoke({"bogus"}).code, 1);
    EXPECT_EQ(invoke({"validate", file("missing.json")}).code, 1);
    std::ofstream(dir / "junk.json") << "{not json";
    EXPECT_EQ(invoke({"validate", file("junk.json")}).code, 1);
}
