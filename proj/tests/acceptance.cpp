// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "quivdc_cli.hpp"

using namespace quivdc;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream why;

    void check(bool cond, const std::string& what)
    {
        if (!cond && ok)
            why << what;
        ok = ok && cond;
    }
};

// Every complex built below, for the oracle-equivalence audit.
std::vector<PerfectComplex> corpus;

Criterion ac1()
{
    Criterion c;
    std::map<std::size_t, InvariantTriple> at_lambda0;
    std::map<std::pair<int, std::size_t>, std::size_t> hl;
    for (int lambda : {0, 1, 5})
        for (std::size_t d = 1; d <= 4; ++d) {
            const std::string tag = "lambda=" + std::to_string(lambda) + " d=" + std::to_string(d) + ": ";
            PerfectComplex p;
            try {
                p = lemma_family(3, lambda, d);
                validate(p);
            } catch (const std::exception& e) {
                c.check(false, tag + e.what());
                continue;
            }
            corpus.push_back(p);
            c.check(is_minimal(p), tag + "not minimal");
            const auto ind = is_indecomposable(p);
            c.check(ind.verdict == Verdict::Yes && ind.semisimple_dim == 1, tag + "not indecomposable");
            const auto h = oracle::cohomology_by_degree(p);
            c.check(!h.contains(0), tag + "H^0 != 0");
            const auto t = invariants(p);
            c.check(t == oracle::triple_from_dims(h), tag + "triple disagrees with rank oracle");
            c.check(t.hw == 5, tag + "hw = " + std::to_string(t.hw));
            hl[{lambda, d}] = t.hl;
            if (lambda == 0)
                at_lambda0[d] = t;
            else
                c.check(at_lambda0[d] == t, tag + "triple depends on lambda");
        }
    for (int lambda : {0, 1, 5})
        for (std::size_t d = 1; d <= 4; ++d)
            c.check(hl[{lambda, d}] == d * hl[{lambda, 1}], "hl not linear in d at lambda=" + std::to_string(lambda));
    if (c.ok)
        c.why << "12 complexes, hw=5, hl(d=1..4)=" << at_lambda0[1].hl << "," << at_lambda0[2].hl << ","
              << at_lambda0[3].hl << "," << at_lambda0[4].hl;
    return c;
}

Criterion ac2()
{
    Criterion c;
    std::size_t n = 0;
    for (const auto& alg : {truncated_linear(3, 2), lambda_algebra(1, 2, 0)}) {
        const auto mods = oracle::sample_modules(alg, 20);
        c.check(mods.size() == 20, "fewer than 20 sample modules");
        for (const auto& m : mods) {
            const auto x = ModuleComplex::stalk(m);
            const auto t = invariants(x);
            const std::size_t dim = m.total_dim();
            c.check(t == InvariantTriple{dim, 1, dim}, "stalk of dim " + std::to_string(dim) + " gave hl=" +
                                                           std::to_string(t.hl) + " hw=" + std::to_string(t.hw));
            c.check(oracle::cohomology_dims_by_rank(x) == std::vector<std::size_t>{dim}, "rank oracle disagrees");
            ++n;
        }
    }
    if (c.ok)
        c.why << n << " stalk modules";
    return c;
}

Criterion ac3()
{
    Criterion c;
    auto alg = hereditary_linear(3);
    const auto strings = enumerate_strings(*alg, 4);
    for (const auto& w : strings) {
        const auto p = string_complex(alg, w);
        corpus.push_back(p);
        const auto m = minimize(p);
        c.check(invariants(m).hw == 1, "string of " + std::to_string(w.letters.size()) + " letters has hw != 1");
    }
    if (c.ok)
        c.why << strings.size() << " strings, all hw=1";
    return c;
}

// P -x-> P over k[x]/(x^2) in degrees -1, 0.
PerfectComplex loop_presentation()
{
    auto alg = loop_algebra(2);
    ComboMatrix d({0}, {0});
    d.set(0, 0, monomial(alg->quiver(), {"x"}));
    return PerfectComplex(alg, -1, {{0}, {0}}, {d});
}

Criterion ac4()
{
    Criterion c;
    for (int j = 1; j <= 5; ++j) {
        const std::string tag = "j=" + std::to_string(j) + ": ";
        const auto g = glue_resolution(loop_presentation(), std::size_t(j) + 1);
        corpus.push_back(g.complex);
        const auto s = brutal_truncate(g.complex, TruncSide::AtLeast, -j);
        corpus.push_back(s);
        const auto t = invariants(s);
        const std::size_t w = std::size_t(j) + 1;
        c.check(t == InvariantTriple{1, w, w}, tag + "triple (" + std::to_string(t.hl) + "," + std::to_string(t.hw) +
                                                   "," + std::to_string(t.hr) + ")");
        c.check(t == oracle::triple_from_dims(oracle::cohomology_by_degree(s)), tag + "rank oracle disagrees");
        c.check(length(s) == std::size_t(j), tag + "length " + std::to_string(length(s)));
        c.check(is_indecomposable(s).verdict == Verdict::Yes, tag + "truncation not indecomposable");
        const auto chk = truncation_indec_check(g.complex, -j, g.truncated);
        c.check(chk.agree && chk.extended == Verdict::Yes, tag + "verdicts disagree");
    }
    if (c.ok)
        c.why << "j=1..5 indecomposable, hw=hr=j+1, length=j";
    return c;
}

Criterion ac5()
{
    Criterion c;
    const std::pair<const char*, AlgebraPtr> discrete[] = {{"Lambda(1,2,0)", lambda_algebra(1, 2, 0)},
                                                          {"Lambda(2,3,1)", lambda_algebra(2, 3, 1)},
                                                          {"A_3^2", truncated_linear(3, 2)},
                                                          {"hereditary A_3", hereditary_linear(3)}};
    for (const auto& [name, alg] : discrete)
        c.check(is_derived_discrete_gentle(*alg), std::string(name) + " reported not discrete");

    // The witness goes out through the CLI and is parsed back.
    std::vector<std::string> args{"quivdc", "discrete", "builtin:kronecker", "--json"};
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    c.check(code == 0, "discrete exited " + std::to_string(code));
    if (code == 0) {
        const json j = json::parse(out.str());
        c.check(!j.at("discrete").get<bool>(), "Kronecker reported discrete");
        if (j.contains("witness")) {
            auto kr = kronecker();
            const auto w = parse_word(*kr, j.at("witness").get<std::vector<std::string>>(), true);
            c.check(!validate_string(*kr, w) && is_balanced(w) && is_primitive(w), "witness does not re-validate");
            try {
                corpus.push_back(band_complex(kr, w, 1, 2));
            } catch (const std::exception& e) {
                c.check(false, std::string("witness band complex: ") + e.what());
            }
            if (c.ok)
                c.why << "4 discrete, Kronecker witness " << j.at("witness").dump();
        } else {
            c.check(false, "no witness emitted");
        }
    }
    return c;
}

Criterion ac6()
{
    Criterion c;
    auto alg = lambda_algebra(1, 2, 0);
    const auto strings = enumerate_strings(*alg, 8);
    std::size_t max_hl = 0;
    for (const auto& w : strings) {
        const auto p = string_complex(alg, w);
        for (const auto& comp : p.components())
            c.check(std::set<VertexId>(comp.begin(), comp.end()).size() == comp.size(),
                    "component with repeated summand");
        max_hl = std::max(max_hl, invariants(p).hl);
        if (w.letters.size() == 8)
            corpus.push_back(p);
    }
    c.check(max_hl <= alg->dimension(), "max hl = " + std::to_string(max_hl));
    if (c.ok)
        c.why << strings.size() << " strings, max hl=" << max_hl << " <= " << alg->dimension();
    return c;
}

Criterion ac7()
{
    Criterion c;
    auto src = truncated_linear(9, 3);
    auto dst = loop_algebra(3);
    std::map<std::string, std::string> vm;
    for (const auto& n : src->quiver().vertex_names())
        vm[n] = "a";
    std::map<std::string, PathCombo> am;
    for (ArrowId a = 0; a < src->quiver().arrow_count(); ++a)
        am.emplace(src->quiver().arrow(a).name, monomial(dst->quiver(), {"x"}));
    const auto f = compile_functor(src, dst, vm, am);
    const auto gd = global_dim(src, 12);
    c.check(gd.finite, "global dimension not finite within 12");
    for (std::size_t d = 1; d <= 3 && c.ok; ++d) {
        const std::string tag = "d=" + std::to_string(d) + ": ";
        const auto p = lemma_family(3, 1, d, src);
        const auto e = extend_perfect(f, p);
        corpus.push_back(e);
        const auto hp = oracle::cohomology_by_degree(p);
        const auto he = oracle::cohomology_by_degree(e);
        const std::size_t hw_p = oracle::triple_from_dims(hp).hw;
        if (!he.empty())
            c.check(oracle::triple_from_dims(he).hw <= hw_p + gd.value, tag + "width bound fails");
        const auto back = oracle::cohomology_dims_by_rank(restrict_complex(f, to_module_complex(e)));
        for (const auto& [deg, n] : hp) {
            const std::size_t i = std::size_t(deg - e.lo());
            c.check(i < back.size() && n <= back[i], tag + "dim H^" + std::to_string(deg) + " not bounded");
        }
        const auto rep = cleaving_report(f, p, 12);
        c.check(rep.pass(), tag + "cleaving report fails");
    }
    if (c.ok)
        c.why << "d=1..3, gl.dim=" << gd.value;
    return c;
}

Criterion ac8()
{
    Criterion c;
    std::vector<Matrix> touched;
    {
        ScopedRankObserver guard([&](const Matrix& m) { touched.push_back(m); });
        for (const auto& p : corpus) {
            const auto before = cohomology(to_module_complex(p));
            const auto m = minimize(p);
            const auto after = cohomology(to_module_complex(m));
            for (int d = std::min(p.lo(), m.lo()); d <= std::max(p.hi(), m.hi()); ++d)
                c.check(before.dim_at(d) == after.dim_at(d), "cohomology changed under minimize");
            const auto rank_before = oracle::cohomology_by_degree(p);
            c.check(rank_before == oracle::cohomology_by_degree(m), "rank oracle disagrees after minimize");
        }
    }
    for (const auto& m : touched) {
        const Matrix n = nullspace(m);
        c.check(rank(m) + n.cols() == m.cols(), "rank + nullity != cols");
        c.check((m * n).is_zero(), "nullspace basis not annihilated");
        c.check(rank(n) == n.cols(), "nullspace basis dependent");
    }
    if (c.ok)
        c.why << corpus.size() << " complexes, " << touched.size() << " matrices audited";
    return c;
}

Criterion ac9()
{
    Criterion c;
    const fs::path dir = fs::temp_directory_path() / "quivdc_acceptance_survey";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const json config{{"family", "lemma"},
                      {"grid", {{"m", 3}, {"lambda", {0, 1, 5}}, {"d", {1, 2, 3, 4}}}},
                      {"out", "survey.csv"}};
    write_json_file(dir / "survey.json", config);
    std::vector<std::string> args{"quivdc", "survey", (dir / "survey.json").string()};
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    c.check(code == 0, "survey exited " + std::to_string(code) + ": " + err.str());
    c.check(out.str().find("witness pattern: CONFIRMED") != std::string::npos, "summary not CONFIRMED");

    // Re-derive the pattern from the CSV itself.
    std::ifstream csv(dir / "survey.csv");
    std::string line;
    std::getline(csv, line);
    c.check(line == "family,params,hl,hw,hr,indec,minimal", "bad CSV header");
    std::map<std::string, std::vector<std::size_t>> by_lambda;
    std::map<std::string, std::set<std::size_t>> by_d;
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 7) {
            c.check(false, "malformed row");
            continue;
        }
        const auto lam = f[1].substr(f[1].find("lambda="));
        const auto lambda = lam.substr(0, lam.find(';'));
        const auto d = f[1].substr(f[1].find(";d=") + 3);
        by_lambda[lambda].push_back(std::stoul(f[4]));
        by_d[d].insert(std::stoul(f[4]));
    }
    c.check(rows == 12, std::to_string(rows) + " rows");
    for (const auto& [l, hrs] : by_lambda)
        for (std::size_t i = 1; i < hrs.size(); ++i)
            c.check(hrs[i] > hrs[i - 1], "hr not increasing in d");
    for (const auto& [d, hrs] : by_d)
        c.check(hrs.size() == 1, "hr varies with lambda");
    fs::remove_all(dir);
    if (c.ok)
        c.why << rows << " rows, CONFIRMED";
    return c;
}

} // namespace

int main()
{
    const std::pair<const char*, Criterion (*)()> criteria[] = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why << "exception: " << e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << name << ' ' << (c.ok ? "PASS" : "FAIL") << "  " << c.why.str() << " (" << ms << " ms)"
                  << std::endl;
        all = all && c.ok;
    }
    return all ? 0 : 1;
}
