#pragma once

#include <future>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "quivdc/endomorphism.hpp"
#include "quivdc/io.hpp"

namespace quivdc {

struct SurveyRow {
    std::string family;
    std::string params;
    Rational lambda;
    std::size_t d = 0;
    InvariantTriple triple;
    Verdict indec = Verdict::Inconclusive;
    bool minimal = false;
};

struct SurveyResult {
    std::vector<SurveyRow> rows;
    bool monotone_in_d = true;
    bool constant_in_lambda = true;
    bool confirmed() const { return !rows.empty() && monotone_in_d && constant_in_lambda; }
};

namespace detail {

inline std::vector<json> grid_values(const json& grid, const char* key, json fallback)
{
    json v = grid.contains(key) ? grid.at(key) : fallback;
    if (!v.is_array())
        v = json::array({v});
    return {v.begin(), v.end()};
}

inline SurveyRow survey_row(const std::string& family, const std::string& params, const PerfectComplex& p,
                            const Rational& lambda, std::size_t d)
{
    validate(p);
    SurveyRow row{family, params, lambda, d, invariants(p), is_indecomposable(p).verdict, is_minimal(p)};
    return row;
}

} // namespace detail

/// Runs a family over a parameter grid, lambda outer and d inner. Instances
/// are computed concurrently; rows keep grid order.
///
/// Config: {"family": "lemma", "grid": {"m": 3, "lambda": [...], "d": [...]}}
/// or {"family": "band", "algebra": ref, "word": [...], "grid": {"lambda": [...], "d": [...]}}.
inline SurveyResult run_survey(const json& config, const fs::path& base)
{
    const std::string family = detail::as_string(detail::require(config, "family", "survey"), "family");
    const json grid = config.contains("grid") ? config.at("grid") : json::object();
    const auto lambdas = detail::grid_values(grid, "lambda", json::array());
    const auto ds = detail::grid_values(grid, "d", json::array());

    std::vector<std::future<SurveyRow>> jobs;
    if (family == "lemma") {
        const auto ms = detail::grid_values(grid, "m", 3);
        for (const auto& mj : ms) {
            const std::size_t m = detail::as_count(mj, "m");
            auto alg = m >= 3 ? truncated_linear(3 * m, m) : nullptr;
            for (const auto& lj : lambdas)
                for (const auto& dj : ds) {
                    const Rational lambda = rational_from_json(lj);
                    const std::size_t d = detail::as_count(dj, "d");
                    const std::string params =
                        "m=" + std::to_string(m) + ";lambda=" + to_string(lambda) + ";d=" + std::to_string(d);
                    jobs.push_back(std::async(std::launch::async, [=] {
                        return detail::survey_row("lemma", params, lemma_family(m, lambda, d, alg),
                                                  lambda, d);
                    }));
                }
        }
    } else if (family == "band") {
        const json ref = config.contains("algebra") ? config.at("algebra") : json("builtin:kronecker");
        auto alg = resolve_algebra(ref, base);
        const json wj = config.contains("word") ? config.at("word") : grid.value("word", json::array({"a", "~b"}));
        const auto word = parse_word(*alg, wj.get<std::vector<std::string>>(), true);
        std::string wname;
        for (const auto& l : word.letters)
            wname += (wname.empty() ? "" : " ") + letter_name(alg->quiver(), l);
        for (const auto& lj : lambdas)
            for (const auto& dj : ds) {
                const Rational lambda = rational_from_json(lj);
                const std::size_t d = detail::as_count(dj, "d");
                const std::string params =
                    "word=" + wname + ";lambda=" + to_string(lambda) + ";d=" + std::to_string(d);
                jobs.push_back(std::async(std::launch::async, [=] {
                    return detail::survey_row("band", params, band_complex(alg, word, lambda, d), lambda, d);
                }));
            }
    } else {
        throw ValidationError("survey: unknown family '" + family + "' (expected lemma or band)");
    }

    SurveyResult res;
    for (auto& j : jobs)
        res.rows.push_back(j.get());

    // hr strictly increasing in d at fixed lambda, constant in lambda at fixed d.
    std::map<Rational, std::map<std::size_t, std::size_t>> by_lambda;
    std::map<std::size_t, std::vector<std::size_t>> by_d;
    for (const auto& r : res.rows) {
        by_lambda[r.lambda][r.d] = r.triple.hr;
        by_d[r.d].push_back(r.triple.hr);
    }
    for (const auto& [l, series] : by_lambda) {
        std::optional<std::size_t> prev;
        for (const auto& [d, hr] : series) {
            if (prev && hr <= *prev)
                res.monotone_in_d = false;
            prev = hr;
        }
    }
    for (const auto& [d, hrs] : by_d)
        for (auto hr : hrs)
            if (hr != hrs.front())
                res.constant_in_lambda = false;
    return res;
}

inline void write_survey_csv(std::ostream& out, const SurveyResult& res)
{
    out << "family,params,hl,hw,hr,indec,minimal\n";
    for (const auto& r : res.rows)
        out << r.family << ',' << r.params << ',' << r.triple.hl << ',' << r.triple.hw << ',' << r.triple.hr << ','
            << to_string(r.indec) << ',' << (r.minimal ? "true" : "false") << '\n';
}

inline std::string survey_summary(const SurveyResult& res)
{
    if (res.rows.empty())
        return "witness pattern: NOT CONFIRMED (no rows)";
    if (res.confirmed())
        return "witness pattern: CONFIRMED";
    std::string why;
    if (!res.monotone_in_d)
        why += "hr not strictly increasing in d";
    if (!res.constant_in_lambda)
        why += std::string(why.empty() ? "" : "; ") + "hr varies with lambda";
    return "witness pattern: NOT CONFIRMED (" + why + ")";
}

} // namespace quivdc
