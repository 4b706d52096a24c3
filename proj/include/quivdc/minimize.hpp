#pragma once

#include <optional>
#include <tuple>

#include "quivdc/complex.hpp"

namespace quivdc {

/// Im d^i lies in rad X^{i+1} for every i, i.e. no differential entry has a
/// nonzero coefficient on a trivial path.
inline bool is_minimal(const PerfectComplex& p)
{
    for (const auto& d : p.differentials())
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (sgn(d(r, c).trivial_coefficient()) != 0)
                    return false;
    return true;
}

namespace detail {

// Inverse of lambda e_v + n in e_v A e_v, where n is a combination of
// nontrivial cycles and therefore nilpotent.
inline PathCombo local_inverse(const Algebra& alg, const PathCombo& phi)
{
    const Rational lambda = phi.trivial_coefficient();
    if (sgn(lambda) == 0)
        throw ValidationError("local_inverse: element lies in the radical");
    const VertexId v = phi.source();
    PathCombo n = phi;
    n.add(Path::trivial(v), -lambda);
    const PathCombo step = n.scaled(-1 / lambda);
    PathCombo term = PathCombo::single(Path::trivial(v));
    PathCombo acc(v, v);
    while (!term.is_zero()) {
        acc += term;
        term = alg.multiply(term, step);
    }
    return acc.scaled(1 / lambda);
}

inline std::vector<VertexId> erase_at(std::vector<VertexId> v, std::size_t idx)
{
    v.erase(v.begin() + std::ptrdiff_t(idx));
    return v;
}

} // namespace detail

/// Strips contractible summands P -> P by Gaussian elimination on invertible
/// differential entries until the complex is minimal. The result is homotopy
/// equivalent to the input and has no empty components at either end.
inline PerfectComplex minimize(const PerfectComplex& input)
{
    const Algebra& alg = *input.algebra();
    PerfectComplex p = input.trimmed();
    while (true) {
        std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> pivot;
        for (std::size_t i = 0; i < p.differentials().size() && !pivot; ++i) {
            const auto& d = p.differentials()[i];
            for (std::size_t r = 0; r < d.rows() && !pivot; ++r)
                for (std::size_t c = 0; c < d.cols() && !pivot; ++c)
                    if (sgn(d(r, c).trivial_coefficient()) != 0)
                        pivot = std::make_tuple(i, r, c);
        }
        if (!pivot)
            return p.trimmed();

        auto [i, pr, pc] = *pivot;
        auto comps = p.components();
        auto diffs = p.differentials();
        const ComboMatrix& d = diffs[i];
        const PathCombo inv = detail::local_inverse(alg, d(pr, pc));

        // d^i' = eps - gamma phi^{-1} delta on the remaining summands.
        auto new_cols = detail::erase_at(comps[i], pc);
        auto new_rows = detail::erase_at(comps[i + 1], pr);
        ComboMatrix reduced(new_rows, new_cols);
        for (std::size_t r = 0, rr = 0; r < d.rows(); ++r) {
            if (r == pr)
                continue;
            for (std::size_t c = 0, cc = 0; c < d.cols(); ++c) {
                if (c == pc)
                    continue;
                PathCombo e = d(r, c);
                if (!d(r, pc).is_zero() && !d(pr, c).is_zero())
                    e -= alg.multiply(alg.multiply(d(r, pc), inv), d(pr, c));
                reduced.set(rr, cc, std::move(e));
                ++cc;
            }
            ++rr;
        }

        // d^{i-1} loses the row of the cancelled source summand; d^{i+1} loses
        // the column of the cancelled target summand.
        if (i > 0) {
            const ComboMatrix& prev = diffs[i - 1];
            ComboMatrix m(new_cols, prev.col_labels());
            for (std::size_t r = 0, rr = 0; r < prev.rows(); ++r) {
                if (r == pc)
                    continue;
                for (std::size_t c = 0; c < prev.cols(); ++c)
                    m.set(rr, c, prev(r, c));
                ++rr;
            }
            diffs[i - 1] = std::move(m);
        }
        if (i + 1 < diffs.size()) {
            const ComboMatrix& next = diffs[i + 1];
            ComboMatrix m(next.row_labels(), new_rows);
            for (std::size_t r = 0; r < next.rows(); ++r)
                for (std::size_t c = 0, cc = 0; c < next.cols(); ++c) {
                    if (c == pr)
                        continue;
                    m.set(r, cc++, next(r, c));
                }
            diffs[i + 1] = std::move(m);
        }
        diffs[i] = std::move(reduced);
        comps[i] = std::move(new_cols);
        comps[i + 1] = std::move(new_rows);
        p = PerfectComplex(p.algebra(), p.lo(), std::move(comps), std::move(diffs));
    }
}

/// l(P) = max{j - i : P^i != 0 != P^j} of the minimal representative.
inline std::size_t length(const PerfectComplex& p)
{
    auto m = minimize(p);
    auto s = m.support();
    if (!s)
        throw UndefinedInvariant("length of the zero complex is undefined");
    return std::size_t(s->second - s->first);
}

} // namespace quivdc
