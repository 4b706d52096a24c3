#pragma once

#include "quivdc/minimize.hpp"

namespace quivdc {

struct GlueResult {
    PerfectComplex complex;
    /// True when the length budget ran out before the kernel resolution ended;
    /// the lowest degree then still carries cohomology.
    bool truncated = false;
};

/// Extends a minimal complex to the left by a minimal projective resolution of
/// Ker d^lo, splicing with P^{lo-1} -> Ker d^lo -> P^lo. Layers are appended
/// while the result is shorter than `cutoff` (its length never exceeds the
/// budget unless the input already did).
///
/// A complex concentrated in one degree has no lowest differential and is
/// returned unchanged.
inline GlueResult glue_resolution(const PerfectComplex& p, std::size_t cutoff)
{
    if (!is_minimal(p))
        throw ValidationError("glue_resolution: input complex is not minimal");
    PerfectComplex t = p.trimmed();
    if (t.components().size() <= 1)
        return {t, false};

    const AlgebraPtr& alg = t.algebra();
    auto comps = t.components();
    auto diffs = t.differentials();
    int lo = t.lo();

    const auto front = to_module_complex(brutal_truncate(t, TruncSide::AtMost, lo + 1));
    SubRep ker = kernel(front.terms[0], front.diffs[0]);
    bool truncated = false;
    while (!ker.module.is_zero()) {
        if (comps.size() - 1 >= cutoff) {
            truncated = true;
            break;
        }
        auto step = cover_submodule(comps.front(), ker);
        comps.insert(comps.begin(), step.labels);
        diffs.insert(diffs.begin(), std::move(step.into_ambient));
        --lo;
        ker = std::move(step.next_kernel);
    }
    PerfectComplex out(alg, lo, std::move(comps), std::move(diffs));
    // A kernel reaching the top of P^lo gives a split entry; cancel it.
    if (!is_minimal(out))
        out = minimize(out);
    return {out, truncated};
}

} // namespace quivdc
