#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "quivdc/linalg.hpp"

namespace quivdc {

/// Finite-dimensional associative algebra given by structure constants.
/// `left_mult[i]` is the matrix of y -> b_i y in the basis b_0..b_{n-1}.
struct FinDimAlgebra {
    std::size_t dim = 0;
    std::vector<Matrix> left_mult;
    Matrix identity; // dim x 1

    /// Builds the structure constants from a product on basis indices that
    /// returns coordinate columns.
    static FinDimAlgebra from_products(std::size_t n, const std::function<Matrix(std::size_t, std::size_t)>& product,
                                       Matrix identity)
    {
        FinDimAlgebra a;
        a.dim = n;
        a.identity = std::move(identity);
        for (std::size_t i = 0; i < n; ++i) {
            Matrix L(n, n);
            for (std::size_t j = 0; j < n; ++j)
                L.set_block(0, j, product(i, j));
            a.left_mult.push_back(std::move(L));
        }
        return a;
    }

    Matrix left_matrix(const Matrix& x) const
    {
        Matrix L(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (sgn(x(i, 0)) != 0)
                L = L + x(i, 0) * left_mult[i];
        return L;
    }

    Matrix multiply(const Matrix& x, const Matrix& y) const { return left_matrix(x) * y; }

    Matrix basis_vector(std::size_t i) const
    {
        Matrix v(dim, 1);
        v(i, 0) = 1;
        return v;
    }

    /// Throws unless the product is associative on basis triples and
    /// `identity` is a two-sided unit.
    void validate() const
    {
        if (left_mult.size() != dim || identity.rows() != dim || identity.cols() != 1)
            throw ValidationError("FinDimAlgebra: malformed structure constants");
        for (std::size_t i = 0; i < dim; ++i) {
            const Matrix bi = basis_vector(i);
            if (!(multiply(identity, bi) == bi) || !(multiply(bi, identity) == bi))
                throw ValidationError("FinDimAlgebra: identity law fails");
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const Matrix bij = left_mult[i].column(j);
                for (std::size_t k = 0; k < dim; ++k) {
                    const Matrix lhs = multiply(bij, basis_vector(k));
                    const Matrix rhs = left_mult[i] * left_mult[j].column(k);
                    if (!(lhs == rhs))
                        throw ValidationError("FinDimAlgebra: associativity fails");
                }
            }
    }
};

struct RadicalInfo {
    std::size_t radical_dim = 0;
    bool is_local = false;
    Matrix radical_basis; // dim x radical_dim
};

/// Jacobson radical by the characteristic-zero trace-form criterion:
/// x is in rad iff tr(L_{x y}) = 0 for every y.
inline RadicalInfo radical_and_local(const FinDimAlgebra& a)
{
    a.validate();
    std::vector<Rational> traces(a.dim);
    for (std::size_t k = 0; k < a.dim; ++k)
        for (std::size_t r = 0; r < a.dim; ++r)
            traces[k] += a.left_mult[k](r, r);
    // form(i, j) = tr(L_{b_i b_j})
    Matrix form(a.dim, a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < a.dim; ++k)
                if (sgn(a.left_mult[i](k, j)) != 0)
                    form(i, j) += a.left_mult[i](k, j) * traces[k];
    RadicalInfo info;
    info.radical_basis = nullspace(form.transpose());
    info.radical_dim = info.radical_basis.cols();
    info.is_local = a.dim - info.radical_dim == 1;
    return info;
}

/// Quotient by a two-sided ideal spanned by the columns of `ideal`.
inline FinDimAlgebra quotient(const FinDimAlgebra& a, const Matrix& ideal)
{
    const Matrix comp = complement_basis(ideal, Matrix::identity(a.dim));
    const Matrix full = hstack(ideal, comp);
    const std::size_t n = comp.cols();
    const std::size_t skip = ideal.cols();
    auto coords = [&](const Matrix& v) {
        auto x = solve(full, v);
        if (!x)
            throw ValidationError("quotient: vector outside the algebra");
        return x->row_range(skip, n);
    };
    return FinDimAlgebra::from_products(
        n, [&](std::size_t i, std::size_t j) { return coords(a.multiply(comp.column(i), comp.column(j))); },
        coords(a.identity));
}

namespace detail {

// Monic minimal polynomial of x (coefficients low to high), via Krylov powers.
inline std::vector<Rational> minimal_polynomial(const FinDimAlgebra& a, const Matrix& x)
{
    const Matrix L = a.left_matrix(x);
    std::vector<Matrix> powers{a.identity};
    while (true) {
        Matrix next = L * powers.back();
        Matrix basis(a.dim, powers.size());
        for (std::size_t k = 0; k < powers.size(); ++k)
            basis.set_block(0, k, powers[k]);
        if (auto c = solve(basis, next)) {
            std::vector<Rational> poly(powers.size() + 1);
            for (std::size_t k = 0; k < powers.size(); ++k)
                poly[k] = -(*c)(k, 0);
            poly.back() = 1;
            return poly;
        }
        powers.push_back(std::move(next));
    }
}

inline Rational eval_poly(const std::vector<Rational>& p, const Rational& t)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

inline std::vector<mpz_class> divisors(mpz_class n, const mpz_class& limit)
{
    n = abs(n);
    std::vector<mpz_class> out;
    if (n > limit)
        return out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    return out;
}

// Rational roots of a polynomial with rational coefficients; gives up (returns
// empty) when the integer coefficients are too large to factor by trial division.
inline std::vector<Rational> rational_roots(std::vector<Rational> p)
{
    std::vector<Rational> roots;
    while (p.size() > 1 && sgn(p.front()) == 0) {
        roots.push_back(0);
        p.erase(p.begin());
    }
    if (p.size() <= 1)
        return roots;
    mpz_class lcm = 1;
    for (const auto& c : p)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : p) {
        Rational s = c * lcm;
        ints.push_back(s.get_num());
    }
    const mpz_class limit("1000000000000");
    const auto ps = divisors(ints.front(), limit);
    const auto qs = divisors(ints.back(), limit);
    for (const auto& num : ps)
        for (const auto& den : qs)
            for (int sign : {1, -1}) {
                Rational cand(num * sign, den);
                cand.canonicalize();
                if (sgn(eval_poly(p, cand)) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

} // namespace detail

/// Searches for a nontrivial idempotent of a semisimple algebra by splitting
/// the minimal polynomial of trial elements at a rational root. A hit proves
/// the algebra is not a division algebra; a miss proves nothing.
inline std::optional<Matrix> find_nontrivial_idempotent(const FinDimAlgebra& s)
{
    if (s.dim < 2)
        return std::nullopt;
    std::vector<Matrix> trials;
    for (std::size_t i = 0; i < s.dim; ++i)
        trials.push_back(s.basis_vector(i));
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = i + 1; j < s.dim; ++j) {
            trials.push_back(s.basis_vector(i) + s.basis_vector(j));
            trials.push_back(s.basis_vector(i) - s.basis_vector(j));
        }
    for (const auto& x : trials) {
        const auto mu = detail::minimal_polynomial(s, x);
        if (mu.size() < 3)
            continue; // degree 1: x is a scalar
        for (const auto& r : detail::rational_roots(mu)) {
            // g = mu / (t - r) by synthetic division, high to low.
            std::vector<Rational> g(mu.size() - 1);
            Rational carry = 0;
            for (std::size_t k = mu.size() - 1; k >= 1; --k) {
                carry = mu[k] + carry * r;
                g[k - 1] = carry;
            }
            const Rational gr = detail::eval_poly(g, r);
            if (sgn(gr) == 0)
                continue;
            const Matrix L = s.left_matrix(x);
            Matrix acc(s.dim, 1);
            Matrix power = s.identity;
            for (const auto& c : g) {
                acc = acc + c * power;
                power = L * power;
            }
            Matrix e = (1 / gr) * acc;
            if (s.multiply(e, e) == e && !e.is_zero() && !(e == s.identity))
                return e;
        }
    }
    return std::nullopt;
}

} // namespace quivdc
