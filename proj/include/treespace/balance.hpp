#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "treespace/rational.hpp"

namespace treespace {

// k sequences of n scalars from [-1,1]; the sign-selection lemma picks one
// common sign vector keeping every row sum within 2^k.
struct SignProblem {
    std::vector<std::vector<Rational>> rows;

    std::size_t k() const { return rows.size(); }
    std::size_t n() const { return rows.empty() ? 0 : rows[0].size(); }

    void validate() const {
        require(!rows.empty() && n() >= 1, "sign problem needs k >= 1 rows and n >= 1 columns");
        for (const auto& row : rows) {
            require(row.size() == n(), "ragged sign problem");
            for (const auto& a : row)
                require(abs_of(a) <= 1, "entry out of [-1,1]");
        }
    }
};

struct BalanceResult {
    std::vector<int> theta;        // in {-1, +1}
    std::vector<Rational> row_sums;
    // columns merged at each recursion level, in that level's coordinates
    std::vector<std::pair<std::size_t, std::size_t>> merge_trace;
};

namespace detail {

// Columns as integer numerators over one common denominator; merging two
// same-sign-pattern columns with weights (+1, -1) keeps entries in [-1,1].
inline std::vector<int> balance_rec(std::vector<std::vector<Integer>> cols, std::size_t k,
                                    const Integer& den,
                                    std::vector<std::pair<std::size_t, std::size_t>>& trace) {
    const std::size_t n = cols.size();
    if (k >= 63 || n <= (std::size_t{1} << k)) return std::vector<int>(n, 1);

    // sign patterns with sign(0) := 1, packed into a bitmask per column
    const auto pattern = [&](const std::vector<Integer>& col) {
        std::uint64_t p = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (col[j] < 0) p |= std::uint64_t{1} << j;
        return p;
    };
    std::size_t i1 = n, i2 = n;
    for (std::size_t a = 0; a < n && i1 == n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (pattern(cols[a]) == pattern(cols[b])) {
                i1 = a;
                i2 = b;
                break;
            }
    check_certificate(i1 < n, "pigeonhole failed to find matching sign patterns");
    trace.emplace_back(i1, i2);

    std::vector<std::vector<Integer>> next;
    next.reserve(n - 1);
    std::vector<Integer> merged(k);
    for (std::size_t j = 0; j < k; ++j) merged[j] = cols[i1][j] - cols[i2][j];
    next.push_back(std::move(merged));
    for (std::size_t c = 0; c < n; ++c)
        if (c != i1 && c != i2) next.push_back(std::move(cols[c]));

    const std::vector<int> rho = balance_rec(std::move(next), k, den, trace);

    std::vector<int> theta(n);
    theta[i1] = rho[0];
    theta[i2] = -rho[0];
    std::size_t r = 1;
    for (std::size_t c = 0; c < n; ++c)
        if (c != i1 && c != i2) theta[c] = rho[r++];
    return theta;
}

struct IntegerRows {
    Integer den = 1;
    std::vector<std::vector<Integer>> rows;  // rows[j][i] = a_i^j * den

    explicit IntegerRows(const SignProblem& p) {
        for (const auto& row : p.rows)
            for (const auto& a : row) den = lcm(den, denominator(a));
        rows.resize(p.k());
        for (std::size_t j = 0; j < p.k(); ++j)
            for (const auto& a : p.rows[j])
                rows[j].push_back(numerator(a) * (den / denominator(a)));
    }
};

}  // namespace detail

// The constructive sign-selection lemma: returns theta with
// |sum_i theta_i a_i^j| <= 2^k for every row j.  If n <= 2^k the triangle
// inequality already does it; otherwise two columns share a sign pattern,
// get merged with weights (+1, -1), and the merged signs unfold exactly.
inline BalanceResult balance_signs(const SignProblem& p) {
    p.validate();
    const detail::IntegerRows ints(p);
    std::vector<std::vector<Integer>> cols(p.n(), std::vector<Integer>(p.k()));
    for (std::size_t j = 0; j < p.k(); ++j)
        for (std::size_t i = 0; i < p.n(); ++i) cols[i][j] = ints.rows[j][i];

    BalanceResult out;
    out.theta = detail::balance_rec(std::move(cols), p.k(), ints.den, out.merge_trace);
    for (std::size_t j = 0; j < p.k(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < p.n(); ++i)
            s += out.theta[i] > 0 ? ints.rows[j][i] : -ints.rows[j][i];
        out.row_sums.emplace_back(Rational(s, ints.den));
        check_certificate(abs_of(out.row_sums.back()) <= pow2(static_cast<int>(p.k())),
                          "sign balance exceeded the 2^k bound");
    }
    return out;
}

struct BruteForceSigns {
    std::vector<int> theta;
    Rational value;  // min over all sign vectors of max_j |row sum|
};

// Exhaustive oracle over all 2^n sign vectors; the first optimum in the
// order that tries +1 before -1 in each coordinate.
inline BruteForceSigns brute_force_best_signs(const SignProblem& p) {
    p.validate();
    require(p.n() <= 20, "brute force limited to n <= 20");
    const detail::IntegerRows ints(p);
    const std::size_t k = p.k(), n = p.n();

    std::vector<int> theta(n, 1), best_theta;
    std::vector<Integer> sums(k, 0);
    Integer best;  // max_j |sum_j| * sign damping, scaled by den
    bool have_best = false;

    const std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == n) {
            Integer m = 0;
            for (const auto& s : sums) m = std::max(m, abs(s));
            if (!have_best || m < best) {
                have_best = true;
                best = m;
                best_theta = theta;
            }
            return;
        }
        for (int sgn : {1, -1}) {
            theta[i] = sgn;
            for (std::size_t j = 0; j < k; ++j)
                sums[j] += sgn > 0 ? ints.rows[j][i] : -ints.rows[j][i];
            go(i + 1);
            for (std::size_t j = 0; j < k; ++j)
                sums[j] -= sgn > 0 ? ints.rows[j][i] : -ints.rows[j][i];
        }
    };
    go(0);
    return {best_theta, Rational(best, ints.den)};
}

}  // namespace treespace
