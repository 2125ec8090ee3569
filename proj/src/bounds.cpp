#include "subalign/bounds.hpp"

#include "subalign/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <string>

namespace subalign {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

// Closed rational enclosure [lo, hi] of one real quantity. Exact values carry
// lo == hi; irrational ones are rounded outward at 256 bits.
struct Interval {
    Rational lo, hi;
    bool exact = false;
};

Interval exact_iv(const Rational& r) { return {r, r, true}; }

Rational mpfr_to_rational(const mpfr_t x) {
    mpz_class mantissa;
    const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), x);
    Rational r(mantissa);
    if (e >= 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r *= Rational(scale);
    } else {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r /= Rational(scale);
    }
    return r;
}

template <typename Op>
Interval directed(const Rational& input, Op&& op) {
    Interval out;
    mpfr_t x;
    mpfr_init2(x, kPrecision);
    mpfr_set_q(x, input.get_mpq_t(), MPFR_RNDD);
    op(x, MPFR_RNDD);
    out.lo = mpfr_to_rational(x);
    mpfr_set_q(x, input.get_mpq_t(), MPFR_RNDU);
    op(x, MPFR_RNDU);
    out.hi = mpfr_to_rational(x);
    mpfr_clear(x);
    out.exact = false;
    return out;
}

bool exact_root(const mpz_class& value, unsigned long n, mpz_class& root) {
    return mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) != 0;
}

/// n-th root of a positive rational; exact when numerator and denominator are
/// both perfect n-th powers.
Interval nth_root_iv(const Rational& r, unsigned long n) {
    if (r <= 0) throw input_error("root of a non-positive value");
    if (n == 1) return exact_iv(r);
    mpz_class rn, rd;
    if (exact_root(r.get_num(), n, rn) && exact_root(r.get_den(), n, rd))
        return exact_iv(make_rational(rn, rd));
    return directed(r, [n](mpfr_t x, mpfr_rnd_t rnd) { mpfr_rootn_ui(x, x, n, rnd); });
}

Interval sqrt_iv(const Rational& r) { return nth_root_iv(r, 2); }

/// 2^(num/4); exact when num is a multiple of 4.
Interval pow2_quarters_iv(long num) {
    if (num % 4 == 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(num / 4));
        return exact_iv(Rational(p));
    }
    const Rational exponent = make_rational(num, 4);
    Interval out = directed(exponent, [](mpfr_t x, mpfr_rnd_t rnd) {
        mpfr_t two;
        mpfr_init2(two, kPrecision);
        mpfr_set_ui(two, 2, rnd);
        mpfr_pow(x, two, x, rnd);
        mpfr_clear(two);
    });
    return out;
}

Interval scale_iv(const Interval& iv, const Rational& factor) {
    if (factor < 0) throw invariant_fault("scaling bound intervals by negatives is unused");
    return {iv.lo * factor, iv.hi * factor, iv.exact};
}

/// 1/x for a strictly positive interval.
Interval recip_iv(const Interval& iv) {
    if (iv.lo <= 0) throw invariant_fault("reciprocal of a non-positive interval");
    return {1 / iv.hi, 1 / iv.lo, iv.exact};
}

/// 1 - x.
Interval one_minus_iv(const Interval& iv) {
    return {1 - iv.hi, 1 - iv.lo, iv.exact};
}

Interval min_iv(const Interval& a, const Interval& b) {
    Interval out{std::min(a.lo, b.lo), std::min(a.hi, b.hi), false};
    if (a.hi < b.lo) out.exact = a.exact;
    else if (b.hi < a.lo) out.exact = b.exact;
    else out.exact = a.exact && b.exact && a.lo == b.lo && a.hi == b.hi;
    return out;
}

BoundValue to_bound(const Interval& iv, bool applicable = true) {
    return BoundValue{iv.lo, iv.hi, iv.exact, applicable};
}

BoundValue not_applicable() { return BoundValue{Rational(0), Rational(0), false, false}; }

Rational half_of(std::size_t k) { return make_rational(static_cast<long>(k), 2); }

} // namespace

std::string BoundValue::decimal() const {
    mpfr_t x;
    mpfr_init2(x, kPrecision);
    char buffer[96];
    if (exact) {
        mpfr_set_q(x, lo.get_mpq_t(), MPFR_RNDN);
        mpfr_snprintf(buffer, sizeof buffer, "%.49RNe", x);
    } else {
        mpfr_set_q(x, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_snprintf(buffer, sizeof buffer, "%.49RDe", x);
    }
    mpfr_clear(x);
    return std::string(buffer);
}

BoundTable eval_bounds(std::size_t k, std::size_t l, std::size_t t,
                       std::optional<Rational> eps, const Rational& c_for_eq2) {
    if (k < 3) throw input_error("bound curves need at least 3 users");
    if (l < 1 || t < 1) throw input_error("l and t must be positive");
    if (c_for_eq2 <= 0) throw input_error("the achievable-curve constant must be positive");

    BoundTable table;
    table.k = k;
    table.l = l;
    table.t = t;
    table.c_for_eq2 = c_for_eq2;
    table.eps = eps;

    const long ll = static_cast<long>(l);
    const Rational lq = make_rational(ll);

    // Three-user exact curve: (3/2)(1 - 1/(4L - 2*floor(L/2) - 1)).
    const long denom = 4 * ll - 2 * (ll / 2) - 1;
    table.eq1 = to_bound(exact_iv(make_rational(3, 2) * (1 - make_rational(1, denom))));

    // Achievable curve: (K/2)(1 - C*N/(L/2)^(1/N)) with N = (K-1)(K-2)-1.
    const long n_ach = static_cast<long>((k - 1) * (k - 2)) - 1;
    {
        Interval root = nth_root_iv(lq / 2, static_cast<unsigned long>(n_ach));
        Interval term = scale_iv(recip_iv(root), c_for_eq2 * n_ach);
        table.eq2 = to_bound(scale_iv(one_minus_iv(term), half_of(k)));
    }

    if (k >= 4) {
        Interval sqrt_l = sqrt_iv(lq);
        table.thm1 = to_bound(
            scale_iv(one_minus_iv(recip_iv(scale_iv(sqrt_l, make_rational(11)))), half_of(k)));
        table.thm2 = to_bound(
            scale_iv(one_minus_iv(recip_iv(scale_iv(sqrt_l, make_rational(20)))), half_of(k)));

        const long m = static_cast<long>((k - 2) * (k - 3));
        Interval first = recip_iv(nth_root_iv(lq, 4));
        const Interval pow2 = pow2_quarters_iv(m);
        Interval second{pow2.lo / sqrt_l.hi, pow2.hi / sqrt_l.lo, pow2.exact && sqrt_l.exact};
        Interval smaller = min_iv(first, second);
        table.thm3 = to_bound(
            scale_iv(one_minus_iv(scale_iv(smaller, make_rational(1, 1L << 17))), half_of(k)));
    } else {
        table.thm1 = not_applicable();
        table.thm2 = not_applicable();
        table.thm3 = not_applicable();
    }

    if (eps) {
        if (*eps <= 0) throw input_error("eps must be positive");
        const Rational inv2 = 1 / (*eps * *eps);
        table.thm4_l_min = inv2 / 121;
        table.thm5_l_min = inv2 / 400;
        const long m = k >= 4 ? static_cast<long>((k - 2) * (k - 3)) : 0;
        if (k >= 4) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(m / 2));
            const Rational two_pow(p);
            mpz_class q34;
            mpz_ui_pow_ui(q34.get_mpz_t(), 2, 34);
            table.thm6_l_min = inv2 * std::min(two_pow, inv2) / Rational(q34);
        }
    }

    return table;
}

} // namespace subalign
