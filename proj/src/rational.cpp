#include "subalign/rational.hpp"

#include "subalign/errors.hpp"

namespace subalign {

Rational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(long num, long den) {
    return make_rational(mpz_class(num), mpz_class(den));
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    mpq_class r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw input_error("malformed rational literal: '" + text + "'");
    if (r.get_den() == 0)
        throw input_error("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& value) {
    return value.get_str();
}

namespace {

long to_long_checked(const mpz_class& z) {
    if (!z.fits_slong_p())
        throw capacity_error("integer out of machine range: " + z.get_str());
    return z.get_si();
}

} // namespace

long rational_floor(const Rational& value) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return to_long_checked(q);
}

long rational_ceil(const Rational& value) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return to_long_checked(q);
}

std::size_t support_size(const RowVector& v) {
    std::size_t count = 0;
    for (const auto& entry : v)
        if (entry != 0) ++count;
    return count;
}

} // namespace subalign
