#include "isingser/critical.hpp"

#include <mpfr.h>

#include <string>
#include <vector>

namespace isingser {

// 256 bits covers the 50-digit ceiling with a wide guard band.
static constexpr mpfr_prec_t kPrec = 256;

std::string critical_value(int n, int digits) {
  const CriticalClosedForm& cf = critical_closed_form(n);
  if (digits < 1 || digits > 50) throw OutOfRange("digits must lie in 1..50");

  mpfr_t pi, acc, term, base;
  mpfr_inits2(kPrec, pi, acc, term, base, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_zero(acc, 1);
  for (size_t j = 0; j < cf.pi_inv2_coeffs.size(); ++j) {
    mpfr_pow_si(term, pi, -2 * static_cast<long>(j), MPFR_RNDN);
    mpfr_mul_q(term, term, cf.pi_inv2_coeffs[j].backend().data(), MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  mpfr_sqrt_ui(base, 2, MPFR_RNDN);
  mpfr_pow_si(base, base, cf.pow2_half, MPFR_RNDN);
  mpfr_mul(acc, acc, base, MPFR_RNDN);

  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rf", digits, acc);
  std::string out(s);
  mpfr_free_str(s);
  mpfr_clears(pi, acc, term, base, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace isingser
