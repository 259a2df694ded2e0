#pragma once

#include <gmpxx.h>
#include <mpfr.h>

namespace lucasdensity::detail {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  BigFloat(mpfr_prec_t prec, const mpq_class& q) : BigFloat(prec) {
    mpfr_set_q(x_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(mpfr_prec_t prec, const mpz_class& z) : BigFloat(prec) {
    mpfr_set_z(x_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.x_)) { mpfr_set(x_, o.x_, MPFR_RNDN); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

 private:
  mpfr_t x_;
};

}  // namespace lucasdensity::detail
