#include "linfty/rational.hpp"

#include <gmp.h>

#include "linfty/errors.hpp"

namespace linfty {

std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  mpq_t raw;
  mpq_init(raw);
  if (mpq_set_str(raw, s.c_str(), 10) != 0) {
    mpq_clear(raw);
    throw InputError("malformed rational literal: " + s);
  }
  if (mpz_sgn(mpq_denref(raw)) == 0) {
    mpq_clear(raw);
    throw InputError("zero denominator in rational literal: " + s);
  }
  mpq_canonicalize(raw);
  Rat out(raw);
  mpq_clear(raw);
  return out;
}

}  // namespace linfty
