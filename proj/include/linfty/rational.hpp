#pragma once

#include <gmpxx.h>

#include <string>

namespace linfty {

// Exact rational scalar.  No floating point exists anywhere in the kernel.
using Rat = mpq_class;

inline bool rat_is_zero(const Rat& q) { return sgn(q) == 0; }

// Canonical interchange format "p/q" (q > 0, reduced); also the hash/report
// format, so it must be unique per value.
std::string rat_str(const Rat& q);

// Accepts "p/q" or "p" with optional sign; rejects zero denominators and
// garbage with InputError.
Rat parse_rat(const std::string& s);

}  // namespace linfty
