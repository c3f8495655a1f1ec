#pragma once

namespace linfty {

// Cap on tuple enumeration (unshuffles, form arities).  Exceeding it is an
// InputError, never silent truncation.  LINFTY_ARITY_CAP overrides the
// default of 8; read once per process.
int arity_cap();

void require_arity(int n, const char* where);

}  // namespace linfty
