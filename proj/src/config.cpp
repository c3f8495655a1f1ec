#include "linfty/config.hpp"

#include <cstdlib>
#include <string>

#include "linfty/errors.hpp"

namespace linfty {

int arity_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("LINFTY_ARITY_CAP")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 8;
  }();
  return cap;
}

void require_arity(int n, const char* where) {
  if (n < 0) throw InputError(std::string(where) + ": negative arity");
  if (n > arity_cap())
    throw InputError(std::string(where) + ": arity " + std::to_string(n) +
                     " exceeds cap " + std::to_string(arity_cap()));
}

}  // namespace linfty
