#include "linfty/perm.hpp"

#include <numeric>
#include <string>

#include "linfty/config.hpp"
#include "linfty/errors.hpp"

namespace linfty {

Permutation identity_perm(int n) {
  Permutation p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

int perm_sign(const Permutation& p) {
  int n = p.size();
  int sign = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p.img[a] > p.img[b]) sign = -sign;
  return sign;
}

int koszul_sign(const Permutation& p, std::span<const int> degrees) {
  int n = p.size();
  if (static_cast<int>(degrees.size()) != n)
    throw InputError("koszul_sign: degree vector length " +
                     std::to_string(degrees.size()) + " != permutation size " +
                     std::to_string(n));
  int sign = 1;
  for (int a = 0; a < n; ++a) {
    if ((degrees[p.img[a]] & 1) == 0) continue;
    for (int b = a + 1; b < n; ++b)
      if (p.img[a] > p.img[b] && (degrees[p.img[b]] & 1)) sign = -sign;
  }
  return sign;
}

std::vector<Permutation> unshuffles(int i, int j) {
  if (i < 0 || j < 0) throw InputError("unshuffles: negative block size");
  require_arity(i + j, "unshuffles");
  int n = i + j;
  std::vector<Permutation> out;
  std::vector<int> pick(i);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    Permutation p;
    p.img.reserve(n);
    std::vector<bool> used(n, false);
    for (int v : pick) {
      p.img.push_back(v);
      used[v] = true;
    }
    for (int v = 0; v < n; ++v)
      if (!used[v]) p.img.push_back(v);
    out.push_back(std::move(p));
    // next i-combination of {0..n-1} in lexicographic order
    int k = i - 1;
    while (k >= 0 && pick[k] == n - i + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int t = k + 1; t < i; ++t) pick[t] = pick[t - 1] + 1;
  }
  return out;
}

}  // namespace linfty
