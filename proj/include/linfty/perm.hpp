#pragma once

#include <span>
#include <vector>

namespace linfty {

// Bijection of {0..n-1}; img[p] is the source index placed at position p, so
// the tuple (X_{img[0]}, ..., X_{img[n-1]}) is the permuted sequence.
struct Permutation {
  std::vector<int> img;
  int size() const { return static_cast<int>(img.size()); }
};

Permutation identity_perm(int n);

// +1 / -1 parity of the permutation.
int perm_sign(const Permutation& p);

// Koszul sign: X_{img[0]} (x) ... (x) X_{img[n-1]} = eps * X_0 (x) ... (x) X_{n-1}
// for homogeneous X_i of the given degrees.  -1 per inversion of two odd
// factors.  InputError when sizes differ.
int koszul_sign(const Permutation& p, std::span<const int> degrees);

// All (i,j)-unshuffles: increasing on the first i and the last j positions,
// in lexicographic order of the leading block.  |result| = binomial(i+j, i).
std::vector<Permutation> unshuffles(int i, int j);

}  // namespace linfty
