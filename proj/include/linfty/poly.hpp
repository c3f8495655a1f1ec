#pragma once

#include <map>
#include <string>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

// Polynomial ring R[x_1..x_vars] with a hard total-degree cap.  Operations
// that would create a term above the cap throw CapExceeded; nothing is ever
// silently truncated.
struct PolyRing {
  int vars = 0;
  int cap = 6;
  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.vars == b.vars && a.cap == b.cap;
  }
};

// Exact multivariate polynomial: dense exponent vectors mapped to rational
// coefficients, zero coefficients never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(PolyRing ring) : ring_(ring) {}
  Poly(PolyRing ring, std::map<std::vector<int>, Rat> terms);

  static Poly constant(PolyRing ring, const Rat& c);
  static Poly variable(PolyRing ring, int index);

  const PolyRing& ring() const { return ring_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rat& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(int var) const;

  std::string str() const;  // human-readable, deterministic

 private:
  PolyRing ring_;
  std::map<std::vector<int>, Rat> terms_;
  void insert_term(const std::vector<int>& expo, const Rat& c);
};

}  // namespace linfty
