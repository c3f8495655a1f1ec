#include "linfty/poly.hpp"

#include <numeric>

#include "linfty/errors.hpp"

namespace linfty {

Poly::Poly(PolyRing ring, std::map<std::vector<int>, Rat> terms) : ring_(ring) {
  for (auto& [expo, c] : terms) {
    if (static_cast<int>(expo.size()) != ring_.vars)
      throw InputError("poly term has wrong exponent length");
    insert_term(expo, c);
  }
}

void Poly::insert_term(const std::vector<int>& expo, const Rat& c) {
  if (rat_is_zero(c)) return;
  int deg = std::accumulate(expo.begin(), expo.end(), 0);
  for (int e : expo)
    if (e < 0) throw InputError("negative exponent in polynomial");
  if (deg > ring_.cap)
    throw CapExceeded("polynomial term of degree " + std::to_string(deg) +
                      " exceeds cap " + std::to_string(ring_.cap));
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    terms_.emplace(expo, c);
  } else {
    it->second += c;
    if (rat_is_zero(it->second)) terms_.erase(it);
  }
}

Poly Poly::constant(PolyRing ring, const Rat& c) {
  Poly p(ring);
  p.insert_term(std::vector<int>(ring.vars, 0), c);
  return p;
}

Poly Poly::variable(PolyRing ring, int index) {
  if (index < 0 || index >= ring.vars) throw InputError("variable index out of range");
  Poly p(ring);
  std::vector<int> e(ring.vars, 0);
  e[index] = 1;
  p.insert_term(e, Rat(1));
  return p;
}

int Poly::total_degree() const {
  int deg = -1;
  for (const auto& [expo, c] : terms_)
    deg = std::max(deg, std::accumulate(expo.begin(), expo.end(), 0));
  return deg;
}

Poly& Poly::operator+=(const Poly& other) {
  if (terms_.empty() && ring_.vars == 0) ring_ = other.ring_;
  if (!(ring_ == other.ring_)) throw InputError("poly rings differ");
  for (const auto& [expo, c] : other.terms_) insert_term(expo, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (terms_.empty() && ring_.vars == 0) ring_ = other.ring_;
  if (!(ring_ == other.ring_)) throw InputError("poly rings differ");
  for (const auto& [expo, c] : other.terms_) insert_term(expo, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& s) {
  if (rat_is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [expo, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (!(a.ring_ == b.ring_)) throw InputError("poly rings differ");
  Poly out(a.ring_);
  std::vector<int> expo(a.ring_.vars);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.ring_.vars; ++i) expo[i] = ea[i] + eb[i];
      out.insert_term(expo, ca * cb);
    }
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(ring_);
  for (const auto& [expo, c] : terms_) {
    if (expo[var] == 0) continue;
    std::vector<int> e = expo;
    e[var] -= 1;
    out.insert_term(e, c * expo[var]);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [expo, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += rat_str(c);
    for (int i = 0; i < ring_.vars; ++i) {
      if (expo[i] == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (expo[i] > 1) out += "^" + std::to_string(expo[i]);
    }
  }
  return out;
}

}  // namespace linfty
