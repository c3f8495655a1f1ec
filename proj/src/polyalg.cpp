#include "linfty/polyalg.hpp"

#include <algorithm>

#include "linfty/errors.hpp"

namespace linfty {

namespace {

// merges idx into increasing order; returns parity sign, 0 on repeats
int sort_indices(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

const Poly& zero_poly(const PolyRing& ring) {
  static thread_local std::map<std::pair<int, int>, Poly> cache;
  auto key = std::make_pair(ring.vars, ring.cap);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Poly(ring)).first;
  return it->second;
}

}  // namespace

template <class Tag>
Alternating<Tag>::Alternating(PolyRing ring, int degree,
                              std::map<std::vector<int>, Poly> comps)
    : ring_(ring), degree_(degree) {
  for (auto& [idx, c] : comps) {
    if (static_cast<int>(idx.size()) != degree_)
      throw InputError("alternating component has wrong index length");
    add_term(idx, std::move(c));
  }
}

template <class Tag>
void Alternating<Tag>::add_term(std::vector<int> indices, Poly c) {
  if (static_cast<int>(indices.size()) != degree_)
    throw InputError("alternating term has wrong index length");
  for (int i : indices)
    if (i < 0 || i >= ring_.vars) throw InputError("index out of range");
  int sign = sort_indices(indices);
  if (sign == 0 || c.is_zero()) return;
  if (sign < 0) c *= Rat(-1);
  auto it = comps_.find(indices);
  if (it == comps_.end()) {
    comps_.emplace(std::move(indices), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

template <class Tag>
const Poly& Alternating<Tag>::coeff(const std::vector<int>& indices) const {
  auto it = comps_.find(indices);
  return it == comps_.end() ? zero_poly(ring_) : it->second;
}

template <class Tag>
Alternating<Tag>& Alternating<Tag>::operator+=(const Alternating& other) {
  if (comps_.empty() && degree_ == 0 && ring_.vars == 0) {
    *this = other;
    return *this;
  }
  if (!(ring_ == other.ring_) || degree_ != other.degree_)
    throw InputError("alternating addition: incompatible operands");
  for (const auto& [idx, c] : other.comps_) add_term(idx, c);
  return *this;
}

template <class Tag>
Alternating<Tag>& Alternating<Tag>::operator-=(const Alternating& other) {
  Alternating neg = other;
  neg *= Rat(-1);
  return *this += neg;
}

template <class Tag>
Alternating<Tag>& Alternating<Tag>::operator*=(const Rat& s) {
  if (rat_is_zero(s)) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, c] : comps_) c *= s;
  return *this;
}

template class Alternating<FormTag>;
template class Alternating<MultivectorTag>;

namespace {

template <class Tag>
Alternating<Tag> wedge_impl(const Alternating<Tag>& a, const Alternating<Tag>& b) {
  if (!(a.ring() == b.ring())) throw InputError("wedge: rings differ");
  Alternating<Tag> out(a.ring(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.comps())
    for (const auto& [ib, cb] : b.comps()) {
      std::vector<int> merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      out.add_term(std::move(merged), ca * cb);
    }
  return out;
}

}  // namespace

PolyForm wedge(const PolyForm& a, const PolyForm& b) { return wedge_impl(a, b); }
PolyMultivector wedge(const PolyMultivector& a, const PolyMultivector& b) {
  return wedge_impl(a, b);
}

PolyForm d(const PolyForm& a) {
  PolyForm out(a.ring(), a.degree() + 1);
  for (const auto& [idx, c] : a.comps())
    for (int v = 0; v < a.ring().vars; ++v) {
      Poly dc = c.derivative(v);
      if (dc.is_zero()) continue;
      std::vector<int> merged;
      merged.push_back(v);
      merged.insert(merged.end(), idx.begin(), idx.end());
      out.add_term(std::move(merged), std::move(dc));
    }
  return out;
}

PolyForm contract(const PolyMultivector& field, const PolyForm& a) {
  if (field.degree() != 1) throw InputError("contract: field must have degree 1");
  if (!(field.ring() == a.ring())) throw InputError("contract: rings differ");
  PolyForm out(a.ring(), a.degree() - 1);
  if (a.degree() == 0) return out;
  for (const auto& [idx, c] : a.comps())
    for (const auto& [fi, fc] : field.comps()) {
      int v = fi[0];
      auto pos = std::find(idx.begin(), idx.end(), v);
      if (pos == idx.end()) continue;
      int sign = static_cast<int>(pos - idx.begin()) % 2 ? -1 : 1;
      std::vector<int> rest;
      for (int i : idx)
        if (i != v) rest.push_back(i);
      Poly coeff = fc * c;
      if (sign < 0) coeff *= Rat(-1);
      out.add_term(std::move(rest), std::move(coeff));
    }
  return out;
}

PolyForm lie_derivative(const PolyMultivector& field, const PolyForm& a) {
  return d(contract(field, a)) + contract(field, d(a));
}

namespace {

// odd derivative: coefficient and remaining indices of d/d theta_v theta_idx
bool odd_derivative(const std::vector<int>& idx, int v, int& sign,
                    std::vector<int>& rest) {
  auto pos = std::find(idx.begin(), idx.end(), v);
  if (pos == idx.end()) return false;
  sign = static_cast<int>(pos - idx.begin()) % 2 ? -1 : 1;
  rest.clear();
  for (int i : idx)
    if (i != v) rest.push_back(i);
  return true;
}

// P dot Q = sum_v (dP/dtheta_v)(dQ/dx_v), a multivector of degree p+q-1
PolyMultivector schouten_half(const PolyMultivector& p, const PolyMultivector& q) {
  PolyMultivector out(p.ring(), p.degree() + q.degree() - 1);
  std::vector<int> rest;
  int sign;
  for (const auto& [ip, cp] : p.comps())
    for (int v = 0; v < p.ring().vars; ++v) {
      if (!odd_derivative(ip, v, sign, rest)) continue;
      for (const auto& [iq, cq] : q.comps()) {
        Poly dq = cq.derivative(v);
        if (dq.is_zero()) continue;
        std::vector<int> merged = rest;
        merged.insert(merged.end(), iq.begin(), iq.end());
        Poly coeff = cp * dq;
        if (sign < 0) coeff *= Rat(-1);
        out.add_term(std::move(merged), std::move(coeff));
      }
    }
  return out;
}

}  // namespace

PolyMultivector schouten(const PolyMultivector& p, const PolyMultivector& q) {
  if (!(p.ring() == q.ring())) throw InputError("schouten: rings differ");
  // [P,Q] = (-1)^{p-1} B(P,Q) - (-1)^{p(q-1)} B(Q,P) for the superspace half
  // B(P,Q) = sum_i (dP/dtheta_i)(dQ/dx_i)
  PolyMultivector left = schouten_half(p, q);
  PolyMultivector right = schouten_half(q, p);
  if ((p.degree() - 1) % 2) left *= Rat(-1);
  int sgn = (p.degree() * (q.degree() - 1)) % 2 ? -1 : 1;
  right *= Rat(-sgn);
  return left += right;
}

PolyForm form_basis(PolyRing ring, std::vector<int> indices, Poly c) {
  PolyForm out(ring, static_cast<int>(indices.size()));
  out.add_term(std::move(indices), std::move(c));
  return out;
}

PolyMultivector field_basis(PolyRing ring, std::vector<int> indices, Poly c) {
  PolyMultivector out(ring, static_cast<int>(indices.size()));
  out.add_term(std::move(indices), std::move(c));
  return out;
}

Poly pair_form_field(const PolyForm& a, const PolyMultivector& x) {
  if (a.degree() != 1 || x.degree() != 1)
    throw InputError("pair_form_field expects a 1-form and a vector field");
  Poly out(a.ring());
  for (const auto& [idx, c] : a.comps()) {
    const Poly& xc = x.coeff(idx);
    if (!xc.is_zero()) out += c * xc;
  }
  return out;
}

}  // namespace linfty
