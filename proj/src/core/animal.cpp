#include "core/animal.hpp"

#include <algorithm>

namespace latcomm {

LatticeAnimal::LatticeAnimal(int d, const Site& root) : d_(d) {
  assert(d >= 1 && d <= 3);
  sites_.insert(site_key(root));
  order_.push_back(root);
  perim_edges_ = 2 * d;
}

int LatticeAnimal::inside_degree(const Site& s) const {
  int k = 0;
  for (const Site& n : neighbors(s, d_)) k += contains(n);
  return k;
}

void LatticeAnimal::push(const Site& v) {
  assert(!contains(v));
  int k = inside_degree(v);
  assert(k > 0);  // growth keeps the animal connected
  perim_edges_ += 2 * d_ - 2 * k;
  interior_edges_ += k;
  sites_.insert(site_key(v));
  order_.push_back(v);
}

void LatticeAnimal::pop() {
  assert(order_.size() > 1);
  Site v = order_.back();
  order_.pop_back();
  sites_.erase(site_key(v));
  int k = inside_degree(v);
  perim_edges_ -= 2 * d_ - 2 * k;
  interior_edges_ -= k;
}

std::vector<Edge> LatticeAnimal::perimeter_edges() const {
  std::vector<Edge> out;
  for (const Site& s : order_)
    for (const Site& n : neighbors(s, d_))
      if (!contains(n)) out.emplace_back(s, n);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> LatticeAnimal::interior_edges() const {
  std::vector<Edge> out;
  for (const Site& s : order_)
    for (const Site& n : neighbors(s, d_))
      if (contains(n) && s < n) out.emplace_back(s, n);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> LatticeAnimal::incident_edges() const {
  std::vector<Edge> out;
  for (const Site& s : order_)
    for (const Site& n : neighbors(s, d_))
      if (!contains(n) || s < n) out.emplace_back(s, n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latcomm
