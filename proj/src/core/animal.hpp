#pragma once

#include <unordered_set>
#include <vector>

#include "core/geometry.hpp"

namespace latcomm {

// Connected finite site set grown from the origin.  Supports push/pop in
// stack order so enumeration can backtrack; the perimeter edge count is
// maintained incrementally (adding v: +2d minus twice the edges v already
// shares with the animal).
class LatticeAnimal {
 public:
  explicit LatticeAnimal(int d, const Site& root = kOrigin);

  int dims() const { return d_; }
  size_t size() const { return order_.size(); }
  bool contains(const Site& s) const { return sites_.count(site_key(s)) > 0; }
  const std::vector<Site>& sites() const { return order_; }

  int inside_degree(const Site& s) const;

  void push(const Site& v);
  void pop();

  int perimeter_edge_count() const { return perim_edges_; }
  int interior_edge_count() const { return interior_edges_; }

  // Edges with exactly one endpoint inside, canonical order.
  std::vector<Edge> perimeter_edges() const;
  // Edges with both endpoints inside, canonical order.
  std::vector<Edge> interior_edges() const;
  // Union of the two: every edge touching the animal, canonical order.
  std::vector<Edge> incident_edges() const;

 private:
  int d_;
  std::unordered_set<SiteKey> sites_;
  std::vector<Site> order_;
  int perim_edges_ = 0;
  int interior_edges_ = 0;
};

}  // namespace latcomm
