#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace latcomm {

// Lattice site in Z^d, d <= 3.  Unused coordinates stay 0, so the same type
// serves chains (d=1), the planar lattice (d=2) and Eden growth in d=3.
struct Site {
  int32_t x = 0, y = 0, z = 0;

  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

inline constexpr Site kOrigin{0, 0, 0};

// 63-bit packed key, 21 bits per signed coordinate.  Coordinates are capped
// well below 2^20 by the enumeration limits and the 10^6-edge family cap.
using SiteKey = uint64_t;

inline SiteKey site_key(const Site& s) {
  constexpr int64_t off = 1 << 20;
  return (uint64_t(s.x + off) << 42) | (uint64_t(s.y + off) << 21) |
         uint64_t(s.z + off);
}

inline Site site_from_key(SiteKey k) {
  constexpr int32_t off = 1 << 20;
  return Site{int32_t((k >> 42) & 0x1fffff) - off,
              int32_t((k >> 21) & 0x1fffff) - off,
              int32_t(k & 0x1fffff) - off};
}

// Neighbor order is fixed (+x, -x, +y, -y, +z, -z); enumeration determinism
// depends on it.
std::vector<Site> neighbors(const Site& s, int d);

// Undirected nearest-neighbor edge, canonical order: a < b lexicographically.
struct Edge {
  Site a, b;

  Edge() = default;
  Edge(const Site& u, const Site& v) : a(u), b(v) {
    if (v < u) std::swap(a, b);
    assert(l1_dist() == 1);
  }

  int l1_dist() const {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
  }
  bool horizontal() const { return a.x != b.x; }
  bool touches(const Site& s) const { return a == s || b == s; }
  Site other(const Site& s) const { return a == s ? b : a; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSequence = std::vector<Edge>;

std::string site_str(const Site& s, int d = 2);
std::string edge_str(const Edge& e, int d = 2);

// Axis-aligned rectangle of sites containing the origin; the finite volume
// for exact operator work.  Sites are ordered row-major, top row (largest y)
// first, x ascending inside a row.  This order is shared with the dense
// oracle: site index 0 is the leftmost tensor factor / most significant bit.
class Region {
 public:
  Region(Site lo, Site hi);
  static Region chain(int32_t xmin, int32_t xmax);  // d=1: y = z = 0
  static Region box(int32_t xmin, int32_t xmax, int32_t ymin, int32_t ymax);

  int width() const { return hi_.x - lo_.x + 1; }
  int height() const { return hi_.y - lo_.y + 1; }
  int size() const { return width() * height(); }
  int dims() const { return height() > 1 ? 2 : 1; }
  const Site& lo() const { return lo_; }
  const Site& hi() const { return hi_; }

  bool contains(const Site& s) const {
    return s.z == 0 && s.x >= lo_.x && s.x <= hi_.x && s.y >= lo_.y &&
           s.y <= hi_.y;
  }
  int site_index(const Site& s) const {
    assert(contains(s));
    return (hi_.y - s.y) * width() + (s.x - lo_.x);
  }
  Site site_at(int idx) const {
    assert(idx >= 0 && idx < size());
    return Site{lo_.x + idx % width(), hi_.y - idx / width(), 0};
  }

  // Every nearest-neighbor edge with both endpoints inside, in canonical
  // (lexicographic) order.
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Site lo_, hi_;
  std::vector<Edge> edges_;
};

}  // namespace latcomm

template <>
struct std::hash<latcomm::Site> {
  size_t operator()(const latcomm::Site& s) const {
    return std::hash<uint64_t>()(latcomm::site_key(s));
  }
};
