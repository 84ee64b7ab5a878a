#include "core/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace latcomm {

std::vector<Site> neighbors(const Site& s, int d) {
  assert(d >= 1 && d <= 3);
  std::vector<Site> out;
  out.reserve(2 * d);
  out.push_back({s.x + 1, s.y, s.z});
  out.push_back({s.x - 1, s.y, s.z});
  if (d >= 2) {
    out.push_back({s.x, s.y + 1, s.z});
    out.push_back({s.x, s.y - 1, s.z});
  }
  if (d >= 3) {
    out.push_back({s.x, s.y, s.z + 1});
    out.push_back({s.x, s.y, s.z - 1});
  }
  return out;
}

std::string site_str(const Site& s, int d) {
  std::string out = "(" + std::to_string(s.x);
  if (d >= 2) out += "," + std::to_string(s.y);
  if (d >= 3) out += "," + std::to_string(s.z);
  return out + ")";
}

std::string edge_str(const Edge& e, int d) {
  return "{" + site_str(e.a, d) + "," + site_str(e.b, d) + "}";
}

Region::Region(Site lo, Site hi) : lo_(lo), hi_(hi) {
  if (lo_.z != 0 || hi_.z != 0 || lo_.x > hi_.x || lo_.y > hi_.y)
    throw std::invalid_argument("Region: bad bounds");
  if (!contains(kOrigin))
    throw std::invalid_argument("Region must contain the origin");
  for (int32_t y = lo_.y; y <= hi_.y; ++y)
    for (int32_t x = lo_.x; x <= hi_.x; ++x) {
      if (x + 1 <= hi_.x) edges_.emplace_back(Site{x, y, 0}, Site{x + 1, y, 0});
      if (y + 1 <= hi_.y) edges_.emplace_back(Site{x, y, 0}, Site{x, y + 1, 0});
    }
  std::sort(edges_.begin(), edges_.end());
}

Region Region::chain(int32_t xmin, int32_t xmax) {
  return Region(Site{xmin, 0, 0}, Site{xmax, 0, 0});
}

Region Region::box(int32_t xmin, int32_t xmax, int32_t ymin, int32_t ymax) {
  return Region(Site{xmin, ymin, 0}, Site{xmax, ymax, 0});
}

}  // namespace latcomm
