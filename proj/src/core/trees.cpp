#include "core/trees.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_set>

#include "core/errors.hpp"
#include "core/sequences.hpp"

namespace latcomm {

RootedTree::RootedTree(const std::vector<Edge>& edges, Site root)
    : root_(root) {
  std::set<Edge> eset(edges.begin(), edges.end());
  if (eset.size() != edges.size())
    throw std::invalid_argument("rooted tree: duplicate edge");

  std::unordered_map<SiteKey, std::vector<Site>> adj;
  for (const Edge& e : eset) {
    if (e.l1_dist() != 1)
      throw std::invalid_argument("rooted tree: not a lattice edge");
    adj[site_key(e.a)].push_back(e.b);
    adj[site_key(e.b)].push_back(e.a);
  }

  SiteKey rk = site_key(root);
  parent_[rk] = rk;
  depth_[rk] = 0;
  std::deque<Site> queue{root};
  while (!queue.empty()) {
    Site u = queue.front();
    queue.pop_front();
    SiteKey uk = site_key(u);
    for (const Site& v : adj[uk]) {
      SiteKey vk = site_key(v);
      if (parent_.count(vk)) continue;
      parent_[vk] = uk;
      depth_[vk] = depth_[uk] + 1;
      queue.push_back(v);
    }
  }

  // Reached sites = edges + 1 rules out both cycles and components the root
  // cannot see.
  if (parent_.size() != eset.size() + 1)
    throw std::invalid_argument("rooted tree: edges are not a tree at the root");

  for (const auto& [k, nbrs] : adj) degree_[k] = int(nbrs.size());
  degree_.emplace(rk, 0);  // 0-edge tree

  sites_.reserve(parent_.size());
  for (const auto& [k, unused] : parent_) sites_.push_back(site_from_key(k));
  std::sort(sites_.begin(), sites_.end());
  edges_.assign(eset.begin(), eset.end());
}

int RootedTree::degree(const Site& s) const {
  auto it = degree_.find(site_key(s));
  if (it == degree_.end())
    throw std::invalid_argument("degree: site not in tree");
  return it->second;
}

Site RootedTree::parent(const Site& s) const {
  auto it = parent_.find(site_key(s));
  if (it == parent_.end())
    throw std::invalid_argument("parent: site not in tree");
  return site_from_key(it->second);
}

Site RootedTree::child_end(const Edge& e) const {
  return depth(e.a) > depth(e.b) ? e.a : e.b;
}

int RootedTree::depth(const Site& s) const {
  auto it = depth_.find(site_key(s));
  if (it == depth_.end())
    throw std::invalid_argument("depth: site not in tree");
  return it->second;
}

nlohmann::ordered_json RootedTree::to_json() const {
  nlohmann::ordered_json j;
  j["root"] = {root_.x, root_.y};
  auto& es = j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : edges_)
    es.push_back({{e.a.x, e.a.y}, {e.b.x, e.b.y}});
  return j;
}

RootedTree RootedTree::from_json(const nlohmann::ordered_json& j) {
  auto site_of = [](const nlohmann::ordered_json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
      throw std::invalid_argument("tree json: site must be [x,y]");
    return Site{v[0].get<int32_t>(), v[1].get<int32_t>(), 0};
  };
  if (!j.contains("root") || !j.contains("edges"))
    throw std::invalid_argument("tree json: need root and edges");
  Site root = site_of(j.at("root"));
  std::vector<Edge> edges;
  for (const auto& pair : j.at("edges")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("tree json: edge must be a site pair");
    Site a = site_of(pair[0]), b = site_of(pair[1]);
    if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
      throw std::invalid_argument("tree json: not a lattice edge");
    edges.emplace_back(a, b);
  }
  return RootedTree(edges, root);
}

std::map<Edge, int64_t> edge_weights(const RootedTree& t) {
  // Subtree site counts in one pass over sites sorted deepest-first.
  std::unordered_map<SiteKey, int64_t> size;
  std::vector<Site> order = t.sites();
  std::sort(order.begin(), order.end(), [&](const Site& a, const Site& b) {
    return t.depth(a) > t.depth(b);
  });
  for (const Site& s : order) size[site_key(s)] += 1;
  for (const Site& s : order)
    if (!(s == t.root())) size[site_key(t.parent(s))] += size[site_key(s)];

  std::map<Edge, int64_t> w;
  for (const Edge& e : t.edges()) w[e] = size[site_key(t.child_end(e))];
  return w;
}

BigInt construction_count(const RootedTree& t) {
  BigInt denom = 1;
  for (const auto& [e, w] : edge_weights(t)) denom *= w;
  BigInt num = factorial(unsigned(t.edge_count()));
  BigInt q, r;
  boost::multiprecision::divide_qr(num, denom, q, r);
  if (r != 0)
    throw std::logic_error("construction_count: weights do not divide n!");
  return q;
}

double log_construction_count(const RootedTree& t) {
  double s = std::lgamma(double(t.edge_count()) + 1.0);
  for (const auto& [e, w] : edge_weights(t)) s -= std::log(double(w));
  return s;
}

BigInt brute_force_constructions(const RootedTree& t) {
  int n = t.edge_count();
  if (n > 8)
    throw budget_error("brute_force_constructions capped at 8 edges", n);
  const std::vector<Edge>& edges = t.edges();
  std::unordered_set<SiteKey> visited{site_key(t.root())};
  uint64_t count = 0;

  auto dfs = [&](auto&& self, uint32_t used, int placed) -> void {
    if (placed == n) {
      ++count;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used & (1u << i)) continue;
      const Edge& e = edges[i];
      bool ina = visited.count(site_key(e.a)), inb = visited.count(site_key(e.b));
      if (!ina && !inb) continue;
      Site fresh = ina ? e.b : e.a;  // tree edges never have both ends in
      visited.insert(site_key(fresh));
      self(self, used | (1u << i), placed + 1);
      visited.erase(site_key(fresh));
    }
  };
  dfs(dfs, 0, 0);
  return BigInt(count);
}

std::vector<RootedTree> tree_catalog(int n, int d) {
  std::vector<RootedTree> out;
  std::unordered_set<std::string> seen;
  enumerate_histories(n, d, [&](const EdgeSequence& seq) {
    EdgeSequence sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    std::string key;
    key.reserve(sorted.size() * 16);
    for (const Edge& e : sorted) {
      SiteKey ka = site_key(e.a), kb = site_key(e.b);
      key.append(reinterpret_cast<const char*>(&ka), 8);
      key.append(reinterpret_cast<const char*>(&kb), 8);
    }
    if (seen.insert(std::move(key)).second) out.emplace_back(sorted);
  });
  return out;
}

FamilyParams toy_family_params(int k, int64_t e0, int64_t e1, FamilyMode mode) {
  if (k < 1 || e0 < 1 || e1 < 2)
    throw std::invalid_argument("toy_family_params: need k >= 1, E_0 >= 1, E_1 >= 2");
  FamilyParams p;
  p.k = k;
  p.mode = mode;
  p.E = {BigInt(e0), BigInt(e1)};
  for (int j = 2; j <= k; ++j) {
    BigInt root = boost::multiprecision::sqrt(p.E[j - 1]);
    if (root * root != p.E[j - 1])
      throw std::invalid_argument("toy_family_params: E_{j-1} must be a perfect square");
    if (root > 4096)
      throw std::invalid_argument("toy_family_params: level constants blow up");
    p.E.push_back(ipow(4, root.convert_to<unsigned>()));
  }
  p.l.assign(k + 1, 0);
  p.spacing.assign(k + 1, 0);
  if (k >= 1) p.l[1] = p.E[1];
  for (int j = 2; j <= k; ++j) {
    BigInt q, r;
    boost::multiprecision::divide_qr(4 * p.E[j] * p.E[j - 2], p.E[j - 1], q, r);
    if (r != 0)
      throw std::invalid_argument("toy_family_params: segment length not integral");
    p.l[j] = q;
    p.spacing[j] = 4 * p.E[j - 2];
  }
  return p;
}

namespace {

void check_family_params(const FamilyParams& p) {
  if (p.k < 1) throw std::invalid_argument("family: k >= 1 required");
  if (int(p.E.size()) != p.k + 1 || int(p.l.size()) != p.k + 1 ||
      int(p.spacing.size()) != p.k + 1)
    throw std::invalid_argument("family: E, l, spacing must have k+1 entries");
  for (const BigInt& e : p.E)
    if (e < 1) throw std::invalid_argument("family: level constants must be positive");
  if (p.l[1] != p.E[1]) throw std::invalid_argument("family: l_1 != E_1");
  for (int j = 2; j <= p.k; ++j) {
    if (p.E[j] % p.E[j - 1] != 0)
      throw std::invalid_argument("family: branch count E_j/E_{j-1} not integral");
    if (p.l[j] * p.E[j - 1] != 4 * p.E[j] * p.E[j - 2])
      throw std::invalid_argument("family: l_j != 4 E_j E_{j-2} / E_{j-1}");
    if (p.spacing[j] != 4 * p.E[j - 2])
      throw std::invalid_argument("family: spacing_j != 4 E_{j-2}");
    // branch count * spacing fills the spine exactly
    if (p.l[j] != (p.E[j] / p.E[j - 1]) * p.spacing[j])
      throw std::invalid_argument("family: spine length != branches * spacing");
  }
}

Site step(const Site& s, int dir) {
  // 0:+x 1:+y 2:-x 3:-y
  switch (dir & 3) {
    case 0: return {s.x + 1, s.y, 0};
    case 1: return {s.x, s.y + 1, 0};
    case 2: return {s.x - 1, s.y, 0};
    default: return {s.x, s.y - 1, 0};
  }
}

}  // namespace

BigInt family_edge_count(const FamilyParams& p) {
  check_family_params(p);
  BigInt n = p.l[1];
  for (int j = 2; j <= p.k; ++j) n = p.l[j] + (p.E[j] / p.E[j - 1]) * n;
  return n;
}

RootedTree generate_comb_tree(int64_t segments, int64_t segLen,
                              int64_t spacing) {
  if (segments < 1 || segLen < 1 || spacing < 1)
    throw std::invalid_argument("comb tree: all parameters must be >= 1");
  int64_t total = segments * (spacing + segLen);
  if (total > 1000000)
    throw budget_error("comb tree exceeds the 10^6 edge cap", total);

  std::vector<Edge> edges;
  edges.reserve(size_t(total));
  int64_t spine = segments * spacing;
  for (int64_t i = 0; i < spine; ++i)
    edges.emplace_back(Site{int32_t(i), 0, 0}, Site{int32_t(i + 1), 0, 0});
  for (int64_t s = 1; s <= segments; ++s) {
    int32_t x = int32_t(s * spacing);
    for (int64_t r = 0; r < segLen; ++r)
      edges.emplace_back(Site{x, int32_t(-r), 0}, Site{x, int32_t(-r - 1), 0});
  }
  return RootedTree(edges);
}

RootedTree generate_family(const FamilyParams& p) {
  check_family_params(p);
  BigInt total = family_edge_count(p);
  if (total > 1000000)
    throw budget_error("family exceeds the 10^6 edge cap",
                       total > BigInt(INT64_MAX) ? -1 : total.convert_to<int64_t>());

  // Unfolded alternates right and down; Folded turns left at every level.
  auto direction = [&](int level) {
    if (p.mode == FamilyMode::Unfolded) return (p.k - level) % 2 == 0 ? 0 : 3;
    return (p.k - level) % 4;  // successive left turns
  };

  std::vector<Edge> edges;
  edges.reserve(total.convert_to<size_t>());
  auto build = [&](auto&& self, int level, Site base) -> void {
    int dir = direction(level);
    if (level == 1) {
      Site pos = base;
      for (BigInt i = 0; i < p.l[1]; ++i) {
        Site nxt = step(pos, dir);
        edges.emplace_back(pos, nxt);
        pos = nxt;
      }
      return;
    }
    BigInt branches = p.E[level] / p.E[level - 1];
    int64_t spacing = p.spacing[level].convert_to<int64_t>();
    Site pos = base;
    for (BigInt b = 0; b < branches; ++b) {
      for (int64_t i = 0; i < spacing; ++i) {
        Site nxt = step(pos, dir);
        edges.emplace_back(pos, nxt);
        pos = nxt;
      }
      self(self, level - 1, pos);
    }
  };
  build(build, p.k, kOrigin);
  return RootedTree(edges);
}

TargetPattern target_string(const RootedTree& t) {
  TargetPattern tp;
  tp.n = t.edge_count();
  for (const Site& s : t.sites()) {
    int deg = t.degree(s);
    if (deg >= 4)
      throw std::invalid_argument("target_string: degree-4 site present");
    if (s == t.root()) {
      if (deg == 3)
        throw std::invalid_argument("target_string: branch at the root");
      tp.f[s] = kAlpha3;
    } else if (deg == 2) {
      tp.f[s] = kAlpha3;
    } else {
      tp.f[s] = kAlpha2;  // branch sites and non-root leaves
    }
  }
  return tp;
}

bool validate_even_separation(const RootedTree& t) {
  if (t.edge_count() == 0) return true;
  std::unordered_map<SiteKey, std::vector<Site>> adj;
  for (const Edge& e : t.edges()) {
    adj[site_key(e.a)].push_back(e.b);
    adj[site_key(e.b)].push_back(e.a);
  }
  auto special = [&](const Site& s) {
    int deg = t.degree(s);
    return deg == 1 || deg == 3;
  };
  auto is_turn = [&](const Site& s) {
    const auto& nb = adj[site_key(s)];
    return nb.size() == 2 && nb[0].x != nb[1].x && nb[0].y != nb[1].y;
  };

  for (const Site& v : t.sites()) {
    if (!special(v)) continue;
    for (const Site& first : adj[site_key(v)]) {
      Site prev = v, cur = first;
      int len = 1;
      while (!special(cur)) {
        if (is_turn(cur) && len % 2 != 0) return false;
        const auto& nb = adj[site_key(cur)];
        Site nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      if (len % 2 != 0) return false;  // run between special sites
    }
  }
  return true;
}

double family_count_lower_bound(int64_t n) {
  if (n < 1) throw std::invalid_argument("family_count_lower_bound: n >= 1");
  return std::lgamma(double(n) + 1.0) - double(n) * 21.0 * std::log(4.0);
}

}  // namespace latcomm
