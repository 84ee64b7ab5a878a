#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "core/alpha.hpp"
#include "core/bigint.hpp"
#include "core/geometry.hpp"

namespace latcomm {

// Tree of lattice edges rooted at a site (usually the origin).  Built from
// an edge list; rejects anything that is not a connected acyclic set of
// nearest-neighbor edges containing the root.
class RootedTree {
 public:
  explicit RootedTree(const std::vector<Edge>& edges, Site root = kOrigin);

  const Site& root() const { return root_; }
  const std::vector<Site>& sites() const { return sites_; }       // sorted
  const std::vector<Edge>& edges() const { return edges_; }       // canonical
  int edge_count() const { return int(edges_.size()); }

  bool contains(const Site& s) const { return degree_.count(site_key(s)); }
  int degree(const Site& s) const;
  Site parent(const Site& s) const;  // root's parent is the root itself
  // Child endpoint of an edge (the endpoint farther from the root).
  Site child_end(const Edge& e) const;
  int depth(const Site& s) const;  // edges between s and the root

  nlohmann::ordered_json to_json() const;
  static RootedTree from_json(const nlohmann::ordered_json& j);

 private:
  Site root_;
  std::vector<Site> sites_;
  std::vector<Edge> edges_;
  std::unordered_map<SiteKey, SiteKey> parent_;
  std::unordered_map<SiteKey, int> degree_;
  std::unordered_map<SiteKey, int> depth_;
};

// w(e) = 1 + number of descendant edges of e = site count of the subtree
// hanging below e.
std::map<Edge, int64_t> edge_weights(const RootedTree& t);

// Number of orderings of the edges that grow the tree from the root,
// n! / prod w(e).  The division is exact.
BigInt construction_count(const RootedTree& t);
// ln n! - sum ln w(e); usable when the factorials cannot be materialized.
double log_construction_count(const RootedTree& t);

// Direct enumeration of growth orderings; throws budget_error above 8 edges.
BigInt brute_force_constructions(const RootedTree& t);

// Every rooted lattice tree with exactly n edges (root = origin), collected
// by deduplicating history edge sets.  Sum of construction counts over the
// catalog equals the number of histories of length n.
std::vector<RootedTree> tree_catalog(int n, int d = 2);

enum class FamilyMode { Folded, Unfolded };

// Level constants and segment geometry for the recursive comb-of-combs
// family.  E has k+1 entries E_0..E_k; l[j] and spacing[j] are indexed by
// level, l[1] = E_1, l[j] = 4 E_j E_{j-2} / E_{j-1}, spacing[j] = 4 E_{j-2}.
struct FamilyParams {
  int k = 1;
  std::vector<BigInt> E;
  std::vector<BigInt> l;
  std::vector<BigInt> spacing;
  FamilyMode mode = FamilyMode::Unfolded;
};

// Params with the recursion of the reference family but small seeds
// (E_0, E_1), so trees stay materializable.  E_1 must be a power of 4 with
// integral square roots down the chain.
FamilyParams toy_family_params(int k, int64_t e0, int64_t e1,
                               FamilyMode mode = FamilyMode::Unfolded);

// Edge count n_{k-1} = E_k [1 + 4(E_0/E_1 + ... + E_{k-2}/E_{k-1})] of the
// family tree, evaluated exactly.
BigInt family_edge_count(const FamilyParams& p);

// Horizontal spine of segments*spacing edges with `segments` vertical teeth
// of segLen edges each, hanging down at x = spacing, 2*spacing, ...
RootedTree generate_comb_tree(int64_t segments, int64_t segLen,
                              int64_t spacing);

// The recursive family: a level-k spine with E_k/E_{k-1} sub-clusters
// attached at multiples of spacing[k].  Unfolded keeps every segment going
// right or down; Folded turns left at each level.  Edge count capped at 10^6.
RootedTree generate_family(const FamilyParams& p);

// Alpha pattern forced on a tree by the growth process: alpha_3 at the root
// and at degree-2 sites, alpha_2 at branch (degree-3) sites and non-root
// leaves, identity off the tree.  Rejects trees with a degree-4 site.
struct TargetPattern {
  std::map<Site, Alpha> f;
  int n = 0;  // edge count of the source tree

  Alpha at(const Site& s) const {
    auto it = f.find(s);
    return it == f.end() ? kAlpha0 : it->second;
  }
};

TargetPattern target_string(const RootedTree& t);

// True when every degree-1/degree-3 site is an even number of edges from the
// next such site along the tree, and every turn sits at even distance from
// the special sites bounding its straight run.
bool validate_even_separation(const RootedTree& t);

// ln(n!) - n ln(4^21): log of the claimed lower bound on the number of
// growth orderings of the n-edge family tree.
double family_count_lower_bound(int64_t n);

}  // namespace latcomm
