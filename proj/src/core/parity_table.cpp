#include "core/parity_table.hpp"

#include <deque>
#include <optional>
#include <unordered_set>

#include "core/geometry.hpp"

namespace latcomm {

namespace {

constexpr Alpha A0 = kAlpha0, A1 = kAlpha1, A2 = kAlpha2, A3 = kAlpha3;

// Rows grouped by the number of odd parities.  Pattern columns are the alpha
// products accumulated at x1 (a,d -> alpha_1; b,c -> alpha_2) and at x2
// (a,e -> alpha_2; f,g -> alpha_1).
constexpr std::array<ParityTransition, 32> kTable{{
    {{0, 0, 0, 0, 0}, A0, A0, A0, A0, 0},
    {{1, 0, 0, 0, 0}, A1, A2, A0, A0, 0},
    {{0, 1, 0, 0, 0}, A2, A0, A3, A2, 2},
    {{0, 0, 1, 0, 0}, A1, A0, A0, A0, 0},
    {{0, 0, 0, 1, 0}, A0, A2, A0, A0, 0},
    {{0, 0, 0, 0, 1}, A0, A1, A1, A3, -2},
    {{1, 1, 0, 0, 0}, A3, A2, A2, A0, 2},
    {{1, 0, 1, 0, 0}, A0, A2, A0, A0, 0},
    {{1, 0, 0, 1, 0}, A1, A0, A0, A0, 0},
    {{1, 0, 0, 0, 1}, A1, A3, A0, A1, -2},
    {{0, 1, 1, 0, 0}, A3, A0, A2, A2, 2},
    {{0, 1, 0, 1, 0}, A2, A2, A3, A0, 2},
    {{0, 1, 0, 0, 1}, A2, A1, A0, A0, 0},
    {{0, 0, 1, 1, 0}, A1, A2, A0, A0, 0},
    {{0, 0, 1, 0, 1}, A1, A1, A0, A3, -2},
    {{0, 0, 0, 1, 1}, A0, A3, A1, A1, -2},
    {{1, 1, 1, 0, 0}, A2, A2, A3, A0, 2},
    {{1, 1, 0, 1, 0}, A3, A0, A2, A2, 2},
    {{1, 1, 0, 0, 1}, A3, A3, A0, A0, 0},
    {{1, 0, 1, 1, 0}, A0, A0, A0, A0, 0},
    {{1, 0, 1, 0, 1}, A0, A3, A1, A1, -2},
    {{1, 0, 0, 1, 1}, A1, A1, A0, A3, -2},
    {{0, 1, 1, 1, 0}, A3, A2, A2, A0, 2},
    {{0, 1, 1, 0, 1}, A3, A1, A0, A0, 0},
    {{0, 1, 0, 1, 1}, A2, A3, A0, A0, 0},
    {{0, 0, 1, 1, 1}, A1, A3, A0, A1, -2},
    {{1, 1, 1, 1, 0}, A2, A0, A3, A2, 2},
    {{1, 1, 1, 0, 1}, A2, A3, A0, A0, 0},
    {{1, 1, 0, 1, 1}, A3, A1, A0, A0, 0},
    {{1, 0, 1, 1, 1}, A0, A1, A1, A3, -2},
    {{0, 1, 1, 1, 1}, A3, A3, A0, A0, 0},
    {{1, 1, 1, 1, 1}, A2, A1, A0, A0, 0},
}};

// The two labeled neighborhoods: a central edge a = {x1, x2} away from the
// origin, its six surrounding edges, and enough room to route commutator
// sequences around them.
struct Neighborhood {
  Region region;
  Site x1, x2;
  Edge a, b, c, d, e, f, g;
};

Neighborhood horizontal_neighborhood() {
  Site x1{1, 0, 0}, x2{2, 0, 0};
  return {Region::box(0, 3, -1, 1),
          x1,
          x2,
          Edge{x1, x2},
          Edge{x1, {1, 1, 0}},
          Edge{{0, 0, 0}, x1},
          Edge{x1, {1, -1, 0}},
          Edge{x2, {2, 1, 0}},
          Edge{x2, {3, 0, 0}},
          Edge{x2, {2, -1, 0}}};
}

Neighborhood vertical_neighborhood() {
  Site x1{1, 0, 0}, x2{1, -1, 0};
  return {Region::box(0, 2, -2, 1),
          x1,
          x2,
          Edge{x1, x2},
          Edge{{0, 0, 0}, x1},
          Edge{x1, {1, 1, 0}},
          Edge{x1, {2, 0, 0}},
          Edge{{0, -1, 0}, x2},
          Edge{x2, {1, -2, 0}},
          Edge{x2, {2, -1, 0}}};
}

int class_bit(const Neighborhood& nb, const Edge& e) {
  if (e == nb.a) return 0;
  if (e == nb.b || e == nb.c) return 1;
  if (e == nb.d) return 2;
  if (e == nb.e) return 3;
  if (e == nb.f || e == nb.g) return 4;
  return -1;
}

std::string state_key(const Neighborhood& nb, const AlphaString& s,
                      int parity) {
  std::string key(size_t(nb.region.size()) + 1, '\0');
  key[0] = char(parity);
  for (const auto& [site, alpha] : s.support)
    key[1 + nb.region.site_index(site)] = char(alpha);
  return key;
}

struct RowEvidence {
  bool pattern_ok = false;
  bool after_ok = false;
  std::string detail;
};

// Breadth-first search over commutator sequences inside the neighborhood,
// checking each parity class against its table row the first time a state
// in that class is reached.
std::array<std::optional<RowEvidence>, 32> search(const Neighborhood& nb) {
  std::array<std::optional<RowEvidence>, 32> out;
  AlphaString ha = interaction_term(nb.a);

  auto examine = [&](const AlphaString& s, int parity) {
    ParityVector p{bool(parity & 1), bool(parity & 2), bool(parity & 4),
                   bool(parity & 8), bool(parity & 16)};
    const ParityTransition& r = parity_transition(p);
    RowEvidence ev;
    ev.pattern_ok = s.at(nb.x1) == r.op_x1 && s.at(nb.x2) == r.op_x2;
    if (!ev.pattern_ok) ev.detail = "pattern mismatch before a";

    AlphaString res = string_commutator(ha, s);
    if (r.multiplier == 0) {
      ev.after_ok = res.zero();
      if (!ev.after_ok) ev.detail = "expected vanishing commutator";
    } else if (res.zero()) {
      ev.detail = "commutator vanished";
    } else {
      bool local = res.at(nb.x1) == r.op_x1_after && res.at(nb.x2) == r.op_x2_after;
      bool coeff = res.coeff == s.coeff * r.multiplier;
      bool rest = true;
      for (const auto& [site, alpha] : s.support)
        if (!(site == nb.x1) && !(site == nb.x2) && res.at(site) != alpha)
          rest = false;
      for (const auto& [site, alpha] : res.support)
        if (!(site == nb.x1) && !(site == nb.x2) && s.at(site) != alpha)
          rest = false;
      ev.after_ok = local && coeff && rest;
      if (!local) ev.detail = "pattern mismatch after a";
      else if (!coeff) ev.detail = "multiplier mismatch";
      else if (!rest) ev.detail = "untouched sites changed";
    }
    return ev;
  };

  std::deque<std::pair<AlphaString, int>> queue;
  std::unordered_set<std::string> visited;
  AlphaString start = AlphaString::observable_at_origin();
  queue.emplace_back(start, 0);
  visited.insert(state_key(nb, start, 0));

  size_t found = 0, expanded = 0;
  constexpr size_t kNodeCap = 2000000;
  while (!queue.empty() && found < 32 && expanded < kNodeCap) {
    auto [s, parity] = std::move(queue.front());
    queue.pop_front();
    ++expanded;

    if (!out[size_t(parity)]) {
      out[size_t(parity)] = examine(s, parity);
      ++found;
    }

    for (const Edge& e : nb.region.edges()) {
      AlphaString nxt = string_commutator(interaction_term(e), s);
      if (nxt.zero()) continue;
      int bit = class_bit(nb, e);
      int nparity = bit < 0 ? parity : parity ^ (1 << bit);
      std::string key = state_key(nb, nxt, nparity);
      if (visited.insert(std::move(key)).second)
        queue.emplace_back(std::move(nxt), nparity);
    }
  }
  return out;
}

}  // namespace

const std::array<ParityTransition, 32>& parity_table() { return kTable; }

const ParityTransition& parity_transition(const ParityVector& p) {
  static const std::array<const ParityTransition*, 32> by_index = [] {
    std::array<const ParityTransition*, 32> idx{};
    for (const ParityTransition& row : kTable) idx[size_t(row.parity.index())] = &row;
    return idx;
  }();
  return *by_index[size_t(p.index())];
}

bool multiplier_depends_on_bc_fg_only() {
  for (const ParityTransition& row : kTable) {
    int expected = 0;
    if (row.parity.bc != row.parity.fg) expected = row.parity.fg ? -2 : 2;
    if (row.multiplier != expected) return false;

    auto prod = [](Alpha lhs, Alpha rhs) { return mul_alpha(lhs, rhs).result; };
    Alpha x1 = A0, x2 = A0;
    if (row.parity.a != row.parity.d) x1 = prod(x1, A1);
    if (row.parity.bc) x1 = prod(x1, A2);
    if (row.parity.a != row.parity.e) x2 = prod(x2, A2);
    if (row.parity.fg) x2 = prod(x2, A1);
    if (row.op_x1 != x1 || row.op_x2 != x2) return false;
  }
  return true;
}

std::vector<TableCheck> verify_table() {
  auto hor = search(horizontal_neighborhood());
  auto ver = search(vertical_neighborhood());

  std::vector<TableCheck> out;
  out.reserve(32);
  for (const ParityTransition& row : kTable) {
    size_t i = size_t(row.parity.index());
    TableCheck chk;
    chk.parity = row.parity;
    chk.found_witness = hor[i].has_value() && ver[i].has_value();
    if (!hor[i])
      chk.detail = "no horizontal witness";
    else if (!ver[i])
      chk.detail = "no vertical witness";
    else {
      chk.pattern_ok = hor[i]->pattern_ok && ver[i]->pattern_ok;
      chk.after_ok = hor[i]->after_ok && ver[i]->after_ok;
      if (!hor[i]->detail.empty())
        chk.detail = "horizontal: " + hor[i]->detail;
      else if (!ver[i]->detail.empty())
        chk.detail = "vertical: " + ver[i]->detail;
    }
    out.push_back(std::move(chk));
  }
  return out;
}

}  // namespace latcomm
