#include "core/sequences.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/errors.hpp"

namespace latcomm {

namespace {

bool edge_fits_dims(const Edge& e, int d) {
  if (e.l1_dist() != 1) return false;
  if (d <= 2 && (e.a.z != 0 || e.b.z != 0)) return false;
  if (d == 1 && (e.a.y != 0 || e.b.y != 0)) return false;
  return true;
}

void check_history_args(int n, int d, const EnumerationLimits& lim) {
  if (d != 1 && d != 2) throw std::invalid_argument("d must be 1 or 2");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (n > lim.history_cap(d))
    throw budget_error("history length " + std::to_string(n) +
                           " exceeds cap " + std::to_string(lim.history_cap(d)),
                       lim.history_cap(d));
}

}  // namespace

SequenceKind classify_sequence(const EdgeSequence& seq, int d) {
  for (const Edge& e : seq)
    if (!edge_fits_dims(e, d)) return SequenceKind::Invalid;

  LatticeAnimal animal(d);
  bool history = true;
  for (const Edge& e : seq) {
    bool a_in = animal.contains(e.a), b_in = animal.contains(e.b);
    if (!a_in && !b_in) return SequenceKind::Invalid;
    if (a_in && b_in)
      history = false;  // interior edge: still a commutator sequence
    else
      animal.push(a_in ? e.b : e.a);
  }
  return history ? SequenceKind::History : SequenceKind::CommutatorSequence;
}

std::vector<Site> animal_of(const EdgeSequence& seq, int d) {
  if (classify_sequence(seq, d) == SequenceKind::Invalid)
    throw std::invalid_argument("animal_of: not a commutator sequence");
  std::vector<Site> sites{kOrigin};
  for (const Edge& e : seq) {
    sites.push_back(e.a);
    sites.push_back(e.b);
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

namespace {

struct HistoryWalker {
  int n;
  int d;
  const Region* within;
  const std::function<void(const EdgeSequence&)>* visit;
  HistoryStats stats;
  EdgeSequence seq;

  void run() {
    stats.counts.assign(n + 1, 0);
    stats.perimeter_sums.assign(n + 1, 0);
    LatticeAnimal animal(d);
    descend(animal, 0);
  }

  void descend(LatticeAnimal& animal, int depth) {
    stats.counts[depth] += 1;
    stats.perimeter_sums[depth] += perimeter_within(animal);
    if (depth == n) {
      if (visit && *visit) (*visit)(seq);
      return;
    }
    for (const Edge& e : animal.perimeter_edges()) {
      if (within && !(within->contains(e.a) && within->contains(e.b)))
        continue;
      Site grown = animal.contains(e.a) ? e.b : e.a;
      seq.push_back(e);
      animal.push(grown);
      descend(animal, depth + 1);
      animal.pop();
      seq.pop_back();
    }
  }

  int perimeter_within(const LatticeAnimal& animal) const {
    if (!within) return animal.perimeter_edge_count();
    int c = 0;
    for (const Edge& e : animal.perimeter_edges())
      c += within->contains(e.a) && within->contains(e.b);
    return c;
  }
};

}  // namespace

HistoryStats history_stats(int n, int d, const EnumerationLimits& lim) {
  check_history_args(n, d, lim);
  HistoryWalker w{n, d, nullptr, nullptr, {}, {}};
  w.run();
  return w.stats;
}

BigInt enumerate_histories(int n, int d,
                           const std::function<void(const EdgeSequence&)>& visit,
                           const EnumerationLimits& lim, const Region* within) {
  check_history_args(n, d, lim);
  HistoryWalker w{n, d, within, &visit, {}, {}};
  w.run();
  return w.stats.counts[n];
}

std::vector<BigRat> average_perimeter(int n, int d,
                                      const EnumerationLimits& lim) {
  if (n < 1) throw std::invalid_argument("average_perimeter: n must be >= 1");
  check_history_args(n - 1, d, lim);
  HistoryStats st = history_stats(n - 1, d, lim);
  std::vector<BigRat> pbar;
  pbar.reserve(n);
  for (int i = 0; i < n; ++i)
    pbar.emplace_back(BigRat(st.perimeter_sums[i]) / BigRat(st.counts[i]));
  return pbar;
}

BigInt CountTable::total() const {
  BigInt t = 0;
  for (const auto& [j, x] : by_animal_size) t += x;
  return t;
}

nlohmann::ordered_json CountTable::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["d"] = d;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [size, x] : by_animal_size) counts[std::to_string(size)] = x.str();
  j["X"] = counts;
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const BigRat& p : pbar) ps.push_back(rat_str(p));
  j["pbar"] = ps;
  return j;
}

CountTable CountTable::from_json(const nlohmann::ordered_json& j) {
  CountTable t;
  t.n = j.at("n").get<int>();
  t.d = j.at("d").get<int>();
  for (const auto& [key, val] : j.at("X").items())
    t.by_animal_size[std::stoi(key)] = BigInt(val.get<std::string>());
  for (const auto& val : j.at("pbar")) {
    std::string s = val.get<std::string>();
    auto slash = s.find('/');
    t.pbar.emplace_back(BigRat(BigInt(s.substr(0, slash)),
                               BigInt(s.substr(slash + 1))));
  }
  return t;
}

namespace {

struct SequenceWalker {
  int n;
  int d;
  const Region* within;
  const std::function<void(const EdgeSequence&)>* visit;
  std::map<int, BigInt> by_size;
  BigInt total = 0;
  EdgeSequence seq;

  void descend(LatticeAnimal& animal, int depth) {
    if (depth == n) {
      by_size[int(animal.size())] += 1;
      total += 1;
      if (visit && *visit) (*visit)(seq);
      return;
    }
    for (const Edge& e : animal.incident_edges()) {
      if (within && !(within->contains(e.a) && within->contains(e.b)))
        continue;
      bool grows = !(animal.contains(e.a) && animal.contains(e.b));
      seq.push_back(e);
      if (grows) animal.push(animal.contains(e.a) ? e.b : e.a);
      descend(animal, depth + 1);
      if (grows) animal.pop();
      seq.pop_back();
    }
  }
};

void check_sequence_args(int n, int d, const EnumerationLimits& lim) {
  if (d != 1 && d != 2) throw std::invalid_argument("d must be 1 or 2");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (n > lim.sequence_cap(d))
    throw budget_error("sequence length " + std::to_string(n) +
                           " exceeds cap " + std::to_string(lim.sequence_cap(d)),
                       lim.sequence_cap(d));
}

}  // namespace

CountTable count_sequences_by_size(int n, int d, const EnumerationLimits& lim) {
  check_sequence_args(n, d, lim);
  SequenceWalker w{n, d, nullptr, nullptr, {}, 0, {}};
  LatticeAnimal animal(d);
  w.descend(animal, 0);
  CountTable t;
  t.n = n;
  t.d = d;
  t.by_animal_size = std::move(w.by_size);
  if (n >= 1) t.pbar = average_perimeter(n, d, lim);
  return t;
}

BigInt enumerate_commutator_sequences(
    int n, int d, const std::function<void(const EdgeSequence&)>& visit,
    const EnumerationLimits& lim, const Region* within) {
  check_sequence_args(n, d, lim);
  SequenceWalker w{n, d, within, &visit, {}, 0, {}};
  LatticeAnimal animal(d);
  w.descend(animal, 0);
  return w.total;
}

}  // namespace latcomm
