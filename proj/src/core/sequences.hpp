#pragma once

#include <functional>
#include <map>
#include <vector>

#include "json.hpp"

#include "core/animal.hpp"
#include "core/bigint.hpp"
#include "core/geometry.hpp"

namespace latcomm {

// A commutator sequence starts with an edge touching the origin and every
// later edge touches a previously visited site.  A history additionally adds
// a new site with every edge (each edge is a perimeter edge of the animal
// built so far), so a length-n history has n+1 sites and n distinct edges.
enum class SequenceKind { Invalid, CommutatorSequence, History };

SequenceKind classify_sequence(const EdgeSequence& seq, int d);

// Distinct sites touched by the sequence, origin included, sorted.
// Throws std::invalid_argument for invalid sequences.
std::vector<Site> animal_of(const EdgeSequence& seq, int d);

struct EnumerationLimits {
  int history_cap_d1 = 16;
  int history_cap_d2 = 8;
  int sequence_cap_d1 = 10;
  int sequence_cap_d2 = 6;

  int history_cap(int d) const { return d == 1 ? history_cap_d1 : history_cap_d2; }
  int sequence_cap(int d) const { return d == 1 ? sequence_cap_d1 : sequence_cap_d2; }
};

// Per-length history statistics: counts[l] histories of length l and the sum
// of perimeter edge counts of their animals, l = 0..n.  counts[l+1] equals
// perimeter_sums[l] (every history extends by one perimeter edge).
struct HistoryStats {
  std::vector<BigInt> counts;
  std::vector<BigInt> perimeter_sums;
};

HistoryStats history_stats(int n, int d, const EnumerationLimits& lim = {});

// Visits every history of length n over the infinite lattice in
// lexicographic edge order and returns how many there are.  The visitor may
// be empty.  An optional region restricts all edges to lie inside it.
BigInt enumerate_histories(int n, int d,
                           const std::function<void(const EdgeSequence&)>& visit,
                           const EnumerationLimits& lim = {},
                           const Region* within = nullptr);

// Average perimeter pbar_1..pbar_n over histories: pbar_i is the mean
// perimeter edge count of animals built by histories of length i-1 (exact
// rational; pbar_1 = 2d).
std::vector<BigRat> average_perimeter(int n, int d,
                                      const EnumerationLimits& lim = {});

struct CountTable {
  int n = 0;
  int d = 0;
  std::map<int, BigInt> by_animal_size;  // j -> X^n_j, zero entries omitted
  std::vector<BigRat> pbar;              // pbar_1..pbar_n

  BigInt total() const;
  nlohmann::ordered_json to_json() const;
  static CountTable from_json(const nlohmann::ordered_json& j);
};

// X^n_j for all j by exhaustive enumeration of commutator sequences.
CountTable count_sequences_by_size(int n, int d,
                                   const EnumerationLimits& lim = {});

// Enumerates commutator sequences of length n (infinite lattice, or edges
// restricted to a region) and feeds each to the visitor; returns the count.
BigInt enumerate_commutator_sequences(
    int n, int d, const std::function<void(const EdgeSequence&)>& visit,
    const EnumerationLimits& lim = {}, const Region* within = nullptr);

}  // namespace latcomm
