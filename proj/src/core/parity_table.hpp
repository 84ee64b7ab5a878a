#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/alpha.hpp"

namespace latcomm {

// Appearance parities of the five edge groups around a central edge a with
// endpoints x1, x2: a itself, the two other edges at x1 contributing alpha_2
// there (b, c), the remaining edge at x1 (d), the edge at x2 contributing
// alpha_2 there (e), and the two edges at x2 contributing alpha_1 (f, g).
struct ParityVector {
  bool a = false, bc = false, d = false, e = false, fg = false;  // true = odd

  int index() const {
    return int(a) | int(bc) << 1 | int(d) << 2 | int(e) << 3 | int(fg) << 4;
  }
  friend bool operator==(const ParityVector&, const ParityVector&) = default;
};

// One row of the transition table: the local pattern at x1/x2 forced by the
// parities, and the effect of one more commutator with h_a.  The after
// fields hold alpha_0 when the multiplier is 0 (the commutator vanishes).
struct ParityTransition {
  ParityVector parity;
  Alpha op_x1, op_x2;
  Alpha op_x1_after, op_x2_after;
  int multiplier;  // 0, +2 or -2
};

// All 32 rows, ordered by the number of odd entries.
const std::array<ParityTransition, 32>& parity_table();

// Exact row lookup.
const ParityTransition& parity_transition(const ParityVector& p);

// True when the multiplier column is the two-parity function: 0 when
// bc == fg, +2 when they differ with fg even, -2 when they differ with fg
// odd.  Also requires the stated patterns to equal the parity products.
bool multiplier_depends_on_bc_fg_only();

struct TableCheck {
  ParityVector parity;
  bool found_witness = false;  // a realizing commutator sequence exists
  bool pattern_ok = false;     // witness pattern at x1/x2 matches the row
  bool after_ok = false;       // one more h_a commutator matches the row
  std::string detail;

  bool pass() const { return found_witness && pattern_ok && after_ok; }
};

// Re-derives every row by breadth-first search over explicit commutator
// sequences around a horizontal and a vertical central edge (neither
// endpoint at the origin).  Each row must be witnessed in both orientations.
std::vector<TableCheck> verify_table();

}  // namespace latcomm
