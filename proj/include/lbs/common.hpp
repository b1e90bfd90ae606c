#pragma once

// Shared scalar type, error hierarchy and small utilities used by every
// module.  All exact arithmetic is done with GMP rationals; nothing in this
// project ever touches floating point.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbs {

using Rat = mpq_class;

// Element id inside a lattice (index into the canonical element list).
using Elem = int;

// Atom-support bitset.  Lattices are capped well below 64 atoms.
using Mask = std::uint64_t;

constexpr int kMaxAtoms = 60;
constexpr std::size_t kMaxElements = std::size_t(1) << 16;

// Input/argument problems.  CLI maps these to exit code 2.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Broken internal invariant.  CLI maps these to exit code 1.
class internal_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_arg(bool cond, const std::string& kind,
                      const std::string& msg) {
  if (!cond) throw validation_error(kind, msg);
}

inline void check_internal(bool cond, const std::string& msg) {
  if (!cond) throw internal_error(msg);
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline Mask bit(int i) { return Mask(1) << i; }

// Lexicographic order on the increasing sequences of set bits.  Used for the
// canonical element numbering: the lowest bit where two masks differ decides
// (belonging to the left mask means "smaller").
inline bool mask_lex_less(Mask a, Mask b) {
  if (a == b) return false;
  Mask d = a ^ b;
  Mask low = d & (~d + 1);
  return (a & low) != 0;
}

inline std::vector<int> mask_bits(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

}  // namespace lbs
