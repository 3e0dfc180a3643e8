#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hibi {

/// Characteristic bit vector over an element universe of size <= 64.
/// Bit i corresponds to element i of the owning structure's input order.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

/// a is a subset of b.
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask bit(int i) { return Mask{1} << i; }

inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }

/// Visit set bits in ascending index order.
template <typename Fn>
inline void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    int i = std::countr_zero(m);
    fn(i);
    m &= m - 1;
  }
}

inline int lowest_bit(Mask m) { return std::countr_zero(m); }

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode callers are expected to handle carries
// its own type; `Defect` is reserved for internal cross-check disagreements,
// which indicate a bug rather than bad input.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CycleDetected : Error {
  explicit CycleDetected(const std::string& msg) : Error(msg) {}
};

struct UnknownLabel : Error {
  explicit UnknownLabel(const std::string& msg) : Error(msg) {}
};

struct SizeExceeded : Error {
  explicit SizeExceeded(const std::string& msg) : Error(msg) {}
};

struct NotAPartialOrder : Error {
  explicit NotAPartialOrder(const std::string& msg) : Error(msg) {}
};

struct NotALattice : Error {
  NotALattice(const std::string& msg, int a, int b)
      : Error(msg), witness_a(a), witness_b(b) {}
  int witness_a, witness_b;
};

struct NotACover : Error {
  explicit NotACover(const std::string& msg) : Error(msg) {}
};

struct NotMeetDistributive : Error {
  explicit NotMeetDistributive(const std::string& msg) : Error(msg) {}
};

struct NotPosetIdeal : Error {
  explicit NotPosetIdeal(const std::string& msg) : Error(msg) {}
};

struct MultipleComplements : Error {
  MultipleComplements(const std::string& msg, std::vector<int> cands)
      : Error(msg), candidates(std::move(cands)) {}
  std::vector<int> candidates;
};

struct IncompatibleVariables : Error {
  explicit IncompatibleVariables(const std::string& msg) : Error(msg) {}
};

struct DegreeCapExceeded : Error {
  explicit DegreeCapExceeded(const std::string& msg) : Error(msg) {}
};

/// An internal dual-route disagreement: two independent computations of the
/// same fact produced different answers. Never caused by user input.
struct Defect : Error {
  explicit Defect(const std::string& msg) : Error(msg) {}
};

}  // namespace hibi
