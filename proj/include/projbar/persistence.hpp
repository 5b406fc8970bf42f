#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "projbar/pushforward.hpp"

namespace projbar {

enum class ReductionStrategy {
  /// Plain left-to-right column reduction.
  Standard,
  /// Degree-descending reduction with clearing: once low(R_j) = i is
  /// known, column i is zeroed without being reduced.
  Twist,
};

struct PersistencePair {
  std::size_t creator;
  std::size_t destructor;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

enum class Role { PairedCreator, Destructor, EssentialCreator };

/// Outcome of reducing a boundary matrix; positions are schedule positions.
struct ReductionResult {
  std::vector<SparseColumn> reduced;
  /// Sorted by destructor position.
  std::vector<PersistencePair> pairs;
  /// Sorted ascending.
  std::vector<std::size_t> essentials;
  std::vector<Role> roles;
  /// Homological index of each position.
  std::vector<std::size_t> degrees;
};

ReductionResult reduce(const BoundaryMatrix& matrix, ReductionStrategy strategy = ReductionStrategy::Standard);

/// Bar (birth, death] in homological degree `degree`; an absent death is +∞
/// and the bar is then (birth, +∞).
struct Bar {
  std::size_t degree = 0;
  Rational birth;
  std::optional<Rational> death;

  bool infinite() const { return !death.has_value(); }
  friend bool operator==(const Bar&, const Bar&) = default;
};

/// Sorts by (degree, birth, death) with +∞ after every finite death.
bool operator<(const Bar& a, const Bar& b);

/// `<degree> (<birth>, <death>]`, or `<degree> (<birth>, inf)` for an unbounded bar.
std::string to_string(const Bar& bar);

/// Multiset of bars kept in canonical sorted order, so equality is
/// multiset equality.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars);

  const std::vector<Bar>& bars() const { return bars_; }
  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }
  auto begin() const { return bars_.begin(); }
  auto end() const { return bars_.end(); }

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<Bar> bars_;
};

std::string to_string(const Barcode& barcode);

/// Maps generator-level pairs to value-level bars. Pairs whose endpoints
/// carry equal values are dropped; essential creators yield unbounded bars.
Barcode bars_from_pairs(const ReductionResult& result, const FiltrationSchedule& schedule);

/// Projected barcode of the resolution along `form`, computed directly.
Barcode pointwise_projected_barcode(const FreeResolution& res, const LinearForm& form,
                                    ReductionStrategy strategy = ReductionStrategy::Standard);

/// Brute-force reference: rank invariant of the filtered complex on the
/// grid of distinct values plus inclusion-exclusion. Shares no code with
/// `reduce`. Throws DomainError above `max_generators`.
Barcode oracle_barcode(const FreeResolution& res, const LinearForm& form, std::size_t max_generators = 30);

}  // namespace projbar
