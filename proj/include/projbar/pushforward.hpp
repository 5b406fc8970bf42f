#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "projbar/resolution.hpp"

namespace projbar {

/// Strictly positive covector on R^n, i.e. a form in the interior of the
/// polar cone of the positive orthant. Not necessarily of unit 1-norm.
class LinearForm {
 public:
  /// Throws DomainError("form not in int(γ°)") unless every entry is > 0.
  explicit LinearForm(std::vector<Rational> coeffs);

  /// The form (1 - b, b) for a slope 0 < b < 1.
  static LinearForm from_slope(const Rational& b);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t dimension() const { return coeffs_.size(); }
  Rational operator()(const Grade& g) const;
  /// Multiplies every coefficient by `factor` > 0.
  LinearForm scaled(const Rational& factor) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Divides by the coefficient sum so the result has unit 1-norm.
LinearForm normalize(std::span<const Rational> coeffs);
LinearForm normalize(const LinearForm& form);

struct GeneratorValue {
  GeneratorId id;
  Rational value;
};

/// u(g) for every generator, in flat id order.
std::vector<GeneratorValue> evaluate(const LinearForm& form, const FreeResolution& res);

/// Insertion order of generators induced by a linear form: value
/// ascending, ties broken by homological index ascending (targets of the
/// differential before their sources), then by input order.
struct FiltrationSchedule {
  struct Event {
    GeneratorId id;
    std::size_t flat_id;
    Rational value;
  };

  std::vector<Event> events;
  /// Half-open [first, last) ranges of `events` with equal value.
  std::vector<std::pair<std::size_t, std::size_t>> tie_groups;
  std::vector<Rational> distinct_values;

  std::size_t size() const { return events.size(); }
  /// Flat generator ids in schedule order.
  std::vector<std::size_t> order() const;
};

FiltrationSchedule build_schedule(const LinearForm& form, const FreeResolution& res);

/// Square filtered boundary matrix over F_p indexed by schedule position.
/// Column j holds the differential of the generator inserted at step j.
struct BoundaryMatrix {
  PrimeField field{2};
  std::vector<SparseColumn> columns;
  std::vector<GeneratorId> ids;
  std::vector<Rational> values;

  std::size_t size() const { return columns.size(); }
  std::size_t degree(std::size_t position) const { return ids[position].h; }
};

/// Throws InternalError if an entry would point at a later position.
BoundaryMatrix assemble_boundary(const FiltrationSchedule& schedule, const FreeResolution& res);

}  // namespace projbar
