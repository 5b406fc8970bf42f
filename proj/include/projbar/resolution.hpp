#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projbar/field.hpp"
#include "projbar/rational.hpp"

namespace projbar {

/// Position of a generator in parameter space.
using Grade = std::vector<Rational>;

/// Componentwise order on grades of equal length.
bool grade_leq(const Grade& a, const Grade& b);

std::string grade_to_string(const Grade& g);

/// A generator addressed by homological index and position within its term.
struct GeneratorId {
  std::size_t h = 0;
  std::size_t index = 0;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

struct Entry {
  std::size_t row = 0;
  Coeff coeff = 0;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Nonzero entries sorted by strictly increasing row.
using SparseColumn = std::vector<Entry>;

struct DifferentialMatrix {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;
  friend bool operator==(const DifferentialMatrix&, const DifferentialMatrix&) = default;
};

/// Finite free resolution (or any finite complex of free modules) over
/// R^n with coefficients in F_p. Term h holds the generators in
/// homological index h; `differential(h)` maps term h to term h-1.
/// Immutable once constructed.
class FreeResolution {
 public:
  FreeResolution(std::size_t parameters, PrimeField field);
  /// `diffs[h - 1]` is D_h. Throws DomainError on shape mismatch.
  FreeResolution(std::size_t parameters, PrimeField field, std::vector<std::vector<Grade>> terms,
                 std::vector<DifferentialMatrix> diffs);

  std::size_t parameters() const { return n_; }
  const PrimeField& field() const { return field_; }
  /// Number of terms (ℓ + 1), zero for the empty resolution.
  std::size_t num_terms() const { return terms_.size(); }
  const std::vector<Grade>& term(std::size_t h) const { return terms_.at(h); }
  /// D_h for 1 <= h < num_terms().
  const DifferentialMatrix& differential(std::size_t h) const { return diffs_.at(h - 1); }

  std::size_t num_generators() const { return offsets_.back(); }
  /// Flat numbering: term 0 first, then term 1, ..., input order within a term.
  std::size_t flat_id(GeneratorId g) const { return offsets_.at(g.h) + g.index; }
  GeneratorId generator(std::size_t flat_id) const;
  const Grade& grade(GeneratorId g) const { return terms_.at(g.h).at(g.index); }

  friend bool operator==(const FreeResolution&, const FreeResolution&) = default;

 private:
  std::size_t n_;
  PrimeField field_;
  std::vector<std::vector<Grade>> terms_;
  std::vector<DifferentialMatrix> diffs_;
  std::vector<std::size_t> offsets_;
};

struct ValidationIssue {
  enum class Kind { Composition, Grade };
  Kind kind;
  /// For Grade: the source term of the offending D_h entry. For
  /// Composition: the h of D_{h-1}·D_h.
  std::size_t h;
  std::size_t row;
  std::size_t column;
  std::string message;
};

/// Empty iff d∘d = 0 and every nonzero entry respects the grade order.
std::vector<ValidationIssue> validate(const FreeResolution& res);

/// Reads the scc2020-style text format. `field_override`, when given,
/// replaces the characteristic declared in the file before coefficients
/// are reduced.
FreeResolution parse_scc2020(std::istream& in, std::optional<std::uint32_t> field_override = {});
FreeResolution parse_scc2020(std::string_view text, std::optional<std::uint32_t> field_override = {});
FreeResolution load_scc2020(const std::string& path, std::optional<std::uint32_t> field_override = {});

std::string serialize_scc2020(const FreeResolution& res);

/// The open conic complex associated with a resolution: generator (h, i)
/// sits in cochain degree -h, same grade, same differentials. Non-owning.
class ConicComplexView {
 public:
  struct Generator {
    GeneratorId id;
    int cochain_degree;
    const Grade* grade;
  };

  explicit ConicComplexView(const FreeResolution& res) : res_(&res) {}

  std::size_t size() const { return res_->num_generators(); }
  bool empty() const { return size() == 0; }
  Generator generator(std::size_t flat_id) const;
  std::vector<Generator> generators() const;
  int cochain_degree(GeneratorId g) const { return -static_cast<int>(g.h); }
  /// Number of generators of the multiset J sitting at `grade`.
  std::size_t multiplicity(const Grade& grade) const;
  /// Differential out of cochain degree `degree` (i.e. D_{-degree}); `degree` <= -1.
  const DifferentialMatrix& differential(int degree) const;
  const FreeResolution& resolution() const { return *res_; }

 private:
  const FreeResolution* res_;
};

ConicComplexView as_conic_complex(const FreeResolution& res);

}  // namespace projbar
