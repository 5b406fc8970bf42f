#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "projbar/persistence.hpp"

namespace projbar {

/// Slopes b in (0,1) at which two generators swap order under the form
/// (1 - b, b): b = |a| / (|a| + |c|) for every generator difference (a, c)
/// with a·c < 0. Sorted, deduplicated. Requires n = 2.
std::vector<Rational> critical_values(const FreeResolution& res);

/// A cell of the 1-D arrangement of critical slopes. Open face k is the
/// interval (c_k, c_{k+1}) with sentinels c_0 = 0 and c_{K+1} = 1; vertex k
/// is the singleton {c_{k+1}} (both 0-based).
struct Face {
  enum class Kind { Open, Vertex };
  Kind kind = Kind::Open;
  std::size_t index = 0;
  Rational lo;
  Rational hi;
  friend bool operator==(const Face&, const Face&) = default;
};

struct TemplatePair {
  std::size_t creator;
  std::size_t destructor;
  std::size_t degree;
  friend bool operator==(const TemplatePair&, const TemplatePair&) = default;
};

struct TemplateEssential {
  std::size_t creator;
  std::size_t degree;
  friend bool operator==(const TemplateEssential&, const TemplateEssential&) = default;
};

/// Combinatorial barcode for one open face, in flat generator ids.
struct BarcodeTemplate {
  Rational lo;
  Rational hi;
  std::vector<std::size_t> order;
  std::vector<TemplatePair> pairs;
  std::vector<TemplateEssential> essentials;
  friend bool operator==(const BarcodeTemplate&, const BarcodeTemplate&) = default;
};

struct TemplateGenerator {
  std::size_t h;
  Grade grade;
  friend bool operator==(const TemplateGenerator&, const TemplateGenerator&) = default;
};

/// Critical slopes plus one barcode template per open face. Immutable after
/// construction; safe for concurrent queries.
struct ProjectedBarcodeTemplate {
  std::size_t parameters = 2;
  std::uint32_t field = 2;
  std::vector<TemplateGenerator> generators;
  std::vector<Rational> critical;
  std::vector<BarcodeTemplate> faces;

  std::size_t num_faces() const { return faces.size(); }
  friend bool operator==(const ProjectedBarcodeTemplate&, const ProjectedBarcodeTemplate&) = default;
};

/// One reduction per open face at its midpoint sample. `threads` = 0 uses
/// the hardware concurrency.
ProjectedBarcodeTemplate build_template(const FreeResolution& res, unsigned threads = 1);

/// Deterministic interior sample of open face `k`.
Rational face_sample(const std::vector<Rational>& critical, std::size_t k);

/// Binary search; throws DomainError("form not relevant") unless 0 < b < 1.
Face locate(const ProjectedBarcodeTemplate& pbt, const Rational& b);

/// Substitutes u = (1 - b, b) into the template of open face `face`,
/// dropping bars that collapse to a point.
Barcode evaluate_face(const ProjectedBarcodeTemplate& pbt, std::size_t face, const Rational& b);

/// Projected barcode at slope b without any reduction. Vertices use the
/// template of the open face to their left.
Barcode query(const ProjectedBarcodeTemplate& pbt, const Rational& b);

std::string serialize_pbt(const ProjectedBarcodeTemplate& pbt);
/// Throws ParseError describing the offending location.
ProjectedBarcodeTemplate deserialize_pbt(std::string_view text);

ProjectedBarcodeTemplate load_pbt(const std::string& path);

}  // namespace projbar
