#include <algorithm>
#include <random>

#include "doctest.h"

#include "projbar/errors.hpp"
#include "projbar/persistence.hpp"
#include "random_resolution.hpp"

using namespace projbar;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

Bar bar(std::size_t degree, Rational birth, std::optional<Rational> death) { return {degree, birth, death}; }

BoundaryMatrix matrix_of(std::vector<SparseColumn> columns, std::vector<std::size_t> degrees, std::uint32_t p = 2) {
  BoundaryMatrix m;
  m.field = PrimeField(p);
  m.columns = std::move(columns);
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    m.ids.push_back({degrees[k], k});
    m.values.push_back(q(static_cast<std::int64_t>(k)));
  }
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> flat_pairs(const ReductionResult& r, const FiltrationSchedule& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : r.pairs) out.emplace_back(s.events[p.creator].flat_id, s.events[p.destructor].flat_id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("reduce small matrices") {
  SUBCASE("1x1 zero matrix") {
    auto r = reduce(matrix_of({{}}, {0}));
    CHECK(r.pairs.empty());
    CHECK(r.essentials == std::vector<std::size_t>{0});
    CHECK(r.roles == std::vector<Role>{Role::EssentialCreator});
  }
  SUBCASE("2x2 with a single off-diagonal entry") {
    auto r = reduce(matrix_of({{}, {{0, 1}}}, {0, 1}));
    CHECK(r.pairs == std::vector<PersistencePair>{{0, 1}});
    CHECK(r.essentials.empty());
    CHECK(r.roles == std::vector<Role>{Role::PairedCreator, Role::Destructor});
  }
  SUBCASE("F_3 elimination scales the pivot") {
    // two edges onto the same vertex pair; the second reduces to zero only with coefficient 2
    auto m = matrix_of({{}, {}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}}, {0, 0, 1, 1}, 3);
    auto r = reduce(m);
    CHECK(r.pairs == std::vector<PersistencePair>{{1, 2}});
    CHECK(r.essentials == std::vector<std::size_t>{0, 3});
    CHECK(r.reduced[3].empty());
  }
}

TEST_CASE("reduction of the two-rectangle module at b = 1/4") {
  FreeResolution res = parse_scc2020(testing::kTwoRectanglesText);
  auto s = build_schedule(LinearForm::from_slope(q(1, 4)), res);
  auto r = reduce(assemble_boundary(s, res));
  CHECK(r.pairs.size() == 3);
  CHECK(r.essentials.empty());
  // (g0,g2) (g3,g4) (g1,g5) for the grade-consistent differential
  CHECK(flat_pairs(r, s) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 5}, {3, 4}});

  FreeResolution displayed = parse_scc2020(testing::kDisplayedMatrixText);
  auto ps = build_schedule(LinearForm::from_slope(q(1, 4)), displayed);
  auto pr = reduce(assemble_boundary(ps, displayed));
  CHECK(flat_pairs(pr, ps) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 4}, {3, 5}});
  CHECK(pr.essentials.empty());
}

TEST_CASE("barcodes of the two-rectangle module") {
  FreeResolution res = parse_scc2020(testing::kTwoRectanglesText);
  Barcode expected_quarter({bar(0, q(0), q(1, 4)), bar(1, q(3, 4), q(13, 16)), bar(1, q(3, 4), q(15, 16))});

  CHECK(pointwise_projected_barcode(res, LinearForm({q(3, 4), q(1, 4)})) == expected_quarter);
  CHECK(pointwise_projected_barcode(res, LinearForm({q(3, 4), q(1, 4)}), ReductionStrategy::Twist) ==
        expected_quarter);
  CHECK(oracle_barcode(res, LinearForm({q(3, 4), q(1, 4)})) == expected_quarter);
  CHECK(to_string(expected_quarter) == "0 (0, 1/4]\n1 (3/4, 13/16]\n1 (3/4, 15/16]\n");

  // the grade-consistent module at 9/40: (1,0) pairs with (1,3/4), (3/4,3/4) with (3/4,1)
  Barcode at_9_40 = pointwise_projected_barcode(res, LinearForm::from_slope(q(9, 40)));
  CHECK(at_9_40 == Barcode({bar(0, q(0), q(9, 40)), bar(1, q(3, 4), q(129, 160)), bar(1, q(31, 40), q(151, 160))}));
  CHECK(at_9_40 == oracle_barcode(res, LinearForm::from_slope(q(9, 40))));

  CHECK(pointwise_projected_barcode(res, LinearForm::from_slope(q(1, 2))) ==
        oracle_barcode(res, LinearForm::from_slope(q(1, 2))));
}

TEST_CASE("trivial barcodes") {
  FreeResolution single = parse_scc2020("scc2020\n2\n2\n1\n0 0 ;\n");
  Barcode b = pointwise_projected_barcode(single, LinearForm({q(2), q(5)}));
  CHECK(b == Barcode({bar(0, q(0), std::nullopt)}));
  CHECK(to_string(b) == "0 (0, inf)\n");
  CHECK(oracle_barcode(single, LinearForm({q(2), q(5)})) == b);

  FreeResolution shifted = parse_scc2020("scc2020\n2\n2\n1\n1 2 ;\n");
  CHECK(pointwise_projected_barcode(shifted, LinearForm({q(1, 2), q(1, 2)})) ==
        Barcode({bar(0, q(3, 2), std::nullopt)}));

  FreeResolution empty(2, PrimeField(2));
  CHECK(pointwise_projected_barcode(empty, LinearForm::from_slope(q(1, 3))).empty());
  CHECK(oracle_barcode(empty, LinearForm::from_slope(q(1, 3))).empty());
}

TEST_CASE("bar ordering and construction") {
  CHECK(bar(0, q(1), std::nullopt) < bar(1, q(0), q(1)));
  CHECK(bar(0, q(0), q(5)) < bar(0, q(0), std::nullopt));
  CHECK_FALSE(bar(0, q(0), std::nullopt) < bar(0, q(0), q(5)));
  CHECK_THROWS_AS(Barcode({bar(0, q(1), q(1))}), InternalError);
  CHECK(to_string(bar(2, q(-1, 3), q(7))) == "2 (-1/3, 7]");
}

TEST_CASE("oracle refuses large inputs") {
  std::mt19937_64 rng(1);
  FreeResolution res = testing::random_resolution(rng, {2, 12, 2, 3, 4});
  while (res.num_generators() < 5) res = testing::random_resolution(rng, {2, 12, 2, 3, 4});
  CHECK_THROWS_AS(oracle_barcode(res, LinearForm::from_slope(q(1, 2)), 4), DomainError);
}

TEST_CASE("property: pointwise reduction agrees with the rank-invariant oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    testing::RandomSpec spec;
    spec.field = trial % 2 ? 3 : 2;
    spec.max_terms = 3 + trial % 2;
    if (trial % 7 == 0) spec.parameters = 3;
    FreeResolution res = testing::random_resolution(rng, spec);
    LinearForm u = testing::random_form(rng, res);
    INFO("trial ", trial, "\n", serialize_scc2020(res));
    CHECK(pointwise_projected_barcode(res, u) == oracle_barcode(res, u));
  }
}

TEST_CASE("property: conservation, distinct lows, strategy independence") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    testing::RandomSpec spec;
    spec.field = trial % 2 ? 3 : 2;
    spec.max_generators = 12;
    spec.max_terms = 4;
    FreeResolution res = testing::random_resolution(rng, spec);
    auto s = build_schedule(testing::random_form(rng, res), res);
    auto m = assemble_boundary(s, res);
    auto standard = reduce(m, ReductionStrategy::Standard);
    auto twist = reduce(m, ReductionStrategy::Twist);

    CHECK(2 * standard.pairs.size() + standard.essentials.size() == res.num_generators());
    CHECK(standard.pairs == twist.pairs);
    CHECK(standard.essentials == twist.essentials);
    CHECK(standard.roles == twist.roles);

    std::vector<std::size_t> lows;
    for (const auto& col : standard.reduced)
      if (!col.empty()) lows.push_back(col.back().row);
    std::sort(lows.begin(), lows.end());
    CHECK(std::adjacent_find(lows.begin(), lows.end()) == lows.end());
    for (const auto& p : standard.pairs) CHECK(standard.degrees[p.creator] + 1 == standard.degrees[p.destructor]);
  }
}

TEST_CASE("property: scaling the form scales every bar") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    FreeResolution res = testing::random_resolution(rng, {2, 10, trial % 2 ? 3u : 2u, 4, 4});
    LinearForm u = testing::random_form(rng, res);
    Rational lambda = testing::random_between(rng, q(0), q(9));
    std::vector<Bar> expected;
    for (const Bar& b : pointwise_projected_barcode(res, u))
      expected.push_back({b.degree, b.birth * lambda,
                          b.death ? std::optional<Rational>(*b.death * lambda) : std::nullopt});
    CHECK(pointwise_projected_barcode(res, u.scaled(lambda)) == Barcode(expected));
  }
}

TEST_CASE("property: permuting equal-grade generators of one term leaves the barcode unchanged") {
  std::mt19937_64 rng(17);
  int exercised = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // spread 1 forces many repeated grades
    FreeResolution res = testing::random_resolution(rng, {2, 10, trial % 2 ? 3u : 2u, 3, 1});
    std::size_t h = std::uniform_int_distribution<std::size_t>(0, res.num_terms() - 1)(rng);
    const auto& term = res.term(h);
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < term.size() && a == b; ++i)
      for (std::size_t j = i + 1; j < term.size(); ++j)
        if (term[i] == term[j]) {
          a = i;
          b = j;
          break;
        }
    if (a == b) continue;
    ++exercised;

    auto swap_index = [&](std::size_t k) { return k == a ? b : k == b ? a : k; };
    std::vector<std::vector<Grade>> terms;
    for (std::size_t t = 0; t < res.num_terms(); ++t) terms.push_back(res.term(t));
    std::swap(terms[h][a], terms[h][b]);
    std::vector<DifferentialMatrix> diffs;
    for (std::size_t t = 1; t < res.num_terms(); ++t) {
      DifferentialMatrix d = res.differential(t);
      if (t == h) std::swap(d.columns[a], d.columns[b]);
      if (t == h + 1)
        for (auto& col : d.columns) {
          for (auto& e : col) e.row = swap_index(e.row);
          std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
        }
      diffs.push_back(std::move(d));
    }
    FreeResolution swapped(res.parameters(), res.field(), std::move(terms), std::move(diffs));
    LinearForm u = testing::random_form(rng, res);
    CHECK(pointwise_projected_barcode(res, u) == pointwise_projected_barcode(swapped, u));
  }
  CHECK(exercised > 50);
}
