// Reference barcode from the rank invariant. Deliberately independent of
// the column reduction in persistence.cpp: dense linear algebra over F_p,
// no schedule, no pairing.

#include <algorithm>

#include "projbar/errors.hpp"
#include "projbar/persistence.hpp"

namespace projbar {

namespace {

using Vec = std::vector<Coeff>;

std::size_t rank_of(std::vector<Vec> rows, const PrimeField& f) {
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Coeff inv = f.inv(rows[rank][c]);
    for (Coeff& x : rows[rank]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Coeff factor = rows[r][c];
      for (std::size_t k = 0; k < width; ++k) rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  return rank;
}

/// Basis of {x supported on `support` : D x = 0}, as vectors of length `width`.
std::vector<Vec> kernel_basis(const DifferentialMatrix* d, const std::vector<std::size_t>& support, std::size_t width,
                              const PrimeField& f) {
  std::vector<Vec> basis;
  if (d == nullptr) {
    for (std::size_t j : support) {
      Vec v(width, 0);
      v[j] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  // dense copy of the selected columns, rows = target generators
  const std::size_t k = support.size();
  std::vector<Vec> a(d->rows, Vec(k, 0));
  for (std::size_t c = 0; c < k; ++c)
    for (const Entry& e : d->columns[support[c]]) a[e.row][c] = e.coeff;

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rank], a[p]);
    Coeff inv = f.inv(a[rank][c]);
    for (Coeff& x : a[rank]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Coeff factor = a[r][c];
      for (std::size_t q = 0; q < k; ++q) a[r][q] = f.sub(a[r][q], f.mul(factor, a[rank][q]));
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(k, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    Vec v(width, 0);
    v[support[free]] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[support[pivot_cols[r]]] = f.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> image_vectors(const DifferentialMatrix& d, const std::vector<std::size_t>& support) {
  std::vector<Vec> out;
  for (std::size_t j : support) {
    Vec v(d.rows, 0);
    for (const Entry& e : d.columns[j]) v[e.row] = e.coeff;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Barcode oracle_barcode(const FreeResolution& res, const LinearForm& form, std::size_t max_generators) {
  if (res.num_generators() > max_generators)
    throw DomainError("oracle refuses " + std::to_string(res.num_generators()) + " generators (bound " +
                      std::to_string(max_generators) + ")");
  const PrimeField& f = res.field();
  std::vector<GeneratorValue> values = evaluate(form, res);

  std::vector<Rational> grid;
  for (const auto& gv : values) grid.push_back(gv.value);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const std::size_t m = grid.size();

  // value index (1-based grid position) of generator (h, i)
  std::vector<std::vector<std::size_t>> level(res.num_terms());
  for (const auto& gv : values) {
    auto it = std::lower_bound(grid.begin(), grid.end(), gv.value);
    level[gv.id.h].push_back(static_cast<std::size_t>(it - grid.begin()) + 1);
  }
  auto support_at = [&](std::size_t h, std::size_t r) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < level[h].size(); ++i)
      if (level[h][i] <= r) s.push_back(i);
    return s;
  };

  std::vector<Bar> bars;
  for (std::size_t h = 0; h < res.num_terms(); ++h) {
    const std::size_t width = res.term(h).size();
    const DifferentialMatrix* boundary_out = h > 0 ? &res.differential(h) : nullptr;
    const DifferentialMatrix* boundary_in = h + 1 < res.num_terms() ? &res.differential(h + 1) : nullptr;

    std::vector<std::vector<Vec>> cycles(m + 1), boundaries(m + 1);
    std::vector<std::size_t> boundary_rank(m + 1, 0);
    for (std::size_t r = 1; r <= m; ++r) {
      cycles[r] = kernel_basis(boundary_out, support_at(h, r), width, f);
      if (boundary_in) boundaries[r] = image_vectors(*boundary_in, support_at(h + 1, r));
      boundary_rank[r] = rank_of(boundaries[r], f);
    }

    // rk[r][s] = rank of H_h(C(r)) -> H_h(C(s)); zero outside 1 <= r <= s <= m
    std::vector<std::vector<long>> rk(m + 2, std::vector<long>(m + 2, 0));
    for (std::size_t r = 1; r <= m; ++r)
      for (std::size_t s = r; s <= m; ++s) {
        std::vector<Vec> stacked = boundaries[s];
        stacked.insert(stacked.end(), cycles[r].begin(), cycles[r].end());
        rk[r][s] = static_cast<long>(rank_of(std::move(stacked), f) - boundary_rank[s]);
      }

    for (std::size_t r = 1; r <= m; ++r)
      for (std::size_t s = r; s <= m; ++s) {
        long mult = rk[r][s] - rk[r - 1][s] - rk[r][s + 1] + rk[r - 1][s + 1];
        if (mult < 0) throw InternalError("negative bar multiplicity in rank inclusion-exclusion");
        for (long k = 0; k < mult; ++k) {
          if (s == m)
            bars.push_back({h, grid[r - 1], std::nullopt});
          else
            bars.push_back({h, grid[r - 1], grid[s]});
        }
      }
  }
  return Barcode(std::move(bars));
}

}  // namespace projbar
