#include "projbar/persistence.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "projbar/errors.hpp"

namespace projbar {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// target += factor * source, both sorted by row.
void add_scaled(SparseColumn& target, const SparseColumn& source, Coeff factor, const PrimeField& f) {
  SparseColumn out;
  out.reserve(target.size() + source.size());
  auto t = target.begin();
  auto s = source.begin();
  while (t != target.end() || s != source.end()) {
    if (s == source.end() || (t != target.end() && t->row < s->row)) {
      out.push_back(*t++);
    } else if (t == target.end() || s->row < t->row) {
      out.push_back({s->row, f.mul(factor, s->coeff)});
      ++s;
    } else {
      Coeff c = f.add(t->coeff, f.mul(factor, s->coeff));
      if (c != 0) out.push_back({t->row, c});
      ++t;
      ++s;
    }
  }
  target.swap(out);
}

void reduce_column(std::vector<SparseColumn>& r, std::size_t j, const std::vector<std::size_t>& pivot_of_row,
                   const PrimeField& f) {
  SparseColumn& col = r[j];
  while (!col.empty()) {
    std::size_t k = pivot_of_row[col.back().row];
    if (k == kNone) return;
    const SparseColumn& pivot = r[k];
    // cancel the lowest entry: factor = -col.low / pivot.low
    Coeff factor = f.neg(f.mul(col.back().coeff, f.inv(pivot.back().coeff)));
    add_scaled(col, pivot, factor, f);
  }
}

}  // namespace

ReductionResult reduce(const BoundaryMatrix& matrix, ReductionStrategy strategy) {
  const std::size_t size = matrix.size();
  const PrimeField& f = matrix.field;
  ReductionResult out;
  out.reduced = matrix.columns;
  out.degrees.reserve(size);
  for (std::size_t j = 0; j < size; ++j) out.degrees.push_back(matrix.degree(j));

  std::vector<std::size_t> pivot_of_row(size, kNone);

  if (strategy == ReductionStrategy::Standard) {
    for (std::size_t j = 0; j < size; ++j) {
      reduce_column(out.reduced, j, pivot_of_row, f);
      if (!out.reduced[j].empty()) pivot_of_row[out.reduced[j].back().row] = j;
    }
  } else {
    std::size_t max_degree = 0;
    for (std::size_t d : out.degrees) max_degree = std::max(max_degree, d);
    std::vector<bool> cleared(size, false);
    for (std::size_t h = max_degree; h >= 1; --h) {
      for (std::size_t j = 0; j < size; ++j) {
        if (out.degrees[j] != h) continue;
        if (cleared[j]) {
          out.reduced[j].clear();
          continue;
        }
        reduce_column(out.reduced, j, pivot_of_row, f);
        if (!out.reduced[j].empty()) {
          std::size_t low = out.reduced[j].back().row;
          pivot_of_row[low] = j;
          cleared[low] = true;
        }
      }
    }
  }

  out.roles.assign(size, Role::EssentialCreator);
  for (std::size_t j = 0; j < size; ++j) {
    if (out.reduced[j].empty()) continue;
    std::size_t low = out.reduced[j].back().row;
    out.roles[j] = Role::Destructor;
    out.roles[low] = Role::PairedCreator;
    out.pairs.push_back({low, j});
  }
  for (std::size_t j = 0; j < size; ++j)
    if (out.roles[j] == Role::EssentialCreator) out.essentials.push_back(j);
  return out;
}

bool operator<(const Bar& a, const Bar& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.infinite() || b.infinite()) return !a.infinite() && b.infinite();
  return *a.death < *b.death;
}

std::string to_string(const Bar& bar) {
  std::string s = std::to_string(bar.degree) + " (" + bar.birth.to_string() + ", ";
  return bar.infinite() ? s + "inf)" : s + bar.death->to_string() + "]";
}

Barcode::Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {
  for (const Bar& b : bars_)
    if (b.death && !(b.birth < *b.death))
      throw InternalError("empty bar (" + b.birth.to_string() + ", " + b.death->to_string() + "]");
  std::sort(bars_.begin(), bars_.end());
}

std::string to_string(const Barcode& barcode) {
  std::string s;
  for (const Bar& b : barcode) s += to_string(b) + "\n";
  return s;
}

Barcode bars_from_pairs(const ReductionResult& result, const FiltrationSchedule& schedule) {
  std::vector<Bar> bars;
  for (const PersistencePair& p : result.pairs) {
    const Rational& birth = schedule.events[p.creator].value;
    const Rational& death = schedule.events[p.destructor].value;
    if (birth == death) continue;
    bars.push_back({schedule.events[p.creator].id.h, birth, death});
  }
  for (std::size_t c : result.essentials)
    bars.push_back({schedule.events[c].id.h, schedule.events[c].value, std::nullopt});
  return Barcode(std::move(bars));
}

Barcode pointwise_projected_barcode(const FreeResolution& res, const LinearForm& form, ReductionStrategy strategy) {
  FiltrationSchedule schedule = build_schedule(form, res);
  BoundaryMatrix matrix = assemble_boundary(schedule, res);
  return bars_from_pairs(reduce(matrix, strategy), schedule);
}

}  // namespace projbar
