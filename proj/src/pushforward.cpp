#include "projbar/pushforward.hpp"

#include <algorithm>
#include <numeric>

#include "projbar/errors.hpp"

namespace projbar {

LinearForm::LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("form not in int(γ°): no coefficients");
  for (const Rational& c : coeffs_)
    if (c.sign() <= 0) throw DomainError("form not in int(γ°): coefficient " + c.to_string() + " is not positive");
}

LinearForm LinearForm::from_slope(const Rational& b) {
  if (b.sign() <= 0 || b >= Rational(1))
    throw DomainError("form not relevant: slope " + b.to_string() + " is outside (0,1)");
  return LinearForm({Rational(1) - b, b});
}

Rational LinearForm::operator()(const Grade& g) const {
  if (g.size() != coeffs_.size())
    throw DomainError("dimension mismatch: form has " + std::to_string(coeffs_.size()) + " entries, grade has " +
                      std::to_string(g.size()));
  Rational sum;
  for (std::size_t k = 0; k < g.size(); ++k) sum += coeffs_[k] * g[k];
  return sum;
}

LinearForm LinearForm::scaled(const Rational& factor) const {
  std::vector<Rational> c = coeffs_;
  for (Rational& x : c) x *= factor;
  return LinearForm(std::move(c));
}

LinearForm normalize(std::span<const Rational> coeffs) {
  LinearForm checked({coeffs.begin(), coeffs.end()});
  Rational total = std::accumulate(coeffs.begin(), coeffs.end(), Rational{});
  return checked.scaled(Rational(1) / total);
}

LinearForm normalize(const LinearForm& form) { return normalize(std::span<const Rational>(form.coeffs())); }

std::vector<GeneratorValue> evaluate(const LinearForm& form, const FreeResolution& res) {
  if (form.dimension() != res.parameters())
    throw DomainError("dimension mismatch: form has " + std::to_string(form.dimension()) +
                      " entries, resolution has " + std::to_string(res.parameters()) + " parameters");
  std::vector<GeneratorValue> out;
  out.reserve(res.num_generators());
  for (std::size_t h = 0; h < res.num_terms(); ++h)
    for (std::size_t i = 0; i < res.term(h).size(); ++i) out.push_back({{h, i}, form(res.term(h)[i])});
  return out;
}

std::vector<std::size_t> FiltrationSchedule::order() const {
  std::vector<std::size_t> out;
  out.reserve(events.size());
  for (const Event& e : events) out.push_back(e.flat_id);
  return out;
}

FiltrationSchedule build_schedule(const LinearForm& form, const FreeResolution& res) {
  std::vector<GeneratorValue> values = evaluate(form, res);
  FiltrationSchedule s;
  s.events.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) s.events.push_back({values[k].id, k, std::move(values[k].value)});
  // flat ids already increase with (h, index), so they break the remaining ties
  std::sort(s.events.begin(), s.events.end(), [](const auto& a, const auto& b) {
    if (auto c = a.value <=> b.value; c != 0) return c < 0;
    return a.flat_id < b.flat_id;
  });
  for (std::size_t first = 0; first < s.events.size();) {
    std::size_t last = first + 1;
    while (last < s.events.size() && s.events[last].value == s.events[first].value) ++last;
    s.tie_groups.emplace_back(first, last);
    s.distinct_values.push_back(s.events[first].value);
    first = last;
  }
  return s;
}

BoundaryMatrix assemble_boundary(const FiltrationSchedule& schedule, const FreeResolution& res) {
  BoundaryMatrix m{res.field(), {}, {}, {}};
  const std::size_t size = schedule.size();
  if (size != res.num_generators()) throw InternalError("schedule does not match the resolution");

  std::vector<std::size_t> position_of(size);
  for (std::size_t pos = 0; pos < size; ++pos) position_of[schedule.events[pos].flat_id] = pos;

  m.columns.resize(size);
  m.ids.reserve(size);
  m.values.reserve(size);
  for (std::size_t pos = 0; pos < size; ++pos) {
    const auto& ev = schedule.events[pos];
    m.ids.push_back(ev.id);
    m.values.push_back(ev.value);
    if (ev.id.h == 0) continue;
    SparseColumn& col = m.columns[pos];
    for (const Entry& e : res.differential(ev.id.h).columns[ev.id.index]) {
      std::size_t row = position_of[res.flat_id({ev.id.h - 1, e.row})];
      if (row >= pos)
        throw InternalError("boundary entry at position " + std::to_string(row) + " is not earlier than column " +
                            std::to_string(pos) + "; input violates the grade condition");
      col.push_back({row, e.coeff});
    }
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }
  return m;
}

}  // namespace projbar
