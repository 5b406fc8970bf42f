#include "projbar/resolution.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "projbar/errors.hpp"

namespace projbar {

bool grade_leq(const Grade& a, const Grade& b) {
  if (a.size() != b.size()) throw DomainError("grades of different dimension compared");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (b[k] < a[k]) return false;
  return true;
}

std::string grade_to_string(const Grade& g) {
  std::string s = "(";
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) s += ",";
    s += g[k].to_string();
  }
  return s + ")";
}

FreeResolution::FreeResolution(std::size_t parameters, PrimeField field)
    : n_(parameters), field_(field), offsets_{0} {
  if (parameters == 0) throw DomainError("parameter count must be at least 1");
}

FreeResolution::FreeResolution(std::size_t parameters, PrimeField field, std::vector<std::vector<Grade>> terms,
                               std::vector<DifferentialMatrix> diffs)
    : n_(parameters), field_(field), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  if (n_ == 0) throw DomainError("parameter count must be at least 1");
  std::size_t expected_diffs = terms_.empty() ? 0 : terms_.size() - 1;
  if (diffs_.size() != expected_diffs)
    throw DomainError("dimension mismatch: " + std::to_string(terms_.size()) + " terms need " +
                      std::to_string(expected_diffs) + " differentials, got " + std::to_string(diffs_.size()));
  for (std::size_t h = 0; h < terms_.size(); ++h)
    for (const Grade& g : terms_[h])
      if (g.size() != n_)
        throw DomainError("dimension mismatch: grade " + grade_to_string(g) + " in term " + std::to_string(h) +
                          " does not have " + std::to_string(n_) + " coordinates");
  for (std::size_t h = 1; h < terms_.size(); ++h) {
    DifferentialMatrix& d = diffs_[h - 1];
    if (d.rows != terms_[h - 1].size() || d.columns.size() != terms_[h].size())
      throw DomainError("dimension mismatch: D_" + std::to_string(h) + " is " + std::to_string(d.rows) + "x" +
                        std::to_string(d.columns.size()) + ", expected " + std::to_string(terms_[h - 1].size()) +
                        "x" + std::to_string(terms_[h].size()));
    for (SparseColumn& col : d.columns) {
      for (Entry& e : col) {
        if (e.row >= d.rows)
          throw DomainError("dimension mismatch: row index " + std::to_string(e.row) + " out of range in D_" +
                            std::to_string(h));
        e.coeff %= field_.characteristic();
      }
      std::erase_if(col, [](const Entry& e) { return e.coeff == 0; });
      std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
      if (std::adjacent_find(col.begin(), col.end(), [](const Entry& a, const Entry& b) {
            return a.row == b.row;
          }) != col.end())
        throw DomainError("duplicate row index in a column of D_" + std::to_string(h));
    }
  }
  offsets_.assign(1, 0);
  for (const auto& t : terms_) offsets_.push_back(offsets_.back() + t.size());
}

GeneratorId FreeResolution::generator(std::size_t flat_id) const {
  if (flat_id >= num_generators()) throw std::out_of_range("generator id out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat_id);
  std::size_t h = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {h, flat_id - offsets_[h]};
}

std::vector<ValidationIssue> validate(const FreeResolution& res) {
  std::vector<ValidationIssue> issues;
  const PrimeField& f = res.field();

  for (std::size_t h = 1; h < res.num_terms(); ++h) {
    const DifferentialMatrix& d = res.differential(h);
    for (std::size_t j = 0; j < d.columns.size(); ++j) {
      const Grade& source = res.term(h)[j];
      for (const Entry& e : d.columns[j]) {
        const Grade& target = res.term(h - 1)[e.row];
        if (!grade_leq(target, source))
          issues.push_back({ValidationIssue::Kind::Grade, h, e.row, j,
                            "grade condition violated in D_" + std::to_string(h) + " at row " +
                                std::to_string(e.row) + ", column " + std::to_string(j) + ": " +
                                grade_to_string(target) + " is not <= " + grade_to_string(source)});
      }
    }
  }

  for (std::size_t h = 2; h < res.num_terms(); ++h) {
    const DifferentialMatrix& lower = res.differential(h - 1);
    const DifferentialMatrix& upper = res.differential(h);
    for (std::size_t j = 0; j < upper.columns.size(); ++j) {
      std::vector<Coeff> acc(lower.rows, 0);
      for (const Entry& mid : upper.columns[j])
        for (const Entry& e : lower.columns[mid.row]) acc[e.row] = f.add(acc[e.row], f.mul(e.coeff, mid.coeff));
      for (std::size_t r = 0; r < acc.size(); ++r)
        if (acc[r] != 0)
          issues.push_back({ValidationIssue::Kind::Composition, h, r, j,
                            "composition nonzero at column " + std::to_string(j) + " of term " +
                                std::to_string(h) + ", row " + std::to_string(r) + " of term " +
                                std::to_string(h - 2) + " (D_" + std::to_string(h - 1) + "*D_" +
                                std::to_string(h) + ")"});
    }
  }
  return issues;
}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_count(const Line& line, const std::string& token, const char* what) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string(what) + " out of range: '" + token + "'");
  }
}

std::int64_t parse_signed(const Line& line, const std::string& token) {
  std::size_t pos = 0;
  try {
    long long v = std::stoll(token, &pos);
    if (pos == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line.number, "bad coefficient '" + token + "'");
}

}  // namespace

FreeResolution parse_scc2020(std::istream& in, std::optional<std::uint32_t> field_override) {
  std::vector<Line> lines;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back({number, raw});
  }

  std::size_t cursor = 0;
  auto next = [&](const char* what) -> const Line& {
    if (cursor >= lines.size())
      throw ParseError(0, std::string("unexpected end of input, expected ") + what);
    return lines[cursor++];
  };

  {
    const Line& l = next("header");
    auto toks = split_ws(l.text);
    if (toks.size() != 1 || toks[0] != "scc2020") throw ParseError(l.number, "expected header 'scc2020'");
  }
  std::size_t n;
  {
    const Line& l = next("parameter count");
    auto toks = split_ws(l.text);
    if (toks.size() != 1) throw ParseError(l.number, "expected a single parameter count");
    n = parse_count(l, toks[0], "parameter count");
    if (n == 0) throw ParseError(l.number, "parameter count must be at least 1");
  }
  std::uint64_t p;
  {
    const Line& l = next("field characteristic");
    auto toks = split_ws(l.text);
    if (toks.size() != 1) throw ParseError(l.number, "expected a single field characteristic");
    p = parse_count(l, toks[0], "field characteristic");
    if (!field_override && (p >= (1ull << 31) || !is_prime(p)))
      throw ParseError(l.number, "field characteristic " + toks[0] + " is not prime");
  }
  PrimeField field(field_override ? *field_override : static_cast<std::uint32_t>(p));

  std::vector<std::size_t> sizes;  // highest homological index first
  {
    const Line& l = next("block sizes");
    for (const auto& tok : split_ws(l.text)) sizes.push_back(parse_count(l, tok, "block size"));
    if (sizes.empty()) throw ParseError(l.number, "expected at least one block size");
  }
  std::reverse(sizes.begin(), sizes.end());
  const std::size_t num_terms = sizes.size();

  std::vector<std::vector<Grade>> terms(num_terms);
  std::vector<DifferentialMatrix> diffs(num_terms - 1);
  for (std::size_t h = 1; h < num_terms; ++h) diffs[h - 1].rows = sizes[h - 1];

  for (std::size_t hh = num_terms; hh-- > 0;) {
    const std::size_t h = hh;
    for (std::size_t j = 0; j < sizes[h]; ++j) {
      if (cursor >= lines.size())
        throw ParseError(0, "dimension mismatch: block for term " + std::to_string(h) + " declares " +
                                std::to_string(sizes[h]) + " generators, found " + std::to_string(j));
      const Line& l = lines[cursor++];
      std::string_view text = l.text;
      std::string_view grade_part = text, entry_part;
      if (auto semi = text.find(';'); semi != std::string_view::npos) {
        grade_part = text.substr(0, semi);
        entry_part = text.substr(semi + 1);
      }
      auto grade_toks = split_ws(grade_part);
      if (grade_toks.size() != n)
        throw ParseError(l.number, "expected " + std::to_string(n) + " grade coordinates, got " +
                                       std::to_string(grade_toks.size()));
      Grade g;
      for (const auto& tok : grade_toks) {
        try {
          g.push_back(Rational::parse(tok));
        } catch (const std::exception& e) {
          throw ParseError(l.number, e.what());
        }
      }
      terms[h].push_back(std::move(g));

      auto entry_toks = split_ws(entry_part);
      if (h == 0) {
        if (!entry_toks.empty()) throw ParseError(l.number, "generators of term 0 have no differential entries");
        continue;
      }
      SparseColumn col;
      for (const auto& tok : entry_toks) {
        std::size_t row;
        std::int64_t coeff = 1;
        if (auto colon = tok.find(':'); colon != std::string::npos) {
          row = parse_count(l, tok.substr(0, colon), "row index");
          coeff = parse_signed(l, tok.substr(colon + 1));
        } else {
          row = parse_count(l, tok, "row index");
        }
        if (row >= sizes[h - 1])
          throw ParseError(l.number, "dimension mismatch: row index " + std::to_string(row) + " but term " +
                                         std::to_string(h - 1) + " has " + std::to_string(sizes[h - 1]) +
                                         " generators");
        if (std::any_of(col.begin(), col.end(), [&](const Entry& e) { return e.row == row; }))
          throw ParseError(l.number, "duplicate row index " + std::to_string(row));
        Coeff c = field.reduce(coeff);
        if (c != 0) col.push_back({row, c});
      }
      std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
      diffs[h - 1].columns.push_back(std::move(col));
    }
  }
  if (cursor < lines.size())
    throw ParseError(lines[cursor].number, "dimension mismatch: content after the declared generator blocks");

  return FreeResolution(n, field, std::move(terms), std::move(diffs));
}

FreeResolution parse_scc2020(std::string_view text, std::optional<std::uint32_t> field_override) {
  std::istringstream is{std::string(text)};
  return parse_scc2020(is, field_override);
}

FreeResolution load_scc2020(const std::string& path, std::optional<std::uint32_t> field_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_scc2020(in, field_override);
}

std::string serialize_scc2020(const FreeResolution& res) {
  std::ostringstream os;
  os << "scc2020\n" << res.parameters() << "\n" << res.field().characteristic() << "\n";
  if (res.num_terms() == 0) {
    os << "0\n";
    return os.str();
  }
  for (std::size_t h = res.num_terms(); h-- > 0;) os << res.term(h).size() << (h ? " " : "\n");
  for (std::size_t h = res.num_terms(); h-- > 0;) {
    for (std::size_t j = 0; j < res.term(h).size(); ++j) {
      const Grade& g = res.term(h)[j];
      for (std::size_t k = 0; k < g.size(); ++k) os << (k ? " " : "") << g[k];
      os << " ;";
      if (h > 0)
        for (const Entry& e : res.differential(h).columns[j]) os << ' ' << e.row << ':' << e.coeff;
      os << '\n';
    }
  }
  return os.str();
}

ConicComplexView::Generator ConicComplexView::generator(std::size_t flat_id) const {
  GeneratorId id = res_->generator(flat_id);
  return {id, cochain_degree(id), &res_->grade(id)};
}

std::vector<ConicComplexView::Generator> ConicComplexView::generators() const {
  std::vector<Generator> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back(generator(k));
  return out;
}

std::size_t ConicComplexView::multiplicity(const Grade& grade) const {
  std::size_t count = 0;
  for (std::size_t h = 0; h < res_->num_terms(); ++h)
    count += static_cast<std::size_t>(std::count(res_->term(h).begin(), res_->term(h).end(), grade));
  return count;
}

const DifferentialMatrix& ConicComplexView::differential(int degree) const {
  if (degree >= 0) throw std::out_of_range("no differential out of cochain degree " + std::to_string(degree));
  return res_->differential(static_cast<std::size_t>(-degree));
}

ConicComplexView as_conic_complex(const FreeResolution& res) { return ConicComplexView(res); }

}  // namespace projbar
