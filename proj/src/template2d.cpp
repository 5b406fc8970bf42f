#include "projbar/template2d.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "projbar/errors.hpp"

namespace projbar {

using nlohmann::json;

std::vector<Rational> critical_values(const FreeResolution& res) {
  if (res.parameters() != 2)
    throw DomainError("template construction requires n = 2 (got n = " + std::to_string(res.parameters()) + ")");
  std::vector<const Grade*> grades;
  for (std::size_t h = 0; h < res.num_terms(); ++h)
    for (const Grade& g : res.term(h)) grades.push_back(&g);

  std::vector<Rational> out;
  for (std::size_t i = 0; i < grades.size(); ++i)
    for (std::size_t j = i + 1; j < grades.size(); ++j) {
      Rational a = (*grades[i])[0] - (*grades[j])[0];
      Rational c = (*grades[i])[1] - (*grades[j])[1];
      if (a.sign() * c.sign() >= 0) continue;
      Rational abs_a = a.abs();
      out.push_back(abs_a / (abs_a + c.abs()));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational face_sample(const std::vector<Rational>& critical, std::size_t k) {
  Rational lo = k == 0 ? Rational(0) : critical.at(k - 1);
  Rational hi = k == critical.size() ? Rational(1) : critical.at(k);
  return (lo + hi) / Rational(2);
}

namespace {

BarcodeTemplate face_template(const FreeResolution& res, const std::vector<Rational>& critical, std::size_t k) {
  BarcodeTemplate t;
  t.lo = k == 0 ? Rational(0) : critical[k - 1];
  t.hi = k == critical.size() ? Rational(1) : critical[k];
  FiltrationSchedule schedule = build_schedule(LinearForm::from_slope(face_sample(critical, k)), res);
  ReductionResult reduced = reduce(assemble_boundary(schedule, res));
  t.order = schedule.order();
  for (const PersistencePair& p : reduced.pairs)
    t.pairs.push_back({t.order[p.creator], t.order[p.destructor], schedule.events[p.creator].id.h});
  for (std::size_t c : reduced.essentials) t.essentials.push_back({t.order[c], schedule.events[c].id.h});
  return t;
}

}  // namespace

ProjectedBarcodeTemplate build_template(const FreeResolution& res, unsigned threads) {
  ProjectedBarcodeTemplate pbt;
  pbt.critical = critical_values(res);
  if (auto issues = validate(res); !issues.empty())
    throw DomainError("cannot build a template from an invalid resolution: " + issues.front().message);
  pbt.parameters = 2;
  pbt.field = res.field().characteristic();
  for (std::size_t k = 0; k < res.num_generators(); ++k) {
    GeneratorId id = res.generator(k);
    pbt.generators.push_back({id.h, res.grade(id)});
  }

  const std::size_t num_faces = pbt.critical.size() + 1;
  pbt.faces.resize(num_faces);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, num_faces));
  if (threads <= 1) {
    for (std::size_t k = 0; k < num_faces; ++k) pbt.faces[k] = face_template(res, pbt.critical, k);
    return pbt;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k; (k = next.fetch_add(1)) < num_faces;) pbt.faces[k] = face_template(res, pbt.critical, k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return pbt;
}

Face locate(const ProjectedBarcodeTemplate& pbt, const Rational& b) {
  if (b.sign() <= 0 || b >= Rational(1))
    throw DomainError("form not relevant: slope " + b.to_string() + " is outside (0,1)");
  const auto& c = pbt.critical;
  auto it = std::lower_bound(c.begin(), c.end(), b);
  auto k = static_cast<std::size_t>(it - c.begin());
  if (it != c.end() && *it == b) return {Face::Kind::Vertex, k, b, b};
  return {Face::Kind::Open, k, k == 0 ? Rational(0) : c[k - 1], k == c.size() ? Rational(1) : c[k]};
}

Barcode evaluate_face(const ProjectedBarcodeTemplate& pbt, std::size_t face, const Rational& b) {
  const BarcodeTemplate& t = pbt.faces.at(face);
  LinearForm u = LinearForm::from_slope(b);
  std::vector<Bar> bars;
  bars.reserve(t.pairs.size() + t.essentials.size());
  for (const TemplatePair& p : t.pairs) {
    Rational birth = u(pbt.generators[p.creator].grade);
    Rational death = u(pbt.generators[p.destructor].grade);
    if (birth == death) continue;
    bars.push_back({p.degree, std::move(birth), std::move(death)});
  }
  for (const TemplateEssential& e : t.essentials)
    bars.push_back({e.degree, u(pbt.generators[e.creator].grade), std::nullopt});
  return Barcode(std::move(bars));
}

Barcode query(const ProjectedBarcodeTemplate& pbt, const Rational& b) {
  Face f = locate(pbt, b);
  // vertex k sits between open faces k and k + 1
  return evaluate_face(pbt, f.index, b);
}

std::string serialize_pbt(const ProjectedBarcodeTemplate& pbt) {
  json doc;
  doc["n"] = pbt.parameters;
  doc["field"] = pbt.field;
  doc["generators"] = json::array();
  for (const TemplateGenerator& g : pbt.generators) {
    json grade = json::array();
    for (const Rational& x : g.grade) grade.push_back(x.to_string());
    doc["generators"].push_back({{"h", g.h}, {"grade", grade}});
  }
  doc["critical_values"] = json::array();
  for (const Rational& c : pbt.critical) doc["critical_values"].push_back(c.to_string());
  doc["faces"] = json::array();
  for (const BarcodeTemplate& t : pbt.faces) {
    json face;
    face["interval"] = {t.lo.to_string(), t.hi.to_string()};
    face["order"] = t.order;
    face["pairs"] = json::array();
    for (const TemplatePair& p : t.pairs)
      face["pairs"].push_back({{"creator", p.creator}, {"destructor", p.destructor}, {"degree", p.degree}});
    face["essentials"] = json::array();
    for (const TemplateEssential& e : t.essentials)
      face["essentials"].push_back({{"creator", e.creator}, {"degree", e.degree}});
    doc["faces"].push_back(std::move(face));
  }
  return doc.dump(1) + "\n";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(0, "template " + where + ": " + what);
}

const json& field_of(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

const json& array_of(const json& obj, const char* key, const std::string& where) {
  const json& v = field_of(obj, key, where);
  if (!v.is_array()) fail(where + "." + key, "expected an array");
  return v;
}

std::size_t index_of(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Rational rational_of(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a rational string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

}  // namespace

ProjectedBarcodeTemplate deserialize_pbt(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("template is not valid JSON: ") + e.what());
  }
  ProjectedBarcodeTemplate pbt;
  pbt.parameters = index_of(field_of(doc, "n", "root"), "n");
  if (pbt.parameters != 2) fail("n", "only n = 2 templates are supported");
  std::size_t p = index_of(field_of(doc, "field", "root"), "field");
  if (!is_prime(p)) fail("field", std::to_string(p) + " is not prime");
  pbt.field = static_cast<std::uint32_t>(p);

  const json& gens = array_of(doc, "generators", "root");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::string where = "generators[" + std::to_string(k) + "]";
    TemplateGenerator g;
    g.h = index_of(field_of(gens[k], "h", where), where + ".h");
    const json& grade = array_of(gens[k], "grade", where);
    if (grade.size() != pbt.parameters) fail(where + ".grade", "expected 2 coordinates");
    for (std::size_t c = 0; c < grade.size(); ++c)
      g.grade.push_back(rational_of(grade[c], where + ".grade[" + std::to_string(c) + "]"));
    pbt.generators.push_back(std::move(g));
  }
  const std::size_t num_gens = pbt.generators.size();

  const json& crit = array_of(doc, "critical_values", "root");
  for (std::size_t k = 0; k < crit.size(); ++k) {
    std::string where = "critical_values[" + std::to_string(k) + "]";
    Rational c = rational_of(crit[k], where);
    if (c.sign() <= 0 || c >= Rational(1)) fail(where, "critical value outside (0,1)");
    if (!pbt.critical.empty() && !(pbt.critical.back() < c)) fail(where, "critical values not strictly increasing");
    pbt.critical.push_back(std::move(c));
  }

  const json& faces = array_of(doc, "faces", "root");
  if (faces.size() != pbt.critical.size() + 1)
    fail("faces", "expected " + std::to_string(pbt.critical.size() + 1) + " faces, got " +
                      std::to_string(faces.size()));
  for (std::size_t k = 0; k < faces.size(); ++k) {
    std::string where = "faces[" + std::to_string(k) + "]";
    const json& f = faces[k];
    BarcodeTemplate t;
    const json& interval = array_of(f, "interval", where);
    if (interval.size() != 2) fail(where + ".interval", "expected [lo, hi]");
    t.lo = rational_of(interval[0], where + ".interval[0]");
    t.hi = rational_of(interval[1], where + ".interval[1]");
    Rational lo = k == 0 ? Rational(0) : pbt.critical[k - 1];
    Rational hi = k == pbt.critical.size() ? Rational(1) : pbt.critical[k];
    if (t.lo != lo || t.hi != hi) fail(where + ".interval", "does not match the critical values");

    const json& order = array_of(f, "order", where);
    std::vector<bool> seen(num_gens, false);
    for (std::size_t q = 0; q < order.size(); ++q) {
      std::size_t id = index_of(order[q], where + ".order[" + std::to_string(q) + "]");
      if (id >= num_gens || seen[id]) fail(where + ".order", "not a permutation of generator ids");
      seen[id] = true;
      t.order.push_back(id);
    }
    if (t.order.size() != num_gens) fail(where + ".order", "not a permutation of generator ids");

    const json& pairs = array_of(f, "pairs", where);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      std::string w = where + ".pairs[" + std::to_string(q) + "]";
      TemplatePair pr{index_of(field_of(pairs[q], "creator", w), w + ".creator"),
                      index_of(field_of(pairs[q], "destructor", w), w + ".destructor"),
                      index_of(field_of(pairs[q], "degree", w), w + ".degree")};
      if (pr.creator >= num_gens || pr.destructor >= num_gens) fail(w, "generator id out of range");
      t.pairs.push_back(pr);
    }
    const json& ess = array_of(f, "essentials", where);
    for (std::size_t q = 0; q < ess.size(); ++q) {
      std::string w = where + ".essentials[" + std::to_string(q) + "]";
      TemplateEssential e{index_of(field_of(ess[q], "creator", w), w + ".creator"),
                          index_of(field_of(ess[q], "degree", w), w + ".degree")};
      if (e.creator >= num_gens) fail(w, "generator id out of range");
      t.essentials.push_back(e);
    }
    if (2 * t.pairs.size() + t.essentials.size() != num_gens)
      fail(where, "pairs and essentials do not account for every generator");
    pbt.faces.push_back(std::move(t));
  }
  return pbt;
}

ProjectedBarcodeTemplate load_pbt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_pbt(ss.str());
}

}  // namespace projbar
