#include "projbar/service.hpp"

#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "projbar/errors.hpp"

namespace projbar {

using nlohmann::json;

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

json bar_json(const Bar& bar) {
  json j;
  j["degree"] = bar.degree;
  j["birth"] = bar.birth.to_string();
  j["death"] = bar.death ? json(bar.death->to_string()) : json(nullptr);
  j["birth_approx"] = bar.birth.to_double();
  j["death_approx"] = bar.death ? json(bar.death->to_double()) : json(nullptr);
  return j;
}

json bars_json(const Barcode& barcode) {
  json bars = json::array();
  for (const Bar& b : barcode) bars.push_back(bar_json(b));
  return bars;
}

std::vector<Rational> parse_form(const std::string& text) {
  std::vector<Rational> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(Rational::parse(item));
  return coeffs;
}

}  // namespace

Service::Service(std::shared_ptr<const ProjectedBarcodeTemplate> pbt, std::shared_ptr<const FreeResolution> resolution)
    : pbt_(std::move(pbt)), resolution_(std::move(resolution)) {}

HttpReply Service::meta() const {
  if (!pbt_ && !resolution_) return error_reply(503, "no template loaded");
  json doc;
  if (pbt_) {
    doc["n"] = pbt_->parameters;
    doc["field"] = pbt_->field;
    doc["num_generators"] = pbt_->generators.size();
    doc["critical_values"] = json::array();
    for (const Rational& c : pbt_->critical) doc["critical_values"].push_back(c.to_string());
    doc["num_faces"] = pbt_->num_faces();
  } else {
    doc["n"] = resolution_->parameters();
    doc["field"] = resolution_->field().characteristic();
    doc["num_generators"] = resolution_->num_generators();
  }
  return {200, doc.dump()};
}

HttpReply Service::barcode(const std::map<std::string, std::string>& params) const {
  if (!pbt_ && !resolution_) return error_reply(503, "no template loaded");

  if (auto it = params.find("form"); it != params.end()) {
    if (!resolution_) return error_reply(400, "pointwise queries need the source resolution");
    try {
      LinearForm u = normalize(parse_form(it->second));
      Barcode bars = pointwise_projected_barcode(*resolution_, u);
      json form = json::array();
      for (const Rational& c : u.coeffs()) form.push_back(c.to_string());
      return {200, json{{"form", form}, {"bars", bars_json(bars)}}.dump()};
    } catch (const std::invalid_argument& e) {
      return error_reply(400, e.what());
    } catch (const DomainError& e) {
      return error_reply(400, e.what());
    }
  }

  auto it = params.find("b");
  if (it == params.end()) return error_reply(400, "missing query parameter 'b'");
  if (!pbt_) return error_reply(503, "no template loaded");
  Rational b;
  try {
    b = Rational::parse(it->second);
  } catch (const std::exception& e) {
    return error_reply(400, e.what());
  }
  Face face;
  Barcode bars;
  try {
    face = locate(*pbt_, b);
    bars = query(*pbt_, b);
  } catch (const DomainError& e) {
    return error_reply(400, e.what());
  }
  json doc;
  doc["b"] = b.to_string();
  doc["face"] = {{"kind", face.kind == Face::Kind::Open ? "open" : "vertex"},
                 {"interval", {face.lo.to_string(), face.hi.to_string()}}};
  doc["bars"] = bars_json(bars);
  return {200, doc.dump()};
}

void Service::mount(httplib::Server& server) const {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/meta", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, meta()); });
  server.Get("/barcode", [this, reply](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [key, value] : req.params) params.emplace(key, value);
    reply(res, barcode(params));
  });
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(json{{"error", "not found"}}.dump(), "application/json");
  });
}

bool serve(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace projbar
