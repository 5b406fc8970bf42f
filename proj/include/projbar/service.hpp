#pragma once

#include <map>
#include <memory>
#include <string>

#include "projbar/template2d.hpp"

namespace httplib {
class Server;
}

namespace projbar {

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Read-only JSON facade over a loaded template and, optionally, the
/// resolution it came from (enables pointwise `form=` queries for any n).
/// Never mutated after construction.
class Service {
 public:
  /// No data loaded: every data route answers 503.
  Service() = default;
  explicit Service(std::shared_ptr<const ProjectedBarcodeTemplate> pbt,
                   std::shared_ptr<const FreeResolution> resolution = nullptr);

  /// GET /meta
  HttpReply meta() const;
  /// GET /barcode?b=<slope> (template) or ?form=<r1,...,rn> (pointwise).
  HttpReply barcode(const std::map<std::string, std::string>& params) const;

  /// Registers the routes, CORS headers and JSON error bodies on `server`.
  void mount(httplib::Server& server) const;

 private:
  std::shared_ptr<const ProjectedBarcodeTemplate> pbt_;
  std::shared_ptr<const FreeResolution> resolution_;
};

/// Blocks serving `service` until the process is stopped. Returns false if
/// the socket could not be bound.
bool serve(const Service& service, const std::string& host, int port);

}  // namespace projbar
