#include "projbar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "projbar/errors.hpp"
#include "projbar/service.hpp"
#include "projbar/template2d.hpp"

namespace projbar::cli {

namespace {

std::vector<Rational> parse_form_list(const std::string& text) {
  std::vector<Rational> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coeffs.push_back(Rational::parse(item));
    } catch (const std::exception& e) {
      throw DomainError(std::string("bad form entry: ") + e.what());
    }
  }
  if (coeffs.empty()) throw DomainError("empty form");
  return coeffs;
}

Rational parse_slope(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(std::string("bad slope: ") + e.what());
  }
}

int cmd_validate(const std::string& file, std::ostream& out) {
  FreeResolution res = load_scc2020(file);
  auto issues = validate(res);
  if (issues.empty()) {
    out << "ok: " << res.num_generators() << " generators in " << res.num_terms() << " terms, n = "
        << res.parameters() << ", field F_" << res.field().characteristic() << "\n";
    return kOk;
  }
  out << issues.size() << " violation(s):\n";
  for (const auto& issue : issues) out << "  " << issue.message << "\n";
  return kDomainError;
}

int cmd_query(const std::string& file, const std::string& form_text, const std::string& slope_text,
              std::optional<std::uint32_t> field, std::ostream& out) {
  FreeResolution res = load_scc2020(file, field);
  if (auto issues = validate(res); !issues.empty()) throw DomainError("invalid resolution: " + issues.front().message);
  std::optional<LinearForm> form;
  if (!slope_text.empty()) {
    if (res.parameters() != 2) throw DomainError("--b requires n = 2");
    form = LinearForm::from_slope(parse_slope(slope_text));
  } else {
    form = normalize(parse_form_list(form_text));
  }
  out << to_string(pointwise_projected_barcode(res, *form));
  return kOk;
}

int cmd_template_build(const std::string& file, const std::string& output, unsigned threads, std::ostream& out) {
  FreeResolution res = load_scc2020(file);
  ProjectedBarcodeTemplate pbt = build_template(res, threads);
  std::ofstream os(output);
  if (!os) throw IoError("cannot write '" + output + "'");
  os << serialize_pbt(pbt);
  if (!os) throw IoError("write to '" + output + "' failed");
  out << "wrote " << output << ": " << pbt.critical.size() << " critical values, " << pbt.num_faces()
      << " faces\n";
  return kOk;
}

int cmd_template_query(const std::string& file, const std::string& slope_text, std::ostream& out) {
  ProjectedBarcodeTemplate pbt = load_pbt(file);
  out << to_string(query(pbt, parse_slope(slope_text)));
  return kOk;
}

int cmd_serve(const std::string& file, const std::string& resolution_file, const std::string& host, int port,
              std::ostream& out) {
  auto pbt = std::make_shared<const ProjectedBarcodeTemplate>(load_pbt(file));
  std::shared_ptr<const FreeResolution> res;
  if (!resolution_file.empty()) res = std::make_shared<const FreeResolution>(load_scc2020(resolution_file));
  Service service(pbt, res);
  out << "serving " << file << " on http://" << host << ":" << port << std::endl;
  if (!serve(service, host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return kOk;
}

struct Timing {
  double mean_us = 0;
  double median_us = 0;
};

Timing summarize(std::vector<double> samples) {
  Timing t;
  if (samples.empty()) return t;
  for (double s : samples) t.mean_us += s;
  t.mean_us /= static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  std::size_t mid = samples.size() / 2;
  t.median_us = samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
  return t;
}

int cmd_bench(const std::string& file, std::size_t queries, std::uint64_t seed, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  auto micros = [](clock::duration d) { return std::chrono::duration<double, std::micro>(d).count(); };

  FreeResolution res = load_scc2020(file);
  auto start = clock::now();
  ProjectedBarcodeTemplate pbt = build_template(res);
  double build_us = micros(clock::now() - start);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> den_dist(2, 1'000'000);
  std::vector<double> with_template, without_template;
  std::size_t agree = 0;
  for (std::size_t q = 0; q < queries; ++q) {
    std::int64_t den = den_dist(rng);
    std::int64_t num = std::uniform_int_distribution<std::int64_t>(1, den - 1)(rng);
    Rational b(num, den);

    auto t0 = clock::now();
    Barcode fast = query(pbt, b);
    auto t1 = clock::now();
    Barcode direct = pointwise_projected_barcode(res, LinearForm::from_slope(b));
    auto t2 = clock::now();
    with_template.push_back(micros(t1 - t0));
    without_template.push_back(micros(t2 - t1));
    if (fast == direct) ++agree;
  }
  Timing fast = summarize(with_template), slow = summarize(without_template);

  out << "file: " << file << "\n"
      << "generators: " << res.num_generators() << "\n"
      << "critical values: " << pbt.critical.size() << "\n"
      << "faces: " << pbt.num_faces() << "\n"
      << "queries: " << queries << "\n"
      << "template build: " << build_us << " us\n"
      << "query with template: mean " << fast.mean_us << " us, median " << fast.median_us << " us\n"
      << "query without template: mean " << slow.mean_us << " us, median " << slow.median_us << " us\n"
      << "agreement: " << agree << "/" << queries << "\n";
  return agree == queries ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projected barcodes of multiparameter persistence modules"};
  app.name("projbar");
  app.require_subcommand(1);

  std::string file, form_text, slope_text, output, resolution_file, host = "127.0.0.1";
  std::optional<std::uint32_t> field;
  unsigned threads = 0;
  int port = 8080;
  std::size_t queries = 100;
  std::uint64_t seed = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Check d∘d = 0 and the grade condition");
  validate_cmd->add_option("file", file, "scc2020 resolution")->required();

  auto* query_cmd = app.add_subcommand("query", "Projected barcode along a linear form, computed directly");
  query_cmd->add_option("file", file, "scc2020 resolution")->required();
  auto* form_opt = query_cmd->add_option("--form", form_text, "Comma-separated positive rationals or decimals");
  auto* b_opt = query_cmd->add_option("--b", slope_text, "Slope b for the form (1-b, b), n = 2 only");
  form_opt->excludes(b_opt);
  query_cmd->add_option("--field", field, "Override the field characteristic");

  auto* template_cmd = app.add_subcommand("template", "Build or query a projected barcode template");
  template_cmd->require_subcommand(1);
  auto* build_cmd = template_cmd->add_subcommand("build", "Precompute the template of a 2-parameter resolution");
  build_cmd->add_option("file", file, "scc2020 resolution")->required();
  build_cmd->add_option("-o,--output", output, "Template output path")->required();
  build_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  auto* tquery_cmd = template_cmd->add_subcommand("query", "Answer a slope query from a template");
  tquery_cmd->add_option("template", file, "Template file")->required();
  tquery_cmd->add_option("--b", slope_text, "Slope b in (0,1)")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Serve a template over HTTP");
  serve_cmd->add_option("template", file, "Template file")->required();
  serve_cmd->add_option("--port", port, "Port")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--resolution", resolution_file, "Source resolution, enables /barcode?form=");

  auto* bench_cmd = app.add_subcommand("bench", "Compare template and direct queries");
  bench_cmd->add_option("file", file, "scc2020 resolution")->required();
  bench_cmd->add_option("--queries", queries, "Number of random slopes")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, out);
    if (*query_cmd) {
      if (form_text.empty() && slope_text.empty()) {
        err << "query: one of --form or --b is required\n";
        return kUsageError;
      }
      return cmd_query(file, form_text, slope_text, field, out);
    }
    if (*build_cmd) return cmd_template_build(file, output, threads, out);
    if (*tquery_cmd) return cmd_template_query(file, slope_text, out);
    if (*serve_cmd) return cmd_serve(file, resolution_file, host, port, out);
    if (*bench_cmd) return cmd_bench(file, queries, seed, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace projbar::cli
