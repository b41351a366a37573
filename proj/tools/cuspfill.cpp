// Copyright 2026 The cuspfill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cuspfill/errors.hpp"
#include "cuspfill/experiments.hpp"

namespace {

using namespace cuspfill;

std::map<std::string, std::string> read_config(const std::string& path) {
  if (path.empty()) throw MalformedInput("--config is required");
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  return parse_config(in);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw MalformedInput("cannot write " + out);
  f << text;
}

// Command-line values win over the config file.
void overlay(std::map<std::string, std::string>& kv, const CLI::App& sub, unsigned threads,
             std::uint64_t seed) {
  if (sub.count("--threads") > 0) kv["threads"] = std::to_string(threads);
  if (sub.count("--seed") > 0) kv["seed"] = std::to_string(seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspfill: peripheral fillings of free groups"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string cert_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key=value configuration file");
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", threads, "worker threads (0 = hardware)");
    sub->add_option("--seed", seed, "sampling seed");
  };
  auto* pipeline = app.add_subcommand("pipeline", "run the separation pipeline");
  auto* sweep = app.add_subcommand("sweep", "exponent x radius verdict grid");
  auto* delta = app.add_subcommand("delta", "four-point delta of a truncated cusped space");
  auto* height = app.add_subcommand("height", "height certificate of H");
  auto* verify = app.add_subcommand("verify-certificate", "replay a certificate or report");
  for (auto* sub : {pipeline, sweep, delta, height}) add_common(sub);
  verify->add_option("certificate", cert_path, "JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      const auto r = verify_certificate_file(cert_path);
      for (const auto& f : r.failures) std::cerr << "FAIL: " << f << '\n';
      std::cout << (r.ok ? "ok" : "rejected") << '\n';
      return r.ok ? 0 : 1;
    }
    auto kv = read_config(config);
    CLI::App* sub = app.get_subcommands().front();
    overlay(kv, *sub, threads, seed);
    if (*delta) {
      if (format != "json") throw MalformedInput("delta only writes json");
      emit(run_delta(DeltaConfig::from_map(kv)).dump(2) + "\n", out);
      return 0;
    }
    const auto c = PipelineConfig::from_map(kv);
    if (*sweep) {
      if (format != "csv" && sub->count("--format") > 0) {
        throw MalformedInput("sweep only writes csv");
      }
      emit(run_sweep(c), out);
      return 0;
    }
    if (format != "json") throw MalformedInput(sub->get_name() + " only writes json");
    if (*height) {
      const auto j = run_height(c);
      emit(j.dump(2) + "\n", out);
      return j.at("k").get<std::size_t>() > 0 ? 0 : 1;
    }
    const auto report = run_pipeline(c);
    emit(report.dump(2) + "\n", out);
    return report.at("verdict").at("all_positive").get<bool>() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
