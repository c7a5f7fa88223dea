#pragma once

// Command-line driver. Every artifact is {"config": RunConfig, "result": ...}.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dualemb/json_io.hpp"

namespace dualemb::cli {

enum Exit : int {
  kEstablished = 0,
  kRefuted = 1,
  kInconclusive = 2,
  kUsage = 3,
  kInternal = 4,
};

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> instances;  // role -> descriptor
  std::uint64_t node_budget = 50'000'000;
  double seconds = 0;
  std::size_t max_size = 4096;
  std::uint64_t seed = 1;
  bool deterministic = true;
  int jobs = 0;  // 0 = OpenMP default
  std::string output;
  bool text = false;
};

Json to_json(const RunConfig& c);

/// Renders an artifact as indented key/value lines, arrays of flat records as tables.
void render_text(const Json& j, std::ostream& out);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualemb::cli
