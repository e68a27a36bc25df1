// One line per acceptance criterion, each under a wall-clock limit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "twnorm/oracle.hpp"

#ifndef TWNORM_CLI_PATH
#error "TWNORM_CLI_PATH must name the CLI binary"
#endif

using namespace twnorm;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string summarize(const SuiteReport& rep) {
  std::ostringstream out;
  std::uint64_t checked = 0;
  for (const Claim& c : rep.claims) {
    checked += c.checked;
    if (!c.passed) out << " failed " << c.name << ": " << c.detail << " " << c.counterexample;
  }
  out << " checked=" << checked;
  for (const auto& [k, v] : rep.notes) out << " " << k << "=" << v;
  return out.str();
}

Outcome suite(const std::string& name) {
  SuiteReport rep = run_suite(name);
  return {rep.passed(), name + summarize(rep)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Each command runs twice through the binary; outputs must match byte for byte.
Outcome determinism() {
  const std::vector<std::string> commands = {
      "solve --field F5 --n 3 --m 1 --h \"2,0,0;0,1,0;0,0,3\"",
      "solve --field F7 --n 2 --m 2 --h \"3,0,0,0,0;0,2,0,0,0;0,0,1,0,0;0,0,0,4,0;0,0,0,0,5\"",
      "verify --suite identities --field F5,F3^2 --seed 11",
      "verify --suite ks --seed 3",
      "enumerate --field F3 --n 2 --m 1",
      "factor --field F5 --x \"0,0,0\" --y \"0\"",
  };
  auto dir = std::filesystem::temp_directory_path();
  std::size_t compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string out[2];
    int status[2];
    for (int run = 0; run < 2; ++run) {
      std::string path = (dir / ("twnorm_accept_" + std::to_string(i) + "_" + std::to_string(run) + ".json")).string();
      std::string line = std::string(TWNORM_CLI_PATH) + " " + commands[i] + " --out " + path + " > /dev/null 2>&1";
      status[run] = std::system(line.c_str());
      out[run] = slurp(path);
      std::remove(path.c_str());
    }
    if (out[0].empty() || out[0] != out[1] || status[0] != status[1]) return {false, "outputs differ for: " + commands[i]};
    ++compared;
  }
  return {true, std::to_string(compared) + " commands byte-identical across two runs"};
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "pair identities over F5, F7, F9, Q", 30, [] { return suite("identities"); }},
      {2, "Bruhat factorization", 10, [] { return suite("bruhat"); }},
      {3, "section surjectivity onto semisimple SO3 classes", 60, [] { return suite("sections"); }},
      {4, "regular twisted classes have a single norm class", 120, [] { return suite("regular_fibers"); }},
      {5, "odd fixed space in SO3(F3) and SO5(F3)", 30, [] { return suite("fixed_space"); }},
      {6, "square scaling identity", 10, [] { return suite("scaling"); }},
      {7, "comparison with the KS norm and torus kernel", 60, [] { return suite("ks"); }},
      {8, "+-1 eigenvalue bound for small n", 30, [] { return suite("small_n"); }},
      {9, "spectral consistency of canonical sections", 30, [] { return suite("spectral"); }},
      {10, "CLI determinism", 120, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto result = std::make_shared<std::promise<Outcome>>();
    std::future<Outcome> fut = result->get_future();
    auto start = std::chrono::steady_clock::now();
    std::thread([result, body = c.body] {
      try {
        result->set_value(body());
      } catch (const std::exception& e) {
        result->set_value({false, std::string("exception: ") + e.what()});
      }
    }).detach();
    bool finished = fut.wait_for(std::chrono::duration<double>(c.limit_s)) == std::future_status::ready;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o = finished ? fut.get() : Outcome{false, "timed out"};
    bool ok = finished && o.passed;
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%.2fs, limit %.0fs) %s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
    if (!finished) {
      std::printf("aborting: criterion %d still running\n", c.id);
      std::_Exit(1);
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
