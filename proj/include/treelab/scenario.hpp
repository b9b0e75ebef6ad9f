#pragma once

#include "treelab/report.hpp"

#include <thread>

namespace treelab {

struct Scenario {
  std::string command;
  int p = 1, n = 2, r = 0;
  int radius = -1;                   // negative: the command's default
  std::vector<std::uint64_t> seeds;  // empty: the command's default
  int trunc = kDefaultTruncation;
  std::vector<std::string> formats{"json"};
  std::size_t threads = 1;
};

const std::vector<std::string>& scenario_commands();

// "N" is 0..N-1, "a:b" is a..b-1, and comma-separated parts concatenate.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// {"command": ..., "p": ..., "seeds": [..] or "0:100", ...}
Scenario scenario_from_json(const Json& j);

// Throws UsageError before any computation.
void validate(const Scenario& s);

Report run_scenario(const Scenario& s);

// TREELAB_THREADS, else the hardware concurrency; at least 1.
std::size_t thread_cap();

// out[i] = f(i), computed by up to `threads` workers.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, F f) {
  std::vector<T> out(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) out[i] = f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace treelab
