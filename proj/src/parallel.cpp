#include "cliffell/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cliffell {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("CLIFFELL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> n{initial_threads()};
  return n;
}

}  // namespace

int worker_threads() { return thread_setting().load(); }

void set_worker_threads(int n) { thread_setting().store(n > 0 ? n : initial_threads()); }

}  // namespace cliffell
