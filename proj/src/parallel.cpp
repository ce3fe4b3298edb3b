#include "spdc/parallel.hpp"

#include <atomic>

namespace spdc {
namespace {

std::atomic<unsigned> configured_threads{0};

}  // namespace

unsigned default_thread_count() {
  const unsigned configured = configured_threads.load();
  if (configured != 0) return configured;
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : hardware;
}

void set_default_thread_count(unsigned threads) { configured_threads.store(threads); }

}  // namespace spdc
