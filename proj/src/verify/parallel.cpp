#include "loewner/verify/parallel.hpp"

#include <cstdlib>
#include <string>

namespace loewner::verify {

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("LOEWNER_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(std::min(n, 256L));
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace loewner::verify
