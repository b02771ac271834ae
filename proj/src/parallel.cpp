// parallel.cpp

#include "zrl/parallel.hpp"

#include <cstdlib>
#include <string>

namespace zrl {

unsigned thread_count() {
    if (const char* env = std::getenv("ZRL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace zrl
