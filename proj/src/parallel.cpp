#include "foil/parallel.hpp"

#include "foil/error.hpp"

namespace foil {

namespace {
int g_worker_threads = 1;
}

void set_worker_threads(int n) {
    if (n < 1) {
        throw ConfigError("worker thread count must be at least 1, got " + std::to_string(n));
    }
    g_worker_threads = n;
}

int worker_threads() { return g_worker_threads; }

}  // namespace foil
