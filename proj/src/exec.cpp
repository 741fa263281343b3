#include "qq/exec.hpp"

#include <cstdlib>

#include <omp.h>

namespace qq {

void set_thread_count(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

int default_thread_count_from_env() {
    const char* value = std::getenv("QQ_THREADS");
    if (!value) return 0;
    char* end = nullptr;
    long n = std::strtol(value, &end, 10);
    if (end == value || *end != '\0' || n <= 0 || n > 4096) return 0;
    return static_cast<int>(n);
}

}  // namespace qq
