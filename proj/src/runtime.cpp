#include "freegad/runtime.hpp"

#include <cstdlib>

#include <sys/resource.h>

namespace freegad {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FREEGAD_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return 1;
}

double peak_rss_mb() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    // ru_maxrss is reported in kilobytes on Linux.
    return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

} // namespace freegad
