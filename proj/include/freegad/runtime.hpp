#pragma once

#include <chrono>

namespace freegad {

// Worker-thread count for an explicit request: a positive value wins,
// otherwise the FREEGAD_THREADS environment variable, otherwise 1.
int resolve_threads(int requested);

// Peak resident set size of the current process in MiB.
double peak_rss_mb();

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}

    double elapsed_s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void restart() { start_ = std::chrono::steady_clock::now(); }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace freegad
