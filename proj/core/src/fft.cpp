#include "diracres/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace diracres {

namespace {
std::mutex plan_mutex;  // FFTW planning is not thread-safe; execution is.
}

void fft(std::vector<cx>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

std::vector<cx> fft_copy(const std::vector<cx>& data, bool inverse) {
    std::vector<cx> out = data;
    fft(out, inverse);
    return out;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace diracres
