#include "fft.hpp"

#include <mutex>
#include <new>

namespace bsq::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

FftPlan::FftPlan(std::size_t n) : size_(n) {
    std::lock_guard lock(planner_mutex());
    buffer_ = fftw_alloc_complex(n);
    if (!buffer_) throw std::bad_alloc();
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::FftPlan(std::size_t rows, std::size_t cols) : size_(rows * cols) {
    std::lock_guard lock(planner_mutex());
    buffer_ = fftw_alloc_complex(size_);
    if (!buffer_) throw std::bad_alloc();
    const int r = static_cast<int>(rows);
    const int c = static_cast<int>(cols);
    forward_ = fftw_plan_dft_2d(r, c, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(r, c, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
}

std::size_t fft_friendly_size(std::size_t n) {
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

}  // namespace bsq::detail
