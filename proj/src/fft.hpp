#pragma once

// Thin RAII wrapper over FFTW in-place complex transforms. Plan creation and
// destruction go through one mutex (FFTW's planner is not re-entrant); execution
// on distinct objects is safe from any thread.

#include <fftw3.h>

#include <complex>
#include <cstddef>

namespace bsq::detail {

class FftPlan {
public:
    /// 1-D transform of length n.
    explicit FftPlan(std::size_t n);
    /// 2-D row-major transform with the given extents.
    FftPlan(std::size_t rows, std::size_t cols);
    ~FftPlan();

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::complex<double>* data() noexcept { return reinterpret_cast<std::complex<double>*>(buffer_); }
    std::size_t size() const noexcept { return size_; }

    /// Unnormalised sum_j x_j e^{-2 pi i jk/n}.
    void forward() noexcept { fftw_execute(forward_); }
    /// Unnormalised sum_k X_k e^{+2 pi i jk/n}.
    void backward() noexcept { fftw_execute(backward_); }

private:
    std::size_t size_;
    fftw_complex* buffer_;
    fftw_plan forward_;
    fftw_plan backward_;
};

/// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t fft_friendly_size(std::size_t n);

}  // namespace bsq::detail
