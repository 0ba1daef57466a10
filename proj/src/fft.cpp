#include "nlsf/fft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace nlsf {

namespace {
// FFTW's planner is not thread-safe; executes are.
std::mutex planner_mutex;
} // namespace

struct Fft::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

Fft::Fft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    // ESTIMATE keeps plan selection deterministic across runs
    fftw_complex* buf = fftw_alloc_complex(n);
    impl_->fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->inv) fftw_destroy_plan(impl_->inv);
}

void Fft::forward(cplx* data) const {
    fftw_execute_dft(impl_->fwd, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void Fft::inverse(cplx* data) const {
    fftw_execute_dft(impl_->inv, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

namespace ref {

void dft(std::span<const cplx> in, std::span<cplx> out, int sign) {
    const std::size_t n = in.size();
    const double w = 2.0 * M_PI * static_cast<double>(sign) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc += in[j] * std::exp(cplx(0.0, w * static_cast<double>(k * j % n)));
        out[k] = acc;
    }
}

} // namespace ref

} // namespace nlsf
