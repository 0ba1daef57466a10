#pragma once

#include <memory>
#include <span>

#include "nlsf/field.hpp"

namespace nlsf {

/// In-place complex FFT of a fixed size, FFTW-backed. forward/inverse are
/// unnormalized (inverse-of-forward scales by n).
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const { return n_; }
    void forward(cplx* data) const;
    void inverse(cplx* data) const;

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

namespace ref {
/// O(n^2) DFT used as a transform oracle in tests. sign = -1 matches
/// Fft::forward, +1 matches Fft::inverse.
void dft(std::span<const cplx> in, std::span<cplx> out, int sign);
} // namespace ref

} // namespace nlsf
