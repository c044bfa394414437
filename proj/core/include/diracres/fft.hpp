#ifndef DIRACRES_FFT_HPP
#define DIRACRES_FFT_HPP

#include "diracres/common.hpp"

namespace diracres {

// In-place complex DFT, sum_j x_j e^{-2 pi i jm/n} (forward) resp. un-normalized
// inverse sum_j x_j e^{+2 pi i jm/n}. Backed by FFTW; n need not be a power of two.
void fft(std::vector<cx>& data, bool inverse);

std::vector<cx> fft_copy(const std::vector<cx>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

} // namespace diracres

#endif
