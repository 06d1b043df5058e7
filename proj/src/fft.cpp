#include "dnls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace dnls {

namespace {

// FFTW planner is not thread-safe; executions on distinct plans are.
std::mutex planner_mutex;

void run_dft(std::vector<cplx>& data, int sign) {
    const int n = static_cast<int>(data.size());
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

size_t next_fft_size(size_t n) {
    size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

} // namespace

void fft_forward(std::vector<cplx>& data) { run_dft(data, FFTW_FORWARD); }
void fft_inverse(std::vector<cplx>& data) { run_dft(data, FFTW_BACKWARD); }

std::vector<cplx> fft_correlate(const std::vector<cplx>& f, const std::vector<double>& kernel_two_sided) {
    const size_t n = f.size();
    // kernel_two_sided[m + (n-1)] = K(m), m in [-(n-1), n-1]
    const size_t m = next_fft_size(2 * n);
    std::vector<cplx> a(m, cplx(0.0)), b(m, cplx(0.0));
    for (size_t k = 0; k < n; ++k) a[k] = f[k];
    // place K(m) at index (m mod m); out[j] = sum_k f[k] K(k - j) is a
    // correlation: conj-free version via kernel flip.
    for (size_t idx = 0; idx < kernel_two_sided.size(); ++idx) {
        const long off = static_cast<long>(idx) - static_cast<long>(n - 1); // K(off)
        // correlation out[j] = sum_k f[k] K(k-j)  ==  convolution of f with K(-.)
        long pos = -off;
        if (pos < 0) pos += static_cast<long>(m);
        b[static_cast<size_t>(pos)] += kernel_two_sided[idx];
    }
    fft_forward(a);
    fft_forward(b);
    for (size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_inverse(a);
    std::vector<cplx> out(n);
    const double inv = 1.0 / static_cast<double>(m);
    for (size_t j = 0; j < n; ++j) out[j] = a[j] * inv;
    return out;
}

} // namespace dnls
