#include "koplab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace koplab::fft {
namespace {

std::mutex g_planner_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan get_plan(int d, int n, int sign) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    const auto key = std::make_tuple(d, n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;

    std::size_t total = 1;
    std::vector<int> dims(static_cast<std::size_t>(d), n);
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);

    // Plan on a scratch buffer; FFTW_UNALIGNED lets the plan run on any array.
    std::vector<std::complex<double>> scratch(total);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(d, dims.data(), ptr, ptr, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_plans.emplace(key, plan);
    return plan;
}

} // namespace

void forward(int d, int n, std::complex<double>* data) {
    fftw_plan plan = get_plan(d, n, FFTW_FORWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, ptr, ptr);
}

void inverse(int d, int n, std::complex<double>* data) {
    fftw_plan plan = get_plan(d, n, FFTW_BACKWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, ptr, ptr);
}

} // namespace koplab::fft
