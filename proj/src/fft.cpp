#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace relamp::detail {

namespace {

// The FFTW planner is not re-entrant; fftw_execute_dft on an existing plan is.
std::mutex planner_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto it = plans.find({n, sign});
  if (it != plans.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw std::runtime_error("fftw: planning failed");
  plans.emplace(std::pair{n, sign}, p);
  return p;
}

void run(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("fft: size mismatch");
  fftw_plan p = plan_for(in.size(), sign);
  // FFTW_ESTIMATE plans never write to the input of an out-of-place transform.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(in, out, FFTW_FORWARD);
}

void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(in, out, FFTW_BACKWARD);
}

}  // namespace relamp::detail
