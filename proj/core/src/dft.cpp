#include "splitstep/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace splitstep {
namespace detail {
namespace {

// The FFTW planner is not thread safe; execution with the new-array
// interface is.  Plans are created once per (N, sign) and never destroyed.
class PlanCache {
 public:
  fftw_plan get(int n, FftSign sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> scratch_in(n), scratch_out(n);
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
        reinterpret_cast<fftw_complex*>(scratch_out.data()),
        sign == FftSign::kMinus ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, FftSign>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft(std::span<const Complex> in, std::span<Complex> out, FftSign sign) {
  if (in.size() != out.size() || in.empty()) {
    throw std::invalid_argument("fft: input and output lengths must match and be positive");
  }
  const int n = static_cast<int>(in.size());
  fftw_plan plan = plan_cache().get(n, sign);
  // fftw_execute_dft does not write to its input for out-of-place complex
  // transforms, but the signature is non-const.
  std::vector<Complex> buffer(in.begin(), in.end());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buffer.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace detail

namespace {

// Centered storage (ascending j from -K/2) <-> FFTW storage (j mod K).
std::vector<Complex> to_fft_order(std::span<const Complex> centered) {
  const std::size_t k = centered.size();
  const std::size_t half = k / 2;
  std::vector<Complex> out(k);
  for (std::size_t s = 0; s < k; ++s) out[(s + half) % k] = centered[s];
  return out;
}

std::vector<Complex> from_fft_order(std::span<const Complex> fft_ordered) {
  const std::size_t k = fft_ordered.size();
  const std::size_t half = k / 2;
  std::vector<Complex> out(k);
  for (std::size_t s = 0; s < k; ++s) out[s] = fft_ordered[(s + half) % k];
  return out;
}

}  // namespace

SpectralState forward_dft(const PhysicalState& u) {
  const int k = u.size();
  std::vector<Complex> in = to_fft_order(u.values());
  std::vector<Complex> out(k);
  detail::fft(in, out, detail::FftSign::kMinus);
  const double scale = 1.0 / k;
  for (auto& c : out) c *= scale;
  return SpectralState(u.grid(), from_fft_order(out));
}

PhysicalState inverse_dft(const SpectralState& v) {
  const int k = v.size();
  std::vector<Complex> in = to_fft_order(v.values());
  std::vector<Complex> out(k);
  detail::fft(in, out, detail::FftSign::kPlus);
  return PhysicalState(v.grid(), from_fft_order(out));
}

SpectralState reference_forward_dft(const PhysicalState& u) {
  const Grid& g = u.grid();
  const int k_count = g.modes();
  std::vector<Complex> out(k_count);
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    Complex sum{0.0, 0.0};
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      sum += root_of_unity(-static_cast<long long>(j) * k, k_count) * u[k];
    }
    out[g.slot(j)] = sum / static_cast<double>(k_count);
  }
  return SpectralState(g, std::move(out));
}

PhysicalState reference_inverse_dft(const SpectralState& v) {
  const Grid& g = v.grid();
  const int k_count = g.modes();
  std::vector<Complex> out(k_count);
  for (int k = g.first_index(); k <= g.last_index(); ++k) {
    Complex sum{0.0, 0.0};
    for (int j = g.first_index(); j <= g.last_index(); ++j) {
      sum += root_of_unity(static_cast<long long>(j) * k, k_count) * v[j];
    }
    out[g.slot(k)] = sum;
  }
  return PhysicalState(g, std::move(out));
}

}  // namespace splitstep
