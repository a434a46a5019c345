#include "splitstep/function_spec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace splitstep {

FunctionSpec FunctionSpec::cosine(int mode, double amplitude, double offset) {
  std::vector<FourierTerm> terms;
  if (offset != 0.0) terms.push_back({0, offset});
  if (mode == 0) {
    terms.push_back({0, amplitude});
  } else {
    terms.push_back({mode, 0.5 * amplitude});
    terms.push_back({-mode, 0.5 * amplitude});
  }
  return FunctionSpec(std::move(terms));
}

FunctionSpec FunctionSpec::sine(int mode, double amplitude, double offset) {
  std::vector<FourierTerm> terms;
  if (offset != 0.0) terms.push_back({0, offset});
  if (mode != 0) {
    terms.push_back({mode, Complex(0.0, -0.5 * amplitude)});
    terms.push_back({-mode, Complex(0.0, 0.5 * amplitude)});
  }
  return FunctionSpec(std::move(terms));
}

FunctionSpec FunctionSpec::plane_waves(std::vector<FourierTerm> waves) {
  return FunctionSpec(std::move(waves));
}

FunctionSpec FunctionSpec::operator+(const FunctionSpec& other) const {
  std::vector<FourierTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return FunctionSpec(std::move(terms));
}

int FunctionSpec::max_abs_mode() const noexcept {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.mode));
  return m;
}

bool FunctionSpec::is_real(double tol) const {
  std::map<int, Complex> merged;
  for (const auto& t : terms_) merged[t.mode] += t.coeff;
  for (const auto& [mode, c] : merged) {
    auto it = merged.find(-mode);
    const Complex partner = it == merged.end() ? Complex{} : it->second;
    if (std::abs(c - std::conj(partner)) > tol) return false;
  }
  return true;
}

std::string FunctionSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "-" : "+")
       << std::abs(t.coeff.imag()) << "i)e^{i" << t.mode << "x}";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

PhysicalState sample_function(const FunctionSpec& spec, const Grid& grid,
                              AliasPolicy policy) {
  if (policy == AliasPolicy::kReject) {
    for (const auto& t : spec.terms()) {
      if (!grid.contains(t.mode)) {
        std::ostringstream os;
        os << "sample_function: mode " << t.mode << " lies outside {" << grid.first_index()
           << ", ..., " << grid.last_index() << "} and aliases on a K=" << grid.modes()
           << " grid";
        throw std::invalid_argument(os.str());
      }
    }
  }
  const int k_count = grid.modes();
  std::vector<Complex> values(k_count);
  for (int k = grid.first_index(); k <= grid.last_index(); ++k) {
    Complex sum{0.0, 0.0};
    for (const auto& t : spec.terms()) {
      // exp(i m x_k) = exp(2 i pi (m k mod K) / K)
      sum += t.coeff * root_of_unity(static_cast<long long>(t.mode) * k, k_count);
    }
    values[grid.slot(k)] = sum;
  }
  return PhysicalState(grid, std::move(values));
}

}  // namespace splitstep
