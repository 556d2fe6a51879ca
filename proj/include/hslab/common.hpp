#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hslab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Numerical guards. Tripping one of these means the requested computation is
// outside the regime the construction is valid in (e.g. a characteristic root
// on the real axis), not that the input was malformed.
enum class Guard {
  NotElliptic,
  RealAxisRoot,
  WrongStableCount,
  SpectralGapTooSmall,
  LeadingCoeffSingular,
  LopatinskiiSingular,
  ResolventSingular,
  BandExceedsGrid,
  IllConditioned,
  NonIntegrableWeight,
  CauchyDivergence,
};

inline const char* guard_name(Guard g) {
  switch (g) {
    case Guard::NotElliptic: return "NotElliptic";
    case Guard::RealAxisRoot: return "RealAxisRoot";
    case Guard::WrongStableCount: return "WrongStableCount";
    case Guard::SpectralGapTooSmall: return "SpectralGapTooSmall";
    case Guard::LeadingCoeffSingular: return "LeadingCoeffSingular";
    case Guard::LopatinskiiSingular: return "LopatinskiiSingular";
    case Guard::ResolventSingular: return "ResolventSingular";
    case Guard::BandExceedsGrid: return "BandExceedsGrid";
    case Guard::IllConditioned: return "IllConditioned";
    case Guard::NonIntegrableWeight: return "NonIntegrableWeight";
    case Guard::CauchyDivergence: return "CauchyDivergence";
  }
  return "Unknown";
}

class GuardError : public std::runtime_error {
 public:
  GuardError(Guard kind, const std::string& what)
      : std::runtime_error(std::string(guard_name(kind)) + ": " + what), kind_(kind) {}
  Guard kind() const { return kind_; }

 private:
  Guard kind_;
};

// Malformed or inconsistent input (configs, shapes, parameter ranges).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hslab
