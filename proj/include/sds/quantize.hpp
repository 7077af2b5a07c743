#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/surface.hpp"

namespace sds {

/// Physical and asymptotic parameters: H = -(h^2/2) Laplacian + alpha delta_{x0},
/// restricted to the m = 0 sector, eigenvalues sought in (E_min, E_max).
struct SpectralParams {
  double h = 0.1;
  double alpha = 0.0;
  int m = 0;
  double E_min = 1e-3;
  double E_max = 1.0;

  /// Throws DomainError when h <= 0, m != 0 or the window is not 0 < E_min < E_max.
  void validate() const;
  double alpha_over_h3() const { return alpha / (h * h * h); }
};

/// paper:   tan(J/h) = 2h^3 / (sqrt(2E) alpha)
/// derived: tan(J/h) = alpha sqrt(2E) / (2 pi h^3)   (flat s-wave matching at the delta)
enum class QuantizationMode { paper, derived };

std::string to_string(QuantizationMode mode);
QuantizationMode parse_mode(const std::string& text);

enum class Limit { weak, strong };
enum class RegimeTag { weak, window, strong };

std::string to_string(Limit limit);
std::string to_string(RegimeTag tag);

struct CouplingRegime {
  RegimeTag tag;
  double ratio;  ///< alpha / h^3
  double epsilon;
  double C;
  double lower;  ///< window bounds actually used
  double upper;
  /// Bohr-Sommerfeld offset (0 or 1/2 in units of pi) the regime reduces to, per mode.
  double paper_offset;
  double derived_offset;
  /// Effective Maslov-type index label (0 or 2) for each mode; nan inside the window.
  double paper_index;
  double derived_index;
};

struct SpectralEntry {
  int k;            ///< ordinal among the roots in the window, from E_min upwards (0-based)
  int phase_index;  ///< integer j with Psi(E) = j pi
  double E;
  double phase;     ///< Phi(E) = J(E)/h at the root
  QuantizationMode mode;
  double residual;  ///< Psi(E) - j pi
};

struct SpectralSeries {
  std::vector<SpectralEntry> entries;
  QuantizationMode mode;
};

struct BranchRoot {
  double E;
  double residual;
};

/// Phase-form quantization condition for a fixed profile/parameters/mode.
/// Psi(E) = Phi(E) - atan2(num, den), Phi(E) = J(E)/h = sqrt(2E) L / h.
class PhaseCondition {
 public:
  PhaseCondition(const SurfaceProfile& profile, const SpectralParams& params, QuantizationMode mode);

  double meridian_length() const { return length_; }
  double Phi(double E) const;
  double dPhi(double E) const;
  /// atan2(num, den) for the mode's right-hand side.
  double rhs_angle(double E) const;
  double Psi(double E) const;
  double dPsi(double E) const;
  /// Inverse of Phi.
  double energy_for_phase(double phi) const;

  std::optional<BranchRoot> solve(int phase_index) const;

  QuantizationMode mode() const { return mode_; }
  const SpectralParams& params() const { return params_; }

 private:
  SpectralParams params_;
  QuantizationMode mode_;
  double length_;
  bool limit_only_;  // alpha == 0: weak-limit condition
  double fixed_angle_;
};

double condition_phase(const SurfaceProfile& profile, const SpectralParams& params, double E,
                       QuantizationMode mode);

std::optional<BranchRoot> solve_branch(const SurfaceProfile& profile, const SpectralParams& params, int k,
                                       QuantizationMode mode);

SpectralSeries enumerate_spectrum(const SurfaceProfile& profile, const SpectralParams& params,
                                  QuantizationMode mode);

CouplingRegime classify_regime(const SpectralParams& params, double C = 1.0, double epsilon = 0.1);

/// Bohr-Sommerfeld limit of the condition: Phi = k pi or (k + 1/2) pi per (limit, mode).
double limit_condition(const SurfaceProfile& profile, const SpectralParams& params, int k, Limit limit,
                       QuantizationMode mode);
/// Offset (0 or 1/2) of the Bohr-Sommerfeld limit for (limit, mode).
double limit_offset(Limit limit, QuantizationMode mode);

}  // namespace sds
