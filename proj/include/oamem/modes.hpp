#pragma once

// Real Laguerre-Gaussian-type mode functions
//
//   u_lp(r, theta) = N_lp / w * (sqrt(2) r / w)^|l| * L_p^|l|(2 r^2 / w^2)
//                    * exp(-r^2 / w^2) * cos(l theta),
//   N_lp = sqrt(4 p! / ((1 + delta_{0l}) pi (|l| + p)!)),
//
// used both for acoustic displacement profiles (w = w_a) and for the
// intensity |u_lp|^2 of a counter-rotating optical superposition (w = w_c).
// Amplitudes carry units of 1/length.

#include "oamem/quadrature.hpp"

namespace oamem {

struct ModeIndex {
  int l = 0;  ///< azimuthal index, any sign
  int p = 0;  ///< radial index, >= 0
};

/// Throws DomainError when p < 0.
void validate(const ModeIndex& idx);

enum class ModeRole { optical, acoustic };

struct ModeGeometry {
  double waist = 1.0;  ///< meters
  ModeRole role = ModeRole::acoustic;
};

/// Throws DomainError unless waist is positive and finite.
void validate(const ModeGeometry& geom);

namespace modes {

/// Kronecker delta_{0,l}.
constexpr int delta0(int l) noexcept { return l == 0 ? 1 : 0; }

/// Everything in u_lp except cos(l theta); depends on |l| only.
double radial_profile(const ModeIndex& idx, const ModeGeometry& geom, double r);

/// cos(l theta).
double angular_profile(int l, double theta);

/// u_lp(r, theta). Throws DomainError for r < 0.
double lg_mode_amplitude(const ModeIndex& idx, const ModeGeometry& geom, double r,
                         double theta);

/// Integral of |u_lp|^2 r dr dtheta over the plane; equals 1 within the
/// quadrature tolerance.
QuadratureResult mode_norm(const ModeIndex& idx, const ModeGeometry& geom,
                           const QuadratureConfig& quad = {});

}  // namespace modes
}  // namespace oamem
