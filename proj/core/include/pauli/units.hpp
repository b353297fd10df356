#pragma once

namespace pauli {

// Natural units: hbar = m = c = 1 unless a Particle says otherwise.
inline constexpr double kHbar = 1.0;
inline constexpr double kLightSpeed = 1.0;

struct Particle {
  double charge = -1.0;  // electron
  double mass = 1.0;
};

}  // namespace pauli
