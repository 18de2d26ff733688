#pragma once

namespace gnewton {

// Every numeric tolerance used by the library, the CLI and the tests.
struct Tolerances {
  double symmetry = 1e-12;        // relative, ||M - M^T||_inf / max(1, ||M||_inf)
  double projector = 1e-10;       // idempotence and trace residuals
  double qr_rank = 1e-12;         // |R_ii| below this * ||M||_F means singular
  int jacobi_max_sweeps = 100;
  double spectral_gap = 1e-8;     // relative to the coefficient scale
  double dense_pivot = 1e-12;     // relative to ||H||_inf
  double condition_limit = 1e12;  // Kronecker operator condition estimate
  double fd_first_step = 1e-4;
  double fd_second_step = 1e-3;
  int reorthogonalize_every = 20;
  double expm_scaling_norm = 0.5;
  double input_symmetry = 1e-8;   // CLI input validation
  double frame = 1e-10;           // orthogonality / symplecticity of frames
};

inline constexpr Tolerances kTol{};

}  // namespace gnewton
