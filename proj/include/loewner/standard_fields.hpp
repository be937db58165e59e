#pragma once

#include "loewner/herglotz.hpp"

namespace loewner {

// Fields used across tests, examples and the CLI defaults.

// G(z) = -z: tau = 0, p = 1.
HerglotzField autonomous_contraction(double horizon = kInfiniteHorizon);
// Radial field with k = 1 on [0, horizon].
HerglotzField radial_constant(double horizon = 2.0);
// Chordal field with lambda = 0 on [0, horizon]; on the disk it evaluates the
// transported generator.
HerglotzField chordal_constant(double value = 0.0, double horizon = 2.0);
// General (tau, p) field on [0, 2]: tau = 0.2 on [0, 0.5] and then moves
// linearly towards 0.2 + 0.3i; p = 0.5 + 0.5 (x + z) / (x - z) with
// x = exp(i (1 + 2t)).
HerglotzField sample_general_field();

}  // namespace loewner
