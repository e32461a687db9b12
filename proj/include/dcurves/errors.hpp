// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <stdexcept>
#include <string>

namespace dcurves {

// Malformed or out-of-contract input (bad rational string, repeated tuple
// element, off-curve point, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rational function was evaluated at a zero of its denominator.
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction hit a vanishing or colliding quantity (b = 0, b = d, ...).
// The message names the quantity and, where relevant, the parameter value.
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dcurves
