// Copyright 2026 the negest authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace negest {

/// Requested negativity cannot be produced by the family (eps > p, or p = 0).
class UnreachableNegativityError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Derivative requested at a family boundary (eps = 0 or eps at its maximum).
class DerivativeSingularityError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Polarizer setting with sin(2a) ~ 0 or sin(2b) ~ 0; the estimator is singular there.
class DegenerateAnglesError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Diagonal-setting counts with r3 = 0 or r3 = R; the mixing estimator is undefined.
class DegenerateDiagonalError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Statistic requested on an empty (or too small) sample.
class EmptySampleError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Tomography settings whose Gram matrix is (numerically) singular.
class IllPosedSettingsError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Malformed CSV/JSON input.
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace negest
