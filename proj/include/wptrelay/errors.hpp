// SPDX-License-Identifier: Apache-2.0
//
// wptrelay - rate optimization for wireless-powered MIMO AF relay links
// Copyright (C) 2026 wptrelay contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef WPTRELAY_ERRORS_HPP
#define WPTRELAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wpt {

/// Matrix is rank deficient where a full-rank input is required.
class SingularMatrixError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Effective-channel inversion rejected (condition number above guard).
class IllConditionedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A constraint set turned out to be empty; message names the violated constraint.
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver did not reach its residual target within the iteration cap.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dual bracket could not be established (degenerate or unattainable budget).
class NoSolutionError : public SolverError {
  public:
    using SolverError::SolverError;
};

}  // namespace wpt

#endif
