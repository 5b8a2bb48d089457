//------------------------------------------------------------------------------
//
//   Copyright 2026 The chandisc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

/// \file chandisc.hpp
/// \brief Umbrella header for the numerical library (everything except the CLI).

#include <chandisc/codebook.hpp>
#include <chandisc/core.hpp>
#include <chandisc/oracle.hpp>
#include <chandisc/pareto.hpp>
#include <chandisc/region.hpp>
#include <chandisc/rng.hpp>
#include <chandisc/simplex.hpp>
#include <chandisc/tilt.hpp>
