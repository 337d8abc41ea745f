// Copyright 2026 The Certpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CERTPRED_CERTPRED_HPP
#define CERTPRED_CERTPRED_HPP

#include "certpred/analytic_bounds.hpp"
#include "certpred/error_engine.hpp"
#include "certpred/exact_det.hpp"
#include "certpred/exact_scalar.hpp"
#include "certpred/mc_harness.hpp"
#include "certpred/predicates.hpp"
#include "certpred/rng.hpp"

#endif  // CERTPRED_CERTPRED_HPP
