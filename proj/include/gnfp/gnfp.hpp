/*
 * Copyright 2026 The gnfp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "gnfp/constructions.hpp"
#include "gnfp/dp_solver.hpp"
#include "gnfp/error.hpp"
#include "gnfp/fixed_point.hpp"
#include "gnfp/gn_metric.hpp"
#include "gnfp/point.hpp"
#include "gnfp/report_io.hpp"
#include "gnfp/sampling.hpp"
#include "gnfp/verifier.hpp"
